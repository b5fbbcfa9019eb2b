#include <doctest.h>

#include <cstdlib>
#include <numbers>

#include "catlab/cat_states.hpp"
#include "catlab/phase_space.hpp"
#include "oracles.hpp"

using namespace catlab;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

ComplexCenter<double> center(cd x, cd p) { return ComplexCenter<double>(x, p); }

Term unit_term(cd x, cd p, const Cov& cov = Cov::vacuum()) {
  return Term::with_weight(1.0, center(x, p), cov);
}

}  // namespace

TEST_SUITE("phase_space") {
  TEST_CASE("covariance rejects matrices that are not positive definite") {
    CHECK_THROWS_AS(Cov(1, 2, 1), DomainError);
    CHECK_THROWS_AS(Cov(-1, 0, 1), DomainError);
    CHECK_THROWS_AS(Cov(1, 0, 1e-13), DomainError);
    CHECK_THROWS_AS(Cov(std::nan(""), 0, 1), DomainError);
    CHECK_NOTHROW(Cov(2, 0.5, 1));
  }

  TEST_CASE("covariance eigenvalues") {
    const Cov c(5, 2, 1);
    const auto ev = c.eigenvalues();
    CHECK(ev(0) == doctest::Approx(3 - std::sqrt(8.0)).epsilon(1e-14));
    CHECK(ev(1) == doctest::Approx(3 + std::sqrt(8.0)).epsilon(1e-14));
  }

  TEST_CASE("gaussian_integral") {
    CHECK(std::abs(gaussian_integral(unit_term(0, 0)) - pi) < 1e-14);
    // An imaginary center only shifts the contour.
    CHECK(std::abs(gaussian_integral(unit_term(cd(0, 3), 0)) - pi) < 1e-14);
    const Term t = Term::with_weight(0.5, center(2, -1), Cov(2, 0, 0.125));
    CHECK(std::abs(gaussian_integral(t) - pi / 2) < 1e-14);
  }

  TEST_CASE("gaussian_overlap of identical unit terms") {
    CHECK(std::abs(gaussian_overlap(unit_term(0, 0), unit_term(0, 0)) - pi / 2) < 1e-14);
  }

  TEST_CASE("gaussian_overlap with displaced real centers matches quadrature") {
    const cd expected = pi / 2 * std::exp(-2.0);
    CHECK(std::abs(gaussian_overlap(unit_term(0, 0), unit_term(2, 0)) - expected) < 1e-14);

    const Eigen::Matrix2d precision = 2 * Eigen::Matrix2d::Identity();
    const cd quad = oracle::quadrature_2d(
        [&](double x, double p) {
          return oracle::gaussian(x, p, 0, 0, precision) * oracle::gaussian(x, p, 2, 0, precision);
        },
        8, 400);
    CHECK(std::abs(quad - expected) < 1e-12);
  }

  TEST_CASE("gaussian_overlap with opposite imaginary centers") {
    for (double a : {0.3, 1.0, 2.0}) {
      const cd expected = pi / 2 * std::exp(2 * a * a);
      const cd got = gaussian_overlap(unit_term(cd(0, a), 0), unit_term(cd(0, -a), 0));
      CHECK(std::abs(got - expected) < 1e-13 * std::abs(expected));
    }
    // a = 1 against direct quadrature of the product of the two complex Gaussians.
    const Eigen::Matrix2d precision = 2 * Eigen::Matrix2d::Identity();
    const cd quad = oracle::quadrature_2d(
        [&](double x, double p) {
          return oracle::gaussian(x, p, cd(0, 1), 0, precision) *
                 oracle::gaussian(x, p, cd(0, -1), 0, precision);
        },
        8, 400);
    CHECK(std::abs(quad - pi / 2 * std::exp(2.0)) < 1e-10);
  }

  TEST_CASE("gaussian_overlap requires a shared covariance") {
    CHECK_THROWS_AS(gaussian_overlap(unit_term(0, 0), unit_term(0, 0, Cov(1, 0, 1))),
                    ContractError);
  }

  TEST_CASE("gaussian_overlap is symmetric and equals pi sqrt(det) on the diagonal") {
    auto g = oracle::rng(7);
    for (int i = 0; i < 50; ++i) {
      const double a = oracle::uniform(g, 0.2, 3);
      const double b = oracle::uniform(g, 0.2, 3);
      const double c = oracle::uniform(g, -0.9, 0.9) * std::sqrt(a * b);
      const Cov cov(a, c, b);
      const Term t1 = Term::with_weight(cd(oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1)),
                                        center(cd(oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2)),
                                               cd(oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2))),
                                        cov);
      const Term t2 = Term::with_weight(cd(oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1)),
                                        center(cd(oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2)),
                                               cd(oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2))),
                                        cov);
      const cd ab = gaussian_overlap(t1, t2);
      const cd ba = gaussian_overlap(t2, t1);
      CHECK(std::abs(ab - ba) <= 1e-13 * std::abs(ab));

      Term unit = t1;
      unit.log_weight = 0;
      CHECK(std::abs(gaussian_overlap(unit, unit) - pi * std::sqrt(cov.det())) < 1e-13);
    }
  }

  TEST_CASE("evaluate a vacuum term at the origin") {
    Mixture vac{{Term::with_weight(1 / pi, center(0, 0), Cov::vacuum())}};
    CHECK(evaluate(vac, 0.0, 0.0) == doctest::Approx(1 / pi).epsilon(1e-15));
  }

  TEST_CASE("evaluate rejects a mixture that is not real") {
    Mixture bad{{Term::with_weight(cd(0, 1), center(0, 0), Cov::vacuum())}};
    CHECK_THROWS_AS(evaluate(bad, 0.1, 0.2), ConsistencyError);
  }

  TEST_CASE("purity of single Gaussians") {
    Mixture coherent{{Term::with_weight(1 / pi, center(1.5, -0.5), Cov::vacuum())}};
    CHECK(purity_from_mixture(coherent) == doctest::Approx(1).epsilon(1e-14));

    const Cov thermal(5, 2, 1);  // det = 1
    Mixture mixed{{Term::with_weight(1 / (2 * pi * std::sqrt(thermal.det())), center(0, 0), thermal)}};
    CHECK(purity_from_mixture(mixed) ==
          doctest::Approx(1 / (2 * std::sqrt(thermal.det()))).epsilon(1e-14));
  }

  TEST_CASE("purity_from_mixture rejects values outside (0, 1]") {
    Mixture heavy{{Term::with_weight(2 / pi, center(0, 0), Cov::vacuum())}};
    CHECK_THROWS_AS(purity_from_mixture(heavy), ConsistencyError);
  }

  TEST_CASE("grid oracle on the vacuum") {
    Mixture vac{{Term::with_weight(1 / pi, center(0, 0), Cov::vacuum())}};
    CHECK(purity_grid_oracle(vac, 256) == doctest::Approx(1).epsilon(1e-6));
  }

  TEST_CASE("grid oracle agrees with the exact purity of an even cat") {
    const Mixture cat = build_coherent_cat(CatSpec{std::sqrt(2.0), 0, 0, 0, 0});
    const double exact = purity_from_mixture(cat);
    CHECK(std::abs(purity_grid_oracle(cat, 512) - exact) / exact < 1e-6);
  }

  TEST_CASE("grid oracle refuses grids that are too coarse") {
    CHECK_THROWS_AS(purity_grid_oracle(build_coherent_cat(CatSpec{1, 0, 0, 0, 0}), 32),
                    ContractError);
    const Mixture big = build_coherent_cat(CatSpec{6, 0.3, 0, 0, 0});
    const auto plan = plan_oracle_grid(big);
    REQUIRE(plan.required_resolution > 64);
    CHECK_THROWS_AS(purity_grid_oracle(big, 64), DomainError);
    CHECK_THROWS_AS(purity_grid_oracle_auto(big, 64, 128), DomainError);
  }

  TEST_CASE("grid oracle result does not depend on the thread count") {
    const Mixture cat = build_squeezed_cat(CatSpec{1.2, 0.4, 0.6, 0.2, 0.7});
    ::setenv("CATLAB_THREADS", "1", 1);
    const double one = purity_grid_oracle_auto(cat, 256);
    ::setenv("CATLAB_THREADS", "3", 1);
    const double three = purity_grid_oracle_auto(cat, 256);
    ::unsetenv("CATLAB_THREADS");
    CHECK(one == three);
  }
}
