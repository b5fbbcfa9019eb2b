#include <doctest.h>

#include <cmath>
#include <numbers>

#include "catlab/channel.hpp"
#include "oracles.hpp"

using namespace catlab;
using std::numbers::pi;

namespace {

Eigen::Matrix2d mat(const Cov& c) { return c.matrix(); }

}  // namespace

TEST_SUITE("channel") {
  TEST_CASE("channel validation") {
    CHECK_THROWS_AS(ChannelSpec(0, 0, 0, 0), DomainError);
    CHECK_THROWS_AS(ChannelSpec(1, -0.1, 0, 0), DomainError);
    CHECK_NOTHROW(ChannelSpec(1, 1, 1, 1));  // |M|^2 = 2 = N(N+1)
    try {
      ChannelSpec(1, 0.1, 2, 0);
      FAIL("infeasible channel accepted");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("|M|^2 <= N(N+1)") != std::string::npos);
    }
  }

  TEST_CASE("sigma_infinity") {
    CHECK((mat(sigma_infinity(ChannelSpec(1, 0, 0, 0))) - Eigen::Matrix2d::Identity() / 2).norm() ==
          0);
    CHECK((mat(sigma_infinity(ChannelSpec(1, 0.5, 0, 0))) - Eigen::Matrix2d::Identity()).norm() == 0);
    Eigen::Matrix2d expected;
    expected << 5, 2, 2, 1;
    CHECK((mat(sigma_infinity(ChannelSpec(1, 2.5, 2, 2))) - expected).norm() < 1e-15);
  }

  TEST_CASE("asymptotic_purity") {
    CHECK(asymptotic_purity(ChannelSpec(1, 0, 0, 0)) == 1);
    CHECK(asymptotic_purity(ChannelSpec(1, 0.5, 0, 0)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(asymptotic_purity(ChannelSpec(1, 2.5, 2, 2)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(asymptotic_purity(ChannelSpec::thermal(1, 0.3)) == doctest::Approx(0.3).epsilon(1e-14));
  }

  TEST_CASE("asymptotic purity equals the purity of the asymptotic Gaussian") {
    auto g = oracle::rng(31);
    for (int i = 0; i < 50; ++i) {
      const double n = oracle::uniform(g, 0, 4);
      const double m_abs = std::sqrt(n * (n + 1)) * oracle::uniform(g, 0, 0.99);
      const double arg = oracle::uniform(g, -pi, pi);
      const ChannelSpec ch(1, n, m_abs * std::cos(arg), m_abs * std::sin(arg));
      const Cov inf = sigma_infinity(ch);
      const Mixture single{{Term::with_weight(1 / (2 * pi * std::sqrt(inf.det())),
                                              ComplexCenter<double>::Zero(), inf)}};
      CHECK(std::abs(asymptotic_purity(ch) - purity_from_mixture(single)) < 1e-12);
    }
  }

  TEST_CASE("bath_squeezing") {
    CHECK(bath_squeezing(ChannelSpec(1, 0.5, 0, 0)).r_inf == 0);

    const auto fig = bath_squeezing(ChannelSpec(1, 2.5, 2, 2));
    CHECK(fig.r_inf == doctest::Approx(std::acosh(3.0) / 2).epsilon(1e-14));
    CHECK(std::cosh(2 * 0.8814) == doctest::Approx(3).epsilon(1e-4));
    CHECK(fig.phi_inf == doctest::Approx(pi / 8).epsilon(1e-14));

    // N = 1, M = 1: mu_inf = 1/sqrt(5), cosh 2r = sqrt(1 + 4/5) = 3/sqrt(5).
    const auto small = bath_squeezing(ChannelSpec(1, 1, 1, 0));
    CHECK(std::cosh(2 * small.r_inf) == doctest::Approx(std::sqrt(1.8)).epsilon(1e-14));
    CHECK(small.r_inf == doctest::Approx(std::log(5.0) / 4).epsilon(1e-14));

    CHECK(bath_squeezing(ChannelSpec(1, 2, 0, 1)).phi_inf == doctest::Approx(pi / 4).epsilon(1e-15));
  }

  TEST_CASE("squeezed channel factory round trip") {
    const ChannelSpec ch = ChannelSpec::squeezed(1, 0.5, 0.7, 0.3);
    CHECK(asymptotic_purity(ch) == doctest::Approx(0.5).epsilon(1e-13));
    CHECK(bath_squeezing(ch).r_inf == doctest::Approx(0.7).epsilon(1e-13));
    CHECK(bath_squeezing(ch).phi_inf == doctest::Approx(0.3).epsilon(1e-13));
  }

  TEST_CASE("evolve_moments special times") {
    const ChannelSpec ch(2, 1.5, 0.5, -0.3);
    const Eigen::Vector2d x0(1.5, -2);
    const Cov sigma0 = squeezed_vacuum_cov(0.7, 0.2);

    const Moments at0 = evolve_moments(x0, sigma0, ch, 0);
    CHECK(at0.x == x0);
    CHECK(at0.sigma == sigma0);

    const Moments half = evolve_moments(x0, sigma0, ch, std::log(2.0) / ch.gamma());
    CHECK((half.x - x0 / std::sqrt(2.0)).norm() < 1e-15);
    CHECK((mat(half.sigma) - (mat(sigma0) + mat(sigma_infinity(ch))) / 2).norm() < 1e-15);

    const Moments late = evolve_moments(x0, sigma0, ch, 50 / ch.gamma());
    CHECK(late.x.norm() < 1e-10);
    CHECK((mat(late.sigma) - mat(sigma_infinity(ch))).norm() < 1e-15);

    CHECK_THROWS_AS(evolve_moments(x0, sigma0, ch, -1e-3), DomainError);
  }

  TEST_CASE("evolve_moments is a semigroup") {
    auto g = oracle::rng(41);
    for (int i = 0; i < 30; ++i) {
      const double n = oracle::uniform(g, 0, 3);
      const ChannelSpec ch(oracle::uniform(g, 0.2, 3), n, 0.5 * std::sqrt(n * (n + 1)), 0);
      const Eigen::Vector2d x0(oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3));
      const Cov sigma0 = squeezed_vacuum_cov(oracle::uniform(g, 0, 1.5), oracle::uniform(g, 0, pi));
      const double t1 = oracle::uniform(g, 0, 2);
      const double t2 = oracle::uniform(g, 0, 2);
      const Moments once = evolve_moments(x0, sigma0, ch, t1 + t2);
      const Moments first = evolve_moments(x0, sigma0, ch, t1);
      const Moments twice = evolve_moments(first.x, first.sigma, ch, t2);
      CHECK((once.x - twice.x).norm() < 1e-12);
      CHECK((mat(once.sigma) - mat(twice.sigma)).norm() < 1e-12);
    }
  }

  TEST_CASE("evolve_cat at t = 0 is the initial cat") {
    const CatSpec s{1.3, 0.4, 0.8, 0.1, 0.5};
    const Mixture a = evolve_cat(s, ChannelSpec(1, 0.5, 0, 0), 0).mixture;
    const Mixture b = build_squeezed_cat(s);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(a.terms[k].log_weight == b.terms[k].log_weight);
      CHECK(a.terms[k].center == b.terms[k].center);
      CHECK(a.terms[k].cov == b.terms[k].cov);
    }
  }

  TEST_CASE("late-time purity is the channel's asymptotic purity") {
    auto g = oracle::rng(43);
    for (int i = 0; i < 20; ++i) {
      const double n = oracle::uniform(g, 0, 3);
      const ChannelSpec ch(1, n, 0.6 * std::sqrt(n * (n + 1)), 0.2 * std::sqrt(n * (n + 1)));
      const CatSpec s{oracle::uniform(g, 0.3, 3), oracle::uniform(g, 0, pi),
                      oracle::uniform(g, 0, 1.5), oracle::uniform(g, 0, pi),
                      oracle::uniform(g, 0, 2 * pi)};
      CHECK(std::abs(purity_from_mixture(evolve_cat(s, ch, 50).mixture) - asymptotic_purity(ch)) <
            1e-6);
    }
  }

  TEST_CASE("Gaussian state purity follows the covariance") {
    const ChannelSpec ch(1, 0.5, 0, 0);
    const Moments m = evolve_moments(Eigen::Vector2d::Zero(), squeezed_vacuum_cov(1, 0), ch, 1);
    const double expected = 1 / (2 * std::sqrt(m.sigma.det()));
    const double got = purity_from_mixture(evolve_cat(CatSpec{0, 0, 1, 0, 0}, ch, 1).mixture);
    CHECK(got == doctest::Approx(expected).epsilon(1e-12));
  }

  TEST_CASE("purity of an initially vacuum state decreases monotonically") {
    const ChannelSpec ch = ChannelSpec::thermal(1, 0.5);
    double previous = 1 + 1e-12;
    for (double t : hybrid_time_grid(15, 200)) {
      const double mu = purity_from_mixture(evolve_cat(CatSpec{0, 0, 0, 0, 0}, ch, t).mixture);
      CHECK(mu <= previous);
      previous = mu;
    }
    CHECK(previous == doctest::Approx(0.5).epsilon(1e-6));
  }

  TEST_CASE("the evolved mixture stays normalized") {
    const CatSpec s{2, 0.3, 0.5, 0.2, 1.1};
    const ChannelSpec ch(1, 1.2, 0.4, -0.7);
    for (double t : hybrid_time_grid(10, 40)) {
      const auto integral = total_integral(evolve_cat(s, ch, t).mixture);
      CHECK(std::abs(integral.real() - 1) < 1e-9);
      CHECK(std::abs(integral.imag()) < 1e-9);
    }
  }

  TEST_CASE("evolved Wigner function equals the damped initial one smeared by bath noise") {
    // X(t) = s X(0) + noise with noise covariance sigma_inf (1 - s^2), so
    // W_t(X) = integral W_0(Y) g(X - s Y) dY with g the noise density.
    const CatSpec s{1.2, 0.6, 0, 0, 0.4};
    const ChannelSpec ch = ChannelSpec::thermal(1, 0.5);
    const double t = 0.5;
    const double shrink = std::exp(-t / 2);
    const Eigen::Matrix2d noise = mat(sigma_infinity(ch)) * (1 - shrink * shrink);
    const Eigen::Matrix2d precision = noise.inverse();
    const double norm = 1 / (2 * pi * std::sqrt(noise.determinant()));
    const Mixture evolved = evolve_cat(s, ch, t).mixture;

    for (auto [x, p] : {std::pair{0.0, 0.0}, {0.8, -0.3}, {-1.5, 1.1}, {0.2, 2.0}}) {
      const double direct =
          oracle::quadrature_2d(
              [&](double y1, double y2) {
                const double w = oracle::coherent_cat_wigner(s.beta_abs, s.xi, s.theta, y1, y2);
                return w * norm * oracle::gaussian(x - shrink * y1, p - shrink * y2, 0, 0, precision);
              },
              7, 400)
              .real();
      CHECK(std::abs(evaluate(evolved, x, p) - direct) < 1e-8);
    }
  }

  TEST_CASE("hybrid time grid") {
    const auto grid = hybrid_time_grid(15, 200);
    REQUIRE(grid.size() == 200);
    CHECK(grid.front() == 0);
    CHECK(grid.back() == 15);
    for (std::size_t i = 1; i < grid.size(); ++i) CHECK(grid[i] > grid[i - 1]);
    CHECK(grid[1] < 1e-3);
    CHECK_THROWS_AS(hybrid_time_grid(0, 10), DomainError);
    CHECK_THROWS_AS(hybrid_time_grid(1, 2), DomainError);
    const auto tiny = hybrid_time_grid(2, 3);
    CHECK(tiny.size() == 3);
    CHECK(tiny.back() == 2);
  }
}
