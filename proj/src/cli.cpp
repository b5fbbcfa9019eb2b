#include "catlab/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <map>
#include <numbers>
#include <sstream>

#include "catlab/optimizer.hpp"
#include "catlab/phase_space.hpp"
#include "catlab/purity.hpp"

namespace catlab::cli {

namespace {

using std::numbers::pi;

const std::map<std::string, Command>& command_table() {
  static const std::map<std::string, Command> table{
      {"evolve", Command::evolve},           {"purity-curve", Command::purity_curve},
      {"sweep", Command::sweep},             {"optimize-xi", Command::optimize_xi},
      {"optimize-r", Command::optimize_r},   {"figure1", Command::figure1},
      {"figure2", Command::figure2},         {"oracle-check", Command::oracle_check},
  };
  return table;
}

double default_t_max(Command c) {
  switch (c) {
    case Command::evolve: return 1.0;
    case Command::figure2: return 0.1;
    default: return 15.0;
  }
}

class Csv {
 public:
  void comment(const std::string& line) { body_ << "# " << line << '\n'; }

  void header(std::initializer_list<std::string_view> cols) { row_of(cols); }

  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((body_ << (first ? "" : ",") << cell(cells), first = false), ...);
    body_ << '\n';
  }

  std::string str() const { return body_.str(); }

 private:
  static std::string cell(double v) { return format_number(v); }
  static std::string cell(int v) { return std::to_string(v); }
  static std::string cell(std::size_t v) { return std::to_string(v); }
  static std::string cell(std::string_view v) { return std::string(v); }
  static std::string cell(const char* v) { return v; }

  void row_of(std::initializer_list<std::string_view> cols) {
    bool first = true;
    for (auto c : cols) {
      body_ << (first ? "" : ",") << c;
      first = false;
    }
    body_ << '\n';
  }

  std::ostringstream body_;
};

void provenance(Csv& csv, const RunConfig& cfg) {
  csv.comment("catlab " + std::string(command_name(cfg.command)));
  csv.comment("beta-abs=" + format_number(cfg.cat.beta_abs));
  csv.comment("xi=" + format_number(cfg.cat.xi));
  csv.comment("r0=" + format_number(cfg.cat.r0));
  csv.comment("phi0=" + format_number(cfg.cat.phi0));
  csv.comment("theta=" + format_number(cfg.cat.theta));
  csv.comment("gamma=" + format_number(cfg.gamma));
  csv.comment("n=" + format_number(cfg.n));
  csv.comment("m1=" + format_number(cfg.m1));
  csv.comment("m2=" + format_number(cfg.m2));
  csv.comment("t-max=" + format_number(cfg.t_max.value_or(default_t_max(cfg.command))));
  if (cfg.t_eval) csv.comment("t-eval=" + format_number(*cfg.t_eval));
  csv.comment("samples=" + std::to_string(cfg.samples));
  csv.comment("oracle-resolution=" + std::to_string(cfg.oracle_resolution));
}

void emit(const RunConfig& cfg, const Csv& csv, std::ostream& out) {
  if (cfg.output_path == "-") {
    out << csv.str();
  } else {
    write_atomically(cfg.output_path, csv.str());
  }
}

// Evaluation time in units of 1/gamma.
double t_eval_gamma(const RunConfig& cfg) {
  if (cfg.t_eval) return *cfg.t_eval;
  return decoherence_time(cfg.cat, cfg.channel()) * cfg.gamma;
}

void curve_rows(Csv& csv, std::string_view label, const CatSpec& spec, const ChannelSpec& ch,
                const std::vector<double>& t_gamma) {
  for (double tg : t_gamma) {
    const double t = tg / ch.gamma();
    if (label.empty()) {
      csv.row(tg, purity_closed_form(spec, ch, t), interference_weight(spec, ch, t));
    } else {
      csv.row(label, tg, purity_closed_form(spec, ch, t), interference_weight(spec, ch, t));
    }
  }
}

int run_evolve(const RunConfig& cfg, std::ostream& out) {
  const double tg = cfg.t_max.value_or(default_t_max(cfg.command));
  const ChannelSpec ch = cfg.channel();
  const EvolvedState state = evolve_cat(cfg.cat, ch, tg / ch.gamma());
  Csv csv;
  provenance(csv, cfg);
  csv.comment("t_gamma=" + format_number(tg));
  csv.comment("purity_mixture=" + format_number(purity_from_mixture(state.mixture)));
  csv.comment("purity_closed_form=" + format_number(purity_closed_form(cfg.cat, ch, state.t)));
  csv.header({"term", "log_abs_weight", "phase", "center_x_re", "center_x_im", "center_p_re",
              "center_p_im", "sxx", "sxp", "spp"});
  for (std::size_t i = 0; i < state.mixture.terms.size(); ++i) {
    const Term& t = state.mixture.terms[i];
    csv.row(i, t.log_weight.real(), t.log_weight.imag(), t.center(0).real(), t.center(0).imag(),
            t.center(1).real(), t.center(1).imag(), t.cov.sxx(), t.cov.sxp(), t.cov.spp());
  }
  emit(cfg, csv, out);
  return kSuccess;
}

int run_purity_curve(const RunConfig& cfg, std::ostream& out) {
  const auto grid = hybrid_time_grid(cfg.t_max.value_or(default_t_max(cfg.command)), cfg.samples);
  Csv csv;
  provenance(csv, cfg);
  csv.comment("asymptotic_purity=" + format_number(asymptotic_purity(cfg.channel())));
  csv.header({"t_gamma", "purity", "interference_weight"});
  curve_rows(csv, "", cfg.cat, cfg.channel(), grid);
  emit(cfg, csv, out);
  return kSuccess;
}

int run_sweep(const RunConfig& cfg, std::ostream& out) {
  static const std::map<std::string, double CatSpec::*> fields{
      {"beta-abs", &CatSpec::beta_abs}, {"xi", &CatSpec::xi},       {"r0", &CatSpec::r0},
      {"phi0", &CatSpec::phi0},         {"theta", &CatSpec::theta},
  };
  const auto field = fields.at(cfg.sweep_param);
  const ChannelSpec ch = cfg.channel();
  const double tg = t_eval_gamma(cfg);
  Csv csv;
  provenance(csv, cfg);
  csv.comment("sweep=" + cfg.sweep_param + " t_gamma=" + format_number(tg));
  csv.header({"parameter", "purity"});
  for (int i = 0; i < cfg.samples; ++i) {
    const double v =
        cfg.sweep_from + (cfg.sweep_to - cfg.sweep_from) * i / static_cast<double>(cfg.samples - 1);
    CatSpec spec = cfg.cat;
    spec.*field = v;
    csv.row(v, purity_closed_form(spec, ch, tg / ch.gamma()));
  }
  emit(cfg, csv, out);
  return kSuccess;
}

void result_comments(Csv& csv, const OptimizationResult& r, double gamma) {
  csv.comment("argmax=" + format_number(r.argmax));
  csv.comment("value=" + format_number(r.value));
  csv.comment("t_gamma=" + format_number(r.t_eval * gamma));
  csv.comment(std::string("method=") + to_string(r.method));
  csv.comment(std::string("status=") + to_string(r.status));
}

int run_optimize_xi(const RunConfig& cfg, std::ostream& out) {
  const ChannelSpec ch = cfg.channel();
  const double t = t_eval_gamma(cfg) / ch.gamma();
  const OptimizationResult r = optimal_xi_numeric(cfg.cat, ch, t);
  Csv csv;
  provenance(csv, cfg);
  result_comments(csv, r, ch.gamma());
  try {
    csv.comment("analytic_xi=" + format_number(optimal_xi_analytic(cfg.cat.r0, ch, cfg.cat.phi0)));
  } catch (const UnsupportedError&) {
    csv.comment("analytic_xi=none");
  }
  csv.header({"parameter", "purity"});
  for (const auto& [x, v] : r.scan) csv.row(x, v);
  emit(cfg, csv, out);
  return kSuccess;
}

int run_optimize_r(const RunConfig& cfg, std::ostream& out) {
  const ChannelSpec ch = cfg.channel();
  const double t = t_eval_gamma(cfg) / ch.gamma();
  const OptimizationResult r = optimal_r(cfg.cat.beta_abs, ch, t, cfg.cat.theta, cfg.r_max);
  Csv csv;
  provenance(csv, cfg);
  result_comments(csv, r, ch.gamma());
  csv.header({"parameter", "purity"});
  for (const auto& [x, v] : r.scan) csv.row(x, v);
  emit(cfg, csv, out);
  return kSuccess;
}

int run_figure1(const RunConfig& cfg, std::ostream& out) {
  const double g = cfg.gamma;
  const auto grid = hybrid_time_grid(cfg.t_max.value_or(default_t_max(cfg.command)), cfg.samples);
  const ChannelSpec thermal = ChannelSpec::thermal(g, 0.5);
  const ChannelSpec squeezed(g, 2.5, 2, 2);
  // x0 = p0 = c  <=>  |beta0| = c, xi = pi/4.
  const double diag = pi / 4;
  Csv csv;
  provenance(csv, cfg);
  csv.comment("assumption: continuous curve uses N=2.5 so that mu_inf=0.5 with M=2+2i");
  csv.header({"curve", "t_gamma", "purity", "interference_weight"});
  curve_rows(csv, "dotted", CatSpec{1, diag, 0, 0, 0}, thermal, grid);
  curve_rows(csv, "dashed", CatSpec{100, diag, 0, 0, 0}, thermal, grid);
  curve_rows(csv, "continuous", CatSpec{100, diag, 0, 0, 0}, squeezed, grid);
  curve_rows(csv, "dot-dashed", CatSpec{10, diag, 2, 0, 0}, thermal, grid);
  emit(cfg, csv, out);
  return kSuccess;
}

int run_figure2(const RunConfig& cfg, std::ostream& out) {
  const ChannelSpec thermal = ChannelSpec::thermal(cfg.gamma, 0.5);
  const double t_max = cfg.t_max.value_or(default_t_max(cfg.command));
  std::vector<double> grid(static_cast<std::size_t>(cfg.samples));
  for (int i = 0; i < cfg.samples; ++i) grid[i] = t_max * i / (cfg.samples - 1);
  const double beta = 4;  // |beta0|^2 = 16
  const double t_dec = 1 / (2 * beta * beta);
  const OptimizationResult best = optimal_r(beta, thermal, t_dec / cfg.gamma, 0);
  Csv csv;
  provenance(csv, cfg);
  csv.comment("optimal_r=" + format_number(best.argmax) + " at t_gamma=" + format_number(t_dec) +
              " status=" + to_string(best.status));
  csv.header({"curve", "t_gamma", "purity", "interference_weight"});
  curve_rows(csv, "r0=0", CatSpec{beta, 0, 0, 0, 0}, thermal, grid);
  curve_rows(csv, "r0=1", CatSpec{beta, pi / 2, 1, 0, 0}, thermal, grid);
  curve_rows(csv, "r0=1.5", CatSpec{beta, pi / 2, 1.5, 0, 0}, thermal, grid);
  emit(cfg, csv, out);
  return kSuccess;
}

int run_oracle_check(const RunConfig& cfg, std::ostream& out) {
  const ChannelSpec ch = cfg.channel();
  Csv csv;
  provenance(csv, cfg);
  csv.header({"t_gamma", "closed_form", "oracle", "relative_deviation"});
  double worst = 0;
  for (double tg : {0.0, 0.05, 0.5, 2.0}) {
    const double t = tg / ch.gamma();
    const double exact = purity_closed_form(cfg.cat, ch, t);
    const double grid = purity_grid_oracle_auto(evolve_cat(cfg.cat, ch, t).mixture,
                                                cfg.oracle_resolution);
    const double dev = std::abs(grid - exact) / exact;
    worst = std::max(worst, dev);
    csv.row(tg, exact, grid, dev);
  }
  csv.comment("max_relative_deviation=" + format_number(worst));
  emit(cfg, csv, out);
  const bool ok = worst <= 1e-4;
  if (cfg.output_path != "-") {
    out << "max relative deviation " << format_number(worst) << (ok ? " <= " : " > ") << "1e-4\n";
  }
  return ok ? kSuccess : kConsistencyFailure;
}

std::string one_line(std::string s) {
  for (char& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

}  // namespace

std::string_view command_name(Command c) {
  for (const auto& [name, cmd] : command_table()) {
    if (cmd == c) return name;
  }
  return "?";
}

ChannelSpec RunConfig::channel() const { return ChannelSpec(gamma, n, m1, m2); }

void RunConfig::validate() const {
  cat.validate();
  channel();
  if (t_max && !(*t_max > 0)) throw DomainError("t-max must be positive");
  if (t_eval && !(*t_eval > 0)) throw DomainError("t-eval must be positive");
  if (samples < 3) throw DomainError("samples must be at least 3");
  if (oracle_resolution < 64) throw DomainError("oracle-resolution must be at least 64");
  if (!(r_max > 0)) throw DomainError("r-max must be positive");
  if (output_path.empty()) throw DomainError("out must not be empty");
  const bool needs_beta = command == Command::optimize_xi || command == Command::optimize_r ||
                          ((command == Command::sweep) && !t_eval);
  if (needs_beta && !(cat.beta_abs > 0)) {
    throw DomainError("this command needs beta-abs > 0 (or an explicit t-eval for sweep)");
  }
}

std::optional<RunConfig> parse_args(const std::vector<std::string>& args, std::ostream& out) {
  RunConfig cfg;
  CLI::App app{"Phase-space simulator for cat states in Gaussian noisy channels", "catlab"};
  app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

  std::string command = "purity-curve";
  double t_max = 0;
  double t_eval = 0;
  app.add_option("--command", command, "What to run")
      ->check(CLI::IsMember([] {
        std::vector<std::string> names;
        for (const auto& [name, c] : command_table()) names.push_back(name);
        return names;
      }()));
  app.add_option("--beta-abs", cfg.cat.beta_abs, "|beta0|");
  app.add_option("--xi", cfg.cat.xi, "Arg beta0 (rad)");
  app.add_option("--r0", cfg.cat.r0, "Initial squeezing");
  app.add_option("--phi0", cfg.cat.phi0, "Squeezing angle (rad)");
  app.add_option("--theta", cfg.cat.theta, "Superposition phase (rad)");
  app.add_option("--gamma", cfg.gamma, "Channel rate");
  app.add_option("--n", cfg.n, "Bath parameter N");
  app.add_option("--m1", cfg.m1, "Re M");
  app.add_option("--m2", cfg.m2, "Im M");
  auto* t_max_opt = app.add_option("--t-max", t_max, "Final time in units of 1/gamma");
  auto* t_eval_opt = app.add_option("--t-eval", t_eval, "Evaluation time in units of 1/gamma");
  app.add_option("--samples", cfg.samples, "Number of samples");
  app.add_option("--out", cfg.output_path, "Output CSV path, '-' for stdout");
  app.add_option("--oracle-resolution", cfg.oracle_resolution, "Minimum oracle nodes per axis");
  app.add_option("--sweep-param", cfg.sweep_param, "Cat parameter swept by 'sweep'")
      ->check(CLI::IsMember({"beta-abs", "xi", "r0", "phi0", "theta"}));
  app.add_option("--sweep-from", cfg.sweep_from, "Sweep start");
  app.add_option("--sweep-to", cfg.sweep_to, "Sweep end");
  app.add_option("--r-max", cfg.r_max, "Upper end of the optimize-r scan");

  std::vector<const char*> argv;
  argv.push_back("catlab");
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return std::nullopt;
  } catch (const CLI::ParseError& e) {
    throw DomainError(e.what());
  }
  cfg.command = command_table().at(command);
  if (t_max_opt->count() > 0) cfg.t_max = t_max;
  if (t_eval_opt->count() > 0) cfg.t_eval = t_eval;
  return cfg;
}

int run(const RunConfig& config, std::ostream& out) {
  switch (config.command) {
    case Command::evolve: return run_evolve(config, out);
    case Command::purity_curve: return run_purity_curve(config, out);
    case Command::sweep: return run_sweep(config, out);
    case Command::optimize_xi: return run_optimize_xi(config, out);
    case Command::optimize_r: return run_optimize_r(config, out);
    case Command::figure1: return run_figure1(config, out);
    case Command::figure2: return run_figure2(config, out);
    case Command::oracle_check: return run_oracle_check(config, out);
  }
  return kValidationError;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    const auto cfg = parse_args(args, out);
    if (!cfg) return kSuccess;
    cfg->validate();
    return run(*cfg, out);
  } catch (const ConsistencyError& e) {
    err << "error: consistency: " << one_line(e.what()) << '\n';
    return kConsistencyFailure;
  } catch (const IoError& e) {
    err << "error: io: " << one_line(e.what()) << '\n';
    return kIoError;
  } catch (const Error& e) {
    err << "error: validation: " << one_line(e.what()) << '\n';
    return kValidationError;
  }
}

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

void write_atomically(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw IoError("failed writing " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at " + path);
  }
}

}  // namespace catlab::cli
