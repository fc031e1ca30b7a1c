#include "qwle/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "qwle/errors.hpp"
#include "qwle/estimator.hpp"
#include "qwle/montecarlo.hpp"
#include "qwle/report.hpp"
#include "qwle/simulate.hpp"
#include "qwle/verify.hpp"
#include "qwle/whittle.hpp"

namespace qwle {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

bool parse_double(std::string_view s, double& value) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<double> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return read_column(in);
}

void emit(const nlohmann::json& report, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << report.dump(2) << '\n';
    return;
  }
  std::ofstream file(path);
  if (!file) throw InputError("cannot write '" + path + "'");
  file << report.dump(2) << '\n';
  if (!file) throw InputError("write to '" + path + "' failed");
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path);
  if (!file) throw InputError("cannot write '" + path + "'");
  return file;
}

struct SeriesInput {
  std::string path;
  bool levels = false;
  bool increments = false;
  bool demean = false;

  void add_to(CLI::App* sub) {
    sub->add_option("input", path, "CSV file with one numeric column")->required();
    auto* lv = sub->add_flag("--levels", levels, "column holds levels X_0..X_n");
    auto* inc = sub->add_flag("--increments", increments, "column holds increments (default)");
    lv->excludes(inc);
    sub->add_flag("--demean", demean, "subtract the increment mean before estimation");
  }

  IncrementSeries load() const {
    const auto column = read_file(path);
    return levels ? IncrementSeries::from_levels(column, demean)
                  : IncrementSeries::from_increments(column, demean);
  }
};

struct EstimatorFlags {
  std::string mode = "fast";
  EstimatorConfig config;

  void add_to(CLI::App* sub, bool with_ci) {
    sub->add_option("--mode", mode, "objective evaluation: fast or exact")
        ->check(CLI::IsMember({"fast", "exact"}))
        ->capture_default_str();
    sub->add_option("--h-min", config.h_min, "lower end of the H range")->capture_default_str();
    sub->add_option("--h-max", config.h_max, "upper end of the H range")->capture_default_str();
    sub->add_option("--grid-points", config.grid_points, "pre-scan grid size")->capture_default_str();
    sub->add_option("--tol", config.tol, "optimizer tolerance on H")->capture_default_str();
    sub->add_option("--max-iterations", config.max_iterations)->capture_default_str();
    if (with_ci) {
      sub->add_option("--ci-level", config.ci_level, "confidence level")->capture_default_str();
    }
  }

  EstimatorConfig resolve() const {
    EstimatorConfig c = config;
    c.mode = parse_mode(mode);
    c.validate();
    return c;
  }
};

int cmd_estimate(const SeriesInput& input, const EstimatorFlags& flags, const std::string& rate_name,
                 const std::string& output, std::ostream& out) {
  const auto config = flags.resolve();
  const RateMatrix rate = rate_name == "diagonal" ? RateMatrix::diagonal() : RateMatrix::canonical();
  const auto series = input.load();
  const auto result = estimate(series, config, rate);
  auto report = estimate_report(result, config, rate.name());
  const std::vector<std::size_t> ns{1u << 10, 1u << 12, 1u << 14, 1u << 16, 1u << 18, 1u << 20};
  const auto check = check_rate_matrix(rate, {result.h_hat, result.sigma_hat}, ns);
  report["rate_check"] = {{"pass", check.pass()}, {"failed_conditions", check.failed()}};
  if (!check.pass()) {
    report["caveats"].push_back("rate matrix violates the normalization conditions");
  }
  emit(report, output, out);
  const bool caveat = result.diagnostics.boundary || !result.diagnostics.converged || !check.pass();
  return caveat ? kExitCaveat : kExitOk;
}

int cmd_simulate(const ModelSpec& spec, bool write_increments, bool no_header,
                 const std::string& output, std::ostream& out) {
  if (spec.n < 1) throw InputError("--n must be positive");
  bool fallback = false;
  const auto x = sample_increments(spec, &fallback);
  const auto column = write_increments ? x : to_levels(spec.xi0, x);
  std::ostringstream text;
  if (!no_header) text << (write_increments ? "increment" : "level") << '\n';
  for (double v : column) text << format_double(v) << '\n';
  if (output.empty() || output == "-") {
    out << text.str();
  } else {
    auto file = open_output(output);
    file << text.str();
    if (!file) throw InputError("write to '" + output + "' failed");
  }
  return fallback ? kExitCaveat : kExitOk;
}

int cmd_mc(const McConfig& config, const std::string& output, const std::string& rows_path,
           std::ostream& out) {
  const auto report = run_monte_carlo(config);
  emit(mc_report(report), output, out);
  if (!rows_path.empty()) {
    auto file = open_output(rows_path);
    file << "index,seed,ok,h_hat,sigma_hat,z_h,z_sigma\n";
    for (const auto& r : report.rows) {
      file << r.index << ',' << r.seed << ',' << (r.ok ? 1 : 0) << ',' << format_double(r.h_hat)
           << ',' << format_double(r.sigma_hat) << ',' << format_double(r.z_h) << ','
           << format_double(r.z_sigma) << '\n';
    }
  }
  const auto& s = report.summary;
  return (s.small_sample || s.boundary_hits > 0 || s.failures > 0) ? kExitCaveat : kExitOk;
}

int cmd_verify(const VerifyConfig& config, const std::string& output, std::ostream& out) {
  const auto report = run_verify(config);
  emit(verify_report(report), output, out);
  return report.pass() ? kExitOk : kExitCaveat;
}

int cmd_profile(const SeriesInput& input, double h_min, double h_max, int points,
                const std::string& output, const std::string& table, std::ostream& out) {
  if (!(h_min > 0.0 && h_min < h_max && h_max < 1.0)) {
    throw DomainError("profile: bounds must satisfy 0 < h-min < h-max < 1");
  }
  if (points < 1) throw DomainError("profile: --points must be positive");
  const auto series = input.load();
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) {
    grid[static_cast<std::size_t>(i)] =
        points == 1 ? h_min : h_min + (h_max - h_min) * i / (points - 1);
  }
  const auto curve = objective_profile(series, grid);
  emit(profile_report(series.size(), curve), output, out);
  if (!table.empty()) {
    auto file = open_output(table);
    file << "hurst,nu2\n";
    for (const auto& [h, v] : curve) file << format_double(h) << ',' << format_double(v) << '\n';
  }
  return kExitOk;
}

}  // namespace

std::vector<double> read_column(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  bool seen_content = false;
  while (std::getline(in, line)) {
    ++line_no;
    const auto field = trim(line);
    if (field.empty()) continue;
    const bool first = !seen_content;
    seen_content = true;
    if (field.find_first_of(", \t;") != std::string_view::npos) {
      throw InputError("line " + std::to_string(line_no) + ": expected a single column");
    }
    double v = 0.0;
    if (!parse_double(field, v)) {
      if (first) continue;  // header
      throw InputError("line " + std::to_string(line_no) + ": not a number: '" +
                       std::string(field) + "'");
    }
    if (!std::isfinite(v)) {
      throw InputError("line " + std::to_string(line_no) + ": non-finite value");
    }
    values.push_back(v);
  }
  if (in.bad()) throw InputError("read error");
  return values;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quasi-Whittle estimation of the Hurst parameter and volatility of drifted fBm"};
  app.set_config("--config", "", "TOML or INI file whose keys mirror the flags");
  app.require_subcommand(1);

  // estimate
  auto* est = app.add_subcommand("estimate", "estimate (H, sigma) from a CSV column");
  SeriesInput est_input;
  EstimatorFlags est_flags;
  std::string est_rate = "canonical";
  std::string est_output;
  est_input.add_to(est);
  est_flags.add_to(est, true);
  est->add_option("--rate", est_rate, "rate matrix for the intervals: canonical or diagonal")
      ->check(CLI::IsMember({"canonical", "diagonal"}))
      ->capture_default_str();
  est->add_option("-o,--output", est_output, "JSON report path (default stdout)");

  // simulate
  auto* sim = app.add_subcommand("simulate", "simulate X_t = xi0 + mu t + sigma B^H_t at t = j/n");
  ModelSpec spec;
  bool sim_increments = false;
  bool sim_no_header = false;
  std::string sim_output;
  sim->add_option("--hurst", spec.hurst)->capture_default_str();
  sim->add_option("--sigma", spec.sigma)->capture_default_str();
  sim->add_option("--mu", spec.mu)->capture_default_str();
  sim->add_option("--xi0", spec.xi0)->capture_default_str();
  sim->add_option("--n", spec.n)->capture_default_str();
  sim->add_option("--seed", spec.seed)->capture_default_str();
  sim->add_flag("--increments", sim_increments, "write the n increments instead of the n+1 levels");
  sim->add_flag("--no-header", sim_no_header);
  sim->add_option("-o,--output", sim_output, "CSV path (default stdout)");

  // mc
  auto* mc = app.add_subcommand("mc", "Monte Carlo check of the asymptotic law");
  McConfig mc_config;
  EstimatorFlags mc_flags;
  std::string mc_output;
  std::string mc_rows;
  mc->add_option("--hurst", mc_config.hurst)->capture_default_str();
  mc->add_option("--sigma", mc_config.sigma)->capture_default_str();
  mc->add_option("--mu", mc_config.mu)->capture_default_str();
  mc->add_option("--xi0", mc_config.xi0)->capture_default_str();
  mc->add_option("--n", mc_config.n)->capture_default_str();
  mc->add_option("--reps", mc_config.replications)->capture_default_str();
  mc->add_option("--seed", mc_config.seed)->capture_default_str();
  mc->add_option("--threads", mc_config.threads, "worker threads (0: QWLE_THREADS or all cores)");
  mc_flags.add_to(mc, false);
  mc->add_option("-o,--output", mc_output, "JSON report path (default stdout)");
  mc->add_option("--rows", mc_rows, "also write per-replication rows as CSV");

  // verify
  auto* ver = app.add_subcommand("verify", "Toeplitz rate checks at small n");
  VerifyConfig ver_config;
  bool ver_no_frobenius = false;
  std::string ver_output;
  ver->add_option("--hurst", ver_config.hursts, "comma-separated H values")->delimiter(',');
  ver->add_option("--j", ver_config.js, "derivative orders (0,1)")->delimiter(',');
  ver->add_option("--ns", ver_config.ns, "dimensions")->delimiter(',');
  ver->add_flag("--no-frobenius", ver_no_frobenius);
  ver->add_option("-o,--output", ver_output, "JSON report path (default stdout)");

  // profile
  auto* prof = app.add_subcommand("profile", "dump the objective curve H -> nu^2(H)");
  SeriesInput prof_input;
  double prof_min = 0.01;
  double prof_max = 0.99;
  int prof_points = 99;
  std::string prof_output;
  std::string prof_table;
  prof_input.add_to(prof);
  prof->add_option("--h-min", prof_min)->capture_default_str();
  prof->add_option("--h-max", prof_max)->capture_default_str();
  prof->add_option("--points", prof_points)->capture_default_str();
  prof->add_option("-o,--output", prof_output, "JSON report path (default stdout)");
  prof->add_option("--table", prof_table, "also write hurst,nu2 rows as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (est->parsed()) return cmd_estimate(est_input, est_flags, est_rate, est_output, out);
    if (sim->parsed()) return cmd_simulate(spec, sim_increments, sim_no_header, sim_output, out);
    if (mc->parsed()) {
      mc_config.estimator = mc_flags.resolve();
      return cmd_mc(mc_config, mc_output, mc_rows, out);
    }
    if (ver->parsed()) {
      ver_config.frobenius = !ver_no_frobenius;
      return cmd_verify(ver_config, ver_output, out);
    }
    if (prof->parsed()) {
      return cmd_profile(prof_input, prof_min, prof_max, prof_points, prof_output, prof_table, out);
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace qwle
