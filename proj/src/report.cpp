#include "qwle/report.hpp"

#include <algorithm>

#include "qwle/errors.hpp"

namespace qwle {

using nlohmann::json;

std::string to_string(ObjectiveMode mode) { return mode == ObjectiveMode::fast ? "fast" : "exact"; }

ObjectiveMode parse_mode(const std::string& text) {
  if (text == "fast") return ObjectiveMode::fast;
  if (text == "exact") return ObjectiveMode::exact;
  throw DomainError("unknown objective mode '" + text + "' (expected fast or exact)");
}

namespace {

json matrix(const Eigen::Matrix2d& m) {
  return json::array({json::array({m(0, 0), m(0, 1)}), json::array({m(1, 0), m(1, 1)})});
}

json interval(const Interval& i) { return json::array({i.lower, i.upper}); }

json rate_fit(const RateFit& f) {
  return {{"ns", f.ns},           {"values", f.values}, {"fitted_slope", f.fitted_slope},
          {"claimed_bound", f.claimed_bound}, {"slack", f.slack}, {"pass", f.pass()}};
}

json coordinate(const CoordinateSummary& c) {
  return {{"mean", c.mean},
          {"empirical_sd", c.empirical_sd},
          {"theoretical_sd", c.theoretical_sd},
          {"skewness", c.skewness},
          {"excess_kurtosis", c.excess_kurtosis},
          {"jarque_bera", c.jarque_bera},
          {"p_value", c.p_value}};
}

}  // namespace

json estimate_report(const EstimateResult& r, const EstimatorConfig& config,
                     const std::string& rate_name) {
  json caveats = json::array();
  if (r.diagnostics.boundary) caveats.push_back("estimate on the boundary of the H range");
  if (!r.diagnostics.converged) caveats.push_back("optimizer did not reach the tolerance");
  return {{"schema_version", kSchemaVersion},
          {"command", "estimate"},
          {"n", r.n},
          {"mode", to_string(config.mode)},
          {"h_range", json::array({config.h_min, config.h_max})},
          {"h_hat", r.h_hat},
          {"sigma_hat", r.sigma_hat},
          {"nu2_min", r.nu2_min},
          {"b_at_h", r.b_at_h},
          {"quasi_loglik", r.quasi_loglik},
          {"rate", rate_name},
          {"ci_level", r.asymptotics.level},
          {"ci_h", interval(r.asymptotics.ci_h)},
          {"ci_sigma", interval(r.asymptotics.ci_sigma)},
          {"cov", matrix(r.asymptotics.cov)},
          {"fisher", matrix(r.asymptotics.fisher)},
          {"diagnostics",
           {{"iterations", r.diagnostics.iterations},
            {"evaluations", r.diagnostics.evaluations},
            {"converged", r.diagnostics.converged},
            {"boundary", r.diagnostics.boundary}}},
          {"caveats", caveats},
          {"note", "confidence intervals assume a constant drift"}};
}

json mc_report(const McReport& report) {
  const auto& c = report.config;
  const auto& s = report.summary;
  json rows = json::array();
  for (const auto& r : report.rows) {
    json row = {{"index", r.index},         {"seed", r.seed},       {"ok", r.ok},
                {"h_hat", r.h_hat},         {"sigma_hat", r.sigma_hat},
                {"z_h", r.z_h},             {"z_sigma", r.z_sigma}, {"boundary", r.boundary}};
    if (!r.ok) row["error"] = r.error;
    rows.push_back(std::move(row));
  }
  json caveats = json::array();
  if (s.small_sample) caveats.push_back("small sample: asymptotic comparisons are indicative only");
  if (s.boundary_hits > 0) caveats.push_back("some replications hit the boundary of the H range");
  if (s.failures > 0) caveats.push_back("some replications failed");
  return {{"schema_version", kSchemaVersion},
          {"command", "mc"},
          {"config",
           {{"hurst", c.hurst},
            {"sigma", c.sigma},
            {"mu", c.mu},
            {"xi0", c.xi0},
            {"n", c.n},
            {"replications", c.replications},
            {"seed", c.seed},
            {"mode", to_string(c.estimator.mode)},
            {"rate", "canonical"}}},
          {"replications", rows},
          {"summary",
           {{"completed", s.completed},
            {"failures", s.failures},
            {"boundary_hits", s.boundary_hits},
            {"bias_h", s.bias_h},
            {"bias_sigma", s.bias_sigma},
            {"sd_h", s.sd_h},
            {"sd_sigma", s.sd_sigma},
            {"z_h", coordinate(s.z_h)},
            {"z_sigma", coordinate(s.z_sigma)},
            {"normality_p", s.normality_p},
            {"small_sample", s.small_sample}}},
          {"caveats", caveats}};
}

json verify_report(const VerifyReport& report) {
  json entries = json::array();
  for (const auto& e : report.entries) {
    json fits = json::array();
    for (const auto& f : e.rate_fits) {
      fits.push_back({{"j", f.j}, {"single", rate_fit(f.single)}, {"sandwich", rate_fit(f.sandwich)}});
    }
    json entry = {{"hurst", e.hurst}, {"rate_fits", fits}, {"pass", e.pass()}};
    if (e.has_frobenius) {
      entry["frobenius"] = {{"ns", e.frobenius.ns},
                            {"values", e.frobenius.values},
                            {"fitted_slope", e.frobenius.fitted_slope},
                            {"all_zero", e.frobenius.all_zero},
                            {"pass", e.frobenius.pass()}};
    }
    entries.push_back(std::move(entry));
  }
  return {{"schema_version", kSchemaVersion},
          {"command", "verify"},
          {"ns", report.config.ns},
          {"js", report.config.js},
          {"entries", entries},
          {"pass", report.pass()}};
}

json profile_report(std::size_t n, std::span<const std::pair<double, double>> points) {
  json arr = json::array();
  for (const auto& [h, v] : points) arr.push_back({{"hurst", h}, {"nu2", v}});
  json out = {{"schema_version", kSchemaVersion}, {"command", "profile"}, {"n", n}, {"points", arr}};
  if (!points.empty()) {
    const auto best = std::min_element(points.begin(), points.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
    out["argmin"] = best->first;
  }
  return out;
}

}  // namespace qwle
