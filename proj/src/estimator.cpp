#include "qwle/estimator.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/normal.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qwle/errors.hpp"

namespace qwle {

RateMatrix::RateMatrix(std::string name, EntryFn entries, LimitFn limit)
    : name_(std::move(name)), entries_(std::move(entries)), limit_(std::move(limit)) {}

RateMatrix RateMatrix::canonical() {
  return RateMatrix(
      "canonical",
      [](const Theta& t, double n) {
        Eigen::Matrix2d m;
        m << 1.0, 0.0, t.sigma * std::log(n), 1.0;  // -sigma log(delta_n) = sigma log n
        return m;
      },
      [](const Theta&) { return Eigen::Matrix2d::Identity().eval(); });
}

RateMatrix RateMatrix::diagonal() {
  return RateMatrix(
      "diagonal", [](const Theta&, double) { return Eigen::Matrix2d::Identity().eval(); },
      [](const Theta&) { return Eigen::Matrix2d::Identity().eval(); });
}

Eigen::Matrix2d RateMatrix::at(const Theta& theta, double n) const {
  return entries(theta, n) / std::sqrt(n);
}

bool RateCheck::pass() const {
  return std::all_of(conditions.begin(), conditions.end(), [](bool c) { return c; });
}

std::vector<int> RateCheck::failed() const {
  std::vector<int> out;
  for (int i = 0; i < 6; ++i)
    if (!conditions[static_cast<std::size_t>(i)]) out.push_back(i + 1);
  return out;
}

RateCheck check_rate_matrix(const RateMatrix& rate, const Theta& theta,
                            std::span<const std::size_t> ns, double tol) {
  RateCheck out;
  if (ns.empty()) return out;
  const Eigen::Matrix2d lim = rate.limit(theta);
  const std::array<double, 4> targets{lim(0, 0), lim(0, 1), lim(1, 0), lim(1, 1)};
  std::array<std::vector<double>, 4> dev;
  double min_det = std::numeric_limits<double>::infinity();
  for (std::size_t n : ns) {
    const auto nn = static_cast<double>(n);
    const Eigen::Matrix2d p = rate.entries(theta, nn);
    const double log_delta = -std::log(nn);
    const std::array<double, 4> seq{
        p(0, 0), p(0, 1),
        p(0, 0) * theta.sigma * log_delta + p(1, 0),   // s_n^{21}
        p(0, 1) * theta.sigma * log_delta + p(1, 1)};  // s_n^{22}
    for (std::size_t k = 0; k < 4; ++k) dev[k].push_back(std::abs(seq[k] - targets[k]));
    min_det = std::min(min_det, std::abs(p(0, 0) * p(1, 1) - p(0, 1) * p(1, 0)));
  }
  for (std::size_t k = 0; k < 4; ++k) {
    bool monotone = true;
    for (std::size_t i = 1; i < dev[k].size(); ++i) {
      if (dev[k][i] > dev[k][i - 1] + 1e-12) monotone = false;
    }
    out.deviation_at_max_n[k] = dev[k].back();
    out.conditions[k] = monotone && std::isfinite(dev[k].back()) && dev[k].back() <= tol;
    out.max_deviation = std::max(out.max_deviation, dev[k].back());
  }
  out.min_abs_det = min_det;
  out.limit_det = lim.determinant();
  out.conditions[4] = min_det > 1e-12;
  out.conditions[5] = std::abs(out.limit_det) > 1e-12;
  return out;
}

AsymptoticCov asymptotic_cov(const Theta& theta, std::size_t n, const RateMatrix& rate,
                             double level, SpectralConfig spectral) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("confidence level must lie in (0,1)");
  const SpectralModel model(theta.hurst, spectral);
  const auto info = information(model, theta.sigma);
  AsymptoticCov out;
  out.level = level;
  out.fisher = info.fisher;
  const Eigen::Matrix2d lim = rate.limit(theta);
  out.information = lim.transpose() * info.fisher * lim;
  const double det = out.information.determinant();
  if (!(std::abs(det) > 1e-14 * out.information.squaredNorm()) || !std::isfinite(det)) {
    throw NumericalError("information matrix is singular");
  }
  const Eigen::Matrix2d phi = rate.at(theta, static_cast<double>(n));
  out.cov = phi * out.information.inverse() * phi.transpose();
  const boost::math::normal standard;
  const double z = boost::math::quantile(standard, 0.5 + 0.5 * level);
  const double se_h = std::sqrt(out.cov(0, 0));
  const double se_s = std::sqrt(out.cov(1, 1));
  out.ci_h = {theta.hurst - z * se_h, theta.hurst + z * se_h};
  out.ci_sigma = {theta.sigma - z * se_s, theta.sigma + z * se_s};
  return out;
}

void EstimatorConfig::validate() const {
  if (!(h_min > 0.0 && h_min < h_max && h_max < 1.0)) {
    throw DomainError("estimator bounds must satisfy 0 < h_min < h_max < 1");
  }
  if (!(tol >= 1e-8)) throw DomainError("estimator tolerance must be >= 1e-8");
  if (grid_points < 8) throw DomainError("estimator pre-scan needs >= 8 grid points");
  if (max_iterations < 1) throw DomainError("max_iterations must be positive");
}

namespace {

// Golden-section search for a minimum of f on [a, b].
struct GoldenResult {
  double x;
  double fx;
  int iterations;
  bool converged;
};

template <class F>
GoldenResult golden_section(F&& f, double a, double b, double tol, int max_iter) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  int it = 0;
  while (b - a > tol && it < max_iter) {
    ++it;
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = fc <= fd ? c : d;
  const double fx = fc <= fd ? fc : fd;
  return {x, fx, it, b - a <= tol};
}

}  // namespace

EstimateResult estimate(const IncrementSeries& series, const EstimatorConfig& config) {
  return estimate(series, config, RateMatrix::canonical());
}

EstimateResult estimate(const IncrementSeries& series, const EstimatorConfig& config,
                        const RateMatrix& rate) {
  config.validate();
  const auto x = series.increments();
  if (std::all_of(x.begin(), x.end(), [](double v) { return v == 0.0; })) {
    throw DegenerateInput("degenerate input: all increments are zero");
  }
  const WhittleObjective objective(series, config.mode, config.spectral);
  std::size_t evaluations = 0;
  auto eval = [&](double hurst) {
    ++evaluations;
    return objective(hurst);
  };

  const int m = config.grid_points;
  std::vector<double> grid(static_cast<std::size_t>(m));
  std::vector<double> values(grid.size());
  for (int i = 0; i < m; ++i) {
    grid[static_cast<std::size_t>(i)] =
        config.h_min + (config.h_max - config.h_min) * static_cast<double>(i) / (m - 1);
    values[static_cast<std::size_t>(i)] = eval(grid[static_cast<std::size_t>(i)]);
  }
  const auto best = static_cast<std::size_t>(
      std::min_element(values.begin(), values.end()) - values.begin());
  if (!(values[best] > 0.0) || !std::isfinite(values[best])) {
    throw DegenerateInput("degenerate input: objective is not positive");
  }
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  auto gs = golden_section(eval, lo, hi, config.tol, config.max_iterations);
  if (values[best] < gs.fx) {
    // grid node beats the interior refinement (only possible at a bound)
    gs.x = grid[best];
    gs.fx = values[best];
  }

  EstimateResult r;
  r.n = series.size();
  r.h_hat = gs.x;
  r.nu2_min = gs.fx;
  const SpectralModel at_hat(r.h_hat, config.spectral);
  r.b_at_h = at_hat.b();
  const auto n = static_cast<double>(series.size());
  r.sigma_hat = std::pow(n, r.h_hat) * std::sqrt(r.nu2_min / r.b_at_h);
  r.quasi_loglik = 0.5 * (std::log(r.nu2_min) + 1.0);
  r.diagnostics.iterations = gs.iterations;
  r.diagnostics.evaluations = evaluations;
  r.diagnostics.converged = gs.converged;
  r.diagnostics.boundary = std::abs(r.h_hat - config.h_min) < 2.0 * config.tol ||
                           std::abs(r.h_hat - config.h_max) < 2.0 * config.tol;
  r.asymptotics = asymptotic_cov({r.h_hat, r.sigma_hat}, series.size(), rate, config.ci_level,
                                 config.spectral);
  return r;
}

}  // namespace qwle
