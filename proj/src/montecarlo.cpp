#include "qwle/montecarlo.hpp"

#include <Eigen/Dense>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <string>
#include <thread>

#include "qwle/errors.hpp"
#include "qwle/simulate.hpp"

namespace qwle {

void McConfig::validate() const {
  if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("mc: H must lie in (0,1)");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw DomainError("mc: sigma must be positive");
  if (!std::isfinite(mu) || !std::isfinite(xi0)) throw DomainError("mc: mu and xi0 must be finite");
  if (n < IncrementSeries::kMinLength) throw DomainError("mc: n must be at least 8");
  if (replications < 50) throw DomainError("mc: at least 50 replications are required");
  estimator.validate();
}

unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("QWLE_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

McReplication run_replication(const McConfig& config, std::size_t index) {
  McReplication row;
  row.index = index;
  row.seed = replication_seed(config.seed, index);
  try {
    ModelSpec spec;
    spec.hurst = config.hurst;
    spec.sigma = config.sigma;
    spec.mu = config.mu;
    spec.xi0 = config.xi0;
    spec.n = config.n;
    spec.seed = row.seed;
    const auto series = sample_path(spec);
    const auto est = estimate(series, config.estimator);
    row.h_hat = est.h_hat;
    row.sigma_hat = est.sigma_hat;
    row.boundary = est.diagnostics.boundary;
    const double sqrt_n = std::sqrt(static_cast<double>(config.n));
    const double dh = est.h_hat - config.hurst;
    row.z_h = sqrt_n * dh;
    row.z_sigma =
        sqrt_n * ((est.sigma_hat - config.sigma) -
                  config.sigma * std::log(static_cast<double>(config.n)) * dh);
    row.ok = std::isfinite(row.z_h) && std::isfinite(row.z_sigma);
    if (!row.ok) row.error = "non-finite estimate";
  } catch (const std::exception& e) {
    row.ok = false;
    row.error = e.what();
  }
  return row;
}

McReport run_monte_carlo(const McConfig& config) {
  config.validate();
  McReport report;
  report.config = config;
  report.rows.resize(config.replications);
  const unsigned threads =
      std::min<unsigned>(resolve_threads(config.threads),
                         static_cast<unsigned>(config.replications));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < config.replications; i = next++) {
      report.rows[i] = run_replication(config, i);
    }
  };
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  report.summary = summarize(config, report.rows);
  return report;
}

CoordinateSummary describe(const std::vector<double>& values) {
  CoordinateSummary s;
  const auto m = static_cast<double>(values.size());
  if (values.size() < 2) return s;
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= m;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - mean;
    m2 += d * d;
    m3 += d * d * d;
    m4 += d * d * d * d;
  }
  m2 /= m;
  m3 /= m;
  m4 /= m;
  s.mean = mean;
  s.empirical_sd = std::sqrt(m2 * m / (m - 1.0));
  if (m2 > 0.0) {
    s.skewness = m3 / std::pow(m2, 1.5);
    s.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  }
  s.jarque_bera = m / 6.0 * (s.skewness * s.skewness + 0.25 * s.excess_kurtosis * s.excess_kurtosis);
  s.p_value = std::exp(-0.5 * s.jarque_bera);
  return s;
}

McSummary summarize(const McConfig& config, const std::vector<McReplication>& rows) {
  McSummary s;
  std::vector<double> zh, zs, hh, ss;
  for (const auto& r : rows) {
    if (!r.ok) {
      ++s.failures;
      continue;
    }
    ++s.completed;
    if (r.boundary) ++s.boundary_hits;
    zh.push_back(r.z_h);
    zs.push_back(r.z_sigma);
    hh.push_back(r.h_hat);
    ss.push_back(r.sigma_hat);
  }
  s.z_h = describe(zh);
  s.z_sigma = describe(zs);
  const auto dh = describe(hh);
  const auto ds = describe(ss);
  s.bias_h = dh.mean - config.hurst;
  s.bias_sigma = ds.mean - config.sigma;
  s.sd_h = dh.empirical_sd;
  s.sd_sigma = ds.empirical_sd;

  // Canonical rate: the limit matrix is the identity, so I(theta0) = F(theta0).
  const SpectralModel model(config.hurst, config.estimator.spectral);
  const Eigen::Matrix2d inv = information(model, config.sigma).fisher.inverse();
  s.z_h.theoretical_sd = std::sqrt(inv(0, 0));
  s.z_sigma.theoretical_sd = std::sqrt(inv(1, 1));
  s.normality_p = std::min(1.0, 2.0 * std::min(s.z_h.p_value, s.z_sigma.p_value));
  s.small_sample = config.n < 1024 || s.completed < 200;
  return s;
}

}  // namespace qwle
