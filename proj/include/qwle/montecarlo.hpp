#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qwle/estimator.hpp"

namespace qwle {

struct McConfig {
  double hurst = 0.5;
  double sigma = 1.0;
  double mu = 0.0;
  double xi0 = 0.0;
  std::size_t n = 4096;
  std::size_t replications = 500;
  std::uint64_t seed = 1;
  EstimatorConfig estimator{};
  /// 0: QWLE_THREADS if set, else hardware concurrency.
  unsigned threads = 0;

  void validate() const;
};

struct McReplication {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  bool ok = false;
  double h_hat = 0.0;
  double sigma_hat = 0.0;
  /// Standardized residual phi_n(theta0)^{-1} (theta_hat - theta0), canonical rate.
  double z_h = 0.0;
  double z_sigma = 0.0;
  bool boundary = false;
  std::string error;
};

struct CoordinateSummary {
  double mean = 0.0;  ///< mean of the standardized residual
  double empirical_sd = 0.0;
  double theoretical_sd = 0.0;  ///< sqrt of the diagonal of I(theta0)^{-1}
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  double jarque_bera = 0.0;
  double p_value = 0.0;  ///< chi-square(2) survival of the Jarque-Bera statistic
};

struct McSummary {
  std::size_t completed = 0;
  std::size_t failures = 0;
  std::size_t boundary_hits = 0;
  double bias_h = 0.0;
  double bias_sigma = 0.0;
  double sd_h = 0.0;
  double sd_sigma = 0.0;
  CoordinateSummary z_h;
  CoordinateSummary z_sigma;
  /// Bonferroni combination of the two coordinate p-values.
  double normality_p = 0.0;
  bool small_sample = false;
};

struct McReport {
  McConfig config;
  std::vector<McReplication> rows;
  McSummary summary;
};

/// Number of worker threads: `requested` if nonzero, else QWLE_THREADS, else hardware concurrency.
unsigned resolve_threads(unsigned requested);

McReplication run_replication(const McConfig& config, std::size_t index);

/// Replications run in parallel; row i depends only on (config, i).
McReport run_monte_carlo(const McConfig& config);

/// Recomputes the summary from rows (failed rows are skipped).
McSummary summarize(const McConfig& config, const std::vector<McReplication>& rows);

/// Moment statistics of a sample: skewness, excess kurtosis, Jarque-Bera and its p-value.
CoordinateSummary describe(const std::vector<double>& values);

}  // namespace qwle
