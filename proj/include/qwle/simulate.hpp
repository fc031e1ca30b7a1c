#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "qwle/whittle.hpp"

namespace qwle {

/// dX_t = mu dt + sigma dB^H_t on [0, 1], X_0 = xi0, observed at t = j/n.
struct ModelSpec {
  double hurst = 0.5;
  double sigma = 1.0;
  double mu = 0.0;
  double xi0 = 0.0;
  std::size_t n = 4096;
  std::uint64_t seed = 1;
};

struct GaussianSample {
  std::vector<double> values;
  bool used_fallback = false;  ///< circulant embedding was indefinite; dense Cholesky used instead
};

/// Largest n for which an indefinite embedding falls back to Cholesky.
inline constexpr std::size_t kCholeskyCap = 4096;

/**
 * One draw of a stationary Gaussian vector with autocovariance row
 * (c_0, ..., c_{n-1}) by circulant embedding into size next_pow2(2n).
 * Eigenvalues below -1e-10 (relative to c_0) trigger the Cholesky fallback
 * for n <= 4096 and a NumericalError above; smaller negatives are clamped.
 */
GaussianSample sample_stationary(std::span<const double> autocov, std::uint64_t seed);

/// Unit-lag fGn: (B_1 - B_0, ..., B_n - B_{n-1}). Deterministic given seed.
std::vector<double> sample_fgn(double hurst, std::size_t n, std::uint64_t seed);
GaussianSample sample_fgn_detailed(double hurst, std::size_t n, std::uint64_t seed);

/// Increments mu / n + sigma n^{-H} eps_j with eps = sample_fgn(H, n, seed).
/// Same law as sample_path without the IncrementSeries length check (any n >= 1; sigma = 0 allowed).
std::vector<double> sample_increments(const ModelSpec& spec, bool* used_fallback = nullptr);

/// If used_fallback is non-null it reports whether the Cholesky fallback ran.
IncrementSeries sample_path(const ModelSpec& spec, bool* used_fallback = nullptr);

/// Levels X_0 = xi0, X_j = xi0 + sum_{k <= j} Delta X_k (n + 1 values).
std::vector<double> to_levels(double xi0, std::span<const double> increments);

/// splitmix64 finalizer.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed of replication `index` under base seed `base`: splitmix64(base ^ splitmix64(index + 1)).
/// Depends only on (base, index), never on scheduling.
std::uint64_t replication_seed(std::uint64_t base, std::uint64_t index);

}  // namespace qwle
