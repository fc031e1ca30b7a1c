#include "qwle/simulate.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Core>

#include <cmath>
#include <algorithm>
#include <complex>
#include <random>
#include <string>

#include "qwle/errors.hpp"
#include "qwle/fft.hpp"
#include "qwle/spectral.hpp"

namespace qwle {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t replication_seed(std::uint64_t base, std::uint64_t index) {
  return splitmix64(base ^ splitmix64(index + 1));
}

namespace {

GaussianSample cholesky_sample(std::span<const double> autocov, std::mt19937_64& rng) {
  const auto n = static_cast<Eigen::Index>(autocov.size());
  Eigen::MatrixXd cov(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) cov(i, j) = autocov[static_cast<std::size_t>(std::abs(i - j))];
  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("covariance is not positive definite; Cholesky fallback failed");
  }
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
  const Eigen::VectorXd y = llt.matrixL() * z;
  GaussianSample out;
  out.values.assign(y.data(), y.data() + n);
  out.used_fallback = true;
  return out;
}

}  // namespace

namespace {

// Circulant embedding of size m = 2 * (row.size() - 1); row holds the covariance at lags 0..m/2.
GaussianSample sample_circulant(std::span<const double> row, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(splitmix64(seed));
  const std::size_t half = row.size() - 1;
  const std::size_t m = 2 * half;
  std::vector<double> circ(m, 0.0);
  for (std::size_t k = 0; k <= half; ++k) {
    circ[k] = row[k];
    if (k > 0 && k < half) circ[m - k] = row[k];
  }
  const auto eig = fft::forward_real(circ);
  const double tol = -1e-10 * std::abs(row[0]);
  std::vector<double> sqrt_eig(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double lam = eig[k].real();
    if (lam < tol) {
      if (n <= kCholeskyCap) return cholesky_sample(row.first(n), rng);
      throw NumericalError("circulant embedding has a negative eigenvalue (" +
                           std::to_string(lam) + ") and n exceeds the Cholesky cap");
    }
    sqrt_eig[k] = std::sqrt(std::max(lam, 0.0) / static_cast<double>(m));
  }
  std::normal_distribution<double> normal;
  std::vector<std::complex<double>> xi(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double re = normal(rng);
    const double im = normal(rng);
    xi[k] = sqrt_eig[k] * std::complex<double>(re, im);
  }
  const auto y = fft::transform(xi, -1);
  GaussianSample out;
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = y[i].real();
  return out;
}

}  // namespace

GaussianSample sample_stationary(std::span<const double> autocov, std::uint64_t seed) {
  const std::size_t n = autocov.size();
  if (n == 0) throw DomainError("sample_stationary: empty covariance row");
  const std::size_t half = fft::next_pow2(2 * n) / 2;
  std::vector<double> row(half + 1, 0.0);
  std::copy(autocov.begin(), autocov.end(), row.begin());
  return sample_circulant(row, n, seed);
}

std::vector<double> sample_fgn(double hurst, std::size_t n, std::uint64_t seed) {
  return sample_fgn_detailed(hurst, n, seed).values;
}

GaussianSample sample_fgn_detailed(double hurst, std::size_t n, std::uint64_t seed) {
  if (!(hurst > 0.0 && hurst < 1.0)) throw DomainError("sample_fgn: H must lie in (0,1)");
  if (n == 0) throw DomainError("sample_fgn: n must be positive");
  // Embed the covariance up to lag m/2 so the circulant is the standard fGn one.
  const std::size_t half = fft::next_pow2(2 * n) / 2;
  std::vector<double> autocov(half + 1);
  for (std::size_t k = 0; k <= half; ++k) autocov[k] = autocovariance(hurst, static_cast<long>(k));
  return sample_circulant(autocov, n, seed);
}

std::vector<double> sample_increments(const ModelSpec& spec, bool* used_fallback) {
  if (used_fallback) *used_fallback = false;
  if (!(spec.sigma >= 0.0)) throw DomainError("sample_path: sigma must be nonnegative");
  if (!std::isfinite(spec.mu) || !std::isfinite(spec.xi0)) {
    throw DomainError("sample_path: mu and xi0 must be finite");
  }
  const auto n = static_cast<double>(spec.n);
  const double drift = spec.mu / n;
  std::vector<double> x(spec.n, 0.0);
  if (spec.sigma > 0.0) {
    const auto draw = sample_fgn_detailed(spec.hurst, spec.n, spec.seed);
    if (used_fallback) *used_fallback = draw.used_fallback;
    const auto& eps = draw.values;
    const double scale = spec.sigma * std::pow(n, -spec.hurst);
    for (std::size_t j = 0; j < spec.n; ++j) x[j] = scale * eps[j];
  } else if (!(spec.hurst > 0.0 && spec.hurst < 1.0)) {
    throw DomainError("sample_path: H must lie in (0,1)");
  }
  for (double& v : x) v += drift;
  return x;
}

IncrementSeries sample_path(const ModelSpec& spec, bool* used_fallback) {
  return IncrementSeries::from_increments(sample_increments(spec, used_fallback));
}

std::vector<double> to_levels(double xi0, std::span<const double> increments) {
  std::vector<double> levels(increments.size() + 1);
  levels[0] = xi0;
  for (std::size_t j = 0; j < increments.size(); ++j) levels[j + 1] = levels[j] + increments[j];
  return levels;
}

}  // namespace qwle
