#pragma once

#include <Eigen/Core>

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "qwle/spectral.hpp"

namespace qwle {

/// Spectral kernels whose Toeplitz matrices appear in the estimator and its asymptotics.
enum class Kernel { f, g, h, dh, dg };

std::string_view to_string(Kernel k);
/// Kernel value at lambda in [-pi, pi] \ {0}.
double kernel_value(const SpectralModel& model, Kernel kernel, double lambda);

/// Dense products and the rate checks are limited to this dimension.
inline constexpr std::size_t kDenseCap = 1024;

/// Symmetric Toeplitz matrix T_n given by its first row (hat k(0), ..., hat k(n-1)).
class ToeplitzOperator {
 public:
  explicit ToeplitzOperator(std::vector<double> first_row);

  std::size_t size() const { return row_.size(); }
  std::span<const double> first_row() const { return row_; }
  double operator()(std::size_t i, std::size_t j) const { return row_[i > j ? i - j : j - i]; }

  /// T x in O(n log n) by circulant embedding.
  std::vector<double> apply(std::span<const double> x) const;
  Eigen::MatrixXd dense() const;

 private:
  std::vector<double> row_;
};

struct BuildOptions {
  std::size_t min_grid = std::size_t{1} << 14;  ///< lower bound on the full-period sample count
  bool certify = true;   ///< recompute on a grid twice as fine and compare
  double certify_tol = 1e-6;
};

/**
 * Fourier coefficients hat k(tau) = int_{-pi}^{pi} e^{i tau x} k(x) dx, tau = 0..count-1.
 *
 * The integrable singularity of k at the origin is removed first: near 0 every
 * kernel behaves like x^a (A log x + B), which is matched by a combination
 * u f_{H'} + v d/dH' f_{H'} of fGn densities with a = 1 - 2H'. Their
 * coefficients are gamma_{H'}(tau) and d/dH' gamma_{H'}(tau) in closed form; the
 * remainder is summed with a midpoint rule on `grid_points` nodes by one DCT-II.
 */
std::vector<double> fourier_coefficients(const SpectralModel& model, Kernel kernel,
                                         std::size_t count, std::size_t grid_points);

/// T_n(kernel). Throws QuadratureError if certification fails.
ToeplitzOperator build(const SpectralModel& model, Kernel kernel, std::size_t n,
                       const BuildOptions& options = {});

/// <x, A y>.
double quad_form(const ToeplitzOperator& a, std::span<const double> x, std::span<const double> y);

/// Tr[A_1 ... A_k] for k in {2, 4}; dense, n <= kDenseCap.
double trace_product(std::span<const ToeplitzOperator> ops);

/// ||I - T(g)^{1/2} T(h) T(g)^{1/2}||_F^2 = n - 2 Tr[T(g)T(h)] + Tr[(T(g)T(h))^2].
double frobenius_deficit(const SpectralModel& model, std::size_t n);

struct RateFit {
  std::vector<std::size_t> ns;
  std::vector<double> values;
  double fitted_slope = 0.0;
  double claimed_bound = 0.0;
  double slack = 0.0;
  bool pass() const { return fitted_slope <= claimed_bound + slack; }
};

/// Least-squares slope of log(values) against log(ns).
double loglog_slope(std::span<const std::size_t> ns, std::span<const double> values);

struct FormRates {
  int j = 0;
  RateFit single;    ///< |<1, T(h^{(j)}) 1>|
  RateFit sandwich;  ///< <1, T(h^{(j)}) T(g) T(h^{(j)}) 1>
};

/// Growth of both quadratic forms in 1_n across ns; claimed bound 2(1 - H), slack 0.15.
FormRates quadratic_form_rates(const SpectralModel& model, int j, std::span<const std::size_t> ns);

struct FrobeniusFit {
  std::vector<std::size_t> ns;
  std::vector<double> values;
  double fitted_slope = 0.0;  ///< 0 when every value is numerically zero
  bool all_zero = false;
  bool pass(double max_slope = 0.3, double zero_tol = 1e-8) const;
};

FrobeniusFit frobenius_rates(const SpectralModel& model, std::span<const std::size_t> ns);

}  // namespace qwle
