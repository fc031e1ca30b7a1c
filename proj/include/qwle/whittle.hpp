#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qwle/spectral.hpp"

namespace qwle {

/// Observed increments Delta X_j = X_{j/n} - X_{(j-1)/n}, j = 1..n, on the unit interval.
class IncrementSeries {
 public:
  static constexpr std::size_t kMinLength = 8;

  /// Throws DomainError for n < 8 or non-finite values.
  static IncrementSeries from_increments(std::vector<double> increments, bool demean = false);
  /// Differences n + 1 levels X_0..X_n into n increments.
  static IncrementSeries from_levels(std::span<const double> levels, bool demean = false);

  std::span<const double> increments() const { return x_; }
  std::size_t size() const { return x_.size(); }
  double delta() const { return 1.0 / static_cast<double>(x_.size()); }
  bool demeaned() const { return demeaned_; }

  /// Copy with every increment multiplied by c.
  IncrementSeries scaled(double c) const;
  /// Copy with c added to every increment.
  IncrementSeries shifted(double c) const;

 private:
  IncrementSeries(std::vector<double> x, bool demeaned) : x_(std::move(x)), demeaned_(demeaned) {}
  std::vector<double> x_;
  bool demeaned_ = false;
};

/// I_n(lambda_j) = |sum_k x_k e^{i k lambda_j}|^2 / (2 pi n) at lambda_j = 2 pi j / n, j = 1..n-1.
struct Periodogram {
  std::vector<double> freqs;
  std::vector<double> values;
};

Periodogram periodogram(const IncrementSeries& series);

enum class ObjectiveMode {
  fast,   ///< Riemann sum (1/n) sum_{j=1}^{n-1} I_n(lambda_j) / g_H(lambda_j)
  exact,  ///< (1/n) <x, T_n(h_H) x>
};

/// Largest n accepted by the exact mode.
inline constexpr std::size_t kExactModeCap = std::size_t{1} << 16;

/**
 * H -> nu_n^2(H) for one series. The periodogram is computed once; each
 * evaluation builds the spectral model for H (or reuses the one passed in).
 */
class WhittleObjective {
 public:
  WhittleObjective(const IncrementSeries& series, ObjectiveMode mode, SpectralConfig config = {});

  double operator()(double hurst) const;
  double evaluate(const SpectralModel& model) const;

  ObjectiveMode mode() const { return mode_; }
  const SpectralConfig& config() const { return config_; }
  std::size_t size() const { return x_.size(); }

 private:
  std::vector<double> x_;
  std::vector<double> pgram_;  // fast mode: I_n(lambda_j), j = 1..n-1
  ObjectiveMode mode_;
  SpectralConfig config_;
};

double nu2(const IncrementSeries& series, double hurst, ObjectiveMode mode,
           SpectralConfig config = {});

/// (H, nu_n^2(H)) over a sorted grid inside (0,1), fast mode.
std::vector<std::pair<double, double>> objective_profile(const IncrementSeries& series,
                                                         std::span<const double> grid,
                                                         SpectralConfig config = {});

}  // namespace qwle
