#include "qwle/whittle.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <string>

#include "qwle/errors.hpp"
#include "qwle/fft.hpp"
#include "qwle/toeplitz.hpp"

namespace qwle {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void validate(const std::vector<double>& x) {
  if (x.size() < IncrementSeries::kMinLength) {
    throw DomainError("increment series needs n >= 8, got " + std::to_string(x.size()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw DomainError("increment series contains non-finite values");
  }
}

void demean_in_place(std::vector<double>& x) {
  const double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
  for (double& v : x) v -= mean;
}

std::vector<double> raw_periodogram(std::span<const double> x) {
  const std::size_t n = x.size();
  const auto dft = fft::forward_real(x);
  std::vector<double> out(n - 1);
  const double scale = 1.0 / (kTwoPi * static_cast<double>(n));
  for (std::size_t j = 1; j < n; ++j) out[j - 1] = std::norm(dft[j]) * scale;
  return out;
}

}  // namespace

IncrementSeries IncrementSeries::from_increments(std::vector<double> increments, bool demean) {
  validate(increments);
  if (demean) demean_in_place(increments);
  return IncrementSeries(std::move(increments), demean);
}

IncrementSeries IncrementSeries::from_levels(std::span<const double> levels, bool demean) {
  if (levels.size() < 2) throw DomainError("need at least two levels");
  std::vector<double> x(levels.size() - 1);
  for (std::size_t i = 0; i + 1 < levels.size(); ++i) x[i] = levels[i + 1] - levels[i];
  return from_increments(std::move(x), demean);
}

IncrementSeries IncrementSeries::scaled(double c) const {
  auto x = x_;
  for (double& v : x) v *= c;
  return IncrementSeries(std::move(x), demeaned_);
}

IncrementSeries IncrementSeries::shifted(double c) const {
  auto x = x_;
  for (double& v : x) v += c;
  return IncrementSeries(std::move(x), demeaned_);
}

Periodogram periodogram(const IncrementSeries& series) {
  const std::size_t n = series.size();
  Periodogram p;
  p.values = raw_periodogram(series.increments());
  p.freqs.resize(n - 1);
  for (std::size_t j = 1; j < n; ++j) {
    p.freqs[j - 1] = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
  }
  return p;
}

WhittleObjective::WhittleObjective(const IncrementSeries& series, ObjectiveMode mode,
                                   SpectralConfig config)
    : x_(series.increments().begin(), series.increments().end()), mode_(mode), config_(config) {
  if (mode_ == ObjectiveMode::fast) {
    pgram_ = raw_periodogram(x_);
  } else if (x_.size() > kExactModeCap) {
    throw DimensionError("exact mode supports n <= 65536");
  }
}

double WhittleObjective::operator()(double hurst) const {
  return evaluate(SpectralModel(hurst, config_));
}

double WhittleObjective::evaluate(const SpectralModel& model) const {
  const std::size_t n = x_.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  if (mode_ == ObjectiveMode::exact) {
    BuildOptions opts;
    opts.certify = false;
    const auto th = build(model, Kernel::h, n, opts);
    return quad_form(th, x_, x_) * inv_n;
  }
  // g(lambda_j) = g(2 pi - lambda_j): evaluate on j <= n/2 only.
  const double log_b = std::log(model.b());
  double sum = 0.0;
  for (std::size_t j = 1; j <= n / 2; ++j) {
    const double lambda = kTwoPi * static_cast<double>(j) * inv_n;
    const double inv_g = std::exp(log_b - model.log_f_unchecked(lambda));
    const std::size_t mirror = n - j;
    double terms = pgram_[j - 1];
    if (mirror != j) terms += pgram_[mirror - 1];
    sum += terms * inv_g;
  }
  return sum * inv_n;
}

double nu2(const IncrementSeries& series, double hurst, ObjectiveMode mode, SpectralConfig config) {
  return WhittleObjective(series, mode, config)(hurst);
}

std::vector<std::pair<double, double>> objective_profile(const IncrementSeries& series,
                                                         std::span<const double> grid,
                                                         SpectralConfig config) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] > 0.0 && grid[i] < 1.0)) throw DomainError("profile grid must lie in (0,1)");
    if (i > 0 && grid[i] < grid[i - 1]) throw DomainError("profile grid must be sorted");
  }
  const WhittleObjective objective(series, ObjectiveMode::fast, config);
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double hurst : grid) out.emplace_back(hurst, objective(hurst));
  return out;
}

}  // namespace qwle
