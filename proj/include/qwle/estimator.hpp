#pragma once

#include <Eigen/Core>

#include <array>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "qwle/spectral.hpp"
#include "qwle/whittle.hpp"

namespace qwle {

struct Theta {
  double hurst = 0.5;
  double sigma = 1.0;
};

/**
 * Rate matrices phi_n(theta) = n^{-1/2} [[p11, p12], [p21, p22]] together with
 * their limit matrix. `entries` returns the bracketed matrix (without n^{-1/2}).
 */
class RateMatrix {
 public:
  using EntryFn = std::function<Eigen::Matrix2d(const Theta&, double n)>;
  using LimitFn = std::function<Eigen::Matrix2d(const Theta&)>;

  RateMatrix(std::string name, EntryFn entries, LimitFn limit);

  /// n^{-1/2} [[1, 0], [-sigma log(1/n), 1]]; limit = identity.
  static RateMatrix canonical();
  /// n^{-1/2} I; limit = identity. Violates the s_n^{21} condition.
  static RateMatrix diagonal();

  const std::string& name() const { return name_; }
  Eigen::Matrix2d entries(const Theta& theta, double n) const { return entries_(theta, n); }
  Eigen::Matrix2d limit(const Theta& theta) const { return limit_(theta); }
  /// phi_n(theta) including the n^{-1/2} factor.
  Eigen::Matrix2d at(const Theta& theta, double n) const;

 private:
  std::string name_;
  EntryFn entries_;
  LimitFn limit_;
};

struct RateCheck {
  /// Conditions (1)-(6): p11 -> l11, p12 -> l12, s21 -> l21, s22 -> l22, det_n != 0, det(limit) != 0.
  std::array<bool, 6> conditions{};
  /// |sequence - limit| at the largest n for conditions (1)-(4).
  std::array<double, 4> deviation_at_max_n{};
  double max_deviation = 0.0;
  double min_abs_det = 0.0;
  double limit_det = 0.0;
  bool pass() const;
  /// 1-based indices of failed conditions.
  std::vector<int> failed() const;
};

/// Numerical check of the rate-matrix conditions along increasing ns.
/// A sequence "converges" if its deviation from the limit is non-increasing
/// along ns and at most `tol` at the largest n.
RateCheck check_rate_matrix(const RateMatrix& rate, const Theta& theta,
                            std::span<const std::size_t> ns, double tol = 1e-3);

struct Interval {
  double lower = 0.0;
  double upper = 0.0;
};

struct AsymptoticCov {
  Eigen::Matrix2d fisher;       ///< F(theta)
  Eigen::Matrix2d information;  ///< I(theta) = limit^T F limit
  Eigen::Matrix2d cov;          ///< phi_n I^{-1} phi_n^T, approximate Var[theta_hat - theta]
  Interval ci_h;
  Interval ci_sigma;
  double level = 0.95;
};

AsymptoticCov asymptotic_cov(const Theta& theta, std::size_t n, const RateMatrix& rate,
                             double level = 0.95, SpectralConfig spectral = {});

struct EstimatorConfig {
  double h_min = 0.01;
  double h_max = 0.99;
  int grid_points = 33;
  double tol = 1e-6;
  ObjectiveMode mode = ObjectiveMode::fast;
  int max_iterations = 200;
  double ci_level = 0.95;
  SpectralConfig spectral{};

  /// Throws DomainError if the configuration is invalid.
  void validate() const;
};

struct OptimizerDiagnostics {
  int iterations = 0;
  std::size_t evaluations = 0;
  bool converged = false;
  bool boundary = false;  ///< h_hat within 2 tol of h_min or h_max
};

struct EstimateResult {
  double h_hat = 0.0;
  double sigma_hat = 0.0;
  double nu2_min = 0.0;
  double b_at_h = 0.0;
  /// Profile quasi-likelihood at the optimum, (log nu2_min + 1) / 2.
  double quasi_loglik = 0.0;
  std::size_t n = 0;
  AsymptoticCov asymptotics;
  OptimizerDiagnostics diagnostics;
};

/// Quasi-Whittle estimate of (H, sigma). Throws DegenerateInput on all-zero data.
EstimateResult estimate(const IncrementSeries& series, const EstimatorConfig& config = {});
EstimateResult estimate(const IncrementSeries& series, const EstimatorConfig& config,
                        const RateMatrix& rate);

}  // namespace qwle
