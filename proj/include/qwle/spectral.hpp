#pragma once

#include <Eigen/Core>

#include <cstddef>

namespace qwle {

/// How the tail of the aliasing series sum_{|j|>J} |lambda + 2 pi j|^{-1-2H} is approximated.
enum class TailRule {
  euler_maclaurin,  ///< integral + Euler-Maclaurin corrections through the B_14 term (default)
  paxson,           ///< Paxson's averaged-integral correction
};

struct SpectralConfig {
  int paxson_terms = 3;            ///< J: explicit series terms on each side of j = 0
  std::size_t quad_points = 1024;  ///< nodes on the uniform part of the graded quadrature mesh
  TailRule tail = TailRule::euler_maclaurin;
};

/**
 * Spectral density of unit-variance fractional Gaussian noise and the
 * quantities derived from it:
 *
 *   f_H(l) = C_H 2(1 - cos l) sum_j |l + 2 pi j|^{-1-2H},
 *   C_H    = Gamma(2H + 1) sin(pi H) / (2 pi),
 *   b(H)   = exp((1/2pi) int log f_H),   g_H = f_H / b(H),   h_H = 1 / (4 pi^2 g_H).
 *
 * b(H) and d/dH log b(H) are computed once at construction. The object is
 * immutable and safe to share between threads.
 */
class SpectralModel {
 public:
  explicit SpectralModel(double hurst, SpectralConfig config = {});

  double hurst() const { return hurst_; }
  const SpectralConfig& config() const { return config_; }

  double c() const { return c_; }
  double dlog_c() const { return dlog_c_; }
  double b() const { return b_; }
  /// d/dH log b(H), differentiated under the same quadrature rule as b.
  double dlog_b() const { return dlog_b_; }

  // Densities; lambda in [-pi, pi] \ {0}, otherwise DomainError.
  double f(double lambda) const;
  double g(double lambda) const;
  double h(double lambda) const;
  double log_f(double lambda) const;
  double dlog_f(double lambda) const;
  /// d/dH log g_H(lambda).
  double dlog_g(double lambda) const;
  /// g^{(1)} = d/dH g_H.
  double dg(double lambda) const;
  /// h^{(1)} = d/dH h_H.
  double dh(double lambda) const;

  struct LogDensity {
    double log_f;
    double dlog_f;
  };
  /// log f and d/dH log f in one pass over the series. No domain check; |lambda| in (0, pi].
  LogDensity log_density(double lambda) const;
  /// log f only (cheaper). No domain check.
  double log_f_unchecked(double lambda) const;

 private:
  double hurst_;
  SpectralConfig config_;
  double c_ = 0.0;
  double log_c_ = 0.0;
  double dlog_c_ = 0.0;
  double b_ = 0.0;
  double dlog_b_ = 0.0;
};

/// C_H = Gamma(2H + 1) sin(pi H) / (2 pi).
double eval_c(double hurst);
/// d/dH log C_H = 2 psi(2H + 1) + pi cot(pi H).
double eval_dlog_c(double hurst);

/// fGn autocovariance gamma_H(k) = (|k+1|^{2H} - 2|k|^{2H} + |k-1|^{2H}) / 2.
double autocovariance(double hurst, long lag);
/// d/dH gamma_H(k).
double autocovariance_dh(double hurst, long lag);

/// Raw aliasing sum S(lambda) = sum_j |lambda + 2 pi j|^{-1-2H} and its H-derivative.
struct SeriesValue {
  double sum;
  double dsum_dh;
};
SeriesValue aliasing_series(double lambda, double hurst, int terms, TailRule rule);

struct InformationQuantities {
  double g_h = 0.0;          ///< G(H) = (1/4pi) int (d/dH log g_H)^2
  Eigen::Matrix2d fisher;    ///< F(theta) for f_theta = sigma^2 f_H, theta = (H, sigma)
  double i_h = 0.0;          ///< I(H) = (1/2pi) int (g^{(1)}/g)^2 = 2 G(H)
};

InformationQuantities information(const SpectralModel& model, double sigma);

}  // namespace qwle
