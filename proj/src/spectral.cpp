#include "qwle/spectral.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <numbers>
#include <string>

#include "qwle/errors.hpp"
#include "qwle/quadrature.hpp"

namespace qwle {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_hurst(double hurst) {
  if (!(hurst > 0.0 && hurst < 1.0)) {
    throw DomainError("Hurst parameter must lie in (0,1), got " + std::to_string(hurst));
  }
}

void check_lambda(double lambda) {
  if (!(std::abs(lambda) <= kPi) || lambda == 0.0) {
    throw DomainError("frequency must lie in [-pi,pi] \\ {0}, got " + std::to_string(lambda));
  }
}

// Euler-Maclaurin tail sum_{j >= m} (2 pi j + shift)^{-d}, m = J + 1, and its d-derivative.
template <bool Deriv>
void em_tail(double shift, int m, double d, double& s, double& ds) {
  const double a = kTwoPi * m + shift;
  const double la = std::log(a);
  const double p = std::exp(-d * la);
  const double q = kTwoPi / a;
  // integral term a^{1-d} / (2 pi (d - 1))
  const double integral = a * p / (kTwoPi * (d - 1.0));
  // correction terms coef_k (d)_k q^k p for odd k <= 13, coef_k = B_{k+1} / (k+1)!
  double rising = 1.0;
  double harmonic = 0.0;
  double qk = 1.0;
  double corr = 0.5 * p;
  double dcorr = -la * corr;
  static constexpr double kCoef[14] = {0.0, 1.0 / 12.0,        0.0, -1.0 / 720.0,
                                       0.0, 1.0 / 30240.0,     0.0, -1.0 / 1209600.0,
                                       0.0, 1.0 / 47900160.0,  0.0, -691.0 / 1307674368000.0,
                                       0.0, 7.0 / 523069747200.0};
  for (int k = 1; k <= 13; ++k) {
    rising *= d + (k - 1);
    if constexpr (Deriv) harmonic += 1.0 / (d + (k - 1));
    qk *= q;
    if (kCoef[k] != 0.0) {
      const double t = kCoef[k] * rising * qk * p;
      corr += t;
      if constexpr (Deriv) dcorr += t * (harmonic - la);
    }
  }
  s += integral + corr;
  if constexpr (Deriv) ds += integral * (-la - 1.0 / (d - 1.0)) + dcorr;
}

template <bool Deriv>
void paxson_tail(double lambda, int terms, double hurst, double& s, double& ds) {
  const double e = -2.0 * hurst;
  const double scale = 1.0 / (8.0 * hurst * kPi);
  for (int j : {terms, terms + 1}) {
    for (double a : {kTwoPi * j + lambda, kTwoPi * j - lambda}) {
      const double t = std::pow(a, e) * scale;
      s += t;
      if constexpr (Deriv) ds += t * (-2.0 * std::log(a) - 1.0 / hurst);
    }
  }
}

// sum and d/dd of sum_j |lambda + 2 pi j|^{-d}, lambda in (0, pi].
template <bool Deriv>
void series(double lambda, double hurst, int terms, TailRule rule, double& s, double& ds) {
  const double d = 1.0 + 2.0 * hurst;
  s = 0.0;
  ds = 0.0;
  auto add = [&](double a) {
    const double la = std::log(a);
    const double t = std::exp(-d * la);
    s += t;
    if constexpr (Deriv) ds -= la * t;
  };
  add(lambda);
  for (int j = 1; j <= terms; ++j) {
    add(kTwoPi * j + lambda);
    add(kTwoPi * j - lambda);
  }
  if (rule == TailRule::euler_maclaurin) {
    double ts = 0.0;
    double tds = 0.0;
    em_tail<Deriv>(lambda, terms + 1, d, ts, tds);
    em_tail<Deriv>(-lambda, terms + 1, d, ts, tds);
    s += ts;
    ds += tds;
  } else {
    double ts = 0.0;
    double tds = 0.0;
    paxson_tail<Deriv>(lambda, terms, hurst, ts, tds);
    s += ts;
    // paxson_tail already returns d/dH; convert to d/dd for uniformity
    ds += 0.5 * tds;
  }
}

}  // namespace

double eval_c(double hurst) {
  check_hurst(hurst);
  return std::tgamma(2.0 * hurst + 1.0) * std::sin(kPi * hurst) / kTwoPi;
}

double eval_dlog_c(double hurst) {
  check_hurst(hurst);
  return 2.0 * boost::math::digamma(2.0 * hurst + 1.0) + kPi / std::tan(kPi * hurst);
}

double autocovariance(double hurst, long lag) {
  check_hurst(hurst);
  const double k = std::abs(static_cast<double>(lag));
  const double e = 2.0 * hurst;
  return 0.5 * (std::pow(k + 1.0, e) - 2.0 * std::pow(k, e) + std::pow(std::abs(k - 1.0), e));
}

double autocovariance_dh(double hurst, long lag) {
  check_hurst(hurst);
  const double k = std::abs(static_cast<double>(lag));
  const double e = 2.0 * hurst;
  auto term = [e](double x) { return x == 0.0 ? 0.0 : std::pow(x, e) * std::log(x); };
  return term(k + 1.0) - 2.0 * term(k) + term(std::abs(k - 1.0));
}

SeriesValue aliasing_series(double lambda, double hurst, int terms, TailRule rule) {
  check_hurst(hurst);
  check_lambda(lambda);
  double s = 0.0;
  double ds = 0.0;
  series<true>(std::abs(lambda), hurst, terms, rule, s, ds);
  return {s, 2.0 * ds};
}

SpectralModel::SpectralModel(double hurst, SpectralConfig config)
    : hurst_(hurst), config_(config) {
  check_hurst(hurst);
  if (config_.paxson_terms < 1) throw DomainError("paxson_terms must be >= 1");
  if (config_.quad_points < 64) throw DomainError("quad_points must be >= 64");
  c_ = eval_c(hurst);
  log_c_ = std::log(c_);
  dlog_c_ = eval_dlog_c(hurst);

  const auto& mesh = quad::shared_mesh(config_.quad_points);
  const auto& x = mesh.nodes();
  std::vector<double> logs(x.size());
  std::vector<double> dlogs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto v = log_density(x[i]);
    logs[i] = v.log_f;
    dlogs[i] = v.dlog_f;
  }
  const auto at_eps = log_density(mesh.eps());
  const double mean_log = mesh.combine_half(logs, at_eps.log_f, 0.0) / kPi;
  const double mean_dlog = mesh.combine_half(dlogs, at_eps.dlog_f, 0.0) / kPi;
  if (!std::isfinite(mean_log) || !std::isfinite(mean_dlog)) {
    throw QuadratureError("b(H) quadrature is not finite at H=" + std::to_string(hurst));
  }
  b_ = std::exp(mean_log);
  dlog_b_ = mean_dlog;
}

SpectralModel::LogDensity SpectralModel::log_density(double lambda) const {
  const double l = std::abs(lambda);
  double s = 0.0;
  double ds = 0.0;
  series<true>(l, hurst_, config_.paxson_terms, config_.tail, s, ds);
  const double log_trig = 2.0 * std::log(2.0 * std::sin(0.5 * l));
  return {log_c_ + log_trig + std::log(s), dlog_c_ + 2.0 * ds / s};
}

double SpectralModel::log_f_unchecked(double lambda) const {
  const double l = std::abs(lambda);
  double s = 0.0;
  double ds = 0.0;
  series<false>(l, hurst_, config_.paxson_terms, config_.tail, s, ds);
  return log_c_ + 2.0 * std::log(2.0 * std::sin(0.5 * l)) + std::log(s);
}

double SpectralModel::f(double lambda) const {
  check_lambda(lambda);
  const double l = std::abs(lambda);
  double s = 0.0;
  double ds = 0.0;
  series<false>(l, hurst_, config_.paxson_terms, config_.tail, s, ds);
  const double st = std::sin(0.5 * l);
  return c_ * 4.0 * st * st * s;
}

double SpectralModel::log_f(double lambda) const {
  check_lambda(lambda);
  return log_f_unchecked(lambda);
}

double SpectralModel::g(double lambda) const { return f(lambda) / b_; }

double SpectralModel::h(double lambda) const {
  return b_ / (4.0 * kPi * kPi * f(lambda));
}

double SpectralModel::dlog_f(double lambda) const {
  check_lambda(lambda);
  return log_density(lambda).dlog_f;
}

double SpectralModel::dlog_g(double lambda) const { return dlog_f(lambda) - dlog_b_; }

double SpectralModel::dg(double lambda) const {
  check_lambda(lambda);
  const auto v = log_density(lambda);
  return std::exp(v.log_f) / b_ * (v.dlog_f - dlog_b_);
}

double SpectralModel::dh(double lambda) const {
  check_lambda(lambda);
  const auto v = log_density(lambda);
  return -b_ / (4.0 * kPi * kPi * std::exp(v.log_f)) * (v.dlog_f - dlog_b_);
}

InformationQuantities information(const SpectralModel& model, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("sigma must be positive");
  const auto& mesh = quad::shared_mesh(model.config().quad_points);
  const auto& x = mesh.nodes();
  const double beta = model.dlog_b();
  std::vector<double> sq(x.size());
  std::vector<double> lin(x.size());
  std::vector<double> shape(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = model.log_density(x[i]).dlog_f;
    sq[i] = d * d;
    lin[i] = d;
    shape[i] = (d - beta) * (d - beta);
  }
  const double d_eps = model.log_density(mesh.eps()).dlog_f;
  // (1/4pi) int_{-pi}^{pi} = (1/2pi) int_0^pi for even integrands
  const double k = 1.0 / kTwoPi;
  const double f11 = k * mesh.combine_half(sq, d_eps * d_eps, 0.0);
  const double f12 = k * mesh.combine_half(lin, d_eps, 0.0) * (2.0 / sigma);
  const double gh = k * mesh.combine_half(shape, (d_eps - beta) * (d_eps - beta), 0.0);
  if (!std::isfinite(f11) || !std::isfinite(f12) || !std::isfinite(gh)) {
    throw QuadratureError("information quadrature is not finite");
  }
  InformationQuantities out;
  out.fisher << f11, f12, f12, 2.0 / (sigma * sigma);
  out.g_h = gh;
  out.i_h = 2.0 * gh;
  return out;
}

}  // namespace qwle
