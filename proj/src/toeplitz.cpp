#include "qwle/toeplitz.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "qwle/errors.hpp"
#include "qwle/fft.hpp"

namespace qwle {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi2 = 4.0 * kPi * kPi;

// kernel ~ u f_{H'} + v d/dH' f_{H'} near the origin
struct SingularPart {
  double ref_hurst;
  double u;
  double v;
};

SingularPart singular_part(const SpectralModel& m, Kernel kernel) {
  const double hurst = m.hurst();
  const double b = m.b();
  const double beta = m.dlog_b();
  switch (kernel) {
    case Kernel::f:
      return {hurst, 1.0, 0.0};
    case Kernel::g:
      return {hurst, 1.0 / b, 0.0};
    case Kernel::dg:
      return {hurst, -beta / b, 1.0 / b};
    case Kernel::h: {
      const double ref = 1.0 - hurst;
      const double lead = b / (kFourPi2 * m.c());
      return {ref, lead / eval_c(ref), 0.0};
    }
    case Kernel::dh: {
      const double ref = 1.0 - hurst;
      const double lead = b / (kFourPi2 * m.c());
      const double c_ref = eval_c(ref);
      const double v = -lead / c_ref;
      const double u = lead * (eval_dlog_c(ref) - m.dlog_c() + beta) / c_ref;
      return {ref, u, v};
    }
  }
  throw DomainError("unknown kernel");
}

std::vector<double> coefficients_on_grid(const SpectralModel& model, Kernel kernel,
                                         std::size_t count, std::size_t grid_points) {
  const std::size_t half = grid_points / 2;
  const auto sp = singular_part(model, kernel);
  const SpectralModel ref(sp.ref_hurst, model.config());
  const double step = kPi / static_cast<double>(half);
  std::vector<double> rem(half);
  for (std::size_t m = 0; m < half; ++m) {
    const double x = (static_cast<double>(m) + 0.5) * step;
    const auto rd = ref.log_density(x);
    const double fr = std::exp(rd.log_f);
    const double reference = sp.u * fr + sp.v * fr * rd.dlog_f;
    rem[m] = kernel_value(model, kernel, x) - reference;
  }
  const auto y = fft::dct2(rem);
  std::vector<double> out(count);
  for (std::size_t tau = 0; tau < count; ++tau) {
    const auto t = static_cast<long>(tau);
    double exact = sp.u * autocovariance(sp.ref_hurst, t);
    if (sp.v != 0.0) exact += sp.v * autocovariance_dh(sp.ref_hurst, t);
    out[tau] = step * y[tau] + exact;
  }
  return out;
}

}  // namespace

std::string_view to_string(Kernel k) {
  switch (k) {
    case Kernel::f: return "f";
    case Kernel::g: return "g";
    case Kernel::h: return "h";
    case Kernel::dh: return "dh";
    case Kernel::dg: return "dg";
  }
  return "?";
}

double kernel_value(const SpectralModel& model, Kernel kernel, double lambda) {
  switch (kernel) {
    case Kernel::f: return model.f(lambda);
    case Kernel::g: return model.g(lambda);
    case Kernel::h: return model.h(lambda);
    case Kernel::dh: return model.dh(lambda);
    case Kernel::dg: return model.dg(lambda);
  }
  throw DomainError("unknown kernel");
}

ToeplitzOperator::ToeplitzOperator(std::vector<double> first_row) : row_(std::move(first_row)) {
  if (row_.empty()) throw DimensionError("Toeplitz operator needs n >= 1");
}

std::vector<double> ToeplitzOperator::apply(std::span<const double> x) const {
  const std::size_t n = row_.size();
  if (x.size() != n) throw DimensionError("Toeplitz apply: dimension mismatch");
  const std::size_t m = fft::next_pow2(2 * n);
  std::vector<double> c(m, 0.0);
  std::vector<double> xp(m, 0.0);
  c[0] = row_[0];
  for (std::size_t k = 1; k < n; ++k) {
    c[k] = row_[k];
    c[m - k] = row_[k];
  }
  std::copy(x.begin(), x.end(), xp.begin());
  auto fc = fft::forward_real(c);
  const auto fx = fft::forward_real(xp);
  for (std::size_t k = 0; k < m; ++k) fc[k] *= fx[k];
  const auto y = fft::transform(fc, +1);
  std::vector<double> out(n);
  const double scale = 1.0 / static_cast<double>(m);
  for (std::size_t i = 0; i < n; ++i) out[i] = y[i].real() * scale;
  return out;
}

Eigen::MatrixXd ToeplitzOperator::dense() const {
  const auto n = static_cast<Eigen::Index>(row_.size());
  Eigen::MatrixXd a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = row_[static_cast<std::size_t>(std::abs(i - j))];
  return a;
}

std::vector<double> fourier_coefficients(const SpectralModel& model, Kernel kernel,
                                         std::size_t count, std::size_t grid_points) {
  if (grid_points < 2 * count || grid_points % 2 != 0) {
    throw DimensionError("fourier_coefficients: grid must be even and >= 2 * count");
  }
  return coefficients_on_grid(model, kernel, count, grid_points);
}

ToeplitzOperator build(const SpectralModel& model, Kernel kernel, std::size_t n,
                       const BuildOptions& options) {
  if (n == 0) throw DimensionError("build: n must be >= 1");
  const std::size_t grid = fft::next_pow2(std::max(options.min_grid, 8 * n));
  auto row = coefficients_on_grid(model, kernel, n, grid);
  if (options.certify) {
    const auto fine = coefficients_on_grid(model, kernel, n, 2 * grid);
    double scale = 0.0;
    double diff = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      scale = std::max(scale, std::abs(fine[k]));
      diff = std::max(diff, std::abs(fine[k] - row[k]));
    }
    if (!(diff <= options.certify_tol * std::max(scale, 1e-300))) {
      throw QuadratureError("Fourier coefficients of kernel " + std::string(to_string(kernel)) +
                            " did not converge under refinement (relative change " +
                            std::to_string(diff / scale) + ")");
    }
    row = fine;
  }
  for (double v : row) {
    if (!std::isfinite(v)) throw QuadratureError("non-finite Fourier coefficient");
  }
  return ToeplitzOperator(std::move(row));
}

double quad_form(const ToeplitzOperator& a, std::span<const double> x, std::span<const double> y) {
  if (x.size() != a.size() || y.size() != a.size()) {
    throw DimensionError("quad_form: dimension mismatch");
  }
  const auto ay = a.apply(y);
  double s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * ay[i];
  return s;
}

double trace_product(std::span<const ToeplitzOperator> ops) {
  if (ops.size() != 2 && ops.size() != 4) {
    throw DimensionError("trace_product: expects 2 or 4 operators");
  }
  const std::size_t n = ops.front().size();
  for (const auto& op : ops) {
    if (op.size() != n) throw DimensionError("trace_product: dimension mismatch");
  }
  if (n > kDenseCap) throw DimensionError("trace_product: n exceeds dense cap");
  if (ops.size() == 2) {
    return ops[0].dense().cwiseProduct(ops[1].dense().transpose()).sum();
  }
  const Eigen::MatrixXd left = ops[0].dense() * ops[1].dense();
  const Eigen::MatrixXd right = ops[2].dense() * ops[3].dense();
  return left.cwiseProduct(right.transpose()).sum();
}

double frobenius_deficit(const SpectralModel& model, std::size_t n) {
  if (n > kDenseCap) throw DimensionError("frobenius_deficit: n exceeds dense cap");
  const auto tg = build(model, Kernel::g, n);
  const auto th = build(model, Kernel::h, n);
  const Eigen::MatrixXd p = tg.dense() * th.dense();
  const double tr1 = p.trace();
  const double tr2 = p.cwiseProduct(p.transpose()).sum();
  const double value = static_cast<double>(n) - 2.0 * tr1 + tr2;
  if (value < -1e-8) {
    throw NumericalError("frobenius_deficit: trace identity went negative (" +
                         std::to_string(value) + ")");
  }
  return std::max(value, 0.0);
}

double loglog_slope(std::span<const std::size_t> ns, std::span<const double> values) {
  if (ns.size() != values.size() || ns.size() < 2) {
    throw DimensionError("loglog_slope: need at least two matching points");
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (!(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw NumericalError("loglog_slope: values must be finite and positive");
    }
    mx += std::log(static_cast<double>(ns[i]));
    my += std::log(values[i]);
  }
  mx /= static_cast<double>(ns.size());
  my /= static_cast<double>(ns.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double dx = std::log(static_cast<double>(ns[i])) - mx;
    sxy += dx * (std::log(values[i]) - my);
    sxx += dx * dx;
  }
  return sxy / sxx;
}

namespace {
void check_ns(std::span<const std::size_t> ns) {
  if (ns.size() < 2) throw DimensionError("need at least two dimensions");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] == 0 || ns[i] > kDenseCap) throw DimensionError("dimension outside (0, dense cap]");
    if (i > 0 && ns[i] <= ns[i - 1]) throw DimensionError("dimensions must be strictly increasing");
  }
}
}  // namespace

FormRates quadratic_form_rates(const SpectralModel& model, int j, std::span<const std::size_t> ns) {
  if (j != 0 && j != 1) throw DomainError("quadratic_form_rates: j must be 0 or 1");
  check_ns(ns);
  FormRates out;
  out.j = j;
  const double bound = 2.0 * (1.0 - model.hurst());
  for (RateFit* fit : {&out.single, &out.sandwich}) {
    fit->ns.assign(ns.begin(), ns.end());
    fit->claimed_bound = bound;
    fit->slack = 0.15;
  }
  const Kernel hk = j == 0 ? Kernel::h : Kernel::dh;
  for (std::size_t n : ns) {
    const auto th = build(model, hk, n);
    const auto tg = build(model, Kernel::g, n);
    const std::vector<double> ones(n, 1.0);
    const auto th1 = th.apply(ones);
    double single = 0.0;
    for (double v : th1) single += v;
    out.single.values.push_back(std::abs(single));
    out.sandwich.values.push_back(quad_form(tg, th1, th1));
  }
  out.single.fitted_slope = loglog_slope(ns, out.single.values);
  out.sandwich.fitted_slope = loglog_slope(ns, out.sandwich.values);
  return out;
}

bool FrobeniusFit::pass(double max_slope, double zero_tol) const {
  if (all_zero) return std::all_of(values.begin(), values.end(), [&](double v) { return v <= zero_tol; });
  return fitted_slope <= max_slope;
}

FrobeniusFit frobenius_rates(const SpectralModel& model, std::span<const std::size_t> ns) {
  check_ns(ns);
  FrobeniusFit out;
  out.ns.assign(ns.begin(), ns.end());
  for (std::size_t n : ns) out.values.push_back(frobenius_deficit(model, n));
  out.all_zero = std::all_of(out.values.begin(), out.values.end(), [](double v) { return v <= 1e-8; });
  out.fitted_slope = out.all_zero ? 0.0 : loglog_slope(ns, out.values);
  return out;
}

}  // namespace qwle
