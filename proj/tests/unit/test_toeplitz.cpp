#include <gtest/gtest.h>

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qwle/errors.hpp"
#include "qwle/toeplitz.hpp"

using namespace qwle;
using std::numbers::pi;

namespace {

std::vector<double> random_vector(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

Eigen::Map<const Eigen::VectorXd> as_eigen(const std::vector<double>& v) {
  return {v.data(), static_cast<Eigen::Index>(v.size())};
}

// Oracle Fourier coefficient via the library's kernel, integrated by the oracle quadrature.
double oracle_coefficient(const SpectralModel& m, Kernel k, int tau, double q) {
  return 2.0 * oracle::integral_0_pi(
                   [&](double l) { return std::cos(tau * l) * kernel_value(m, k, l); }, q, 1 << 16);
}

}  // namespace

TEST(FourierCoefficients, DensityRowIsAutocovariance) {
  for (double h : {0.2, 0.5, 0.7, 0.8}) {
    const auto t = build(SpectralModel(h), Kernel::f, 64);
    for (std::size_t k = 0; k < 64; ++k) {
      EXPECT_NEAR(t.first_row()[k], oracle::autocov(h, static_cast<long>(k)), 1e-6)
          << "H=" << h << " k=" << k;
    }
  }
}

TEST(FourierCoefficients, WhiteNoiseKernels) {
  const SpectralModel m(0.5);
  const auto h = build(m, Kernel::h, 16);
  const auto g = build(m, Kernel::g, 4);
  // Exact up to the ~1e-10 relative accuracy of the aliasing series.
  EXPECT_NEAR(h.first_row()[0], 1.0 / (2.0 * pi), 1e-10);
  EXPECT_NEAR(g.first_row()[0], 2.0 * pi, 1e-9);
  for (std::size_t k = 1; k < 16; ++k) EXPECT_NEAR(h.first_row()[k], 0.0, 1e-10);
  for (std::size_t k = 1; k < 4; ++k) EXPECT_NEAR(g.first_row()[k], 0.0, 1e-9);
}

TEST(FourierCoefficients, AllKernelsAgainstOracleQuadrature) {
  for (double h : {0.3, 0.7}) {
    const SpectralModel m(h);
    for (Kernel k : {Kernel::g, Kernel::h, Kernel::dg, Kernel::dh}) {
      const auto t = build(m, k, 9);
      // g, dg behave like |l|^{1-2H}; h, dh like |l|^{2H-1}, up to logarithms.
      const double alpha = (k == Kernel::g || k == Kernel::dg) ? 1.0 - 2.0 * h : 2.0 * h - 1.0;
      const double q = std::min(2.0 / (1.0 + alpha), 20.0);
      for (int tau : {0, 1, 8}) {
        const double want = oracle_coefficient(m, k, tau, q);
        EXPECT_NEAR(t.first_row()[static_cast<std::size_t>(tau)], want,
                    1e-6 * std::max(1.0, std::abs(want)))
            << "H=" << h << " kernel=" << to_string(k) << " tau=" << tau;
      }
    }
  }
}

TEST(FourierCoefficients, ExactAutocovarianceDerivativeForDg) {
  // g = f / b, so hat g(tau) = gamma(tau)/b and hat dg = (dgamma - gamma dlog_b)/b.
  const double h = 0.35;
  const SpectralModel m(h);
  const auto t = build(m, Kernel::dg, 8);
  const double eps = 1e-6;
  for (long k = 0; k < 8; ++k) {
    const double dgamma = (oracle::autocov(h + eps, k) - oracle::autocov(h - eps, k)) / (2 * eps);
    const double want = (dgamma - oracle::autocov(h, k) * m.dlog_b()) / m.b();
    EXPECT_NEAR(t.first_row()[static_cast<std::size_t>(k)], want, 1e-6);
  }
}

TEST(ToeplitzOperator, QuadraticFormSmallCases) {
  const auto t = build(SpectralModel(0.5), Kernel::h, 4);
  const std::vector<double> ones(4, 1.0), zeros(4, 0.0);
  EXPECT_NEAR(quad_form(t, ones, ones), 4.0 / (2.0 * pi), 1e-9);
  EXPECT_EQ(quad_form(t, zeros, ones), 0.0);
  EXPECT_THROW(quad_form(t, std::vector<double>(3, 1.0), ones), DimensionError);
}

TEST(ToeplitzOperator, FastProductMatchesDense) {
  for (std::size_t n : {1u, 2u, 7u, 64u, 500u, 512u}) {
    const auto row = random_vector(n, 3 + static_cast<unsigned>(n));
    const ToeplitzOperator t(row);
    const auto x = random_vector(n, 11), y = random_vector(n, 12);
    const Eigen::MatrixXd dense = oracle::dense_toeplitz(row);
    const double want = as_eigen(x).dot(dense * as_eigen(y));
    const double got = quad_form(t, x, y);
    EXPECT_NEAR(got, want, 1e-10 * (std::abs(want) + as_eigen(x).norm() * as_eigen(y).norm()));
    EXPECT_NEAR(quad_form(t, x, y), quad_form(t, y, x), 1e-12 * std::abs(want) + 1e-13);
    EXPECT_TRUE(t.dense() == dense);
  }
}

TEST(ToeplitzOperator, KernelMatricesArePositiveDefinite) {
  for (double h : {0.2, 0.5, 0.8}) {
    const SpectralModel m(h);
    for (Kernel k : {Kernel::g, Kernel::h}) {
      const auto t = build(m, k, 256);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t.dense(), Eigen::EigenvaluesOnly);
      EXPECT_GT(es.eigenvalues().minCoeff(), 0.0) << "H=" << h << " kernel=" << to_string(k);
    }
  }
}

TEST(TraceProduct, DiagonalAndDenseCases) {
  const SpectralModel white(0.5);
  const std::size_t n = 32;
  const std::vector<ToeplitzOperator> gh{build(white, Kernel::g, n), build(white, Kernel::h, n)};
  EXPECT_NEAR(trace_product(gh), static_cast<double>(n), 1e-9 * n);

  const std::vector<ToeplitzOperator> diag{ToeplitzOperator({3.0, 0, 0, 0, 0}),
                                           ToeplitzOperator({0.5, 0, 0, 0, 0})};
  EXPECT_DOUBLE_EQ(trace_product(diag), 1.5 * 5);

  const auto a = build(SpectralModel(0.7), Kernel::f, 8);
  const std::vector<ToeplitzOperator> aa{a, a};
  const Eigen::MatrixXd d = a.dense();
  EXPECT_NEAR(trace_product(aa), (d * d).trace(), 1e-12);
  const std::vector<ToeplitzOperator> aaaa{a, a, a, a};
  EXPECT_NEAR(trace_product(aaaa), (d * d * d * d).trace(), 1e-10);

  const std::vector<ToeplitzOperator> bad{a, build(white, Kernel::g, 4)};
  EXPECT_THROW(trace_product(bad), DimensionError);
  const std::vector<ToeplitzOperator> three{a, a, a};
  EXPECT_THROW(trace_product(three), DimensionError);
  const std::vector<ToeplitzOperator> big{ToeplitzOperator(std::vector<double>(kDenseCap + 1, 0.0)),
                                          ToeplitzOperator(std::vector<double>(kDenseCap + 1, 0.0))};
  EXPECT_THROW(trace_product(big), DimensionError);
}

TEST(FrobeniusDeficit, WhiteNoiseIsZero) {
  for (std::size_t n : {16u, 128u}) EXPECT_LE(frobenius_deficit(SpectralModel(0.5), n), 1e-8);
}

TEST(FrobeniusDeficit, TraceIdentityMatchesMatrixSquareRoot) {
  const SpectralModel m(0.3);
  const std::size_t n = 64;
  const Eigen::MatrixXd g = build(m, Kernel::g, n).dense();
  const Eigen::MatrixXd h = build(m, Kernel::h, n).dense();
  const Eigen::MatrixXd r = oracle::sqrtm_sym(g);
  const Eigen::MatrixXd e = Eigen::MatrixXd::Identity(n, n) - r * h * r;
  EXPECT_NEAR(frobenius_deficit(m, n), e.squaredNorm(), 1e-6);
}

TEST(FrobeniusDeficit, SizeCap) {
  EXPECT_THROW(frobenius_deficit(SpectralModel(0.3), kDenseCap + 1), DimensionError);
}

TEST(RateFits, SlopeHelper) {
  const std::vector<std::size_t> ns{64, 128, 256};
  const std::vector<double> v{64.0 * 64.0, 128.0 * 128.0, 256.0 * 256.0};
  EXPECT_NEAR(loglog_slope(ns, v), 2.0, 1e-12);
}

TEST(RateFits, WhiteNoiseSaturatesBound) {
  const std::vector<std::size_t> ns{64, 128, 256, 512};
  const auto fit = quadratic_form_rates(SpectralModel(0.5), 0, ns);
  for (std::size_t i = 0; i < ns.size(); ++i) {
    EXPECT_NEAR(fit.single.values[i], static_cast<double>(ns[i]) / (2.0 * pi), 1e-9 * ns[i]);
  }
  EXPECT_NEAR(fit.single.fitted_slope, 1.0, 1e-9);
  EXPECT_NEAR(fit.single.claimed_bound, 1.0, 1e-15);
  EXPECT_TRUE(fit.single.pass());
  EXPECT_TRUE(fit.sandwich.pass());
}

TEST(RateFits, ValuesMatchDenseQuadraticForms) {
  const SpectralModel m(0.8);
  const std::vector<std::size_t> ns{32, 64};
  for (int j : {0, 1}) {
    const auto fit = quadratic_form_rates(m, j, ns);
    for (std::size_t i = 0; i < ns.size(); ++i) {
      const auto n = static_cast<Eigen::Index>(ns[i]);
      const Eigen::MatrixXd hj = build(m, j == 0 ? Kernel::h : Kernel::dh, ns[i]).dense();
      const Eigen::MatrixXd g = build(m, Kernel::g, ns[i]).dense();
      const Eigen::VectorXd one = Eigen::VectorXd::Ones(n);
      EXPECT_NEAR(fit.single.values[i], std::abs(one.dot(hj * one)), 1e-8 * n);
      const Eigen::VectorXd v = hj * one;
      EXPECT_NEAR(fit.sandwich.values[i], v.dot(g * v), 1e-8 * n * n);
    }
  }
}

TEST(RateFits, DensityRateLowHurst) {
  const std::vector<std::size_t> ns{64, 128, 256, 512};
  const auto fit = quadratic_form_rates(SpectralModel(0.8), 0, ns);
  EXPECT_LE(fit.single.fitted_slope, 0.55);
  EXPECT_LE(fit.sandwich.fitted_slope, 0.55);
}

TEST(RateFits, DerivativeSingleFormAntiPersistent) {
  const std::vector<std::size_t> ns{64, 128, 256, 512};
  const auto fit = quadratic_form_rates(SpectralModel(0.2), 1, ns);
  EXPECT_NEAR(fit.single.claimed_bound, 1.6, 1e-15);
  EXPECT_LE(fit.single.fitted_slope, 1.75);
}

TEST(RateFits, FrobeniusSlopeIsSmall) {
  const std::vector<std::size_t> ns{64, 128, 256, 512};
  const auto fit = frobenius_rates(SpectralModel(0.7), ns);
  EXPECT_FALSE(fit.all_zero);
  EXPECT_LE(fit.fitted_slope, 0.3);
  EXPECT_TRUE(fit.pass());
  const auto white = frobenius_rates(SpectralModel(0.5), ns);
  EXPECT_TRUE(white.all_zero);
  EXPECT_TRUE(white.pass());
}
