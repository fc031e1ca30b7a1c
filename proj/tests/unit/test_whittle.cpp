#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "qwle/errors.hpp"
#include "qwle/simulate.hpp"
#include "qwle/whittle.hpp"

using namespace qwle;
using std::numbers::pi;

namespace {

std::vector<double> gaussian(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> z;
  std::vector<double> v(n);
  for (auto& x : v) x = z(rng);
  return v;
}

IncrementSeries fgn_path(double h, std::size_t n, std::uint64_t seed) {
  ModelSpec spec;
  spec.hurst = h;
  spec.n = n;
  spec.seed = seed;
  return sample_path(spec);
}

double rel_gap(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST(IncrementSeries, Validation) {
  EXPECT_THROW(IncrementSeries::from_increments(std::vector<double>(7, 1.0)), DomainError);
  std::vector<double> bad(16, 0.0);
  bad[3] = std::nan("");
  EXPECT_THROW(IncrementSeries::from_increments(bad), DomainError);
  const auto s = IncrementSeries::from_increments(std::vector<double>(16, 0.5));
  EXPECT_EQ(s.size(), 16u);
  EXPECT_EQ(s.delta(), 1.0 / 16.0);
  EXPECT_FALSE(s.demeaned());
}

TEST(IncrementSeries, LevelsAreDifferenced) {
  const std::vector<double> levels{2.0, 2.5, 1.5, 1.0, 3.0, 3.25, 3.0, 2.0, 2.5};
  const auto s = IncrementSeries::from_levels(levels);
  ASSERT_EQ(s.size(), 8u);
  for (std::size_t j = 0; j < 8; ++j) EXPECT_EQ(s.increments()[j], levels[j + 1] - levels[j]);
}

TEST(IncrementSeries, DemeanFlag) {
  auto x = gaussian(32, 1);
  for (auto& v : x) v += 3.0;
  const auto s = IncrementSeries::from_increments(x, true);
  EXPECT_TRUE(s.demeaned());
  double sum = 0.0;
  for (double v : s.increments()) sum += v;
  EXPECT_NEAR(sum, 0.0, 1e-12);
}

TEST(Periodogram, ImpulseIsFlat) {
  for (std::size_t n : {8u, 13u, 64u}) {
    std::vector<double> x(n, 0.0);
    x[0] = 1.0;
    const auto p = periodogram(IncrementSeries::from_increments(x));
    ASSERT_EQ(p.values.size(), n - 1);
    for (double v : p.values) EXPECT_NEAR(v, 1.0 / (2.0 * pi * n), 1e-15);
    for (std::size_t j = 1; j < n; ++j) EXPECT_NEAR(p.freqs[j - 1], 2.0 * pi * j / n, 1e-14);
  }
}

TEST(Periodogram, ConstantVanishesAwayFromZero) {
  const auto p = periodogram(IncrementSeries::from_increments(std::vector<double>(32, 2.5)));
  for (double v : p.values) EXPECT_NEAR(v, 0.0, 1e-25);
}

TEST(Periodogram, MatchesNaiveDftAndIsSymmetric) {
  const auto x = gaussian(16, 5);
  const auto p = periodogram(IncrementSeries::from_increments(x));
  const auto dft = oracle::naive_dft(x);
  for (std::size_t j = 1; j < 16; ++j) {
    EXPECT_NEAR(p.values[j - 1], std::norm(dft[j]) / (2.0 * pi * 16), 1e-12);
    EXPECT_NEAR(p.values[j - 1], p.values[16 - j - 1], 1e-14);
  }
}

TEST(Periodogram, Parseval) {
  const std::size_t n = 1000;
  const auto x = gaussian(n, 9);
  const auto p = periodogram(IncrementSeries::from_increments(x));
  double sum0 = 0.0, energy = 0.0;
  for (double v : x) {
    sum0 += v;
    energy += v * v;
  }
  double total = sum0 * sum0 / (2.0 * pi * n);  // the excluded zero frequency
  for (double v : p.values) total += v;
  EXPECT_NEAR(2.0 * pi / n * total, energy / n, 1e-10 * energy / n);
}

TEST(Objective, WhiteNoiseExactMode) {
  const auto x = gaussian(300, 2);
  double energy = 0.0;
  for (double v : x) energy += v * v;
  const auto s = IncrementSeries::from_increments(x);
  EXPECT_NEAR(nu2(s, 0.5, ObjectiveMode::exact), energy / (2.0 * pi * 300), 1e-10 * energy / 300);
}

TEST(Objective, ScalesQuadratically) {
  const auto s = fgn_path(0.6, 256, 3);
  for (ObjectiveMode mode : {ObjectiveMode::fast, ObjectiveMode::exact}) {
    for (double h : {0.2, 0.6}) {
      const double base = nu2(s, h, mode);
      EXPECT_NEAR(nu2(s.scaled(3.0), h, mode), 9.0 * base, 1e-12 * 9.0 * base);
    }
  }
}

TEST(Objective, FastModeIgnoresConstantShift) {
  const auto s = fgn_path(0.4, 512, 4);
  for (double h : {0.1, 0.4, 0.9}) {
    EXPECT_NEAR(nu2(s.shifted(0.01), h, ObjectiveMode::fast), nu2(s, h, ObjectiveMode::fast),
                1e-12 * nu2(s, h, ObjectiveMode::fast));
  }
}

TEST(Objective, FastAndExactModesAgree) {
  const struct { std::size_t n; double tol; } cases[] = {{256, 0.05}, {1024, 0.02}};
  for (const auto& c : cases) {
    for (double h : {0.3, 0.5, 0.7}) {
      const auto s = fgn_path(h, c.n, 100 + c.n);
      const double fast = nu2(s, h, ObjectiveMode::fast);
      const double exact = nu2(s, h, ObjectiveMode::exact);
      EXPECT_LE(rel_gap(fast, exact), c.tol) << "n=" << c.n << " H=" << h;
    }
  }
}

TEST(Objective, DomainAndCap) {
  const auto s = fgn_path(0.5, 64, 1);
  EXPECT_THROW(nu2(s, 0.0, ObjectiveMode::fast), DomainError);
  EXPECT_THROW(nu2(s, 1.2, ObjectiveMode::exact), DomainError);
  EXPECT_GT(nu2(s, 0.5, ObjectiveMode::fast), 0.0);
}

TEST(Profile, SingletonAndContinuity) {
  const auto s = fgn_path(0.5, 1024, 8);
  const std::vector<double> one{0.42};
  const auto single = objective_profile(s, one);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].first, 0.42);
  EXPECT_EQ(single[0].second, nu2(s, 0.42, ObjectiveMode::fast));

  std::vector<double> grid;
  for (double h = 0.1; h < 0.9001; h += 1e-3) grid.push_back(h);
  const auto curve = objective_profile(s, grid);
  for (std::size_t i = 1; i < curve.size(); ++i) {
    EXPECT_LE(rel_gap(curve[i].second, curve[i - 1].second), 0.01);
  }
  const std::vector<double> unsorted{0.5, 0.3};
  EXPECT_THROW(objective_profile(s, unsorted), DomainError);
}

TEST(Profile, WhiteNoiseMinimumAtHalf) {
  const std::vector<double> grid{0.3, 0.5, 0.7};
  int hits = 0;
  for (std::uint64_t r = 0; r < 100; ++r) {
    const auto curve = objective_profile(fgn_path(0.5, 4096, replication_seed(77, r)), grid);
    if (curve[1].second < curve[0].second && curve[1].second < curve[2].second) ++hits;
  }
  EXPECT_GE(hits, 95);
}

TEST(Profile, ArgminIsScaleInvariant) {
  const auto s = fgn_path(0.25, 512, 6);
  std::vector<double> grid;
  for (double h = 0.05; h < 0.96; h += 0.01) grid.push_back(h);
  auto argmin = [&](const IncrementSeries& x) {
    const auto c = objective_profile(x, grid);
    std::size_t best = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
      if (c[i].second < c[best].second) best = i;
    return best;
  };
  EXPECT_EQ(argmin(s), argmin(s.scaled(0.01)));
  EXPECT_EQ(argmin(s), argmin(s.scaled(50.0)));
}
