#include "qwle/quadrature.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace qwle::quad {

GaussLegendre gauss_legendre(std::size_t order) {
  if (order == 0) throw std::invalid_argument("gauss_legendre: order must be positive");
  GaussLegendre rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const auto n = static_cast<double>(order);
  for (std::size_t i = 0; i < (order + 1) / 2; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0;
      double p1 = z;
      for (std::size_t k = 2; k <= order; ++k) {
        const auto kk = static_cast<double>(k);
        const double p2 = ((2.0 * kk - 1.0) * z * p1 - (kk - 1.0) * p0) / kk;
        p0 = p1;
        p1 = p2;
      }
      if (order == 1) p0 = 1.0;
      dp = n * (z * p1 - p0) / (z * z - 1.0);
      const double dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[order - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

GradedMesh::GradedMesh(std::size_t quad_points) {
  const std::size_t panels = quad_points / kOrder;
  if (panels < 4) throw std::invalid_argument("GradedMesh: quad_points must be >= 64");
  const auto gl = gauss_legendre(kOrder);
  auto add_panel = [&](double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    for (std::size_t k = 0; k < kOrder; ++k) {
      nodes_.push_back(mid + half * gl.nodes[k]);
      weights_.push_back(half * gl.weights[k]);
    }
  };
  const double width = std::numbers::pi / static_cast<double>(panels);
  for (std::size_t p = 1; p < panels; ++p) {
    add_panel(width * static_cast<double>(p), width * static_cast<double>(p + 1));
  }
  double right = width;
  for (std::size_t level = 0; level < kGeometricLevels; ++level) {
    add_panel(0.5 * right, right);
    right *= 0.5;
  }
  eps_ = right;
}

double GradedMesh::combine_half(const std::vector<double>& values, double value_at_eps,
                                double alpha) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sum += weights_[i] * values[i];
  return sum + eps_ * value_at_eps / (1.0 + alpha);
}

double GradedMesh::integrate_half(const std::function<double(double)>& f, double alpha) const {
  std::vector<double> values(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) values[i] = f(nodes_[i]);
  return combine_half(values, f(eps_), alpha);
}

const GradedMesh& shared_mesh(std::size_t quad_points) {
  static std::mutex m;
  static std::map<std::size_t, std::unique_ptr<GradedMesh>> cache;
  std::lock_guard lock(m);
  auto& slot = cache[quad_points];
  if (!slot) slot = std::make_unique<GradedMesh>(quad_points);
  return *slot;
}

}  // namespace qwle::quad
