#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace qwle::quad {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussLegendre gauss_legendre(std::size_t order);

/**
 * Composite Gauss-Legendre rule on (0, pi] graded toward the origin.
 *
 * The interval [pi/P, pi] is split into P equal panels; (0, pi/P] is split
 * into `geometric_levels` dyadic panels [e/2, e] shrinking toward 0. What is
 * left below the smallest panel, (0, eps], is integrated by assuming the
 * integrand behaves like c * x^alpha there, which is exact to leading order
 * for every kernel in this library (fGn densities and their log-derivatives).
 */
class GradedMesh {
 public:
  static constexpr std::size_t kOrder = 16;
  static constexpr std::size_t kGeometricLevels = 44;

  /// `quad_points` = nodes on the uniform part; P = quad_points / 16 panels.
  explicit GradedMesh(std::size_t quad_points);

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  double eps() const { return eps_; }

  /// Integral of F over (0, pi]. alpha is the power-law exponent of F at 0 (> -1).
  double integrate_half(const std::function<double(double)>& f, double alpha = 0.0) const;

  /// Integral over [-pi, pi] of an even integrand.
  double integrate_even(const std::function<double(double)>& f, double alpha = 0.0) const {
    return 2.0 * integrate_half(f, alpha);
  }

  /// sum_i w_i v_i over precomputed integrand values at nodes(), plus the tail term.
  double combine_half(const std::vector<double>& values, double value_at_eps, double alpha) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  double eps_ = 0.0;
};

/// Shared mesh for the given resolution (cached; thread-safe).
const GradedMesh& shared_mesh(std::size_t quad_points);

}  // namespace qwle::quad
