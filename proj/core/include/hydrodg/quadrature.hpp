#ifndef HYDRODG_QUADRATURE_HPP
#define HYDRODG_QUADRATURE_HPP

#include <vector>

#include "hydrodg/types.hpp"

namespace hydrodg {

/// Gauss-Legendre rule on the reference interval [0,1].
/// A rule with R points integrates polynomials of degree <= 2R-1 exactly.
struct QuadRule1D {
  std::vector<double> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

/// Tensor-product rule on the reference square [0,1]^2, built from a 1D rule.
/// Point r*R+s has coordinates (q_r, q_s) and weight w_r*w_s.
struct QuadRule2D {
  std::vector<Vec2> points;
  std::vector<double> weights;

  int size() const { return static_cast<int>(points.size()); }
};

QuadRule1D gauss_rule(int num_points);
QuadRule2D tensor_rule(int num_points_per_direction);

/// Maps the reference interval onto edge n (1..4) of the reference square:
/// n=1 bottom, n=2 top, n=3 right, n=4 left.
Vec2 gamma_map(int n, double s);

/// Maps a point on reference edge n^- to the matching point on the opposite
/// edge n^+ of the neighboring element's reference square.
Vec2 theta_map(int n_minus, const Vec2& xhat);

/// Local edge index on the neighbor element that coincides with edge n^-.
int opposite_edge_index(int n_minus);

}  // namespace hydrodg

#endif
