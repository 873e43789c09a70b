#ifndef HYDRODG_TRANSFORM_HPP
#define HYDRODG_TRANSFORM_HPP

#include <array>

#include "hydrodg/types.hpp"

namespace hydrodg {

/// Reference-to-physical mapping of a trapezoidal element with vertical
/// lateral edges, F(xhat) = a1 + (a2-a1)*x1 + [0, e + f*x1]^T * x2.
///
/// The Jacobian splits into J = J1 + J2*x1 + J3*x2 and its determinant into
/// det J = det1 + det2*x1; both splits are stored so that assembly can
/// combine mesh-independent reference tensors with per-element scalars.
struct ElementMapping {
  std::array<Vec2, 4> a;  // vertices, local numbering 1..4
  Matrix2 J1, J2, J3;
  double det1 = 0.0, det2 = 0.0;

  Vec2 map_point(const Vec2& xhat) const {
    const double x2span =
        (a[3][1] - a[0][1]) + ((a[2][1] - a[1][1]) - (a[3][1] - a[0][1])) * xhat[0];
    return {a[0][0] + (a[1][0] - a[0][0]) * xhat[0],
            a[0][1] + (a[1][1] - a[0][1]) * xhat[0] + x2span * xhat[1]};
  }

  double det_at(const Vec2& xhat) const { return det1 + det2 * xhat[0]; }

  Matrix2 jacobian_at(const Vec2& xhat) const {
    return J1 + J2 * xhat[0] + J3 * xhat[1];
  }

  /// Component-wise gradient transformation: given the reference gradient of
  /// c at xhat, returns the physical gradient.
  Vec2 physical_gradient(const Vec2& ref_grad, const Vec2& xhat) const;
};

/// Builds the mapping from vertices in positive orientation
/// (1 bottom-left, 2 bottom-right, 3 top-right, 4 top-left).
/// Throws NumericalError if det J is not strictly positive on the element.
ElementMapping mapping_from_vertices(const Vec2& a1, const Vec2& a2,
                                     const Vec2& a3, const Vec2& a4);

}  // namespace hydrodg

#endif
