#include "hydrodg/transform.hpp"

#include <cmath>

namespace hydrodg {

Vec2 ElementMapping::physical_gradient(const Vec2& ref_grad,
                                       const Vec2& xhat) const {
  const Matrix2 J = jacobian_at(xhat);
  const double det = det_at(xhat);
  Vec2 out;
  for (int m = 0; m < 2; ++m) {
    const int o = 1 - m;
    out[m] = (J(o, o) * ref_grad[m] - J(o, m) * ref_grad[o]) / det;
  }
  return out;
}

ElementMapping mapping_from_vertices(const Vec2& a1, const Vec2& a2,
                                     const Vec2& a3, const Vec2& a4) {
  ElementMapping map;
  map.a = {a1, a2, a3, a4};
  const double width = a2[0] - a1[0];
  const double rise = a2[1] - a1[1];
  const double left_height = a4[1] - a1[1];
  const double height_slope = (a3[1] - a2[1]) - (a4[1] - a1[1]);
  map.J1 << width, 0.0, rise, left_height;
  map.J2 << 0.0, 0.0, 0.0, height_slope;
  map.J3 << 0.0, 0.0, height_slope, 0.0;
  map.det1 = width * left_height;
  map.det2 = width * height_slope;
  // det J is affine in x1, so positivity at the two ends implies positivity
  // on the whole element.
  if (!(map.det1 > 0.0) || !(map.det1 + map.det2 > 0.0))
    throw NumericalError("mapping_from_vertices: nonpositive Jacobian determinant");
  return map;
}

}  // namespace hydrodg
