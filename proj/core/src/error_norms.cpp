#include "hydrodg/error_norms.hpp"

#include <cmath>

namespace hydrodg {

namespace {

int degree_from_blocks_2d(int block_size) {
  const int nbar = static_cast<int>(std::lround(std::sqrt(double(block_size))));
  if (nbar * nbar != block_size)
    throw ConfigError("compute_l2_error: block size is not a perfect square");
  return nbar - 1;
}

}  // namespace

double compute_l2_error(const Mesh2D& mesh, const CoeffVector& coeffs,
                        const ScalarFn2D& exact) {
  const int p = degree_from_blocks_2d(coeffs.block_size);
  const RefBlocks rb = make_ref_blocks(p, p + 4);
  if (coeffs.num_blocks() != mesh.num_elements())
    throw ConfigError("compute_l2_error: field and mesh sizes differ");
  double total = 0.0;
  for (int k = 0; k < mesh.num_elements(); ++k) {
    for (int q = 0; q < rb.rule2d.size(); ++q) {
      const Vec2& xhat = rb.rule2d.points[q];
      double value = 0.0;
      for (int i = 0; i < rb.N; ++i) value += coeffs.at(k, i) * rb.phi(i, q);
      const double diff = value - exact(mesh.mapping[k].map_point(xhat));
      total += rb.rule2d.weights[q] * mesh.mapping[k].det_at(xhat) * diff * diff;
    }
  }
  return std::sqrt(total);
}

double compute_l2_error_1d(const Mesh1D& mesh, const CoeffVector& coeffs,
                           const ScalarFn1D& exact) {
  const int p = coeffs.block_size - 1;
  const RefBlocks rb = make_ref_blocks(p, p + 4);
  if (coeffs.num_blocks() != mesh.num_elements())
    throw ConfigError("compute_l2_error_1d: field and mesh sizes differ");
  double total = 0.0;
  for (int kbar = 0; kbar < mesh.num_elements(); ++kbar) {
    for (int r = 0; r < rb.rule1d.size(); ++r) {
      double value = 0.0;
      for (int i = 0; i < rb.Nbar; ++i) value += coeffs.at(kbar, i) * rb.phi1d_q(i, r);
      const double diff = value - exact(mesh.map_point(kbar, rb.rule1d.points[r]));
      total += rb.rule1d.weights[r] * mesh.length(kbar) * diff * diff;
    }
  }
  return std::sqrt(total);
}

double compute_eoc(double err_prev, double err_cur, double dx_prev, double dx_cur) {
  return std::log(err_prev / err_cur) / std::log(dx_prev / dx_cur);
}

}  // namespace hydrodg
