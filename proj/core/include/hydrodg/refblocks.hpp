#ifndef HYDRODG_REFBLOCKS_HPP
#define HYDRODG_REFBLOCKS_HPP

#include <array>
#include <vector>

#include "hydrodg/basis.hpp"
#include "hydrodg/quadrature.hpp"
#include "hydrodg/types.hpp"

namespace hydrodg {

/// Mesh-independent reference-element tensors for one (degree, quadrature)
/// pair. Element integrals use the tensor-product rule, edge integrals the
/// 1D rule mapped through gamma/theta; assembly combines these tensors with
/// per-element Jacobian scalars.
///
/// Weight index w selects the factor {1, x1, x2} multiplying the integrand,
/// matching the Jacobian split J = J1 + J2*x1 + J3*x2.
struct RefBlocks {
  RefBlocks(int degree, int quad_points);

  int p;
  int N;     // 2D local dofs
  int Nbar;  // 1D local dofs

  QuadRule1D rule1d;
  QuadRule2D rule2d;
  Basis2D basis;
  Basis1D basis1d;

  // Element quadrature tables (columns = quadrature points).
  DenseMatrix phi;            // N x Q
  DenseMatrix dphi1, dphi2;   // N x Q
  DenseMatrix phi1d_on_elem;  // Nbar x Q, 1D basis evaluated at x1 of the point

  // Element reference integrals.
  DenseMatrix mass1, mass2;  // \int phi_i phi_j {1, x1}
  // grad_phi_phi[m][w](i,j)   = \int d_m phi_i phi_j w
  std::array<std::array<DenseMatrix, 3>, 2> grad_phi_phi;
  // grad_phi_phi_phi[m][w][l] = \int d_m phi_i phi_l phi_j w
  std::array<std::array<std::vector<DenseMatrix>, 3>, 2> grad_phi_phi_phi;
  // grad_phi_phi1d[m][w](i,jbar) = \int d_m phi_i phi1d_j(x1) w
  std::array<std::array<DenseMatrix, 3>, 2> grad_phi_phi1d;

  // Edge quadrature tables, edge index n in 1..4 stored at n-1.
  std::array<DenseMatrix, 4> phi_edge;      // N x R, own trace at gamma_n(q_r)
  std::array<DenseMatrix, 4> phi_edge_nbr;  // N x R, neighbor trace at theta(gamma)
  std::array<DenseMatrix, 4> phi1d_edge;      // Nbar x R, own column 1D basis
  std::array<DenseMatrix, 4> phi1d_edge_nbr;  // Nbar x R, neighbor column

  // Contracted edge integrals (weights included).
  std::array<DenseMatrix, 4> edge_phi_phi;          // \int phi_i phi_j
  std::array<DenseMatrix, 4> edge_phi_phi_nbr;      // \int phi_i phi_j(theta)
  std::array<std::vector<DenseMatrix>, 4> edge_phi_phi_phi;      // per l
  std::array<std::vector<DenseMatrix>, 4> edge_phi_phi_phi_nbr;  // l, j on neighbor
  std::array<DenseMatrix, 4> edge_phi_phi1d;      // \int phi_i phi1d_j
  std::array<DenseMatrix, 4> edge_phi_phi1d_nbr;  // 1D factor from neighbor column

  // 1D basis tables.
  Vector phi1d_at0, phi1d_at1;    // endpoint values
  DenseMatrix phi1d_q, dphi1d_q;  // Nbar x R at the 1D rule points

  // Depth integration: 2D dof picked by 1D mode m (0-based).
  std::vector<int> j_of_m;
};

/// Builds reference blocks for polynomial degree p with an R-point rule per
/// direction. R defaults to p+2, which integrates triple products of basis
/// functions together with the affine Jacobian factor exactly.
RefBlocks make_ref_blocks(int p, int num_quad_points = -1);

}  // namespace hydrodg

#endif
