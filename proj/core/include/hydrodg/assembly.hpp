#ifndef HYDRODG_ASSEMBLY_HPP
#define HYDRODG_ASSEMBLY_HPP

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hydrodg/linalg.hpp"
#include "hydrodg/mesh.hpp"
#include "hydrodg/refblocks.hpp"

namespace hydrodg {

/// A set of local edges (element index k, local edge n in 1..4).
struct EdgeSet {
  std::vector<std::pair<int, int>> items;

  void add(int k, int n) { items.emplace_back(k, n); }
  bool empty() const { return items.empty(); }
};

/// A set of 1D element endpoints (element kbar, endpoint 0 left / 1 right).
struct VertexSet {
  std::vector<std::pair<int, int>> items;

  void add(int kbar, int endpoint) { items.emplace_back(kbar, endpoint); }
};

using ScalarFn2D = std::function<double(const Vec2&)>;
using ScalarFn1D = std::function<double(double)>;

/// Matrix-valued DG coefficient, one projected scalar field per component.
struct TensorCoefficient {
  std::array<std::array<CoeffVector, 2>, 2> comp;
};

// --- projections -----------------------------------------------------------

CoeffVector l2_project(const Mesh2D& mesh, const RefBlocks& rb, const ScalarFn2D& fn);
CoeffVector l2_project_1d(const Mesh1D& mesh, const RefBlocks& rb, const ScalarFn1D& fn);
TensorCoefficient l2_project_tensor(const Mesh2D& mesh, const RefBlocks& rb,
                                    const std::function<Matrix2(const Vec2&)>& fn);

/// Pointwise evaluation of a DG field.
double eval_field(const Mesh2D& mesh, const RefBlocks& rb, const CoeffVector& c,
                  int k, const Vec2& xhat);
double eval_field_1d(const RefBlocks& rb, const CoeffVector& c, int kbar, double xhat);

// --- element integrals ------------------------------------------------------

/// Local mass blocks det1*mass1 + det2*mass2 per element.
std::vector<DenseMatrix> local_mass_blocks(const Mesh2D& mesh, const RefBlocks& rb);
BlockOperator assemble_mass(const Mesh2D& mesh, const RefBlocks& rb);
BlockOperator assemble_mass_1d(const Mesh1D& mesh, const RefBlocks& rb);

/// H^m with entries int_T d_{x^m} phi_i phi_j dx (m in 1..2).
BlockOperator assemble_elem_dphi_phi(const Mesh2D& mesh, const RefBlocks& rb, int m);

/// H-check: int_T d_{x^1} phi_i phi1d_j dx against the 1D basis of the column.
BlockOperator assemble_elem_dphi_phi_1d(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                        const RefBlocks& rb);

/// G^m with matrix coefficient D: sum_r sum_l D^{rm}_{kl} int d_{x^r} phi_i phi_l phi_j.
BlockOperator assemble_elem_dphi_phi_funcdisc(const Mesh2D& mesh, const RefBlocks& rb,
                                              const TensorCoefficient& D, int m);

/// E^m with scalar coefficient u: sum_l U_{kl} int d_{x^m} phi_i phi_l phi_j.
BlockOperator assemble_elem_dphi_phi_funcdisc_scalar(const Mesh2D& mesh,
                                                     const RefBlocks& rb,
                                                     const CoeffVector& u, int m);

/// 1D advection block G-bar with depth-integrated velocity split
/// (ubar1 + ubar2*x1hat) and per-point smoothed height.
BlockOperator assemble_elem_1d_gbar(const Mesh1D& mesh, const RefBlocks& rb,
                                    const CoeffVector& ubar1, const CoeffVector& ubar2);

// --- edge integrals ---------------------------------------------------------

/// Q-family: nu^m-weighted edge mass. With average=true both the 1/2-weighted
/// diagonal and the theta-coupled off-diagonal blocks are formed (interior
/// edges); otherwise the one-sided diagonal blocks without the 1/2.
BlockOperator assemble_edge_phi_phi_nu(const Mesh2D& mesh, const RefBlocks& rb,
                                       const EdgeSet& set, int m, bool average);

/// Q_up: one-sided trace from the element below. top_edges contribute diagonal
/// blocks (n = 2), bottom_edges off-diagonal blocks toward the neighbor below.
BlockOperator assemble_edge_phi_phi_up(const Mesh2D& mesh, const RefBlocks& rb,
                                       const EdgeSet& top_edges,
                                       const EdgeSet& bottom_edges);

/// R-family: nu^r-contracted matrix coefficient on edges.
BlockOperator assemble_edge_phi_phi_funcdisc_nu(const Mesh2D& mesh, const RefBlocks& rb,
                                                const TensorCoefficient& D,
                                                const EdgeSet& set, int m, bool average);

/// P-family: nu^m-weighted nonlinear velocity term with coefficient u1.
BlockOperator assemble_edge_nonlinear_u(const Mesh2D& mesh, const RefBlocks& rb,
                                        const CoeffVector& u1, const EdgeSet& set,
                                        int m, bool average);

/// Q-check family: nu^1-weighted coupling of 2D test functions with the 1D
/// height basis (rectangular, KN x KbarNbar).
BlockOperator assemble_edge_h_to_u(const Mesh2D& mesh, const RefBlocks& rb,
                                   const EdgeSet& set, bool average);

/// P-check family: height-weighted coupling on vertical edges, 1/H_s pulled
/// out as the constant edge value.
BlockOperator assemble_edge_height_weighted(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                            const RefBlocks& rb, const CoeffVector& h,
                                            const EdgeSet& set, bool average);

/// P-bar family: zero-dimensional endpoint terms of the free-surface equation.
/// interior vertices couple both sides (1/2), data vertices only the inside
/// (1/2), bdr vertices the inside without the 1/2.
BlockOperator assemble_v0t_1d(const Mesh1D& mesh, const RefBlocks& rb,
                              const CoeffVector& ubar1, const CoeffVector& ubar2,
                              const VertexSet& interior, const VertexSet& data,
                              const VertexSet& bdr);

// --- Lax-Friedrichs jump terms ----------------------------------------------

/// Largest eigenvalue magnitude of the primitive flux Jacobian.
double compute_lambda(double h_avg, double u_avg, double gravity);

struct JumpVectors {
  Vector k_u;      // KN
  Vector k_h;      // KN
  Vector kbar_h;   // KbarNbar
};

/// A vertical boundary edge participating in the Riemann jump terms, with
/// flags recording which Dirichlet data exist on it.
struct JumpBoundaryEdge {
  int k, n;
  bool has_u_data, has_h_data;
};

/// Jump contributions on vertical edges: interior edges use two-sided traces,
/// boundary edges use Dirichlet data (u1_data / h_data evaluated at the
/// physical quadrature point) for the exterior trace where flagged, and the
/// interior trace otherwise.
JumpVectors assemble_jump_vectors(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                  const RefBlocks& rb, const CoeffVector& u1,
                                  const CoeffVector& h, double gravity,
                                  const EdgeSet& interior_vertical,
                                  const std::vector<JumpBoundaryEdge>& boundary_vertical,
                                  const ScalarFn2D& u1_data, const ScalarFn1D& h_data);

// --- data-weighted boundary vectors ------------------------------------------

/// J-family: sum over edges of nu^m int phi_i w dx (m in 1..2, or m = 0 for no
/// normal factor); with_inv_hs divides by the smoothed height on the edge.
Vector assemble_edge_data(const Mesh2D& mesh, const RefBlocks& rb, const EdgeSet& set,
                          int m, const ScalarFn2D& data);

/// Penalty-weighted data vector (1/|E|) int phi_i w dx.
Vector assemble_edge_data_penalty(const Mesh2D& mesh, const RefBlocks& rb,
                                  const EdgeSet& set, const ScalarFn2D& data);

/// Height-weighted data vectors of the continuity equation (2D test functions):
/// J_uh : nu^1/H_s int phi_i u_D h_D   (both data given)
/// J_u  : nu^1/H_s int phi_i u_D h_Delta   (only u data)
/// J_h  : nu^1/H_s int phi_i u1_Delta h_D  (only h data)
Vector assemble_edge_data_uh(const Mesh2D& mesh, const Mesh1D& mesh1d,
                             const RefBlocks& rb, const EdgeSet& set,
                             const ScalarFn2D& u_data, const ScalarFn1D& h_data);
Vector assemble_edge_data_u_hstate(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                   const RefBlocks& rb, const EdgeSet& set,
                                   const ScalarFn2D& u_data, const CoeffVector& h);
Vector assemble_edge_data_ustate_h(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                   const RefBlocks& rb, const EdgeSet& set,
                                   const CoeffVector& u1, const ScalarFn1D& h_data);

/// The same three vectors with 1D test functions (free-surface equation).
Vector assemble_edge_data_uh_1d(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                const RefBlocks& rb, const EdgeSet& set,
                                const ScalarFn2D& u_data, const ScalarFn1D& h_data);
Vector assemble_edge_data_u_hstate_1d(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                      const RefBlocks& rb, const EdgeSet& set,
                                      const ScalarFn2D& u_data, const CoeffVector& h);
/// Point-evaluated variant using the depth-integrated velocity.
Vector assemble_vertex_data_ubar_h_1d(const Mesh1D& mesh, const RefBlocks& rb,
                                      const VertexSet& vertices, const CoeffVector& ubar1,
                                      const CoeffVector& ubar2, const ScalarFn1D& h_data);

/// Element source vector int phi_i f via the projected coefficient: M * pi(f).
Vector assemble_elem_source(const Mesh2D& mesh, const RefBlocks& rb,
                            const CoeffVector& f_projected);
/// Element vector g * int phi_i * slope_k with an element-constant slope.
Vector assemble_elem_slope(const Mesh2D& mesh, const RefBlocks& rb,
                           const std::vector<double>& slope_per_column, double gravity);
Vector assemble_elem_source_1d(const Mesh1D& mesh, const RefBlocks& rb,
                               const CoeffVector& f_projected);

// --- penalty ----------------------------------------------------------------

/// Interior penalty (1/|E|)-weighted jump stabilization: diagonal blocks over
/// interior edges plus -theta-coupled off-diagonal blocks; one-sided variant
/// over Dirichlet edges.
BlockOperator assemble_penalty(const Mesh2D& mesh, const RefBlocks& rb,
                               const EdgeSet& interior, bool average);

// --- depth integration --------------------------------------------------------

/// Depth-integrated velocity split U-bar^s, s = 1, 2 over the 1D mesh.
std::pair<CoeffVector, CoeffVector> compute_depth_integrated_velocity(
    const Mesh2D& mesh, const Mesh1D& mesh1d, const RefBlocks& rb, const CoeffVector& u1);

}  // namespace hydrodg

#endif
