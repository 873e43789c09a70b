#ifndef HYDRODG_SWE_HPP
#define HYDRODG_SWE_HPP

#include <Eigen/LU>
#include <functional>
#include <vector>

#include "hydrodg/assembly.hpp"
#include "hydrodg/mesh.hpp"
#include "hydrodg/refblocks.hpp"

namespace hydrodg {

struct SweConfig {
  std::function<Matrix2(double, const Vec2&)> diffusion;  // D(t, x)
  std::function<double(double, const Vec2&)> source;      // f (m/s^2)
  /// Optional source of the free-surface equation (t, x1). The physical model
  /// is source-free here; manufactured-solution tests need it to make a
  /// prescribed surface an exact solution.
  std::function<double(double, double)> h_source;
  double gravity = 10.0;
  std::function<double(double)> bathymetry;  // zeta_b(x1), sampled at mesh nodes

  // Boundary data; only the functions required by the mesh markers are used.
  std::function<double(double, const Vec2&)> u1_dirichlet;
  std::function<double(double, const Vec2&)> u2_dirichlet;
  std::function<double(double, const Vec2&)> q1_dirichlet;
  std::function<double(double, const Vec2&)> q2_dirichlet;
  std::function<double(double, double)> h_dirichlet;  // (t, x1)

  std::function<double(const Vec2&)> initial_u1;
  std::function<double(double)> initial_h;  // (x1)
};

struct SweState {
  CoeffVector u1, u2, q1, q2;  // 2D unknowns
  CoeffVector h;               // 1D water height
  double time = 0.0;
  // Interface slots, zero unless filled by a coupler.
  Vector j1_u_int, j2_u_int, j_w_int, j1_uu_int, j2_uu_int;
};

/// 2Dv shallow-water LDG problem: diagnostic solves for q and u2, explicit
/// Euler updates for u1 and h, Lax-Friedrichs fluxes on vertical edges, and
/// free-surface mesh adaptation after every step.
class SweProblem {
 public:
  SweProblem(SweConfig config, const std::vector<double>& x1_partition, int layers,
             const BoundarySpec& markers, int degree);

  const Mesh2D& mesh() const { return mesh_; }
  const Mesh1D& mesh1d() const { return mesh1d_; }
  const SurfaceGeometry& surface() const { return surface_; }
  const RefBlocks& ref() const { return rb_; }
  const SweConfig& config() const { return config_; }
  SweState& state() { return state_; }
  const SweState& state() const { return state_; }

  /// Assembles every operator and vector of the semi-discrete system at time
  /// t on the current mesh.
  void assemble_all(double t);

  /// Diagnostic solves at the assembled time: q = M^{-1}(S_q + A_q u1) and
  /// the vertical velocity by block forward substitution bottom-to-top.
  void solve_diagnostics();

  /// One explicit Euler step (diagnostics, prognostic update, mesh
  /// adaptation, smoothed-height refresh).
  void step(double dt);

  void set_interface(Vector j1_u, Vector j2_u, Vector j_w, Vector j1_uu, Vector j2_uu);
  void clear_interface();

  const EdgeSet& interface_edges() const { return set_interface_; }

  /// Re-assembles at the current time and recomputes the diagnostic unknowns
  /// (used for error evaluation at the final time).
  void refresh_diagnostics();

 private:
  void build_edge_sets();
  Vector apply_mass_inverse(const Vector& rhs) const;
  Vector apply_mass_bar_inverse(const Vector& rhs) const;
  Vector solve_vertical(const Vector& rhs) const;

  SweConfig config_;
  RefBlocks rb_;
  Mesh2D mesh_;
  Mesh1D mesh1d_;
  SurfaceGeometry surface_;
  SweState state_;
  std::vector<double> bed_slope_;  // element-constant d(zeta_b)/dx1 per column

  // Edge sets (topology-fixed).
  EdgeSet set_interior_, set_interior_h_, set_interior_v_;
  EdgeSet set_u_data_, set_u_data_v_, set_h_data_, set_q_data_;
  EdgeSet set_bot_data_;  // bottom edges with supplied u data (excl. interface)
  EdgeSet set_interface_;
  EdgeSet set_q_bdr_, set_r_bdr_, set_p_bdr_, set_qcheck_bdr_, set_pcheck_bdr_;
  EdgeSet set_p_, set_qcheck_, set_pcheck_;  // amended interior(+data) selectors
  EdgeSet set_qup_top_, set_qup_bottom_, set_q1bdr_h_;
  EdgeSet set_juh_v_, set_ju_only_v_, set_jh_only_v_;  // height-weighted data edges
  std::vector<JumpBoundaryEdge> jump_boundary_;
  VertexSet verts_interior_, verts_data_, verts_bdr_, verts_h_only_;

  // Assembled operators (valid for the time passed to assemble_all).
  struct Ops {
    double t = -1.0;
    std::vector<Eigen::LLT<DenseMatrix>> mass;
    std::vector<double> mass_bar;  // 1D local mass is |T| * I
    BlockOperator a_uu[2], a_uq[2], a_q[2];
    BlockOperator a_uh;  // g (Hcheck - Qcheck - Qcheck_bdr)
    BlockOperator a_wu, a_h;
    std::vector<DenseMatrix> a_ww_diag;
    std::vector<Eigen::PartialPivLU<DenseMatrix>> a_ww_lu;
    std::vector<DenseMatrix> a_ww_low;  // coupling to the element below
    Vector s_u, s_q[2], s_w, s_h;
  } ops_;
};

}  // namespace hydrodg

#endif
