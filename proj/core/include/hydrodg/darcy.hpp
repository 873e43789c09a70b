#ifndef HYDRODG_DARCY_HPP
#define HYDRODG_DARCY_HPP

#include <functional>
#include <optional>

#include "hydrodg/assembly.hpp"
#include "hydrodg/mesh.hpp"
#include "hydrodg/refblocks.hpp"

namespace hydrodg {

struct DarcyConfig {
  std::function<Matrix2(double, const Vec2&)> diffusion;  // SPD coefficient (m^2/s)
  std::function<double(double, const Vec2&)> source;      // f (m/s)
  std::function<double(double, const Vec2&)> dirichlet;   // h_D (m)
  std::function<double(double, const Vec2&)> neumann;     // g_N
  std::function<double(const Vec2&)> initial_head;        // h_0 (m)
  double penalty = 1.0;
  /// Diffusion coefficient independent of t: the implicit system matrix is
  /// factorized once per time-step size and reused.
  bool stationary_operator = false;
};

struct DarcyState {
  CoeffVector q1, q2, head;
  double time = 0.0;
  // Interface slots, zero unless a coupler filled them for the current step.
  Vector j1_int, j2_int, k_int;
};

/// Subsurface LDG problem: mixed-form system with interior penalty,
/// advanced by implicit Euler steps.
class DarcyProblem {
 public:
  DarcyProblem(DarcyConfig config, Mesh2D mesh, int degree);

  const Mesh2D& mesh() const { return mesh_; }
  const Mesh1D& mesh1d() const { return mesh1d_; }
  const RefBlocks& ref() const { return rb_; }
  const DarcyConfig& config() const { return config_; }
  DarcyState& state() { return state_; }
  const DarcyState& state() const { return state_; }

  /// Diffusion coefficients projected at the most recent assembly time.
  const TensorCoefficient& diffusion_coeffs() const { return d_coeffs_; }

  struct System {
    BlockSparseMatrix A;                   // 3KN x 3KN, finalized
    std::vector<DenseMatrix> mass_blocks;  // the only nonzero block of W
    Vector V;                              // 3KN
  };

  /// Assembles the full system at time t (matrices in the canonical
  /// block layout; V includes the interface slots).
  System assemble(double t);

  /// One implicit Euler step: solves (W + dt A^{n+1}) Y^{n+1} = W Y^n + dt V^{n+1}.
  void step(double dt);

  void set_interface(Vector j1, Vector j2, Vector k);
  void clear_interface();

  const EdgeSet& interface_edges() const { return interface_; }

 private:
  Vector rhs_vector(double t) const;

  DarcyConfig config_;
  Mesh2D mesh_;
  Mesh1D mesh1d_;
  RefBlocks rb_;
  DarcyState state_;
  TensorCoefficient d_coeffs_;

  EdgeSet interior_, dirichlet_data_, neumann_, interface_, dirichlet_matrix_;

  // Factorization cache for stationary operators.
  std::optional<double> cached_dt_;
  DirectSolver solver_;
  std::optional<BlockSparseMatrix> cached_system_;
  std::vector<DenseMatrix> mass_blocks_;
};

}  // namespace hydrodg

#endif
