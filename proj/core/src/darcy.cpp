#include "hydrodg/darcy.hpp"

#include <cmath>

namespace hydrodg {

DarcyProblem::DarcyProblem(DarcyConfig config, Mesh2D mesh, int degree)
    : config_(std::move(config)),
      mesh_(std::move(mesh)),
      mesh1d_(project_mesh(mesh_)),
      rb_(make_ref_blocks(degree)) {
  state_.q1 = CoeffVector(mesh_.num_elements(), rb_.N);
  state_.q2 = CoeffVector(mesh_.num_elements(), rb_.N);
  state_.head = CoeffVector(mesh_.num_elements(), rb_.N);
  if (!(config_.penalty > 0.0)) throw ConfigError("DarcyProblem: penalty must be positive");
  const int K = mesh_.num_elements();
  for (int k = 0; k < K; ++k) {
    for (int n = 1; n <= 4; ++n) {
      const auto& e = mesh_.edge(k, n);
      if (e.neighbor >= 0) {
        interior_.add(k, n);
        continue;
      }
      switch (e.marker) {
        case Marker::Dirichlet:
          dirichlet_data_.add(k, n);
          dirichlet_matrix_.add(k, n);
          break;
        case Marker::Neumann:
          neumann_.add(k, n);
          break;
        case Marker::Interface:
          interface_.add(k, n);
          dirichlet_matrix_.add(k, n);
          break;
        default:
          throw ConfigError(std::string("DarcyProblem: unsupported boundary marker ") +
                            marker_name(e.marker));
      }
    }
  }
  state_.head = l2_project(mesh_, rb_, [&](const Vec2& x) { return config_.initial_head(x); });
  clear_interface();
  mass_blocks_ = local_mass_blocks(mesh_, rb_);
  d_coeffs_ = l2_project_tensor(mesh_, rb_,
                                [&](const Vec2& x) { return config_.diffusion(0.0, x); });
}

void DarcyProblem::set_interface(Vector j1, Vector j2, Vector k) {
  const long size = static_cast<long>(mesh_.num_elements()) * rb_.N;
  if (j1.size() != size || j2.size() != size || k.size() != size)
    throw ConfigError("DarcyProblem: interface vector size mismatch");
  state_.j1_int = std::move(j1);
  state_.j2_int = std::move(j2);
  state_.k_int = std::move(k);
}

void DarcyProblem::clear_interface() {
  const long size = static_cast<long>(mesh_.num_elements()) * rb_.N;
  state_.j1_int = Vector::Zero(size);
  state_.j2_int = Vector::Zero(size);
  state_.k_int = Vector::Zero(size);
}

Vector DarcyProblem::rhs_vector(double t) const {
  const long block = static_cast<long>(mesh_.num_elements()) * rb_.N;
  auto dirichlet = [&](const Vec2& x) { return config_.dirichlet(t, x); };
  auto neumann = [&](const Vec2& x) { return config_.neumann(t, x); };
  const CoeffVector f = l2_project(mesh_, rb_, [&](const Vec2& x) { return config_.source(t, x); });

  Vector v(3 * block);
  v.segment(0, block) =
      -assemble_edge_data(mesh_, rb_, dirichlet_data_, 1, dirichlet) - state_.j1_int;
  v.segment(block, block) =
      -assemble_edge_data(mesh_, rb_, dirichlet_data_, 2, dirichlet) - state_.j2_int;
  v.segment(2 * block, block) =
      config_.penalty * (assemble_edge_data_penalty(mesh_, rb_, dirichlet_data_, dirichlet) +
                         state_.k_int) -
      assemble_edge_data(mesh_, rb_, neumann_, 0, neumann) +
      assemble_elem_source(mesh_, rb_, f);
  return v;
}

DarcyProblem::System DarcyProblem::assemble(double t) {
  const int K = mesh_.num_elements();
  const long block = static_cast<long>(K) * rb_.N;
  d_coeffs_ = l2_project_tensor(mesh_, rb_,
                                [&](const Vec2& x) { return config_.diffusion(t, x); });

  BlockSparseMatrix A(static_cast<int>(3 * block), static_cast<int>(3 * block));
  const BlockOperator mass = assemble_mass(mesh_, rb_);
  mass.add_to_triplets(A, 0, 0);
  mass.add_to_triplets(A, static_cast<int>(block), static_cast<int>(block));
  for (int m = 1; m <= 2; ++m) {
    const int row = 0, col = 2;
    BlockOperator hm = assemble_elem_dphi_phi(mesh_, rb_, m);
    hm.scale(-1.0);
    hm += assemble_edge_phi_phi_nu(mesh_, rb_, interior_, m, true);
    hm += assemble_edge_phi_phi_nu(mesh_, rb_, neumann_, m, false);
    hm.add_to_triplets(A, static_cast<int>((row + m - 1) * block), static_cast<int>(col * block));

    BlockOperator gm = assemble_elem_dphi_phi_funcdisc(mesh_, rb_, d_coeffs_, m);
    gm.scale(-1.0);
    gm += assemble_edge_phi_phi_funcdisc_nu(mesh_, rb_, d_coeffs_, interior_, m, true);
    gm += assemble_edge_phi_phi_funcdisc_nu(mesh_, rb_, d_coeffs_, dirichlet_matrix_, m, false);
    gm.add_to_triplets(A, static_cast<int>(2 * block), static_cast<int>((m - 1) * block));
  }
  BlockOperator penalty = assemble_penalty(mesh_, rb_, interior_, true);
  penalty += assemble_penalty(mesh_, rb_, dirichlet_matrix_, false);
  penalty.scale(config_.penalty);
  penalty.add_to_triplets(A, static_cast<int>(2 * block), static_cast<int>(2 * block));
  A.finalize();

  return System{std::move(A), local_mass_blocks(mesh_, rb_), rhs_vector(t)};
}

void DarcyProblem::step(double dt) {
  if (!(dt > 0.0)) throw ConfigError("DarcyProblem: nonpositive time step");
  const double t_new = state_.time + dt;
  const int K = mesh_.num_elements();
  const long block = static_cast<long>(K) * rb_.N;

  const bool reuse = config_.stationary_operator && cached_dt_ && *cached_dt_ == dt &&
                     solver_.ready();
  Vector v;
  if (reuse) {
    v = rhs_vector(t_new);
  } else {
    System sys = assemble(t_new);
    v = std::move(sys.V);
    // W + dt*A with W = diag(0, 0, M).
    BlockSparseMatrix lhs(static_cast<int>(3 * block), static_cast<int>(3 * block));
    BlockSparseMatrix& A = sys.A;
    const auto& sparse = A.matrix();
    for (int col = 0; col < sparse.outerSize(); ++col)
      for (Eigen::SparseMatrix<double>::InnerIterator it(sparse, col); it; ++it)
        lhs.add(static_cast<int>(it.row()), col, dt * it.value());
    for (int k = 0; k < K; ++k)
      for (int i = 0; i < rb_.N; ++i)
        for (int j = 0; j < rb_.N; ++j)
          lhs.add(static_cast<int>(2 * block) + k * rb_.N + i,
                  static_cast<int>(2 * block) + k * rb_.N + j, sys.mass_blocks[k](i, j));
    lhs.finalize();
    cached_system_ = std::move(lhs);
    solver_.factorize(*cached_system_);
    cached_dt_ = dt;
  }

  Vector rhs = dt * v;
  for (int k = 0; k < K; ++k)
    rhs.segment(2 * block + static_cast<long>(k) * rb_.N, rb_.N) +=
        mass_blocks_[k] * state_.head.block(k);

  const Vector y = solver_.solve(rhs);
  state_.q1.data = y.segment(0, block);
  state_.q2.data = y.segment(block, block);
  state_.head.data = y.segment(2 * block, block);
  state_.time = t_new;
}

}  // namespace hydrodg
