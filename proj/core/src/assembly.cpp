#include "hydrodg/assembly.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>

namespace hydrodg {

namespace {

// Contraction sum_l coeff[l] * stack[l].
DenseMatrix contract_stack(const std::vector<DenseMatrix>& stack,
                           const Eigen::Ref<const Vector>& coeff) {
  DenseMatrix out = DenseMatrix::Zero(stack[0].rows(), stack[0].cols());
  for (int l = 0; l < static_cast<int>(stack.size()); ++l) {
    if (coeff[l] != 0.0) out += coeff[l] * stack[l];
  }
  return out;
}

// Jacobian part s (0: J1, 1: J2, 2: J3) of element k; parts pair with the
// reference weights {1, x1, x2} in the same order.
const Matrix2& jacobian_part(const ElementMapping& map, int s) {
  return s == 0 ? map.J1 : (s == 1 ? map.J2 : map.J3);
}

// Smoothed height on a vertical edge: the nodal value at the edge's x1.
double hs_on_vertical_edge(const Mesh2D& mesh, const Mesh1D& mesh1d, int k, int n) {
  const int node = mesh.column_of[k] + (n == 3 ? 1 : 0);
  return mesh1d.smoothed_height[node];
}

// One-sided trace of the 1D field at the vertical edge (own column side).
double h_trace_own(const RefBlocks& rb, const CoeffVector& h, int kbar, int n) {
  const Vector& phival = (n == 3) ? rb.phi1d_at1 : rb.phi1d_at0;
  return h.block(kbar).dot(phival);
}

}  // namespace

// --- projections -------------------------------------------------------------

CoeffVector l2_project(const Mesh2D& mesh, const RefBlocks& rb, const ScalarFn2D& fn) {
  const int K = mesh.num_elements();
  const int N = rb.N;
  CoeffVector out(K, N);
  const int Q = rb.rule2d.size();
  for (int k = 0; k < K; ++k) {
    const auto& map = mesh.mapping[k];
    Vector rhs = Vector::Zero(N);
    for (int q = 0; q < Q; ++q) {
      const double det = map.det_at(rb.rule2d.points[q]);
      const double w = rb.rule2d.weights[q] * det * fn(map.map_point(rb.rule2d.points[q]));
      for (int i = 0; i < N; ++i) rhs[i] += w * rb.phi(i, q);
    }
    const DenseMatrix local = map.det1 * rb.mass1 + map.det2 * rb.mass2;
    out.block(k) = local.llt().solve(rhs);
  }
  return out;
}

CoeffVector l2_project_1d(const Mesh1D& mesh, const RefBlocks& rb, const ScalarFn1D& fn) {
  const int Kbar = mesh.num_elements();
  CoeffVector out(Kbar, rb.Nbar);
  for (int kbar = 0; kbar < Kbar; ++kbar) {
    // The 1D local mass matrix is |T| * I, which cancels the |T| of the
    // transformed right-hand side.
    for (int i = 0; i < rb.Nbar; ++i) {
      double value = 0.0;
      for (int r = 0; r < rb.rule1d.size(); ++r)
        value += rb.rule1d.weights[r] * rb.phi1d_q(i, r) *
                 fn(mesh.map_point(kbar, rb.rule1d.points[r]));
      out.at(kbar, i) = value;
    }
  }
  return out;
}

TensorCoefficient l2_project_tensor(const Mesh2D& mesh, const RefBlocks& rb,
                                    const std::function<Matrix2(const Vec2&)>& fn) {
  TensorCoefficient out;
  for (int r = 0; r < 2; ++r)
    for (int m = 0; m < 2; ++m)
      out.comp[r][m] =
          l2_project(mesh, rb, [&](const Vec2& x) { return fn(x)(r, m); });
  return out;
}

double eval_field(const Mesh2D&, const RefBlocks& rb, const CoeffVector& c, int k,
                  const Vec2& xhat) {
  double value = 0.0;
  for (int i = 0; i < c.block_size; ++i) value += c.at(k, i) * rb.basis.eval(i, xhat);
  return value;
}

double eval_field_1d(const RefBlocks& rb, const CoeffVector& c, int kbar, double xhat) {
  double value = 0.0;
  for (int i = 0; i < c.block_size; ++i) value += c.at(kbar, i) * rb.basis1d.eval(i, xhat);
  return value;
}

// --- element integrals --------------------------------------------------------

std::vector<DenseMatrix> local_mass_blocks(const Mesh2D& mesh, const RefBlocks& rb) {
  std::vector<DenseMatrix> blocks(mesh.num_elements());
  for (int k = 0; k < mesh.num_elements(); ++k)
    blocks[k] = mesh.mapping[k].det1 * rb.mass1 + mesh.mapping[k].det2 * rb.mass2;
  return blocks;
}

BlockOperator assemble_mass(const Mesh2D& mesh, const RefBlocks& rb) {
  const int K = mesh.num_elements();
  BlockOperator op(K, K, rb.N, rb.N);
  op.init_diag();
  for (int k = 0; k < K; ++k)
    op.diag(k) = mesh.mapping[k].det1 * rb.mass1 + mesh.mapping[k].det2 * rb.mass2;
  return op;
}

BlockOperator assemble_mass_1d(const Mesh1D& mesh, const RefBlocks& rb) {
  const int Kbar = mesh.num_elements();
  BlockOperator op(Kbar, Kbar, rb.Nbar, rb.Nbar);
  op.init_diag();
  for (int kbar = 0; kbar < Kbar; ++kbar)
    op.diag(kbar) = mesh.length(kbar) * DenseMatrix::Identity(rb.Nbar, rb.Nbar);
  return op;
}

BlockOperator assemble_elem_dphi_phi(const Mesh2D& mesh, const RefBlocks& rb, int m) {
  const int K = mesh.num_elements();
  const int m0 = m - 1, o = 1 - m0;
  BlockOperator op(K, K, rb.N, rb.N);
  op.init_diag();
  for (int k = 0; k < K; ++k) {
    const auto& map = mesh.mapping[k];
    DenseMatrix& block = op.diag(k);
    for (int s = 0; s < 3; ++s) {
      const Matrix2& J = jacobian_part(map, s);
      if (J(o, o) != 0.0) block += J(o, o) * rb.grad_phi_phi[m0][s];
      if (J(o, m0) != 0.0) block -= J(o, m0) * rb.grad_phi_phi[o][s];
    }
  }
  return op;
}

BlockOperator assemble_elem_dphi_phi_1d(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                        const RefBlocks& rb) {
  const int K = mesh.num_elements();
  BlockOperator op(K, mesh1d.num_elements(), rb.N, rb.Nbar);
  constexpr int m0 = 0, o = 1;
  for (int k = 0; k < K; ++k) {
    const auto& map = mesh.mapping[k];
    DenseMatrix block = DenseMatrix::Zero(rb.N, rb.Nbar);
    for (int s = 0; s < 3; ++s) {
      const Matrix2& J = jacobian_part(map, s);
      if (J(o, o) != 0.0) block += J(o, o) * rb.grad_phi_phi1d[m0][s];
      if (J(o, m0) != 0.0) block -= J(o, m0) * rb.grad_phi_phi1d[o][s];
    }
    op.add_block(k, mesh.column_of[k], std::move(block));
  }
  return op;
}

namespace {

// Physical int_T d_{x^dir} phi_i (sum_l c_l phi_l) phi_j dx for one element;
// the determinant cancels against the gradient transformation.
DenseMatrix elem_funcdisc_block(const RefBlocks& rb, const ElementMapping& map,
                                int dir0, const Eigen::Ref<const Vector>& coeff) {
  const int o = 1 - dir0;
  DenseMatrix block = DenseMatrix::Zero(rb.N, rb.N);
  for (int s = 0; s < 3; ++s) {
    const Matrix2& J = jacobian_part(map, s);
    if (J(o, o) != 0.0)
      block += J(o, o) * contract_stack(rb.grad_phi_phi_phi[dir0][s], coeff);
    if (J(o, dir0) != 0.0)
      block -= J(o, dir0) * contract_stack(rb.grad_phi_phi_phi[o][s], coeff);
  }
  return block;
}

}  // namespace

BlockOperator assemble_elem_dphi_phi_funcdisc(const Mesh2D& mesh, const RefBlocks& rb,
                                              const TensorCoefficient& D, int m) {
  const int K = mesh.num_elements();
  const int m0 = m - 1;
  BlockOperator op(K, K, rb.N, rb.N);
  op.init_diag();
  for (int k = 0; k < K; ++k)
    for (int r = 0; r < 2; ++r)
      op.diag(k) += elem_funcdisc_block(rb, mesh.mapping[k], r, D.comp[r][m0].block(k));
  return op;
}

BlockOperator assemble_elem_dphi_phi_funcdisc_scalar(const Mesh2D& mesh,
                                                     const RefBlocks& rb,
                                                     const CoeffVector& u, int m) {
  const int K = mesh.num_elements();
  BlockOperator op(K, K, rb.N, rb.N);
  op.init_diag();
  for (int k = 0; k < K; ++k)
    op.diag(k) = elem_funcdisc_block(rb, mesh.mapping[k], m - 1, u.block(k));
  return op;
}

BlockOperator assemble_elem_1d_gbar(const Mesh1D& mesh, const RefBlocks& rb,
                                    const CoeffVector& ubar1, const CoeffVector& ubar2) {
  const int Kbar = mesh.num_elements();
  BlockOperator op(Kbar, Kbar, rb.Nbar, rb.Nbar);
  op.init_diag();
  const int R = rb.rule1d.size();
  for (int kbar = 0; kbar < Kbar; ++kbar) {
    DenseMatrix& block = op.diag(kbar);
    for (int r = 0; r < R; ++r) {
      const double xhat = rb.rule1d.points[r];
      double ubar = 0.0;
      for (int l = 0; l < rb.Nbar; ++l)
        ubar += (ubar1.at(kbar, l) + ubar2.at(kbar, l) * xhat) * rb.phi1d_q(l, r);
      const double hs = mesh.smoothed_height[kbar] +
                        xhat * (mesh.smoothed_height[kbar + 1] - mesh.smoothed_height[kbar]);
      const double factor = rb.rule1d.weights[r] * ubar / hs;
      for (int i = 0; i < rb.Nbar; ++i)
        for (int j = 0; j < rb.Nbar; ++j)
          block(i, j) += factor * rb.dphi1d_q(i, r) * rb.phi1d_q(j, r);
    }
  }
  return op;
}

// --- edge integrals -------------------------------------------------------------

BlockOperator assemble_edge_phi_phi_nu(const Mesh2D& mesh, const RefBlocks& rb,
                                       const EdgeSet& set, int m, bool average) {
  const int K = mesh.num_elements();
  const int m0 = m - 1;
  BlockOperator op(K, K, rb.N, rb.N);
  op.init_diag();
  const double factor = average ? 0.5 : 1.0;
  for (const auto& [k, n] : set.items) {
    const auto& e = mesh.edge(k, n);
    const double c = factor * e.normal[m0] * e.length;
    if (c != 0.0) op.diag(k) += c * rb.edge_phi_phi[n - 1];
    if (average && e.neighbor >= 0 && c != 0.0)
      op.add_block(k, e.neighbor, c * rb.edge_phi_phi_nbr[n - 1]);
  }
  return op;
}

BlockOperator assemble_edge_phi_phi_up(const Mesh2D& mesh, const RefBlocks& rb,
                                       const EdgeSet& top_edges,
                                       const EdgeSet& bottom_edges) {
  const int K = mesh.num_elements();
  BlockOperator op(K, K, rb.N, rb.N);
  op.init_diag();
  for (const auto& [k, n] : top_edges.items) {
    const auto& e = mesh.edge(k, n);
    op.diag(k) += e.normal[1] * e.length * rb.edge_phi_phi[n - 1];
  }
  for (const auto& [k, n] : bottom_edges.items) {
    const auto& e = mesh.edge(k, n);
    if (e.neighbor < 0) throw ConfigError("assemble_edge_phi_phi_up: bottom edge without neighbor");
    op.add_block(k, e.neighbor, e.normal[1] * e.length * rb.edge_phi_phi_nbr[n - 1]);
  }
  return op;
}

BlockOperator assemble_edge_phi_phi_funcdisc_nu(const Mesh2D& mesh, const RefBlocks& rb,
                                                const TensorCoefficient& D,
                                                const EdgeSet& set, int m, bool average) {
  const int K = mesh.num_elements();
  const int m0 = m - 1;
  BlockOperator op(K, K, rb.N, rb.N);
  op.init_diag();
  const double factor = average ? 0.5 : 1.0;
  for (const auto& [k, n] : set.items) {
    const auto& e = mesh.edge(k, n);
    for (int r = 0; r < 2; ++r) {
      const double c = factor * e.normal[r] * e.length;
      if (c == 0.0) continue;
      op.diag(k) += c * contract_stack(rb.edge_phi_phi_phi[n - 1], D.comp[r][m0].block(k));
      if (average && e.neighbor >= 0)
        op.add_block(k, e.neighbor,
                     c * contract_stack(rb.edge_phi_phi_phi_nbr[n - 1],
                                        D.comp[r][m0].block(e.neighbor)));
    }
  }
  return op;
}

BlockOperator assemble_edge_nonlinear_u(const Mesh2D& mesh, const RefBlocks& rb,
                                        const CoeffVector& u1, const EdgeSet& set,
                                        int m, bool average) {
  const int K = mesh.num_elements();
  const int m0 = m - 1;
  BlockOperator op(K, K, rb.N, rb.N);
  op.init_diag();
  const double factor = average ? 0.5 : 1.0;
  for (const auto& [k, n] : set.items) {
    const auto& e = mesh.edge(k, n);
    const double c = factor * e.normal[m0] * e.length;
    if (c == 0.0) continue;
    op.diag(k) += c * contract_stack(rb.edge_phi_phi_phi[n - 1], u1.block(k));
    if (average && e.neighbor >= 0)
      op.add_block(k, e.neighbor,
                   c * contract_stack(rb.edge_phi_phi_phi_nbr[n - 1], u1.block(e.neighbor)));
  }
  return op;
}

BlockOperator assemble_edge_h_to_u(const Mesh2D& mesh, const RefBlocks& rb,
                                   const EdgeSet& set, bool average) {
  const int K = mesh.num_elements();
  const int Kbar = mesh.num_columns;
  BlockOperator op(K, Kbar, rb.N, rb.Nbar);
  const double factor = average ? 0.5 : 1.0;
  for (const auto& [k, n] : set.items) {
    const auto& e = mesh.edge(k, n);
    const double c = factor * e.normal[0] * e.length;
    if (c == 0.0) continue;
    op.add_block(k, mesh.column_of[k], c * rb.edge_phi_phi1d[n - 1]);
    if (average && e.neighbor >= 0)
      op.add_block(k, mesh.column_of[e.neighbor], c * rb.edge_phi_phi1d_nbr[n - 1]);
  }
  return op;
}

BlockOperator assemble_edge_height_weighted(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                            const RefBlocks& rb, const CoeffVector& h,
                                            const EdgeSet& set, bool average) {
  const int K = mesh.num_elements();
  BlockOperator op(K, K, rb.N, rb.N);
  op.init_diag();
  const double factor = average ? 0.5 : 1.0;
  for (const auto& [k, n] : set.items) {
    if (n != 3 && n != 4)
      throw ConfigError("assemble_edge_height_weighted: only vertical edges carry this term");
    const auto& e = mesh.edge(k, n);
    const double hs = hs_on_vertical_edge(mesh, mesh1d, k, n);
    const double c = factor * e.normal[0] * e.length / hs;
    op.diag(k) += c * h_trace_own(rb, h, mesh.column_of[k], n) * rb.edge_phi_phi[n - 1];
    if (average && e.neighbor >= 0) {
      const int nbr = e.neighbor;
      const int n_nbr = opposite_edge_index(n);
      op.add_block(k, nbr,
                   c * h_trace_own(rb, h, mesh.column_of[nbr], n_nbr) *
                       rb.edge_phi_phi_nbr[n - 1]);
    }
  }
  return op;
}

namespace {

double ubar_eval(const RefBlocks& rb, const CoeffVector& ubar1, const CoeffVector& ubar2,
                 int kbar, double xhat) {
  const Vector& phival = xhat > 0.5 ? rb.phi1d_at1 : rb.phi1d_at0;
  double value = 0.0;
  for (int l = 0; l < rb.Nbar; ++l)
    value += (ubar1.at(kbar, l) + ubar2.at(kbar, l) * xhat) * phival[l];
  return value;
}

}  // namespace

BlockOperator assemble_v0t_1d(const Mesh1D& mesh, const RefBlocks& rb,
                              const CoeffVector& ubar1, const CoeffVector& ubar2,
                              const VertexSet& interior, const VertexSet& data,
                              const VertexSet& bdr) {
  const int Kbar = mesh.num_elements();
  BlockOperator op(Kbar, Kbar, rb.Nbar, rb.Nbar);
  op.init_diag();
  auto phi_at = [&](int endpoint) -> const Vector& {
    return endpoint == 1 ? rb.phi1d_at1 : rb.phi1d_at0;
  };
  auto add_diag = [&](int kbar, int endpoint, double factor) {
    const double nu = endpoint == 1 ? 1.0 : -1.0;
    const double hs = mesh.smoothed_height[kbar + endpoint];
    const double u = ubar_eval(rb, ubar1, ubar2, kbar, endpoint);
    op.diag(kbar) += factor * nu / hs * u * phi_at(endpoint) * phi_at(endpoint).transpose();
  };
  for (const auto& [kbar, endpoint] : interior.items) {
    add_diag(kbar, endpoint, 0.5);
    const int nbr = endpoint == 1 ? kbar + 1 : kbar - 1;
    const int nbr_endpoint = 1 - endpoint;
    const double nu = endpoint == 1 ? 1.0 : -1.0;
    const double hs = mesh.smoothed_height[kbar + endpoint];
    const double u_nbr = ubar_eval(rb, ubar1, ubar2, nbr, nbr_endpoint);
    op.add_block(kbar, nbr,
                 0.5 * nu / hs * u_nbr * phi_at(endpoint) * phi_at(nbr_endpoint).transpose());
  }
  for (const auto& [kbar, endpoint] : data.items) add_diag(kbar, endpoint, 0.5);
  for (const auto& [kbar, endpoint] : bdr.items) add_diag(kbar, endpoint, 1.0);
  return op;
}

// --- Lax-Friedrichs jump terms ---------------------------------------------------

double compute_lambda(double h_avg, double u_avg, double gravity) {
  if (h_avg < 0.0)
    throw NumericalError("compute_lambda: negative average water height");
  return 1.5 * std::abs(u_avg) + 0.5 * std::sqrt(u_avg * u_avg + 4.0 * gravity * h_avg);
}

JumpVectors assemble_jump_vectors(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                  const RefBlocks& rb, const CoeffVector& u1,
                                  const CoeffVector& h, double gravity,
                                  const EdgeSet& interior_vertical,
                                  const std::vector<JumpBoundaryEdge>& boundary_vertical,
                                  const ScalarFn2D& u1_data, const ScalarFn1D& h_data) {
  const int K = mesh.num_elements();
  const int Kbar = mesh1d.num_elements();
  JumpVectors out{Vector::Zero(static_cast<long>(K) * rb.N),
                  Vector::Zero(static_cast<long>(K) * rb.N),
                  Vector::Zero(static_cast<long>(Kbar) * rb.Nbar)};
  const int R = rb.rule1d.size();

  auto process = [&](int k, int n, bool interior, bool use_u_data, bool use_h_data) {
    const auto& e = mesh.edge(k, n);
    const int kbar = mesh.column_of[k];
    const double hs = hs_on_vertical_edge(mesh, mesh1d, k, n);
    const double h_own = h_trace_own(rb, h, kbar, n);
    const Vector& phibar_own = (n == 3) ? rb.phi1d_at1 : rb.phi1d_at0;

    double h_ext;
    if (interior) {
      h_ext = h_trace_own(rb, h, mesh.column_of[e.neighbor], opposite_edge_index(n));
    } else if (use_h_data) {
      h_ext = h_data(mesh.x1_nodes[kbar + (n == 3 ? 1 : 0)]);
    } else {
      h_ext = h_own;
    }
    const double h_jump = h_own - h_ext;
    const double h_avg = 0.5 * (h_own + h_ext);

    for (int r = 0; r < R; ++r) {
      double u_own = 0.0;
      for (int j = 0; j < rb.N; ++j) u_own += u1.at(k, j) * rb.phi_edge[n - 1](j, r);
      double u_ext;
      if (interior) {
        u_ext = 0.0;
        for (int j = 0; j < rb.N; ++j)
          u_ext += u1.at(e.neighbor, j) * rb.phi_edge_nbr[n - 1](j, r);
      } else if (use_u_data) {
        u_ext = u1_data(mesh.mapping[k].map_point(gamma_map(n, rb.rule1d.points[r])));
      } else {
        u_ext = u_own;
      }
      const double lambda = compute_lambda(h_avg, 0.5 * (u_own + u_ext), gravity);
      const double wE = rb.rule1d.weights[r] * e.length;
      const double ju = 0.5 * lambda * (u_own - u_ext);
      const double jh = 0.5 * lambda * h_jump / hs;
      for (int i = 0; i < rb.N; ++i) {
        out.k_u[static_cast<long>(k) * rb.N + i] += wE * rb.phi_edge[n - 1](i, r) * ju;
        out.k_h[static_cast<long>(k) * rb.N + i] += wE * rb.phi_edge[n - 1](i, r) * jh;
      }
      for (int i = 0; i < rb.Nbar; ++i)
        out.kbar_h[static_cast<long>(kbar) * rb.Nbar + i] += wE * phibar_own[i] * jh;
    }
  };

  for (const auto& [k, n] : interior_vertical.items) process(k, n, true, false, false);
  for (const auto& edge : boundary_vertical)
    process(edge.k, edge.n, false, edge.has_u_data, edge.has_h_data);
  return out;
}

// --- data-weighted boundary vectors -----------------------------------------------

Vector assemble_edge_data(const Mesh2D& mesh, const RefBlocks& rb, const EdgeSet& set,
                          int m, const ScalarFn2D& data) {
  Vector out = Vector::Zero(static_cast<long>(mesh.num_elements()) * rb.N);
  const int R = rb.rule1d.size();
  for (const auto& [k, n] : set.items) {
    const auto& e = mesh.edge(k, n);
    const double c = (m == 0 ? 1.0 : e.normal[m - 1]) * e.length;
    if (c == 0.0) continue;
    for (int r = 0; r < R; ++r) {
      const Vec2 x = mesh.mapping[k].map_point(gamma_map(n, rb.rule1d.points[r]));
      const double w = c * rb.rule1d.weights[r] * data(x);
      for (int i = 0; i < rb.N; ++i)
        out[static_cast<long>(k) * rb.N + i] += w * rb.phi_edge[n - 1](i, r);
    }
  }
  return out;
}

Vector assemble_edge_data_penalty(const Mesh2D& mesh, const RefBlocks& rb,
                                  const EdgeSet& set, const ScalarFn2D& data) {
  Vector out = Vector::Zero(static_cast<long>(mesh.num_elements()) * rb.N);
  const int R = rb.rule1d.size();
  for (const auto& [k, n] : set.items) {
    // (1/|E|) int_E phi_i w: the edge length cancels the measure factor.
    for (int r = 0; r < R; ++r) {
      const Vec2 x = mesh.mapping[k].map_point(gamma_map(n, rb.rule1d.points[r]));
      const double w = rb.rule1d.weights[r] * data(x);
      for (int i = 0; i < rb.N; ++i)
        out[static_cast<long>(k) * rb.N + i] += w * rb.phi_edge[n - 1](i, r);
    }
  }
  return out;
}

namespace {

// Shared kernel of the height-weighted boundary vectors: integrates
// nu^1/H_s * test * u_value(r) * h_value over each vertical edge. The test
// functions are either the 2D basis traces (test1d = false) or the constant
// 1D basis values at the column endpoint (test1d = true).
Vector edge_data_height_weighted(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                 const RefBlocks& rb, const EdgeSet& set, bool test1d,
                                 const std::function<double(int, int, int)>& u_value,
                                 const std::function<double(int, int)>& h_value) {
  const long size = test1d ? static_cast<long>(mesh1d.num_elements()) * rb.Nbar
                           : static_cast<long>(mesh.num_elements()) * rb.N;
  Vector out = Vector::Zero(size);
  const int R = rb.rule1d.size();
  for (const auto& [k, n] : set.items) {
    if (n != 3 && n != 4)
      throw ConfigError("height-weighted data vectors exist on vertical edges only");
    const auto& e = mesh.edge(k, n);
    const double hs = hs_on_vertical_edge(mesh, mesh1d, k, n);
    const double c = e.normal[0] * e.length / hs;
    const double hv = h_value(k, n);
    double integral = 0.0;
    if (test1d) {
      for (int r = 0; r < R; ++r)
        integral += rb.rule1d.weights[r] * u_value(k, n, r);
      const int kbar = mesh.column_of[k];
      const Vector& phibar = (n == 3) ? rb.phi1d_at1 : rb.phi1d_at0;
      for (int i = 0; i < rb.Nbar; ++i)
        out[static_cast<long>(kbar) * rb.Nbar + i] += c * hv * integral * phibar[i];
    } else {
      for (int r = 0; r < R; ++r) {
        const double w = rb.rule1d.weights[r] * u_value(k, n, r);
        for (int i = 0; i < rb.N; ++i)
          out[static_cast<long>(k) * rb.N + i] += c * hv * w * rb.phi_edge[n - 1](i, r);
      }
    }
  }
  return out;
}

}  // namespace

Vector assemble_edge_data_uh(const Mesh2D& mesh, const Mesh1D& mesh1d,
                             const RefBlocks& rb, const EdgeSet& set,
                             const ScalarFn2D& u_data, const ScalarFn1D& h_data) {
  return edge_data_height_weighted(
      mesh, mesh1d, rb, set, false,
      [&](int k, int n, int r) {
        return u_data(mesh.mapping[k].map_point(gamma_map(n, rb.rule1d.points[r])));
      },
      [&](int k, int n) {
        return h_data(mesh.x1_nodes[mesh.column_of[k] + (n == 3 ? 1 : 0)]);
      });
}

Vector assemble_edge_data_u_hstate(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                   const RefBlocks& rb, const EdgeSet& set,
                                   const ScalarFn2D& u_data, const CoeffVector& h) {
  return edge_data_height_weighted(
      mesh, mesh1d, rb, set, false,
      [&](int k, int n, int r) {
        return u_data(mesh.mapping[k].map_point(gamma_map(n, rb.rule1d.points[r])));
      },
      [&](int k, int n) { return h_trace_own(rb, h, mesh.column_of[k], n); });
}

Vector assemble_edge_data_ustate_h(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                   const RefBlocks& rb, const EdgeSet& set,
                                   const CoeffVector& u1, const ScalarFn1D& h_data) {
  return edge_data_height_weighted(
      mesh, mesh1d, rb, set, false,
      [&](int k, int n, int r) {
        double u = 0.0;
        for (int j = 0; j < rb.N; ++j) u += u1.at(k, j) * rb.phi_edge[n - 1](j, r);
        return u;
      },
      [&](int k, int n) {
        return h_data(mesh.x1_nodes[mesh.column_of[k] + (n == 3 ? 1 : 0)]);
      });
}

Vector assemble_edge_data_uh_1d(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                const RefBlocks& rb, const EdgeSet& set,
                                const ScalarFn2D& u_data, const ScalarFn1D& h_data) {
  return edge_data_height_weighted(
      mesh, mesh1d, rb, set, true,
      [&](int k, int n, int r) {
        return u_data(mesh.mapping[k].map_point(gamma_map(n, rb.rule1d.points[r])));
      },
      [&](int k, int n) {
        return h_data(mesh.x1_nodes[mesh.column_of[k] + (n == 3 ? 1 : 0)]);
      });
}

Vector assemble_edge_data_u_hstate_1d(const Mesh2D& mesh, const Mesh1D& mesh1d,
                                      const RefBlocks& rb, const EdgeSet& set,
                                      const ScalarFn2D& u_data, const CoeffVector& h) {
  return edge_data_height_weighted(
      mesh, mesh1d, rb, set, true,
      [&](int k, int n, int r) {
        return u_data(mesh.mapping[k].map_point(gamma_map(n, rb.rule1d.points[r])));
      },
      [&](int k, int n) { return h_trace_own(rb, h, mesh.column_of[k], n); });
}

Vector assemble_vertex_data_ubar_h_1d(const Mesh1D& mesh, const RefBlocks& rb,
                                      const VertexSet& vertices, const CoeffVector& ubar1,
                                      const CoeffVector& ubar2, const ScalarFn1D& h_data) {
  Vector out = Vector::Zero(static_cast<long>(mesh.num_elements()) * rb.Nbar);
  for (const auto& [kbar, endpoint] : vertices.items) {
    const double nu = endpoint == 1 ? 1.0 : -1.0;
    const double hs = mesh.smoothed_height[kbar + endpoint];
    const double u = ubar_eval(rb, ubar1, ubar2, kbar, endpoint);
    const double hd = h_data(mesh.nodes[kbar + endpoint]);
    const Vector& phibar = endpoint == 1 ? rb.phi1d_at1 : rb.phi1d_at0;
    for (int i = 0; i < rb.Nbar; ++i)
      out[static_cast<long>(kbar) * rb.Nbar + i] += nu / hs * u * hd * phibar[i];
  }
  return out;
}

Vector assemble_elem_source(const Mesh2D& mesh, const RefBlocks& rb,
                            const CoeffVector& f_projected) {
  const int K = mesh.num_elements();
  Vector out(static_cast<long>(K) * rb.N);
  for (int k = 0; k < K; ++k) {
    const DenseMatrix local =
        mesh.mapping[k].det1 * rb.mass1 + mesh.mapping[k].det2 * rb.mass2;
    out.segment(static_cast<long>(k) * rb.N, rb.N) = local * f_projected.block(k);
  }
  return out;
}

Vector assemble_elem_slope(const Mesh2D& mesh, const RefBlocks& rb,
                           const std::vector<double>& slope_per_column, double gravity) {
  const int K = mesh.num_elements();
  Vector out = Vector::Zero(static_cast<long>(K) * rb.N);
  for (int k = 0; k < K; ++k) {
    const double c = gravity * slope_per_column[mesh.column_of[k]];
    // int_T phi_i dx = det1 * mass1(i, 0) + det2 * mass2(i, 0), phi_1 == 1.
    for (int i = 0; i < rb.N; ++i)
      out[static_cast<long>(k) * rb.N + i] +=
          c * (mesh.mapping[k].det1 * rb.mass1(i, 0) + mesh.mapping[k].det2 * rb.mass2(i, 0));
  }
  return out;
}

Vector assemble_elem_source_1d(const Mesh1D& mesh, const RefBlocks& rb,
                               const CoeffVector& f_projected) {
  const int Kbar = mesh.num_elements();
  Vector out(static_cast<long>(Kbar) * rb.Nbar);
  for (int kbar = 0; kbar < Kbar; ++kbar)
    out.segment(static_cast<long>(kbar) * rb.Nbar, rb.Nbar) =
        mesh.length(kbar) * f_projected.block(kbar);
  return out;
}

// --- penalty ----------------------------------------------------------------------

BlockOperator assemble_penalty(const Mesh2D& mesh, const RefBlocks& rb,
                               const EdgeSet& set, bool average) {
  const int K = mesh.num_elements();
  BlockOperator op(K, K, rb.N, rb.N);
  op.init_diag();
  for (const auto& [k, n] : set.items) {
    // The 1/|E| weight cancels the edge measure of the transformation.
    op.diag(k) += rb.edge_phi_phi[n - 1];
    if (average && mesh.edge(k, n).neighbor >= 0)
      op.add_block(k, mesh.edge(k, n).neighbor, -rb.edge_phi_phi_nbr[n - 1]);
  }
  return op;
}

// --- depth integration --------------------------------------------------------------

std::pair<CoeffVector, CoeffVector> compute_depth_integrated_velocity(
    const Mesh2D& mesh, const Mesh1D& mesh1d, const RefBlocks& rb, const CoeffVector& u1) {
  const int Kbar = mesh1d.num_elements();
  CoeffVector ubar1(Kbar, rb.Nbar), ubar2(Kbar, rb.Nbar);
  for (int k = 0; k < mesh.num_elements(); ++k) {
    const int kbar = mesh.column_of[k];
    const double height_const = mesh.mapping[k].J1(1, 1);
    const double height_lin = mesh.mapping[k].J2(1, 1);
    for (int m = 0; m < rb.Nbar; ++m) {
      const double coeff = u1.at(k, rb.j_of_m[m]);
      ubar1.at(kbar, m) += coeff * height_const;
      ubar2.at(kbar, m) += coeff * height_lin;
    }
  }
  return {std::move(ubar1), std::move(ubar2)};
}

}  // namespace hydrodg
