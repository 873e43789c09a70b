#include <doctest.h>

#include <cmath>

#include "hydrodg/error_norms.hpp"
#include "hydrodg/swe.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

using namespace hydrodg;
using testutil::rel_diff;

namespace {

SweConfig lake_config() {
  SweConfig config;
  config.diffusion = [](double, const Vec2&) {
    return Matrix2{{0.001, 0.0}, {0.0, 0.001}};
  };
  config.source = [](double, const Vec2&) { return 0.0; };
  config.gravity = 10.0;
  config.bathymetry = [](double) { return 0.0; };
  config.u1_dirichlet = [](double, const Vec2&) { return 0.0; };
  config.u2_dirichlet = [](double, const Vec2&) { return 0.0; };
  config.q1_dirichlet = [](double, const Vec2&) { return 0.0; };
  config.q2_dirichlet = [](double, const Vec2&) { return 0.0; };
  config.initial_u1 = [](const Vec2&) { return 0.0; };
  config.initial_h = [](double) { return 5.0; };
  return config;
}

std::vector<double> uniform_partition(double length, int columns) {
  std::vector<double> nodes(columns + 1);
  for (int i = 0; i <= columns; ++i) nodes[i] = length * i / columns;
  return nodes;
}

}  // namespace

TEST_CASE("lake at rest is preserved over 100 steps") {
  BoundarySpec markers;
  markers.left = markers.right = Marker::Land;
  markers.top = Marker::Top;
  markers.bottom = Marker::Bottom;
  SweProblem swe(lake_config(), uniform_partition(100.0, 4), 2, markers, 1);
  for (int step = 0; step < 100; ++step) swe.step(0.01);
  CHECK(swe.state().u1.data.cwiseAbs().maxCoeff() < 1e-12);
  CHECK(compute_l2_error_1d(swe.mesh1d(), swe.state().h, [](double) { return 5.0; }) <
        1e-12);
}

TEST_CASE("zero velocity and data give zero diagnostics") {
  BoundarySpec markers;
  markers.left = markers.right = Marker::Land;
  markers.top = Marker::Top;
  markers.bottom = Marker::Bottom;
  SweProblem swe(lake_config(), uniform_partition(10.0, 3), 2, markers, 1);
  swe.assemble_all(0.0);
  swe.solve_diagnostics();
  CHECK(swe.state().q1.data.cwiseAbs().maxCoeff() < 1e-13);
  CHECK(swe.state().q2.data.cwiseAbs().maxCoeff() < 1e-13);
  CHECK(swe.state().u2.data.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("diagnostics reproduce an affine field exactly") {
  // u1 = a + b x1 + c x2 with all boundary data taken from it; the flux
  // q = -(b, c) and the vertical velocity solves the continuity ODE with
  // u2 = 0 at the bottom: u2 = -b x2.
  const double a = 0.4, b = 0.25, c = -0.15;
  auto u1 = [=](const Vec2& x) { return a + b * x[0] + c * x[1]; };
  SweConfig config = lake_config();
  config.initial_u1 = u1;
  config.u1_dirichlet = [=](double, const Vec2& x) { return u1(x); };
  config.u2_dirichlet = [=](double, const Vec2& x) { return -b * x[1]; };
  config.q1_dirichlet = [=](double, const Vec2&) { return -0.001 * b; };
  config.q2_dirichlet = [=](double, const Vec2&) { return -0.001 * c; };
  BoundarySpec markers;
  markers.left = markers.right = Marker::Land;
  markers.top = Marker::Top;
  markers.bottom = Marker::Bottom;
  SweProblem swe(config, uniform_partition(4.0, 2), 2, markers, 1);
  swe.assemble_all(0.0);
  swe.solve_diagnostics();
  CHECK(compute_l2_error(swe.mesh(), swe.state().q1, [=](const Vec2&) { return -b; }) <
        1e-10);
  CHECK(compute_l2_error(swe.mesh(), swe.state().q2, [=](const Vec2&) { return -c; }) <
        1e-10);
  CHECK(compute_l2_error(swe.mesh(), swe.state().u2,
                         [=](const Vec2& x) { return -b * x[1]; }) < 1e-10);
}

TEST_CASE("interior free-surface terms telescope (discrete mass conservation)") {
  // Summing the h-equation over the first (constant) test function must
  // cancel all interior vertex and jump contributions, leaving only boundary
  // flux terms.
  SweConfig config = lake_config();
  config.initial_u1 = [](const Vec2& x) { return 0.1 * std::sin(x[0]) + 0.02 * x[1]; };
  config.initial_h = [](double x1) { return 5.0 + 0.5 * std::cos(0.3 * x1); };
  BoundarySpec markers;
  markers.left = markers.right = Marker::Land;
  markers.top = Marker::Top;
  markers.bottom = Marker::Bottom;
  SweProblem swe(config, uniform_partition(20.0, 5), 2, markers, 1);
  const RefBlocks& rb = swe.ref();
  const auto [ubar1, ubar2] =
      compute_depth_integrated_velocity(swe.mesh(), swe.mesh1d(), rb, swe.state().u1);
  VertexSet interior, none;
  for (int j = 1; j < swe.mesh1d().num_elements(); ++j) {
    interior.add(j - 1, 1);
    interior.add(j, 0);
  }
  BlockOperator a_int =
      assemble_v0t_1d(swe.mesh1d(), rb, ubar1, ubar2, interior, none, none);
  BlockOperator gbar = assemble_elem_1d_gbar(swe.mesh1d(), rb, ubar1, ubar2);
  EdgeSet interior_v = testutil::interior_edges(swe.mesh(), true, false);
  const JumpVectors jumps =
      assemble_jump_vectors(swe.mesh(), swe.mesh1d(), rb, swe.state().u1, swe.state().h,
                            10.0, interior_v, {}, {}, {});
  Vector tendency = gbar.apply(swe.state().h.data) - a_int.apply(swe.state().h.data) -
                    jumps.kbar_h;
  double total = 0.0;
  for (int kbar = 0; kbar < swe.mesh1d().num_elements(); ++kbar)
    total += tendency[static_cast<long>(kbar) * rb.Nbar];
  CHECK(std::abs(total) < 1e-10);
}

TEST_CASE("reflection symmetry: mirrored domain negates u1 and preserves h") {
  SweConfig config = lake_config();
  const double L = 20.0;
  config.initial_u1 = [L](const Vec2& x) {
    return 0.05 * std::sin(2.0 * M_PI * x[0] / L) * (1.0 + 0.1 * x[1]);
  };
  config.initial_h = [L](double x1) { return 5.0 + 0.2 * std::cos(2.0 * M_PI * x1 / L); };
  BoundarySpec markers;
  markers.left = markers.right = Marker::Land;
  markers.top = Marker::Top;
  markers.bottom = Marker::Bottom;
  SweProblem swe(config, uniform_partition(L, 6), 2, markers, 1);
  for (int s = 0; s < 3; ++s) swe.step(1e-3);
  const RefBlocks& rb = swe.ref();
  // The initial data are (u odd, h even) about x1 = L/2; the scheme must
  // preserve that symmetry.
  for (int kbar = 0; kbar < swe.mesh1d().num_elements(); ++kbar) {
    for (double xhat : {0.2, 0.7}) {
      const double x1 = swe.mesh1d().map_point(kbar, xhat);
      const double xm = L - x1;
      const int kmir = swe.mesh1d().num_elements() - 1 - kbar;
      const double xhat_m = (xm - swe.mesh1d().nodes[kmir]) / swe.mesh1d().length(kmir);
      const double h1 = eval_field_1d(rb, swe.state().h, kbar, xhat);
      const double h2 = eval_field_1d(rb, swe.state().h, kmir, xhat_m);
      CHECK(h1 == doctest::Approx(h2).epsilon(1e-10));
    }
  }
  for (int k : {0, 1}) {
    const int col_mir = swe.mesh().num_columns - 1 - swe.mesh().column_of[k];
    const int kmir = swe.mesh().element_index(col_mir, swe.mesh().layer_of[k]);
    for (const Vec2 xhat : {Vec2{0.3, 0.4}, Vec2{0.8, 0.9}}) {
      const Vec2 xhat_m{1.0 - xhat[0], xhat[1]};
      const double u_here = eval_field(swe.mesh(), rb, swe.state().u1, k, xhat);
      const double u_mirror = eval_field(swe.mesh(), rb, swe.state().u1, kmir, xhat_m);
      CHECK(u_here == doctest::Approx(-u_mirror).epsilon(1e-9));
    }
  }
}

TEST_CASE("missing bottom data is a configuration error") {
  SweConfig config = lake_config();
  config.u2_dirichlet = nullptr;
  BoundarySpec markers;
  markers.left = markers.right = Marker::Land;
  markers.top = Marker::Top;
  markers.bottom = Marker::Land;  // no u2 data on the bottom
  CHECK_THROWS_AS(SweProblem(config, uniform_partition(4.0, 2), 2, markers, 1),
                  ConfigError);
}

TEST_CASE("unstable step size surfaces as a numerical error") {
  SweConfig config = lake_config();
  config.initial_u1 = [](const Vec2& x) { return 0.5 * std::sin(x[0]); };
  BoundarySpec markers;
  markers.left = markers.right = Marker::Land;
  markers.top = Marker::Top;
  markers.bottom = Marker::Bottom;
  SweProblem swe(config, uniform_partition(10.0, 4), 2, markers, 1);
  CHECK_THROWS_AS(
      [&] {
        for (int s = 0; s < 400; ++s) swe.step(5.0);
      }(),
      NumericalError);
}

TEST_CASE("one explicit step matches a dense composition of oracle operators") {
  // Two columns, one layer, p = 1, sloped bed, every boundary type with data.
  const int p = 1;
  const double g = 10.0;
  const double dvisc = 0.013;
  SweConfig config;
  config.diffusion = [&](double, const Vec2&) {
    return Matrix2{{dvisc, 0.0}, {0.0, dvisc}};
  };
  config.source = [](double, const Vec2& x) { return 0.3 * std::sin(x[0]) + 0.1 * x[1]; };
  config.gravity = g;
  config.bathymetry = [](double x1) { return 0.02 * x1; };
  config.u1_dirichlet = [](double, const Vec2& x) {
    return 0.05 * std::sin(x[0]) + 0.02 * x[1];
  };
  config.u2_dirichlet = [](double, const Vec2& x) { return -0.03 * std::cos(x[0]); };
  config.q1_dirichlet = [](double, const Vec2& x) { return 0.001 * x[0]; };
  config.q2_dirichlet = [](double, const Vec2& x) { return -0.002 * x[1]; };
  config.h_dirichlet = [](double, double x1) { return 4.0 + 0.3 * std::cos(0.5 * x1); };
  config.initial_u1 = [](const Vec2& x) { return 0.04 * std::cos(x[0]) + 0.01 * x[1]; };
  config.initial_h = [](double x1) { return 4.0 + 0.3 * std::cos(0.5 * x1); };
  BoundarySpec markers;
  markers.left = markers.right = Marker::River;
  markers.top = Marker::Top;
  markers.bottom = Marker::Bottom;
  SweProblem swe(config, {0.0, 1.5, 3.0}, 1, markers, p);

  const Mesh2D mesh = swe.mesh();  // snapshot before the step adapts it
  const Mesh1D mesh1d = swe.mesh1d();
  const RefBlocks& rb = swe.ref();
  const int N = rb.N, Nb = rb.Nbar;
  const int K = mesh.num_elements();
  const CoeffVector u1 = swe.state().u1;
  const CoeffVector h = swe.state().h;
  const int R = rb.rule1d.size();  // matched quadrature everywhere

  // Edge sets for this marker layout.
  EdgeSet interior, interior_v;
  interior.add(0, 3);
  interior.add(1, 4);
  interior_v = interior;
  EdgeSet bottoms, tops, lateral;
  bottoms.add(0, 1);
  bottoms.add(1, 1);
  tops.add(0, 2);
  tops.add(1, 2);
  lateral.add(0, 4);
  lateral.add(1, 3);
  EdgeSet e_u = bottoms;  // plus lateral below
  e_u.items.insert(e_u.items.end(), lateral.items.begin(), lateral.items.end());
  EdgeSet p_set = interior;
  p_set.items.insert(p_set.items.end(), lateral.items.begin(), lateral.items.end());
  EdgeSet qcheck_set = p_set, pcheck_set = p_set;
  EdgeSet qcheck_bdr;
  qcheck_bdr.items = bottoms.items;
  qcheck_bdr.items.insert(qcheck_bdr.items.end(), tops.items.begin(), tops.items.end());
  EdgeSet r_bdr;
  r_bdr.items = bottoms.items;
  r_bdr.items.insert(r_bdr.items.end(), lateral.items.begin(), lateral.items.end());
  EdgeSet qup_top = tops;
  for (const auto& [k, n] : interior.items)
    if (n == 2) qup_top.add(k, n);
  VertexSet v_interior, v_data, v_none;
  v_interior.add(0, 1);
  v_interior.add(1, 0);
  v_data.add(0, 0);
  v_data.add(1, 1);
  std::vector<JumpBoundaryEdge> jump_bdr = {{0, 4, true, true}, {1, 3, true, true}};

  auto u1d = [&](const Vec2& x) { return config.u1_dirichlet(0.0, x); };
  auto u2d = [&](const Vec2& x) { return config.u2_dirichlet(0.0, x); };
  auto q1d = [&](const Vec2& x) { return config.q1_dirichlet(0.0, x); };
  auto q2d = [&](const Vec2& x) { return config.q2_dirichlet(0.0, x); };
  auto h1d = [&](double x1) { return config.h_dirichlet(0.0, x1); };

  const TensorCoefficient D = l2_project_tensor(
      mesh, rb, [&](const Vec2& x) { return config.diffusion(0.0, x); });
  const CoeffVector f =
      l2_project(mesh, rb, [&](const Vec2& x) { return config.source(0.0, x); });

  // Dense operators from the oracle.
  const DenseMatrix M = oracle::mass(mesh, p, R);
  const DenseMatrix Mbar = oracle::mass_1d(mesh1d, p, R);
  DenseMatrix Hm[2], E[2], G[2], Q[2], Qbdr[2], Rm[2], Rbdr[2], P[2], Pbdr[2];
  for (int m = 1; m <= 2; ++m) {
    Hm[m - 1] = oracle::elem_dphi_phi(mesh, p, R, m);
    E[m - 1] = oracle::elem_funcdisc_scalar(mesh, p, R, u1, m);
    G[m - 1] = oracle::elem_funcdisc(mesh, p, R, D, m);
    Q[m - 1] = oracle::edge_phi_phi_nu(mesh, p, R, interior, m, true);
    Qbdr[m - 1] = oracle::edge_phi_phi_nu(mesh, p, R, tops, m, false);
    Rm[m - 1] = oracle::edge_funcdisc_nu(mesh, p, R, D, interior, m, true);
    Rbdr[m - 1] = oracle::edge_funcdisc_nu(mesh, p, R, D, r_bdr, m, false);
    P[m - 1] = oracle::edge_nonlinear(mesh, p, R, u1, p_set, m, true);
    Pbdr[m - 1] = oracle::edge_nonlinear(mesh, p, R, u1, tops, m, false);
  }
  const DenseMatrix Hcheck = oracle::elem_dphi_phi_1d(mesh, mesh1d, p, R);
  const DenseMatrix Qcheck = oracle::edge_h_to_u(mesh, mesh1d, p, R, qcheck_set, true);
  const DenseMatrix Qcheck_bdr =
      oracle::edge_h_to_u(mesh, mesh1d, p, R, qcheck_bdr, false);
  const DenseMatrix Pcheck =
      oracle::edge_height_weighted(mesh, mesh1d, p, R, h, pcheck_set, true);
  const DenseMatrix Qup = oracle::edge_up(mesh, p, R, qup_top, {});
  const DenseMatrix Q1bdr_h = oracle::edge_phi_phi_nu(mesh, p, R, tops, 1, false);
  const DenseMatrix Pbar =
      oracle::v0t_1d(mesh, mesh1d, p, u1, v_interior, v_data, v_none, p + 6);
  const DenseMatrix Gbar = oracle::gbar(mesh, mesh1d, p, R, u1);
  const oracle::Jumps jumps = oracle::jump_vectors(mesh, mesh1d, p, R, u1, h, g,
                                                   interior_v, jump_bdr, u1d, h1d);

  // Data vectors.
  const Vector J_u1 = oracle::edge_data(mesh, p, R, e_u, 1, u1d);
  const Vector J_u2 = oracle::edge_data(mesh, p, R, e_u, 2, u1d);
  const Vector J_bot1 = oracle::edge_data(mesh, p, R, bottoms, 1,
                                          [&](const Vec2& x) { return u1d(x) * u1d(x); });
  const Vector J_bot2 = oracle::edge_data(mesh, p, R, bottoms, 2,
                                          [&](const Vec2& x) { return u1d(x) * u2d(x); });
  const Vector J_ubot1 = oracle::edge_data(mesh, p, R, bottoms, 1, u1d);
  const Vector J_ubot2 = oracle::edge_data(mesh, p, R, bottoms, 2, u2d);
  const Vector J_q = oracle::edge_data(mesh, p, R, tops, 1, q1d) +
                     oracle::edge_data(mesh, p, R, tops, 2, q2d);
  const Vector J_h = oracle::edge_data(mesh, p, R, lateral, 1,
                                       [&](const Vec2& x) { return h1d(x[0]); });
  const Vector J_uu = oracle::edge_data(mesh, p, R, lateral, 1,
                                        [&](const Vec2& x) { return u1d(x) * u1d(x); });
  // Height-weighted data vectors on the lateral (u- and h-data) edges.
  Vector J_uh = Vector::Zero(K * N);
  Vector Jbar_uh = Vector::Zero(mesh1d.num_elements() * Nb);
  {
    const auto rule = gauss_rule(R);
    for (const auto& [k, n] : lateral.items) {
      const auto& e = mesh.edge(k, n);
      const int node = mesh.column_of[k] + (n == 3 ? 1 : 0);
      const double hs = mesh1d.smoothed_height[node];
      const double hd = h1d(mesh.x1_nodes[node]);
      for (int r = 0; r < rule.size(); ++r) {
        const Vec2 xhat = gamma_map(n, rule.points[r]);
        const Vec2 x = mesh.mapping[k].map_point(xhat);
        const double w = rule.weights[r] * e.length * e.normal[0] / hs * u1d(x) * hd;
        for (int i = 0; i < N; ++i)
          J_uh[k * N + i] += w * rb.basis.eval(i, xhat);
        // The 1D test function is constant on a vertical edge: its value at
        // the column endpoint.
        const double endpoint = (n == 3) ? 1.0 : 0.0;
        for (int i = 0; i < Nb; ++i)
          Jbar_uh[mesh.column_of[k] * Nb + i] += w * rb.basis1d.eval(i, endpoint);
      }
    }
  }
  const Vector L_u = M * f.data;
  Vector L_zb = Vector::Zero(K * N);
  {
    const auto rule = tensor_rule(R);
    for (int k = 0; k < K; ++k) {
      const double slope = 0.02;  // d zeta_b / dx1
      for (int q = 0; q < rule.size(); ++q)
        for (int i = 0; i < N; ++i)
          L_zb[k * N + i] += g * slope * rule.weights[q] *
                             mesh.mapping[k].det_at(rule.points[q]) *
                             rb.basis.eval(i, rule.points[q]);
    }
  }

  // Compose the explicit update scheme.
  const Eigen::PartialPivLU<DenseMatrix> M_lu(M);
  Vector q_diag[2];
  for (int m = 0; m < 2; ++m)
    q_diag[m] = M_lu.solve((Hm[m] - Q[m] - Qbdr[m]) * u1.data - (m == 0 ? J_u1 : J_u2));
  const DenseMatrix A_wu = -Hm[0] + Q1bdr_h + Pcheck;
  const DenseMatrix A_ww = Hm[1] - Qup;
  const Vector S_w = jumps.k_h + J_ubot1 + J_ubot2 + 0.5 * J_uh;
  const Vector u2_diag = Eigen::PartialPivLU<DenseMatrix>(A_ww).solve(
      A_wu * u1.data + S_w);

  const Vector S_u =
      L_u - L_zb - jumps.k_u - (J_bot1 + J_bot2 + J_q + 0.5 * (g * J_h + J_uu));
  Vector rhs_u = S_u + g * (Hcheck - Qcheck - Qcheck_bdr) * h.data;
  rhs_u += (E[0] - P[0] - Pbdr[0]) * u1.data + (E[1] - P[1] - Pbdr[1]) * u2_diag;
  rhs_u += (G[0] - Rm[0] - Rbdr[0]) * q_diag[0] + (G[1] - Rm[1] - Rbdr[1]) * q_diag[1];

  const Vector S_h = -jumps.kbar_h - 0.5 * Jbar_uh;
  const Vector rhs_h = S_h + (Gbar - Pbar) * h.data;

  const double dt = 1e-3;
  const Vector u1_expected = u1.data + dt * M_lu.solve(rhs_u);
  const Vector h_expected =
      h.data + dt * Eigen::PartialPivLU<DenseMatrix>(Mbar).solve(rhs_h);

  swe.step(dt);
  CHECK(rel_diff(swe.state().q1.data, q_diag[0]) < 1e-13);
  CHECK(rel_diff(swe.state().q2.data, q_diag[1]) < 1e-13);
  CHECK(rel_diff(swe.state().u2.data, u2_diag) < 1e-13);
  CHECK(rel_diff(swe.state().u1.data, u1_expected) < 1e-13);
  CHECK(rel_diff(swe.state().h.data, h_expected) < 1e-13);
}

TEST_CASE("one explicit step with open-sea and radiation boundaries (dense oracle)") {
  // Exercises the selector paths without velocity data: open sea (h and q
  // data) on the left, radiation (q data only) on the right.
  const int p = 1;
  const double g = 10.0;
  SweConfig config;
  config.diffusion = [](double, const Vec2&) {
    return Matrix2{{0.009, 0.0}, {0.0, 0.009}};
  };
  config.source = [](double, const Vec2& x) { return 0.1 * std::cos(0.7 * x[0]); };
  config.gravity = g;
  config.bathymetry = [](double x1) { return 0.015 * x1; };
  config.u1_dirichlet = [](double, const Vec2& x) { return 0.01 * x[1]; };
  config.u2_dirichlet = [](double, const Vec2& x) { return 0.02 * std::sin(x[0]); };
  config.q1_dirichlet = [](double, const Vec2& x) { return 0.003 * x[1]; };
  config.q2_dirichlet = [](double, const Vec2& x) { return -0.001 * x[0]; };
  config.h_dirichlet = [](double, double x1) { return 3.5 + 0.2 * std::sin(0.4 * x1); };
  config.initial_u1 = [](const Vec2& x) { return 0.03 * std::sin(0.8 * x[0]) - 0.01 * x[1]; };
  config.initial_h = [](double x1) { return 3.5 + 0.2 * std::sin(0.4 * x1); };
  BoundarySpec markers;
  markers.left = Marker::OpenSea;
  markers.right = Marker::Radiation;
  markers.top = Marker::Top;
  markers.bottom = Marker::Bottom;
  SweProblem swe(config, {0.0, 1.2, 2.4}, 1, markers, p);

  const Mesh2D mesh = swe.mesh();
  const Mesh1D mesh1d = swe.mesh1d();
  const RefBlocks& rb = swe.ref();
  const int N = rb.N, Nb = rb.Nbar;
  const int K = mesh.num_elements();
  const CoeffVector u1 = swe.state().u1;
  const CoeffVector h = swe.state().h;
  const int R = rb.rule1d.size();

  EdgeSet interior;
  interior.add(0, 3);
  interior.add(1, 4);
  EdgeSet bottoms, tops;
  bottoms.add(0, 1);
  bottoms.add(1, 1);
  tops.add(0, 2);
  tops.add(1, 2);
  EdgeSet left, right;
  left.add(0, 4);
  right.add(1, 3);
  EdgeSet e_q = tops;  // q data: tops + left + right
  e_q.items.insert(e_q.items.end(), left.items.begin(), left.items.end());
  e_q.items.insert(e_q.items.end(), right.items.begin(), right.items.end());
  EdgeSet q_bdr = e_q;                 // boundary minus E_U = everything but bottoms
  EdgeSet p_bdr = e_q;                 // same set for the nonlinear terms
  EdgeSet qcheck_set = interior;       // interior plus h-data verticals
  qcheck_set.items.insert(qcheck_set.items.end(), left.items.begin(), left.items.end());
  EdgeSet qcheck_bdr = bottoms;        // boundary minus E_H
  qcheck_bdr.items.insert(qcheck_bdr.items.end(), tops.items.begin(), tops.items.end());
  qcheck_bdr.items.insert(qcheck_bdr.items.end(), right.items.begin(), right.items.end());
  EdgeSet pcheck_set = interior;       // vertical interior plus data verticals
  pcheck_set.items.insert(pcheck_set.items.end(), left.items.begin(), left.items.end());
  EdgeSet pcheck_bdr = right;          // vertical boundary without any data
  EdgeSet qup_top = tops;
  for (const auto& [k, n] : interior.items)
    if (n == 2) qup_top.add(k, n);
  VertexSet v_interior, v_data, v_bdr;
  v_interior.add(0, 1);
  v_interior.add(1, 0);
  v_data.add(0, 0);   // open sea: h data
  v_bdr.add(1, 1);    // radiation: no data
  std::vector<JumpBoundaryEdge> jump_bdr = {{0, 4, false, true}};

  auto u1d = [&](const Vec2& x) { return config.u1_dirichlet(0.0, x); };
  auto u2d = [&](const Vec2& x) { return config.u2_dirichlet(0.0, x); };
  auto q1d = [&](const Vec2& x) { return config.q1_dirichlet(0.0, x); };
  auto q2d = [&](const Vec2& x) { return config.q2_dirichlet(0.0, x); };
  auto h1df = [&](double x1) { return config.h_dirichlet(0.0, x1); };

  const TensorCoefficient D = l2_project_tensor(
      mesh, rb, [&](const Vec2& x) { return config.diffusion(0.0, x); });
  const CoeffVector f =
      l2_project(mesh, rb, [&](const Vec2& x) { return config.source(0.0, x); });

  const DenseMatrix M = oracle::mass(mesh, p, R);
  const DenseMatrix Mbar = oracle::mass_1d(mesh1d, p, R);
  DenseMatrix Hm[2], E[2], G[2], Q[2], Qbdr[2], Rm[2], Rbdr[2], P[2], Pbdr[2];
  for (int m = 1; m <= 2; ++m) {
    Hm[m - 1] = oracle::elem_dphi_phi(mesh, p, R, m);
    E[m - 1] = oracle::elem_funcdisc_scalar(mesh, p, R, u1, m);
    G[m - 1] = oracle::elem_funcdisc(mesh, p, R, D, m);
    Q[m - 1] = oracle::edge_phi_phi_nu(mesh, p, R, interior, m, true);
    Qbdr[m - 1] = oracle::edge_phi_phi_nu(mesh, p, R, q_bdr, m, false);
    Rm[m - 1] = oracle::edge_funcdisc_nu(mesh, p, R, D, interior, m, true);
    Rbdr[m - 1] = oracle::edge_funcdisc_nu(mesh, p, R, D, bottoms, m, false);
    P[m - 1] = oracle::edge_nonlinear(mesh, p, R, u1, interior, m, true);
    Pbdr[m - 1] = oracle::edge_nonlinear(mesh, p, R, u1, p_bdr, m, false);
  }
  const DenseMatrix Hcheck = oracle::elem_dphi_phi_1d(mesh, mesh1d, p, R);
  const DenseMatrix Qcheck = oracle::edge_h_to_u(mesh, mesh1d, p, R, qcheck_set, true);
  const DenseMatrix Qcheck_bdr = oracle::edge_h_to_u(mesh, mesh1d, p, R, qcheck_bdr, false);
  const DenseMatrix Pcheck =
      oracle::edge_height_weighted(mesh, mesh1d, p, R, h, pcheck_set, true);
  const DenseMatrix Pcheck_bdr =
      oracle::edge_height_weighted(mesh, mesh1d, p, R, h, pcheck_bdr, false);
  const DenseMatrix Qup = oracle::edge_up(mesh, p, R, qup_top, {});
  const DenseMatrix Q1bdr_h = oracle::edge_phi_phi_nu(mesh, p, R, tops, 1, false);
  const DenseMatrix Pbar =
      oracle::v0t_1d(mesh, mesh1d, p, u1, v_interior, v_data, v_bdr, p + 6);
  const DenseMatrix Gbar = oracle::gbar(mesh, mesh1d, p, R, u1);
  const oracle::Jumps jumps = oracle::jump_vectors(mesh, mesh1d, p, R, u1, h, g,
                                                   interior, jump_bdr, {}, h1df);

  const Vector J_u1 = oracle::edge_data(mesh, p, R, bottoms, 1, u1d);
  const Vector J_u2 = oracle::edge_data(mesh, p, R, bottoms, 2, u1d);
  const Vector J_bot1 = oracle::edge_data(mesh, p, R, bottoms, 1,
                                          [&](const Vec2& x) { return u1d(x) * u1d(x); });
  const Vector J_bot2 = oracle::edge_data(mesh, p, R, bottoms, 2,
                                          [&](const Vec2& x) { return u1d(x) * u2d(x); });
  const Vector J_ubot1 = oracle::edge_data(mesh, p, R, bottoms, 1, u1d);
  const Vector J_ubot2 = oracle::edge_data(mesh, p, R, bottoms, 2, u2d);
  const Vector J_q = oracle::edge_data(mesh, p, R, e_q, 1, q1d) +
                     oracle::edge_data(mesh, p, R, e_q, 2, q2d);
  const Vector J_h = oracle::edge_data(mesh, p, R, left, 1,
                                       [&](const Vec2& x) { return h1df(x[0]); });
  // J-check_h: nu^1/H_s int phi_i u1_interior h_D on the h-data-only edge.
  Vector Jc_h = Vector::Zero(K * N);
  Vector Jbar_h = Vector::Zero(mesh1d.num_elements() * Nb);
  {
    const auto rule = gauss_rule(R);
    for (const auto& [k, n] : left.items) {
      const auto& e = mesh.edge(k, n);
      const int node = mesh.column_of[k] + (n == 3 ? 1 : 0);
      const double hs = mesh1d.smoothed_height[node];
      const double hd = h1df(mesh.x1_nodes[node]);
      for (int r = 0; r < rule.size(); ++r) {
        const Vec2 xhat = gamma_map(n, rule.points[r]);
        double u_here = 0.0;
        for (int j = 0; j < N; ++j) u_here += u1.at(k, j) * rb.basis.eval(j, xhat);
        const double w = rule.weights[r] * e.length * e.normal[0] / hs * u_here * hd;
        for (int i = 0; i < N; ++i) Jc_h[k * N + i] += w * rb.basis.eval(i, xhat);
      }
      // 1D counterpart: point evaluation with the depth-integrated velocity
      const double ubar =
          oracle::depth_integral(mesh, p, u1, mesh.column_of[k], mesh.x1_nodes[node], p + 6);
      const double nu = (n == 3) ? 1.0 : -1.0;
      const double endpoint = (n == 3) ? 1.0 : 0.0;
      for (int i = 0; i < Nb; ++i)
        Jbar_h[mesh.column_of[k] * Nb + i] +=
            nu / hs * ubar * hd * rb.basis1d.eval(i, endpoint);
    }
  }
  const Vector L_u = M * f.data;
  Vector L_zb = Vector::Zero(K * N);
  {
    const auto rule = tensor_rule(R);
    for (int k = 0; k < K; ++k)
      for (int q = 0; q < rule.size(); ++q)
        for (int i = 0; i < N; ++i)
          L_zb[k * N + i] += g * 0.015 * rule.weights[q] *
                             mesh.mapping[k].det_at(rule.points[q]) *
                             rb.basis.eval(i, rule.points[q]);
  }

  const Eigen::PartialPivLU<DenseMatrix> M_lu(M);
  Vector q_diag[2];
  for (int m = 0; m < 2; ++m)
    q_diag[m] = M_lu.solve((Hm[m] - Q[m] - Qbdr[m]) * u1.data - (m == 0 ? J_u1 : J_u2));
  const DenseMatrix A_wu = -Hm[0] + Q1bdr_h + Pcheck + Pcheck_bdr;
  const DenseMatrix A_ww = Hm[1] - Qup;
  const Vector S_w = jumps.k_h + J_ubot1 + J_ubot2 + 0.5 * Jc_h;
  const Vector u2_diag =
      Eigen::PartialPivLU<DenseMatrix>(A_ww).solve(A_wu * u1.data + S_w);

  const Vector S_u = L_u - L_zb - jumps.k_u - (J_bot1 + J_bot2 + J_q + 0.5 * g * J_h);
  Vector rhs_u = S_u + g * (Hcheck - Qcheck - Qcheck_bdr) * h.data;
  rhs_u += (E[0] - P[0] - Pbdr[0]) * u1.data + (E[1] - P[1] - Pbdr[1]) * u2_diag;
  rhs_u += (G[0] - Rm[0] - Rbdr[0]) * q_diag[0] + (G[1] - Rm[1] - Rbdr[1]) * q_diag[1];

  const Vector S_h = -jumps.kbar_h - 0.5 * Jbar_h;
  const Vector rhs_h = S_h + (Gbar - Pbar) * h.data;

  const double dt = 1e-3;
  const Vector u1_expected = u1.data + dt * M_lu.solve(rhs_u);
  const Vector h_expected =
      h.data + dt * Eigen::PartialPivLU<DenseMatrix>(Mbar).solve(rhs_h);

  swe.step(dt);
  CHECK(rel_diff(swe.state().q1.data, q_diag[0]) < 1e-13);
  CHECK(rel_diff(swe.state().q2.data, q_diag[1]) < 1e-13);
  CHECK(rel_diff(swe.state().u2.data, u2_diag) < 1e-13);
  CHECK(rel_diff(swe.state().u1.data, u1_expected) < 1e-13);
  CHECK(rel_diff(swe.state().h.data, h_expected) < 1e-13);
}
