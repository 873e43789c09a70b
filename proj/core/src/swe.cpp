#include "hydrodg/swe.hpp"

#include <cmath>

namespace hydrodg {

namespace {

template <typename Fn>
void require_data(const Fn& fn, const EdgeSet& set, const char* name) {
  if (!set.empty() && !fn)
    throw ConfigError(std::string("SweProblem: boundary data ") + name +
                      " required by mesh markers but not configured");
}

EdgeSet merge(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out = a;
  out.items.insert(out.items.end(), b.items.begin(), b.items.end());
  return out;
}

}  // namespace

SweProblem::SweProblem(SweConfig config, const std::vector<double>& x1_partition,
                       int layers, const BoundarySpec& markers, int degree)
    : config_(std::move(config)), rb_(make_ref_blocks(degree)) {
  if (!config_.bathymetry || !config_.initial_h || !config_.initial_u1)
    throw ConfigError("SweProblem: bathymetry and initial data are mandatory");
  if (!(config_.gravity > 0.0)) throw ConfigError("SweProblem: gravity must be positive");

  mesh_ = build_column_mesh(
      x1_partition, layers, config_.bathymetry,
      [&](double x1) { return config_.bathymetry(x1) + config_.initial_h(x1); }, markers);
  mesh1d_ = project_mesh(mesh_);
  surface_.zeta_b.resize(x1_partition.size());
  surface_.xi.resize(x1_partition.size());
  for (std::size_t i = 0; i < x1_partition.size(); ++i) {
    surface_.zeta_b[i] = config_.bathymetry(x1_partition[i]);
    surface_.xi[i] = surface_.zeta_b[i] + config_.initial_h(x1_partition[i]);
  }
  bed_slope_.resize(mesh1d_.num_elements());
  for (int c = 0; c < mesh1d_.num_elements(); ++c)
    bed_slope_[c] = surface_.slope_zeta_b(c, mesh1d_);

  build_edge_sets();

  state_.h = l2_project_1d(mesh1d_, rb_, config_.initial_h);
  // Align the mesh with the discrete initial height before projecting u1.
  adapt_free_surface(mesh_, mesh1d_, surface_, state_.h, rb_.basis1d);
  state_.u1 = l2_project(mesh_, rb_, config_.initial_u1);
  state_.u2 = CoeffVector(mesh_.num_elements(), rb_.N);
  state_.q1 = CoeffVector(mesh_.num_elements(), rb_.N);
  state_.q2 = CoeffVector(mesh_.num_elements(), rb_.N);
  clear_interface();
}

void SweProblem::build_edge_sets() {
  const int K = mesh_.num_elements();
  for (int k = 0; k < K; ++k) {
    for (int n = 1; n <= 4; ++n) {
      const auto& e = mesh_.edge(k, n);
      const bool vertical = n >= 3;
      if (e.neighbor >= 0) {
        set_interior_.add(k, n);
        (vertical ? set_interior_v_ : set_interior_h_).add(k, n);
        if (n == 2) set_qup_top_.add(k, n);
        if (n == 1) set_qup_bottom_.add(k, n);
        continue;
      }
      bool u_data = false, u2_data = false, h_data = false, q_data = false,
           iface = false;
      switch (e.marker) {
        case Marker::Land: u_data = true; break;
        case Marker::River: u_data = true; h_data = true; break;
        case Marker::OpenSea: h_data = true; q_data = true; break;
        case Marker::Radiation: q_data = true; break;
        case Marker::Top: q_data = true; break;
        case Marker::Bottom: u_data = true; u2_data = true; break;
        case Marker::Interface: iface = true; break;
        default:
          throw ConfigError(std::string("SweProblem: unsupported boundary marker ") +
                            marker_name(e.marker));
      }
      if (h_data && !vertical)
        throw ConfigError("SweProblem: water-height data belongs to vertical boundaries");
      const bool u_matrix = u_data || iface;  // edge counts as E_U in selectors

      if (!u_matrix) set_q_bdr_.add(k, n);
      if (!q_data) set_r_bdr_.add(k, n);
      if (!u_matrix) set_p_bdr_.add(k, n);
      if (!h_data) set_qcheck_bdr_.add(k, n);

      if (u_data) set_u_data_.add(k, n);
      if (h_data) set_h_data_.add(k, n);
      if (q_data) set_q_data_.add(k, n);

      if (vertical) {
        if (u_matrix) set_p_.add(k, n);
        if (h_data) set_qcheck_.add(k, n);
        if (u_matrix || h_data)
          set_pcheck_.add(k, n);
        else
          set_pcheck_bdr_.add(k, n);
        if (u_data || h_data) jump_boundary_.push_back({k, n, u_data, h_data});
        if (u_data) set_u_data_v_.add(k, n);
        if (u_data && h_data)
          set_juh_v_.add(k, n);
        else if (u_data)
          set_ju_only_v_.add(k, n);
        else if (h_data)
          set_jh_only_v_.add(k, n);
      } else if (n == 2) {
        set_qup_top_.add(k, n);
        set_q1bdr_h_.add(k, n);
      } else {  // bottom boundary edge
        if (iface) {
          set_interface_.add(k, n);
        } else if (u_data && u2_data) {
          set_bot_data_.add(k, n);
        } else {
          throw ConfigError(
              "SweProblem: bottom boundary requires velocity data (missing bottom data)");
        }
      }
    }
  }
  set_p_ = merge(set_interior_, set_p_);
  set_qcheck_ = merge(set_interior_, set_qcheck_);
  set_pcheck_ = merge(set_interior_v_, set_pcheck_);

  const int Kbar = mesh1d_.num_elements();
  for (int j = 1; j < Kbar; ++j) {
    verts_interior_.add(j - 1, 1);
    verts_interior_.add(j, 0);
  }
  auto classify_vertex = [&](Marker m, int kbar, int endpoint) {
    const bool u = m == Marker::Land || m == Marker::River;
    const bool h = m == Marker::River || m == Marker::OpenSea;
    if (u || h)
      verts_data_.add(kbar, endpoint);
    else
      verts_bdr_.add(kbar, endpoint);
    if (h && !u) verts_h_only_.add(kbar, endpoint);
  };
  classify_vertex(mesh1d_.left_marker, 0, 0);
  classify_vertex(mesh1d_.right_marker, Kbar - 1, 1);
}

void SweProblem::set_interface(Vector j1_u, Vector j2_u, Vector j_w, Vector j1_uu,
                               Vector j2_uu) {
  const long size = static_cast<long>(mesh_.num_elements()) * rb_.N;
  for (const Vector* v : {&j1_u, &j2_u, &j_w, &j1_uu, &j2_uu})
    if (v->size() != size) throw ConfigError("SweProblem: interface vector size mismatch");
  state_.j1_u_int = std::move(j1_u);
  state_.j2_u_int = std::move(j2_u);
  state_.j_w_int = std::move(j_w);
  state_.j1_uu_int = std::move(j1_uu);
  state_.j2_uu_int = std::move(j2_uu);
}

void SweProblem::clear_interface() {
  const long size = static_cast<long>(mesh_.num_elements()) * rb_.N;
  state_.j1_u_int = Vector::Zero(size);
  state_.j2_u_int = Vector::Zero(size);
  state_.j_w_int = Vector::Zero(size);
  state_.j1_uu_int = Vector::Zero(size);
  state_.j2_uu_int = Vector::Zero(size);
}

void SweProblem::assemble_all(double t) {
  const int K = mesh_.num_elements();
  const double g = config_.gravity;

  require_data(config_.u1_dirichlet, set_u_data_, "u1_D");
  require_data(config_.u2_dirichlet, set_bot_data_, "u2_D");
  require_data(config_.h_dirichlet, set_h_data_, "h_D");
  require_data(config_.q1_dirichlet, set_q_data_, "q1_D");
  require_data(config_.q2_dirichlet, set_q_data_, "q2_D");

  auto u1d = [&](const Vec2& x) { return config_.u1_dirichlet(t, x); };
  auto u2d = [&](const Vec2& x) { return config_.u2_dirichlet(t, x); };
  auto q1d = [&](const Vec2& x) { return config_.q1_dirichlet(t, x); };
  auto q2d = [&](const Vec2& x) { return config_.q2_dirichlet(t, x); };
  ScalarFn1D h1d;
  ScalarFn2D h2d;
  if (config_.h_dirichlet) {
    h1d = [&, t](double x1) { return config_.h_dirichlet(t, x1); };
    h2d = [&, t](const Vec2& x) { return config_.h_dirichlet(t, x[0]); };
  }
  ScalarFn2D u1_for_jump = config_.u1_dirichlet ? ScalarFn2D(u1d) : ScalarFn2D();

  const auto [ubar1, ubar2] =
      compute_depth_integrated_velocity(mesh_, mesh1d_, rb_, state_.u1);

  const TensorCoefficient D = l2_project_tensor(
      mesh_, rb_, [&](const Vec2& x) { return config_.diffusion(t, x); });
  const CoeffVector f =
      l2_project(mesh_, rb_, [&](const Vec2& x) { return config_.source(t, x); });

  ops_.t = t;
  ops_.mass.clear();
  ops_.mass.reserve(K);
  for (const auto& block : local_mass_blocks(mesh_, rb_))
    ops_.mass.emplace_back(block.llt());
  ops_.mass_bar.resize(mesh1d_.num_elements());
  for (int c = 0; c < mesh1d_.num_elements(); ++c) ops_.mass_bar[c] = mesh1d_.length(c);

  const BlockOperator h_op[2] = {assemble_elem_dphi_phi(mesh_, rb_, 1),
                                 assemble_elem_dphi_phi(mesh_, rb_, 2)};

  for (int m = 1; m <= 2; ++m) {
    BlockOperator a_q = h_op[m - 1];
    a_q -= assemble_edge_phi_phi_nu(mesh_, rb_, set_interior_, m, true);
    a_q -= assemble_edge_phi_phi_nu(mesh_, rb_, set_q_bdr_, m, false);
    ops_.a_q[m - 1] = std::move(a_q);

    BlockOperator a_uu = assemble_elem_dphi_phi_funcdisc_scalar(mesh_, rb_, state_.u1, m);
    a_uu -= assemble_edge_nonlinear_u(mesh_, rb_, state_.u1, set_p_, m, true);
    a_uu -= assemble_edge_nonlinear_u(mesh_, rb_, state_.u1, set_p_bdr_, m, false);
    ops_.a_uu[m - 1] = std::move(a_uu);

    BlockOperator a_uq = assemble_elem_dphi_phi_funcdisc(mesh_, rb_, D, m);
    a_uq -= assemble_edge_phi_phi_funcdisc_nu(mesh_, rb_, D, set_interior_, m, true);
    a_uq -= assemble_edge_phi_phi_funcdisc_nu(mesh_, rb_, D, set_r_bdr_, m, false);
    ops_.a_uq[m - 1] = std::move(a_uq);
  }

  BlockOperator a_uh = assemble_elem_dphi_phi_1d(mesh_, mesh1d_, rb_);
  a_uh -= assemble_edge_h_to_u(mesh_, rb_, set_qcheck_, true);
  a_uh -= assemble_edge_h_to_u(mesh_, rb_, set_qcheck_bdr_, false);
  a_uh.scale(g);
  ops_.a_uh = std::move(a_uh);

  BlockOperator a_wu = assemble_edge_phi_phi_nu(mesh_, rb_, set_interior_h_, 1, true);
  a_wu += assemble_edge_phi_phi_nu(mesh_, rb_, set_q1bdr_h_, 1, false);
  a_wu += assemble_edge_height_weighted(mesh_, mesh1d_, rb_, state_.h, set_pcheck_, true);
  a_wu +=
      assemble_edge_height_weighted(mesh_, mesh1d_, rb_, state_.h, set_pcheck_bdr_, false);
  a_wu -= h_op[0];
  ops_.a_wu = std::move(a_wu);

  // A_ww = H^2 - Q_up, block lower-triangular in bottom-to-top ordering.
  const BlockOperator q_up = assemble_edge_phi_phi_up(mesh_, rb_, set_qup_top_, set_qup_bottom_);
  ops_.a_ww_diag.assign(K, DenseMatrix());
  ops_.a_ww_low.assign(K, DenseMatrix());
  for (int k = 0; k < K; ++k) ops_.a_ww_diag[k] = h_op[1].diag(k) - q_up.diag(k);
  for (const auto& e : q_up.off_blocks()) {
    if (e.cb != e.rb - 1)
      throw NumericalError("SweProblem: unexpected vertical coupling structure");
    ops_.a_ww_low[e.rb] = -e.B;
  }
  ops_.a_ww_lu.clear();
  ops_.a_ww_lu.reserve(K);
  for (int k = 0; k < K; ++k) ops_.a_ww_lu.emplace_back(ops_.a_ww_diag[k].lu());

  BlockOperator a_h = assemble_elem_1d_gbar(mesh1d_, rb_, ubar1, ubar2);
  a_h -= assemble_v0t_1d(mesh1d_, rb_, ubar1, ubar2, verts_interior_, verts_data_, verts_bdr_);
  ops_.a_h = std::move(a_h);

  const JumpVectors jumps =
      assemble_jump_vectors(mesh_, mesh1d_, rb_, state_.u1, state_.h, g, set_interior_v_,
                            jump_boundary_, u1_for_jump, h1d);

  auto zero2d = [&] { return Vector::Zero(static_cast<long>(K) * rb_.N); };
  const Vector j_u1 = set_u_data_.empty()
                          ? zero2d()
                          : assemble_edge_data(mesh_, rb_, set_u_data_, 1, u1d);
  const Vector j_u2 = set_u_data_.empty()
                          ? zero2d()
                          : assemble_edge_data(mesh_, rb_, set_u_data_, 2, u1d);
  Vector j_bot[2] = {zero2d(), zero2d()};
  Vector j_u_bot[2] = {zero2d(), zero2d()};
  if (!set_bot_data_.empty()) {
    j_bot[0] = assemble_edge_data(mesh_, rb_, set_bot_data_, 1,
                                  [&](const Vec2& x) { return u1d(x) * u1d(x); });
    j_bot[1] = assemble_edge_data(mesh_, rb_, set_bot_data_, 2,
                                  [&](const Vec2& x) { return u1d(x) * u2d(x); });
    j_u_bot[0] = assemble_edge_data(mesh_, rb_, set_bot_data_, 1, u1d);
    j_u_bot[1] = assemble_edge_data(mesh_, rb_, set_bot_data_, 2, u2d);
  }
  Vector j_q = zero2d();
  if (!set_q_data_.empty())
    j_q = assemble_edge_data(mesh_, rb_, set_q_data_, 1, q1d) +
          assemble_edge_data(mesh_, rb_, set_q_data_, 2, q2d);
  Vector j_h = zero2d(), j_uu = zero2d();
  if (!set_h_data_.empty()) j_h = assemble_edge_data(mesh_, rb_, set_h_data_, 1, h2d);
  if (!set_u_data_v_.empty())
    j_uu = assemble_edge_data(mesh_, rb_, set_u_data_v_, 1,
                              [&](const Vec2& x) { return u1d(x) * u1d(x); });

  auto zero1d = [&] {
    return Vector::Zero(static_cast<long>(mesh1d_.num_elements()) * rb_.Nbar);
  };
  Vector j_uh = zero2d(), jc_u = zero2d(), jc_h = zero2d();
  Vector jb_uh = zero1d(), jb_u = zero1d(), jb_h = zero1d();
  if (!set_juh_v_.empty()) {
    j_uh = assemble_edge_data_uh(mesh_, mesh1d_, rb_, set_juh_v_, u1d, h1d);
    jb_uh = assemble_edge_data_uh_1d(mesh_, mesh1d_, rb_, set_juh_v_, u1d, h1d);
  }
  if (!set_ju_only_v_.empty()) {
    jc_u = assemble_edge_data_u_hstate(mesh_, mesh1d_, rb_, set_ju_only_v_, u1d, state_.h);
    jb_u = assemble_edge_data_u_hstate_1d(mesh_, mesh1d_, rb_, set_ju_only_v_, u1d, state_.h);
  }
  if (!set_jh_only_v_.empty())
    jc_h = assemble_edge_data_ustate_h(mesh_, mesh1d_, rb_, set_jh_only_v_, state_.u1, h1d);
  if (!verts_h_only_.items.empty())
    jb_h = assemble_vertex_data_ubar_h_1d(mesh1d_, rb_, verts_h_only_, ubar1, ubar2, h1d);

  const Vector l_u = assemble_elem_source(mesh_, rb_, f);
  const Vector l_zb = assemble_elem_slope(mesh_, rb_, bed_slope_, g);

  ops_.s_u = l_u - l_zb - jumps.k_u -
             (j_bot[0] + j_bot[1] + state_.j1_uu_int + state_.j2_uu_int + j_q +
              0.5 * (g * j_h + j_uu));
  ops_.s_q[0] = -(j_u1 + state_.j1_u_int);
  ops_.s_q[1] = -(j_u2 + state_.j2_u_int);
  ops_.s_w = jumps.k_h + j_u_bot[0] + j_u_bot[1] + state_.j1_u_int + state_.j_w_int +
             0.5 * (jc_u + jc_h + j_uh);
  ops_.s_h = -jumps.kbar_h - 0.5 * (jb_h + jb_u + jb_uh);
  if (config_.h_source) {
    const CoeffVector fh = l2_project_1d(
        mesh1d_, rb_, [&](double x1) { return config_.h_source(t, x1); });
    ops_.s_h += assemble_elem_source_1d(mesh1d_, rb_, fh);
  }
}

Vector SweProblem::apply_mass_inverse(const Vector& rhs) const {
  Vector out(rhs.size());
  for (int k = 0; k < mesh_.num_elements(); ++k)
    out.segment(static_cast<long>(k) * rb_.N, rb_.N) =
        ops_.mass[k].solve(rhs.segment(static_cast<long>(k) * rb_.N, rb_.N));
  return out;
}

Vector SweProblem::apply_mass_bar_inverse(const Vector& rhs) const {
  Vector out(rhs.size());
  for (int c = 0; c < mesh1d_.num_elements(); ++c)
    out.segment(static_cast<long>(c) * rb_.Nbar, rb_.Nbar) =
        rhs.segment(static_cast<long>(c) * rb_.Nbar, rb_.Nbar) / ops_.mass_bar[c];
  return out;
}

Vector SweProblem::solve_vertical(const Vector& rhs) const {
  const int N = rb_.N;
  Vector out(rhs.size());
  for (int c = 0; c < mesh_.num_columns; ++c) {
    for (int l = 0; l < mesh_.num_layers; ++l) {
      const int k = mesh_.element_index(c, l);
      Vector local = rhs.segment(static_cast<long>(k) * N, N);
      if (l > 0)
        local -= ops_.a_ww_low[k] * out.segment(static_cast<long>(k - 1) * N, N);
      out.segment(static_cast<long>(k) * N, N) = ops_.a_ww_lu[k].solve(local);
    }
  }
  return out;
}

void SweProblem::solve_diagnostics() {
  for (int m = 0; m < 2; ++m) {
    Vector rhs = ops_.s_q[m];
    ops_.a_q[m].apply_add(state_.u1.data, rhs);
    (m == 0 ? state_.q1 : state_.q2).data = apply_mass_inverse(rhs);
  }
  Vector rhs = ops_.s_w;
  ops_.a_wu.apply_add(state_.u1.data, rhs);
  state_.u2.data = solve_vertical(rhs);
}

void SweProblem::step(double dt) {
  if (!(dt > 0.0)) throw ConfigError("SweProblem: nonpositive time step");
  assemble_all(state_.time);
  solve_diagnostics();

  Vector rhs_u = ops_.s_u;
  ops_.a_uh.apply_add(state_.h.data, rhs_u);
  ops_.a_uu[0].apply_add(state_.u1.data, rhs_u);
  ops_.a_uu[1].apply_add(state_.u2.data, rhs_u);
  ops_.a_uq[0].apply_add(state_.q1.data, rhs_u);
  ops_.a_uq[1].apply_add(state_.q2.data, rhs_u);

  Vector rhs_h = ops_.s_h;
  ops_.a_h.apply_add(state_.h.data, rhs_h);

  state_.u1.data += dt * apply_mass_inverse(rhs_u);
  state_.h.data += dt * apply_mass_bar_inverse(rhs_h);

  if (!state_.u1.data.allFinite() || !state_.h.data.allFinite())
    throw NumericalError("SweProblem: non-finite state after explicit update (unstable step size?)");

  adapt_free_surface(mesh_, mesh1d_, surface_, state_.h, rb_.basis1d);
  state_.time += dt;
}

void SweProblem::refresh_diagnostics() {
  assemble_all(state_.time);
  solve_diagnostics();
}

}  // namespace hydrodg
