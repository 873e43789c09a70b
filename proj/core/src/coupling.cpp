#include "hydrodg/coupling.hpp"

#include <algorithm>
#include <cmath>

namespace hydrodg {

HeadAccumulator::HeadAccumulator(int num_pairs, int points_per_edge, int n_substep)
    : pairs_(num_pairs), points_(points_per_edge), n_substep_(n_substep) {
  if (n_substep < 1) throw ConfigError("HeadAccumulator: n_substep must be positive");
  sum_.assign(static_cast<std::size_t>(pairs_) * points_, 0.0);
}

void HeadAccumulator::reset() {
  std::fill(sum_.begin(), sum_.end(), 0.0);
  calls_ = 0;
}

void HeadAccumulator::accumulate(const std::function<double(int, int)>& value,
                                 double weight) {
  if (calls_ >= n_substep_ + 1)
    throw ConfigError("HeadAccumulator: more than n_substep+1 accumulations per macro step");
  for (int p = 0; p < pairs_; ++p)
    for (int r = 0; r < points_; ++r) sum_[p * points_ + r] += weight * value(p, r);
  ++calls_;
}

CoupledProblem::CoupledProblem(SweProblem swe, DarcyProblem darcy, CouplingConfig config)
    : swe_(std::move(swe)), darcy_(std::move(darcy)), config_(config) {
  if (config_.n_substep < 1) throw ConfigError("CoupledProblem: n_substep must be positive");
  if (!(config_.dt > 0.0)) throw ConfigError("CoupledProblem: dt must be positive");
  if (swe_.ref().p != darcy_.ref().p)
    throw ConfigError("CoupledProblem: sub-problems must share the polynomial degree");

  // Pair interface edges by x1 extent (matching elements in the horizontal
  // direction are required).
  struct Entry {
    double x_left, x_right;
    int k, n;
  };
  auto collect = [](const Mesh2D& mesh, const EdgeSet& set) {
    std::vector<Entry> out;
    for (const auto& [k, n] : set.items) {
      const double a = mesh.x1_nodes[mesh.column_of[k]];
      const double b = mesh.x1_nodes[mesh.column_of[k] + 1];
      out.push_back({a, b, k, n});
    }
    std::sort(out.begin(), out.end(),
              [](const Entry& l, const Entry& r) { return l.x_left < r.x_left; });
    return out;
  };
  const auto swe_edges = collect(swe_.mesh(), swe_.interface_edges());
  const auto darcy_edges = collect(darcy_.mesh(), darcy_.interface_edges());
  if (swe_edges.size() != darcy_edges.size())
    throw ConfigError("CoupledProblem: interface edge counts differ between sub-problems");
  for (std::size_t i = 0; i < swe_edges.size(); ++i) {
    const double scale = std::max(1.0, std::abs(swe_edges[i].x_right));
    if (std::abs(swe_edges[i].x_left - darcy_edges[i].x_left) > 1e-12 * scale ||
        std::abs(swe_edges[i].x_right - darcy_edges[i].x_right) > 1e-12 * scale)
      throw ConfigError("CoupledProblem: unpaired interface edge (x1 extents differ)");
    pairs_.push_back({swe_edges[i].k, swe_edges[i].n, darcy_edges[i].k, darcy_edges[i].n});
  }

  const int R = swe_.ref().rule1d.size();
  accumulator_ = HeadAccumulator(static_cast<int>(pairs_.size()), R, config_.n_substep);
  u1_data_.assign(pairs_.size() * R, 0.0);
  u2_data_.assign(pairs_.size() * R, 0.0);
}

void CoupledProblem::push_flux_to_swe() {
  const RefBlocks& rbd = darcy_.ref();
  const RefBlocks& rbs = swe_.ref();
  const int R = rbs.rule1d.size();
  const auto& q1 = darcy_.state().q1;
  const auto& q2 = darcy_.state().q2;
  const auto& D = darcy_.diffusion_coeffs();

  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const int k = pairs_[p].darcy_k;
    const int n = pairs_[p].darcy_n;
    for (int r = 0; r < R; ++r) {
      double qv[2] = {0.0, 0.0}, dv[2][2];
      for (int i = 0; i < rbd.N; ++i) {
        const double phi = rbd.phi_edge[n - 1](i, r);
        qv[0] += q1.at(k, i) * phi;
        qv[1] += q2.at(k, i) * phi;
      }
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          dv[a][b] = 0.0;
          for (int i = 0; i < rbd.N; ++i)
            dv[a][b] += D.comp[a][b].at(k, i) * rbd.phi_edge[n - 1](i, r);
        }
      const double scale = config_.interface_scaling;
      u1_data_[p * R + r] = scale * (dv[0][0] * qv[0] + dv[0][1] * qv[1]);
      u2_data_[p * R + r] = scale * (dv[1][0] * qv[0] + dv[1][1] * qv[1]);
    }
  }

  const Mesh2D& mesh = swe_.mesh();
  const long size = static_cast<long>(mesh.num_elements()) * rbs.N;
  Vector j1_u = Vector::Zero(size), j2_u = Vector::Zero(size), j_w = Vector::Zero(size);
  Vector j1_uu = Vector::Zero(size), j2_uu = Vector::Zero(size);
  darcy_outflow_rate_ = 0.0;
  swe_inflow_rate_ = 0.0;
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const int k = pairs_[p].swe_k;
    const int n = pairs_[p].swe_n;
    const auto& e = mesh.edge(k, n);
    const auto& de = darcy_.mesh().edge(pairs_[p].darcy_k, pairs_[p].darcy_n);
    for (int r = 0; r < R; ++r) {
      const double w = rbs.rule1d.weights[r] * e.length;
      const double u1 = u1_data_[p * R + r];
      const double u2 = u2_data_[p * R + r];
      for (int i = 0; i < rbs.N; ++i) {
        const double phi = w * rbs.phi_edge[n - 1](i, r);
        j1_u[static_cast<long>(k) * rbs.N + i] += e.normal[0] * phi * u1;
        j2_u[static_cast<long>(k) * rbs.N + i] += e.normal[1] * phi * u1;
        j_w[static_cast<long>(k) * rbs.N + i] += e.normal[1] * phi * u2;
        j1_uu[static_cast<long>(k) * rbs.N + i] += e.normal[0] * phi * u1 * u1;
        j2_uu[static_cast<long>(k) * rbs.N + i] += e.normal[1] * phi * u1 * u2;
      }
      swe_inflow_rate_ += w * (e.normal[0] * u1 + e.normal[1] * u2);
      darcy_outflow_rate_ += rbs.rule1d.weights[r] * de.length *
                             (de.normal[0] * u1 + de.normal[1] * u2);
    }
  }
  swe_.set_interface(std::move(j1_u), std::move(j2_u), std::move(j_w), std::move(j1_uu),
                     std::move(j2_uu));
}

void CoupledProblem::accumulate_head(double weight) {
  const RefBlocks& rb = swe_.ref();
  const Mesh2D& mesh = swe_.mesh();
  const double g = swe_.config().gravity;
  const auto& u1 = swe_.state().u1;
  const auto& h = swe_.state().h;
  accumulator_.accumulate(
      [&](int p, int r) {
        const int k = pairs_[p].swe_k;
        const int n = pairs_[p].swe_n;
        const Vec2 xhat = gamma_map(n, rb.rule1d.points[r]);
        const Vec2 x = mesh.mapping[k].map_point(xhat);
        double u = 0.0;
        for (int i = 0; i < rb.N; ++i) u += u1.at(k, i) * rb.phi_edge[n - 1](i, r);
        const double hval = eval_field_1d(rb, h, mesh.column_of[k], xhat[0]);
        // Dynamic head: xi + u^2/(2g) with xi = zeta_b + h; the bottom edge
        // lies on the bathymetry, so x[1] is zeta_b at this point.
        return x[1] + hval + u * u / (2.0 * g);
      },
      weight);
}

void CoupledProblem::push_head_to_darcy() {
  if (!accumulator_.complete())
    throw ConfigError("CoupledProblem: head accumulator incomplete");
  const RefBlocks& rb = darcy_.ref();
  const Mesh2D& mesh = darcy_.mesh();
  const int R = rb.rule1d.size();
  const long size = static_cast<long>(mesh.num_elements()) * rb.N;
  Vector j1 = Vector::Zero(size), j2 = Vector::Zero(size), kvec = Vector::Zero(size);
  for (std::size_t p = 0; p < pairs_.size(); ++p) {
    const int k = pairs_[p].darcy_k;
    const int n = pairs_[p].darcy_n;
    const auto& e = mesh.edge(k, n);
    for (int r = 0; r < R; ++r) {
      const double head = accumulator_.value(static_cast<int>(p), r);
      const double w = rb.rule1d.weights[r];
      for (int i = 0; i < rb.N; ++i) {
        const double phi = rb.phi_edge[n - 1](i, r);
        j1[static_cast<long>(k) * rb.N + i] += e.normal[0] * e.length * w * phi * head;
        j2[static_cast<long>(k) * rb.N + i] += e.normal[1] * e.length * w * phi * head;
        // (1/|E|) int phi head: the edge length cancels.
        kvec[static_cast<long>(k) * rb.N + i] += w * phi * head;
      }
    }
  }
  darcy_.set_interface(std::move(j1), std::move(j2), std::move(kvec));
}

void CoupledProblem::begin_macro_step() {
  const double t0 = swe_.state().time;
  if (std::abs(t0 - darcy_.state().time) > 1e-12 * std::max(1.0, std::abs(t0)))
    throw ConfigError("CoupledProblem: sub-problems are not at a common time level");
  accumulator_.reset();
  push_flux_to_swe();
  accumulate_head(accumulator_.endpoint_weight());
}

void CoupledProblem::substep(int index) {
  swe_.step(config_.dt);
  accumulate_head(index == config_.n_substep ? accumulator_.endpoint_weight()
                                             : accumulator_.interior_weight());
}

void CoupledProblem::finish_macro_step() {
  push_head_to_darcy();
  darcy_.step(config_.n_substep * config_.dt);

  // Mass ledger: the flux leaving the subsurface equals the flux entering the
  // free flow (lagged by one macro step); both sides are evaluated with the
  // same quadrature, so the mismatch stays at rounding level.
  const double mismatch = swe_inflow_rate_ + darcy_outflow_rate_;
  ledger_ += mismatch * config_.n_substep * config_.dt;
  const double scale = std::max(1.0, std::abs(swe_inflow_rate_));
  if (std::abs(mismatch) > config_.mass_ledger_tol * scale) ++ledger_warnings_;
}

void CoupledProblem::step() {
  begin_macro_step();
  for (int i = 1; i <= config_.n_substep; ++i) substep(i);
  finish_macro_step();
}

}  // namespace hydrodg
