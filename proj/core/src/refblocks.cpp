#include "hydrodg/refblocks.hpp"

namespace hydrodg {

RefBlocks::RefBlocks(int degree, int quad_points)
    : p(degree),
      N((degree + 1) * (degree + 1)),
      Nbar(degree + 1),
      rule1d(gauss_rule(quad_points)),
      rule2d(tensor_rule(quad_points)),
      basis(degree),
      basis1d(degree) {}

RefBlocks make_ref_blocks(int p, int num_quad_points) {
  const int R = num_quad_points > 0 ? num_quad_points : p + 2;
  RefBlocks rb(p, R);
  const int N = rb.N, Nbar = rb.Nbar;
  const int Q = rb.rule2d.size();

  rb.phi.resize(N, Q);
  rb.dphi1.resize(N, Q);
  rb.dphi2.resize(N, Q);
  rb.phi1d_on_elem.resize(Nbar, Q);
  for (int q = 0; q < Q; ++q) {
    const Vec2& x = rb.rule2d.points[q];
    for (int i = 0; i < N; ++i) {
      rb.phi(i, q) = rb.basis.eval(i, x);
      const Vec2 g = rb.basis.grad(i, x);
      rb.dphi1(i, q) = g[0];
      rb.dphi2(i, q) = g[1];
    }
    for (int j = 0; j < Nbar; ++j) rb.phi1d_on_elem(j, q) = rb.basis1d.eval(j, x[0]);
  }

  auto weight_factor = [&](int w, const Vec2& x) {
    return w == 0 ? 1.0 : (w == 1 ? x[0] : x[1]);
  };

  rb.mass1 = DenseMatrix::Zero(N, N);
  rb.mass2 = DenseMatrix::Zero(N, N);
  for (int m = 0; m < 2; ++m)
    for (int w = 0; w < 3; ++w) {
      rb.grad_phi_phi[m][w] = DenseMatrix::Zero(N, N);
      rb.grad_phi_phi1d[m][w] = DenseMatrix::Zero(N, Nbar);
      rb.grad_phi_phi_phi[m][w].assign(N, DenseMatrix::Zero(N, N));
    }
  for (int q = 0; q < Q; ++q) {
    const Vec2& x = rb.rule2d.points[q];
    const double wq = rb.rule2d.weights[q];
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) {
        rb.mass1(i, j) += wq * rb.phi(i, q) * rb.phi(j, q);
        rb.mass2(i, j) += wq * x[0] * rb.phi(i, q) * rb.phi(j, q);
      }
    }
    for (int m = 0; m < 2; ++m) {
      const DenseMatrix& dphi = m == 0 ? rb.dphi1 : rb.dphi2;
      for (int w = 0; w < 3; ++w) {
        const double f = wq * weight_factor(w, x);
        if (f == 0.0) continue;
        for (int i = 0; i < N; ++i) {
          const double di = f * dphi(i, q);
          if (di == 0.0) continue;
          for (int j = 0; j < N; ++j)
            rb.grad_phi_phi[m][w](i, j) += di * rb.phi(j, q);
          for (int jb = 0; jb < Nbar; ++jb)
            rb.grad_phi_phi1d[m][w](i, jb) += di * rb.phi1d_on_elem(jb, q);
          for (int l = 0; l < N; ++l) {
            const double dil = di * rb.phi(l, q);
            for (int j = 0; j < N; ++j)
              rb.grad_phi_phi_phi[m][w][l](i, j) += dil * rb.phi(j, q);
          }
        }
      }
    }
  }

  const int Re = rb.rule1d.size();
  for (int n = 1; n <= 4; ++n) {
    DenseMatrix pe(N, Re), pn(N, Re), p1(Nbar, Re), p1n(Nbar, Re);
    for (int r = 0; r < Re; ++r) {
      const double s = rb.rule1d.points[r];
      const Vec2 own = gamma_map(n, s);
      const Vec2 nbr = theta_map(n, own);
      for (int i = 0; i < N; ++i) {
        pe(i, r) = rb.basis.eval(i, own);
        pn(i, r) = rb.basis.eval(i, nbr);
      }
      for (int j = 0; j < Nbar; ++j) {
        p1(j, r) = rb.basis1d.eval(j, own[0]);
        p1n(j, r) = rb.basis1d.eval(j, nbr[0]);
      }
    }
    rb.phi_edge[n - 1] = pe;
    rb.phi_edge_nbr[n - 1] = pn;
    rb.phi1d_edge[n - 1] = p1;
    rb.phi1d_edge_nbr[n - 1] = p1n;

    DenseMatrix spp = DenseMatrix::Zero(N, N), sppn = DenseMatrix::Zero(N, N);
    DenseMatrix s1 = DenseMatrix::Zero(N, Nbar), s1n = DenseMatrix::Zero(N, Nbar);
    std::vector<DenseMatrix> t(N, DenseMatrix::Zero(N, N));
    std::vector<DenseMatrix> tn(N, DenseMatrix::Zero(N, N));
    for (int r = 0; r < Re; ++r) {
      const double wr = rb.rule1d.weights[r];
      for (int i = 0; i < N; ++i) {
        const double wi = wr * pe(i, r);
        for (int j = 0; j < N; ++j) {
          spp(i, j) += wi * pe(j, r);
          sppn(i, j) += wi * pn(j, r);
        }
        for (int jb = 0; jb < Nbar; ++jb) {
          s1(i, jb) += wi * p1(jb, r);
          s1n(i, jb) += wi * p1n(jb, r);
        }
        for (int l = 0; l < N; ++l) {
          const double wil = wi * pe(l, r);
          const double wiln = wi * pn(l, r);
          for (int j = 0; j < N; ++j) {
            t[l](i, j) += wil * pe(j, r);
            tn[l](i, j) += wiln * pn(j, r);
          }
        }
      }
    }
    rb.edge_phi_phi[n - 1] = spp;
    rb.edge_phi_phi_nbr[n - 1] = sppn;
    rb.edge_phi_phi1d[n - 1] = s1;
    rb.edge_phi_phi1d_nbr[n - 1] = s1n;
    rb.edge_phi_phi_phi[n - 1] = std::move(t);
    rb.edge_phi_phi_phi_nbr[n - 1] = std::move(tn);
  }

  rb.phi1d_at0.resize(Nbar);
  rb.phi1d_at1.resize(Nbar);
  for (int j = 0; j < Nbar; ++j) {
    rb.phi1d_at0[j] = rb.basis1d.eval(j, 0.0);
    rb.phi1d_at1[j] = rb.basis1d.eval(j, 1.0);
  }
  rb.phi1d_q.resize(Nbar, Re);
  rb.dphi1d_q.resize(Nbar, Re);
  for (int r = 0; r < Re; ++r)
    for (int j = 0; j < Nbar; ++j) {
      rb.phi1d_q(j, r) = rb.basis1d.eval(j, rb.rule1d.points[r]);
      rb.dphi1d_q(j, r) = rb.basis1d.grad(j, rb.rule1d.points[r]);
    }

  rb.j_of_m.resize(Nbar);
  for (int m = 0; m < Nbar; ++m) rb.j_of_m[m] = m * m;

  return rb;
}

}  // namespace hydrodg
