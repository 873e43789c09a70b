#include "hydrodg/basis.hpp"

#include <cmath>

namespace hydrodg {

namespace {

constexpr int kMaxDegree = 12;

double legendre(int n, double y) {
  double p0 = 1.0, p1 = y;
  if (n == 0) return p0;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * y * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

double legendre_derivative(int n, double y) {
  // P'_{k+1} = P'_{k-1} + (2k+1) P_k
  if (n == 0) return 0.0;
  double p0 = 1.0, p1 = y;
  double d0 = 0.0, d1 = 1.0;
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * y * p1 - (k - 1.0) * p0) / k;
    const double d2 = d0 + (2.0 * k - 1.0) * p1;
    p0 = p1;
    p1 = p2;
    d0 = d1;
    d1 = d2;
  }
  return d1;
}

}  // namespace

Basis1D::Basis1D(int degree) : p_(degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw ConfigError("Basis1D: unsupported polynomial degree");
}

double Basis1D::eval(int i, double x) const {
  switch (i) {
    case 0: return 1.0;
    case 1: return std::sqrt(3.0) * (1.0 - 2.0 * x);
    case 2: return std::sqrt(5.0) * ((6.0 * x - 6.0) * x + 1.0);
    case 3: return std::sqrt(7.0) * (((20.0 * x - 30.0) * x + 12.0) * x - 1.0);
    default: return std::sqrt(2.0 * i + 1.0) * legendre(i, 2.0 * x - 1.0);
  }
}

double Basis1D::grad(int i, double x) const {
  switch (i) {
    case 0: return 0.0;
    case 1: return -2.0 * std::sqrt(3.0);
    case 2: return std::sqrt(5.0) * (12.0 * x - 6.0);
    case 3: return std::sqrt(7.0) * ((60.0 * x - 60.0) * x + 12.0);
    default:
      return 2.0 * std::sqrt(2.0 * i + 1.0) *
             legendre_derivative(i, 2.0 * x - 1.0);
  }
}

int Basis2D::index_map(int m, int n) {
  const int mx = std::max(m, n);
  return (mx - 1) * (mx - 1) + mx - m + n;
}

Basis2D::Basis2D(int degree) : p_(degree), b1_(degree) {
  const int nbar = degree + 1;
  pairs_.resize(nbar * nbar);
  for (int m = 1; m <= nbar; ++m)
    for (int n = 1; n <= nbar; ++n)
      pairs_[index_map(m, n) - 1] = {m - 1, n - 1};
}

double Basis2D::eval(int i, const Vec2& xhat) const {
  const auto [m, n] = pairs_[i];
  return b1_.eval(m, xhat[0]) * b1_.eval(n, xhat[1]);
}

Vec2 Basis2D::grad(int i, const Vec2& xhat) const {
  const auto [m, n] = pairs_[i];
  return {b1_.grad(m, xhat[0]) * b1_.eval(n, xhat[1]),
          b1_.eval(m, xhat[0]) * b1_.grad(n, xhat[1])};
}

}  // namespace hydrodg
