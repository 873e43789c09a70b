#include <doctest.h>

#include <cmath>
#include <random>

#include "hydrodg/quadrature.hpp"
#include "hydrodg/transform.hpp"

using namespace hydrodg;

TEST_CASE("unit square mapping is the identity") {
  const auto map = mapping_from_vertices({0, 0}, {1, 0}, {1, 1}, {0, 1});
  CHECK(map.J1.isApprox(Matrix2::Identity()));
  CHECK(map.J2.isZero());
  CHECK(map.J3.isZero());
  CHECK(map.det_at({0.3, 0.8}) == doctest::Approx(1.0));
}

TEST_CASE("axis-aligned rectangle") {
  const double w = 2.5, h = 0.5;
  const auto map = mapping_from_vertices({0, 0}, {w, 0}, {w, h}, {0, h});
  CHECK(map.det_at({0.1, 0.9}) == doctest::Approx(w * h));
  CHECK(map.det2 == doctest::Approx(0.0));
  const Vec2 g = map.physical_gradient({1.0, 0.0}, {0.4, 0.6});
  CHECK(g[0] == doctest::Approx(1.0 / w));
  CHECK(g[1] == doctest::Approx(0.0));
}

TEST_CASE("trapezoid with slanted top edge") {
  // Vertices (0,0), (1,0), (1,2), (0,1): left height 1, right height 2.
  const auto map = mapping_from_vertices({0, 0}, {1, 0}, {1, 2}, {0, 1});
  CHECK(map.J1(1, 1) == doctest::Approx(1.0));
  CHECK(map.J2(1, 1) == doctest::Approx(1.0));
  CHECK(map.det_at({0.0, 0.5}) == doctest::Approx(1.0));
  CHECK(map.det_at({0.5, 0.1}) == doctest::Approx(1.5));
  CHECK(map.det_at({1.0, 0.9}) == doctest::Approx(2.0));
}

TEST_CASE("corners map to the vertices") {
  const Vec2 a1{0.2, -0.1}, a2{1.4, 0.05}, a3{1.4, 1.3}, a4{0.2, 0.9};
  const auto map = mapping_from_vertices(a1, a2, a3, a4);
  CHECK(map.map_point({0, 0}).isApprox(a1));
  CHECK(map.map_point({1, 0}).isApprox(a2));
  CHECK(map.map_point({1, 1}).isApprox(a3));
  CHECK(map.map_point({0, 1}).isApprox(a4));
}

TEST_CASE("nonpositive determinant is rejected") {
  CHECK_THROWS_AS(mapping_from_vertices({0, 0}, {1, 0}, {1, -1}, {0, -1}),
                  NumericalError);
}

TEST_CASE("physical gradient against finite differences of c(F^-1)") {
  const auto map = mapping_from_vertices({0, 0}, {1, 0}, {1, 2}, {0, 1});
  // c(x) = sin(x1) * exp(x2/3): compute grad in physical space at F(xhat).
  auto c = [](const Vec2& x) { return std::sin(x[0]) * std::exp(x[1] / 3.0); };
  const Vec2 xhat{0.5, 0.5};
  const Vec2 x = map.map_point(xhat);
  // reference gradient of c(F(.)) by finite differences
  const double eps = 1e-7;
  auto chat = [&](const Vec2& xh) { return c(map.map_point(xh)); };
  const Vec2 ref_grad{
      (chat({xhat[0] + eps, xhat[1]}) - chat({xhat[0] - eps, xhat[1]})) / (2 * eps),
      (chat({xhat[0], xhat[1] + eps}) - chat({xhat[0], xhat[1] - eps})) / (2 * eps)};
  const Vec2 phys = map.physical_gradient(ref_grad, xhat);
  const Vec2 expected{std::cos(x[0]) * std::exp(x[1] / 3.0),
                      std::sin(x[0]) * std::exp(x[1] / 3.0) / 3.0};
  CHECK(phys[0] == doctest::Approx(expected[0]).epsilon(1e-6));
  CHECK(phys[1] == doctest::Approx(expected[1]).epsilon(1e-6));
}

TEST_CASE("affine fields are reproduced exactly by the gradient rule") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double w = 0.5 + std::abs(dist(rng));
    const double rise = 0.3 * dist(rng);
    const double hl = 0.5 + std::abs(dist(rng));
    const double hr = 0.5 + std::abs(dist(rng));
    const Vec2 a1{0, 0}, a2{w, rise}, a3{w, rise + hr}, a4{0, hl};
    const auto map = mapping_from_vertices(a1, a2, a3, a4);
    const Vec2 beta{dist(rng), dist(rng)};
    auto c = [&](const Vec2& x) { return 0.7 + beta.dot(x); };
    const Vec2 xhat{0.5 * (1 + dist(rng)), 0.5 * (1 + dist(rng))};
    // exact reference gradient of c(F(xhat)) via the chain rule
    const Matrix2 J = map.jacobian_at(xhat);
    const Vec2 ref_grad = J.transpose() * beta;
    const Vec2 phys = map.physical_gradient(ref_grad, xhat);
    CHECK(std::abs(phys[0] - beta[0]) < 1e-12);
    CHECK(std::abs(phys[1] - beta[1]) < 1e-12);
    (void)c;
  }
}

TEST_CASE("reference-side quadrature matches physical integration") {
  // int_T c dx computed two ways: transformation rule on the reference square
  // versus a fine subdivision of the physical trapezoid.
  const auto map = mapping_from_vertices({0, 0}, {1, 0}, {1, 2}, {0, 1});
  auto c = [](const Vec2& x) { return std::cos(x[0]) + x[1] * x[1]; };
  const QuadRule2D rule = tensor_rule(12);
  double ref_side = 0.0;
  for (int q = 0; q < rule.size(); ++q)
    ref_side += rule.weights[q] * c(map.map_point(rule.points[q])) *
                map.det_at(rule.points[q]);
  // physical-side: subdivide in vertical strips and integrate columns
  const int strips = 200;
  const QuadRule1D line = gauss_rule(12);
  double phys_side = 0.0;
  for (int sidx = 0; sidx < strips; ++sidx) {
    const double x1a = double(sidx) / strips;
    const double x1b = double(sidx + 1) / strips;
    for (int r = 0; r < line.size(); ++r) {
      const double x1 = x1a + (x1b - x1a) * line.points[r];
      const double z_lo = 0.0;
      const double z_hi = 1.0 + x1;  // the slanted top
      for (int t = 0; t < line.size(); ++t) {
        const double x2 = z_lo + (z_hi - z_lo) * line.points[t];
        phys_side += line.weights[r] * (x1b - x1a) * line.weights[t] * (z_hi - z_lo) *
                     c({x1, x2});
      }
    }
  }
  CHECK(std::abs(ref_side - phys_side) < 1e-10);
}
