#include "hydrodg/quadrature.hpp"

#include <cmath>

namespace hydrodg {

namespace {

// Legendre polynomial P_n and derivative at y, standard interval [-1,1].
void legendre_and_derivative(int n, double y, double& p, double& dp) {
  double p0 = 1.0, p1 = y;
  if (n == 0) {
    p = p0;
    dp = 0.0;
    return;
  }
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * y * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  p = p1;
  dp = n * (y * p1 - p0) / (y * y - 1.0);
}

}  // namespace

QuadRule1D gauss_rule(int num_points) {
  if (num_points < 1) throw ConfigError("gauss_rule: need at least one point");
  const int n = num_points;
  QuadRule1D rule;
  rule.points.resize(n);
  rule.weights.resize(n);
  // Newton iteration from Chebyshev initial guesses; nodes on [-1,1] then
  // mapped affinely to [0,1] (weights scale by 1/2).
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double y = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double p = 0.0, dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      legendre_and_derivative(n, y, p, dp);
      const double dy = -p / dp;
      y += dy;
      if (std::abs(dy) < 1e-16) break;
    }
    legendre_and_derivative(n, y, p, dp);
    const double w = 2.0 / ((1.0 - y * y) * dp * dp);
    rule.points[i] = 0.5 * (1.0 - y);  // descending y -> ascending x
    rule.points[n - 1 - i] = 0.5 * (1.0 + y);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

QuadRule2D tensor_rule(int num_points_per_direction) {
  const QuadRule1D rule1d = gauss_rule(num_points_per_direction);
  const int R = rule1d.size();
  QuadRule2D rule;
  rule.points.reserve(R * R);
  rule.weights.reserve(R * R);
  for (int r = 0; r < R; ++r) {
    for (int s = 0; s < R; ++s) {
      rule.points.emplace_back(rule1d.points[r], rule1d.points[s]);
      rule.weights.push_back(rule1d.weights[r] * rule1d.weights[s]);
    }
  }
  return rule;
}

Vec2 gamma_map(int n, double s) {
  switch (n) {
    case 1: return {s, 0.0};
    case 2: return {s, 1.0};
    case 3: return {1.0, s};
    case 4: return {0.0, s};
    default: throw ConfigError("gamma_map: edge index out of range");
  }
}

Vec2 theta_map(int n_minus, const Vec2& xhat) {
  switch (n_minus) {
    case 1: return {xhat[0], 1.0};
    case 2: return {xhat[0], 0.0};
    case 3: return {0.0, xhat[1]};
    case 4: return {1.0, xhat[1]};
    default: throw ConfigError("theta_map: edge index out of range");
  }
}

int opposite_edge_index(int n_minus) {
  switch (n_minus) {
    case 1: return 2;
    case 2: return 1;
    case 3: return 4;
    case 4: return 3;
    default: throw ConfigError("opposite_edge_index: edge index out of range");
  }
}

}  // namespace hydrodg
