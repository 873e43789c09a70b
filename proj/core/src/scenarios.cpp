#include "hydrodg/scenarios.hpp"

#include <cmath>

namespace hydrodg::scenarios {

namespace {

constexpr double kS = 0.1;      // vertical wavenumber
constexpr double kBeta = 0.005; // bed slope
constexpr double kA = 0.003;    // surface amplitude
constexpr double kWave = 0.08;  // surface wavenumber

double y_fn(double t, double x1) { return std::sin(0.1 * x1 + t); }
double y_t(double t, double x1) { return std::cos(0.1 * x1 + t); }
double y_x(double t, double x1) { return 0.1 * std::cos(0.1 * x1 + t); }
double y_xx(double t, double x1) { return -0.01 * std::sin(0.1 * x1 + t); }

double xi_fn(double t, double x1) { return 5.0 + kA * std::sin(kWave * x1 + t); }
double xi_t(double t, double x1) { return kA * std::cos(kWave * x1 + t); }
double xi_x(double t, double x1) { return kA * kWave * std::cos(kWave * x1 + t); }
double xi_xx(double t, double x1) { return -kA * kWave * kWave * std::sin(kWave * x1 + t); }

}  // namespace

AnalyticCase convergence_case(double gravity) {
  AnalyticCase c;
  c.gravity = gravity;
  c.d_free = 0.001;
  c.d_sub = 0.01;
  c.zeta_b = [](double x1) { return kBeta * x1; };
  c.xi = xi_fn;
  c.h = [](double t, double x1) { return xi_fn(t, x1) - kBeta * x1; };

  auto u1 = [](double t, const Vec2& x) {
    return y_fn(t, x[0]) * (std::cos(kS * x[1]) - std::cos(kS * kBeta * x[0]));
  };
  auto u1_t = [](double t, const Vec2& x) {
    return y_t(t, x[0]) * (std::cos(kS * x[1]) - std::cos(kS * kBeta * x[0]));
  };
  auto u1_x = [](double t, const Vec2& x) {
    return y_x(t, x[0]) * (std::cos(kS * x[1]) - std::cos(kS * kBeta * x[0])) +
           y_fn(t, x[0]) * kS * kBeta * std::sin(kS * kBeta * x[0]);
  };
  auto u1_z = [](double t, const Vec2& x) {
    return -y_fn(t, x[0]) * kS * std::sin(kS * x[1]);
  };
  auto u1_xx = [](double t, const Vec2& x) {
    const double cb = std::cos(kS * kBeta * x[0]);
    const double sb = std::sin(kS * kBeta * x[0]);
    return y_xx(t, x[0]) * (std::cos(kS * x[1]) - cb) +
           2.0 * y_x(t, x[0]) * kS * kBeta * sb +
           y_fn(t, x[0]) * kS * kS * kBeta * kBeta * cb;
  };
  auto u1_zz = [](double t, const Vec2& x) {
    return -y_fn(t, x[0]) * kS * kS * std::cos(kS * x[1]);
  };

  auto u2 = [](double t, const Vec2& x) {
    const double zb = kBeta * x[0];
    const double cb = std::cos(kS * zb);
    const double sb = std::sin(kS * zb);
    const double v = -y_x(t, x[0]) * (std::sin(kS * x[1]) / kS - cb * x[1]) -
                     kS * kBeta * y_fn(t, x[0]) * sb * x[1];
    const double eps = -0.01 * xi_x(t, x[0]) -
                       0.01 * kS * (kBeta * kBeta + 1.0) * cb +
                       y_x(t, x[0]) * (sb / kS - cb * zb) +
                       kS * kBeta * y_fn(t, x[0]) * sb * zb;
    return v + eps;
  };

  c.u1 = u1;
  c.u2 = u2;
  c.q1 = [=](double t, const Vec2& x) { return -u1_x(t, x); };
  c.q2 = [=](double t, const Vec2& x) { return -u1_z(t, x); };
  c.qd1 = [=](double t, const Vec2& x) { return -c.d_free * u1_x(t, x); };
  c.qd2 = [=](double t, const Vec2& x) { return -c.d_free * u1_z(t, x); };
  c.f = [=](double t, const Vec2& x) {
    return u1_t(t, x) + u1(t, x) * u1_x(t, x) + u2(t, x) * u1_z(t, x) +
           gravity * xi_x(t, x[0]) - c.d_free * (u1_xx(t, x) + u1_zz(t, x));
  };

  // The prescribed surface and horizontal velocity leave a residual in the
  // free-surface equation; with ubar = y * B(t, x1),
  // B = (sin(s xi) - sin(s zb))/s - cos(s zb) (xi - zb), the residual is
  // d/dt xi + d/dx1 ubar.
  c.f_h = [](double t, double x1) {
    const double zb = kBeta * x1;
    const double cb = std::cos(kS * zb);
    const double sb = std::sin(kS * zb);
    const double xi = xi_fn(t, x1);
    const double depth = xi - zb;
    const double bracket = (std::sin(kS * xi) - sb) / kS - cb * depth;
    const double bracket_x = xi_x(t, x1) * (std::cos(kS * xi) - cb) +
                             kS * kBeta * sb * depth;
    return xi_t(t, x1) + y_x(t, x1) * bracket + y_fn(t, x1) * bracket_x;
  };

  c.head = [](double t, const Vec2& x) {
    return xi_fn(t, x[0]) + std::sin(kS * x[1]) - std::sin(kS * kBeta * x[0]);
  };
  auto head_x = [](double t, const Vec2& x) {
    return xi_x(t, x[0]) - kS * kBeta * std::cos(kS * kBeta * x[0]);
  };
  auto head_z = [](double, const Vec2& x) { return kS * std::cos(kS * x[1]); };
  auto head_xx = [](double t, const Vec2& x) {
    return xi_xx(t, x[0]) + kS * kS * kBeta * kBeta * std::sin(kS * kBeta * x[0]);
  };
  auto head_zz = [](double, const Vec2& x) { return -kS * kS * std::sin(kS * x[1]); };
  c.qt1 = [=](double t, const Vec2& x) { return -head_x(t, x); };
  c.qt2 = [=](double t, const Vec2& x) { return -head_z(t, x); };
  c.f_sub = [=](double t, const Vec2& x) {
    return xi_t(t, x[0]) - c.d_sub * (head_xx(t, x) + head_zz(t, x));
  };
  return c;
}

std::vector<double> level_partition(int level) {
  const int columns = 1 << (level + 1);
  std::vector<double> nodes(columns + 1);
  for (int i = 0; i <= columns; ++i) nodes[i] = kDomainLength * i / columns;
  return nodes;
}

int level_layers(int level) { return 1 << level; }

double darcy_dt(int degree, int level) {
  return 4e-5 * std::pow(2.0, -degree * (level + 1));
}

double swe_dt(int degree, int level) {
  return 4e-6 * std::pow(2.0, -degree * (level + 1));
}

namespace {

DarcyProblem make_darcy(const AnalyticCase& c, int level, int degree, double penalty,
                        Marker top_marker) {
  DarcyConfig config;
  config.diffusion = [d = c.d_sub](double, const Vec2&) {
    return Matrix2{{d, 0.0}, {0.0, d}};
  };
  config.source = c.f_sub;
  config.dirichlet = c.head;
  config.neumann = [](double, const Vec2&) { return 0.0; };
  config.initial_head = [&c](const Vec2& x) { return c.head(0.0, x); };
  config.penalty = penalty;
  config.stationary_operator = true;

  BoundarySpec markers;
  markers.left = markers.right = markers.bottom = Marker::Dirichlet;
  markers.top = top_marker;
  Mesh2D mesh = build_column_mesh(level_partition(level), level_layers(level),
                                  [](double) { return kSubsurfaceBottom; }, c.zeta_b,
                                  markers);
  return DarcyProblem(std::move(config), std::move(mesh), degree);
}

SweProblem make_swe(const AnalyticCase& c, int level, int degree, Marker bottom_marker) {
  SweConfig config;
  config.diffusion = [d = c.d_free](double, const Vec2&) {
    return Matrix2{{d, 0.0}, {0.0, d}};
  };
  config.source = c.f;
  config.h_source = c.f_h;
  config.gravity = c.gravity;
  config.bathymetry = c.zeta_b;
  config.u1_dirichlet = c.u1;
  config.u2_dirichlet = c.u2;
  config.q1_dirichlet = c.qd1;
  config.q2_dirichlet = c.qd2;
  config.h_dirichlet = c.h;
  config.initial_u1 = [&c](const Vec2& x) { return c.u1(0.0, x); };
  config.initial_h = [&c](double x1) { return c.h(0.0, x1); };

  BoundarySpec markers;
  markers.left = markers.right = Marker::River;
  markers.top = Marker::Top;
  markers.bottom = bottom_marker;
  return SweProblem(std::move(config), level_partition(level), level_layers(level),
                    markers, degree);
}

}  // namespace

DarcyProblem make_table1_darcy(int level, int degree, double penalty, double gravity) {
  return make_darcy(convergence_case(gravity), level, degree, penalty, Marker::Dirichlet);
}

SweProblem make_table1_swe(int level, int degree, double gravity) {
  return make_swe(convergence_case(gravity), level, degree, Marker::Bottom);
}

CoupledProblem make_table2_coupled(int level, int degree, double penalty, double gravity) {
  const AnalyticCase c = convergence_case(gravity);
  SweProblem swe = make_swe(c, level, degree, Marker::Interface);
  DarcyProblem darcy = make_darcy(c, level, degree, penalty, Marker::Interface);
  CouplingConfig cc;
  cc.n_substep = 10;  // ratio of the subsurface and free-flow step laws
  cc.dt = swe_dt(degree, level);
  return CoupledProblem(std::move(swe), std::move(darcy), cc);
}

double showcase_bed(double x1) {
  if (x1 >= 15.0 && x1 <= 95.0)
    return std::cos((x1 - 35.0) / 20.0 * M_PI) + 1.0;
  return 0.0;
}

CoupledProblem make_showcase(const ShowcaseSettings& settings) {
  const int columns = settings.columns;
  std::vector<double> partition(columns + 1);
  for (int i = 0; i <= columns; ++i) partition[i] = kDomainLength * i / columns;

  SweConfig swe_config;
  swe_config.diffusion = [](double, const Vec2&) {
    return Matrix2{{0.0, 0.0}, {0.0, 0.08}};
  };
  swe_config.source = [](double, const Vec2&) { return 0.0; };
  swe_config.gravity = 10.0;
  swe_config.bathymetry = showcase_bed;
  swe_config.u1_dirichlet = [ramp = settings.inflow_ramp](double t, const Vec2& x) {
    const double factor = ramp > 0.0 ? std::min(1.0, t / ramp) : 1.0;
    return factor * std::log(1.0 + (M_E - 1.0) * x[1] / 5.0);
  };
  swe_config.u2_dirichlet = [](double, const Vec2&) { return 0.0; };
  swe_config.q1_dirichlet = [](double, const Vec2&) { return 0.0; };
  swe_config.q2_dirichlet = [](double, const Vec2&) { return 0.0; };
  swe_config.h_dirichlet = [](double, double) { return 5.0; };
  swe_config.initial_u1 = [](const Vec2&) { return 0.0; };
  swe_config.initial_h = [](double x1) { return 5.0 - showcase_bed(x1); };
  BoundarySpec swe_markers;
  swe_markers.left = Marker::River;
  swe_markers.right = Marker::OpenSea;
  swe_markers.top = Marker::Top;
  swe_markers.bottom = Marker::Interface;
  SweProblem swe(std::move(swe_config), partition, settings.layers, swe_markers,
                 settings.degree);

  DarcyConfig darcy_config;
  darcy_config.diffusion = [](double, const Vec2& x) {
    const double d = (x[1] >= -8.0 && x[1] <= -7.0) ? 1e-4 : 1e-3;
    return Matrix2{{d, 0.0}, {0.0, d}};
  };
  darcy_config.source = [](double, const Vec2&) { return 0.0; };
  darcy_config.dirichlet = [](double, const Vec2&) { return 0.0; };
  darcy_config.neumann = [](double, const Vec2&) { return 0.0; };
  darcy_config.initial_head = [](const Vec2&) { return 5.0; };
  darcy_config.penalty = settings.penalty;
  darcy_config.stationary_operator = true;
  BoundarySpec darcy_markers;
  darcy_markers.left = darcy_markers.right = darcy_markers.bottom = Marker::Neumann;
  darcy_markers.top = Marker::Interface;
  // Layer interfaces aligned with the low-permeability layer at [-8, -7];
  // the remaining layers stretch from -7 up to the bed profile.
  if (settings.layers != 8)
    throw ConfigError("make_showcase: the layered subsurface mesh expects 8 layers");
  std::vector<std::vector<double>> levels(9, std::vector<double>(partition.size()));
  for (std::size_t i = 0; i < partition.size(); ++i) {
    const double bed = showcase_bed(partition[i]);
    const double fixed[5] = {-20.0, -16.0, -12.0, -8.0, -7.0};
    for (int l = 0; l < 5; ++l) levels[l][i] = fixed[l];
    for (int l = 5; l <= 8; ++l) levels[l][i] = -7.0 + (bed + 7.0) * (l - 4) / 4.0;
  }
  Mesh2D darcy_mesh = build_column_mesh_from_levels(partition, levels, darcy_markers);
  DarcyProblem darcy(std::move(darcy_config), std::move(darcy_mesh), settings.degree);

  CouplingConfig cc;
  cc.n_substep = settings.n_substep;
  cc.dt = settings.dt;
  return CoupledProblem(std::move(swe), std::move(darcy), cc);
}

}  // namespace hydrodg::scenarios
