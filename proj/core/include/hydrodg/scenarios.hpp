#ifndef HYDRODG_SCENARIOS_HPP
#define HYDRODG_SCENARIOS_HPP

#include "hydrodg/coupling.hpp"
#include "hydrodg/darcy.hpp"
#include "hydrodg/swe.hpp"

namespace hydrodg::scenarios {

/// Analytic fields of the convergence test case: a prescribed free-surface
/// elevation and horizontal velocity with matching hydraulic head and
/// vertical velocity, plus the right-hand sides and flux data derived from
/// them. All functions take (t, x) with x = (x1, x2); 1D fields take (t, x1).
struct AnalyticCase {
  double gravity;
  double d_free;  // free-flow diffusion coefficient (scalar isotropic)
  double d_sub;   // subsurface diffusion coefficient

  std::function<double(double)> zeta_b;
  std::function<double(double, double)> xi, h;  // (t, x1)
  std::function<double(double, const Vec2&)> u1, u2;
  std::function<double(double, const Vec2&)> q1, q2;    // q = -grad u1
  std::function<double(double, const Vec2&)> qd1, qd2;  // components of D q
  std::function<double(double, const Vec2&)> f;         // momentum source
  /// Residual of the free-surface equation, d/dt h + d/dx1 (depth-integrated
  /// u1): the prescribed surface and velocity do not satisfy it on their own.
  std::function<double(double, double)> f_h;

  std::function<double(double, const Vec2&)> head;      // hydraulic head
  std::function<double(double, const Vec2&)> qt1, qt2;  // -grad head
  std::function<double(double, const Vec2&)> f_sub;     // head source
};

AnalyticCase convergence_case(double gravity);

/// Domain extents of the convergence setup.
constexpr double kDomainLength = 100.0;
constexpr double kSubsurfaceBottom = -20.0;
constexpr double kTEnd = 2e-4;

/// Mesh refinement: level j uses 2^(j+1) columns and 2^j layers.
std::vector<double> level_partition(int level);
int level_layers(int level);

/// Time-step laws of the refinement study.
double darcy_dt(int degree, int level);
double swe_dt(int degree, int level);

DarcyProblem make_table1_darcy(int level, int degree, double penalty = 1.0,
                               double gravity = 10.0);
SweProblem make_table1_swe(int level, int degree, double gravity = 10.0);
CoupledProblem make_table2_coupled(int level, int degree, double penalty = 1.0,
                                   double gravity = 10.0);

/// Channel-flow demonstration: 42x8 elements per domain, bumpy bed, layered
/// subsurface diffusion, river inflow and open-sea outflow.
struct ShowcaseSettings {
  int columns = 42;
  int layers = 8;
  int degree = 1;
  double dt = 0.02;
  int n_substep = 5;
  double t_end = 30000.0;
  double penalty = 1.0;
  /// Spin-up of the river inflow from the still-water initial state; the
  /// inflow profile is scaled by min(1, t/ramp) to avoid an impulsive start.
  double inflow_ramp = 100.0;
};
double showcase_bed(double x1);
CoupledProblem make_showcase(const ShowcaseSettings& settings);

}  // namespace hydrodg::scenarios

#endif
