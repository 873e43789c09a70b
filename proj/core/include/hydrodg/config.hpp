#ifndef HYDRODG_CONFIG_HPP
#define HYDRODG_CONFIG_HPP

#include <array>
#include <string>
#include <vector>

#include "hydrodg/types.hpp"

namespace hydrodg {

/// Space-time affine expression c0 + cx1*x1 + cx2*x2 + ct*t, the configurable
/// coefficient form for custom runs (the analytical test setups are built in
/// as named scenarios).
struct AffineExpr {
  double c0 = 0.0, cx1 = 0.0, cx2 = 0.0, ct = 0.0;

  double operator()(double t, const Vec2& x) const {
    return c0 + cx1 * x[0] + cx2 * x[1] + ct * t;
  }
  double operator()(double t, double x1) const { return c0 + cx1 * x1 + ct * t; }
};

struct RunConfig {
  int version = 1;
  std::string problem;            // darcy | swe | coupled | convergence | showcase
  std::string scenario = "";      // table1-darcy | table1-swe | table2-coupled |
                                  // showcase | custom
  int degree = 1;
  std::vector<int> levels = {0, 1, 2, 3};  // convergence refinement levels

  struct Time {
    double t_end = 0.0;
    double dt = 0.0;
    double dt_tilde = 0.0;
    int n_substep = 1;
  } time;

  double penalty = 1.0;
  double gravity = 10.0;
  double interface_scaling = 1.0;

  struct Mesh {
    int columns = 0, layers = 0;
    std::array<double, 2> x1_range = {0.0, 1.0};
    std::array<double, 2> x2_range = {0.0, 1.0};  // bottom/top for constant profiles
  } mesh;

  /// Coefficients for scenario == "custom" (darcy or swe problems).
  struct Custom {
    // shared
    AffineExpr diffusion_11 = {1, 0, 0, 0}, diffusion_22 = {1, 0, 0, 0};
    AffineExpr diffusion_12, diffusion_21;
    AffineExpr source;
    // darcy
    AffineExpr dirichlet, neumann, initial_head;
    // swe
    AffineExpr bathymetry;  // x1-affine
    AffineExpr u1_dirichlet, u2_dirichlet, q1_dirichlet, q2_dirichlet, h_dirichlet;
    AffineExpr initial_u1, initial_h;
    std::string left = "dirichlet", right = "dirichlet", top = "dirichlet",
                bottom = "dirichlet";  // marker names
  } custom;

  struct Output {
    std::string dir = "out";
    int vtk_every = 0;  // macro steps between snapshots; 0 = final state only
    std::string csv = "";
    bool quiet = false;
  } output;
};

RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::string& path);
std::string serialize_config(const RunConfig& config);

/// Schema and consistency validation; throws ConfigError with a message
/// naming the offending field.
void validate_config(const RunConfig& config);

}  // namespace hydrodg

#endif
