#ifndef HYDRODG_DRIVERS_HPP
#define HYDRODG_DRIVERS_HPP

#include <iosfwd>

#include "hydrodg/config.hpp"
#include "hydrodg/output.hpp"
#include "hydrodg/scenarios.hpp"

namespace hydrodg {

/// Convergence study over the configured refinement levels; the scenario
/// selects the analytical setup and the unknown columns.
ErrorReport run_convergence(const RunConfig& config, std::ostream* log = nullptr);

struct ShowcaseOutcome {
  int macro_steps = 0;
  double final_time = 0.0;
  // Free-surface extrema at the final state, over the full domain and over
  // the flat-bed sections (away from the obstacle).
  double surface_min = 0.0, surface_max = 0.0;
  double surface_min_flat = 0.0, surface_max_flat = 0.0;
  int ledger_warnings = 0;
};

ShowcaseOutcome run_showcase(const RunConfig& config, std::ostream* log = nullptr);

/// Single simulation run (darcy, swe, or coupled) for a named or custom
/// scenario, with VTK output per the configured cadence.
void run_single(const RunConfig& config, std::ostream* log = nullptr);

/// Builders for custom (affine-coefficient) problems.
DarcyProblem build_custom_darcy(const RunConfig& config);
SweProblem build_custom_swe(const RunConfig& config);

Marker marker_from_name(const std::string& name);

}  // namespace hydrodg

#endif
