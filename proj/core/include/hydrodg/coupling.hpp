#ifndef HYDRODG_COUPLING_HPP
#define HYDRODG_COUPLING_HPP

#include <functional>
#include <vector>

#include "hydrodg/darcy.hpp"
#include "hydrodg/swe.hpp"

namespace hydrodg {

struct CouplingConfig {
  int n_substep = 1;       // dt_tilde = n_substep * dt
  double dt = 0.0;         // free-flow sub-step size
  double interface_scaling = 1.0;  // scales D*q when handed to the free flow
  double mass_ledger_tol = 1e-10;
};

/// Matched pair of interface edges: the bottom edge of a free-flow element
/// and the top edge of a subsurface element sharing the same x1 extent.
struct InterfacePair {
  int swe_k = -1, swe_n = 1;
  int darcy_k = -1, darcy_n = 2;
};

/// Running summed-trapezoidal average of the dynamic head at the interface
/// quadrature points. Endpoint contributions carry weight dt/(2 dt_tilde),
/// interior sub-step boundaries dt/dt_tilde; after n_substep+1 calls the
/// stored value is the time average over the macro step.
class HeadAccumulator {
 public:
  HeadAccumulator() = default;
  HeadAccumulator(int num_pairs, int points_per_edge, int n_substep);

  void reset();
  void accumulate(const std::function<double(int pair, int point)>& value, double weight);
  bool complete() const { return calls_ == n_substep_ + 1; }
  int calls() const { return calls_; }
  double endpoint_weight() const { return 0.5 / n_substep_; }
  double interior_weight() const { return 1.0 / n_substep_; }
  double value(int pair, int point) const { return sum_[pair * points_ + point]; }

 private:
  int pairs_ = 0, points_ = 0, n_substep_ = 0, calls_ = 0;
  std::vector<double> sum_;
};

/// Two-way coupled driver: n_substep explicit free-flow steps per implicit
/// subsurface step, with flux data taken from the latest subsurface solution
/// and the trapezoidal head average handed back.
class CoupledProblem {
 public:
  CoupledProblem(SweProblem swe, DarcyProblem darcy, CouplingConfig config);

  SweProblem& swe() { return swe_; }
  DarcyProblem& darcy() { return darcy_; }
  const SweProblem& swe() const { return swe_; }
  const DarcyProblem& darcy() const { return darcy_; }
  const CouplingConfig& config() const { return config_; }
  const std::vector<InterfacePair>& pairs() const { return pairs_; }
  HeadAccumulator& accumulator() { return accumulator_; }

  /// Advances both sub-problems by dt_tilde = n_substep * dt.
  void step();

  /// Macro-step phases, exposed so a driver can interleave them with the
  /// generic sub-stepping machinery. step() is begin_macro_step, n_substep
  /// calls of substep, then finish_macro_step.
  void begin_macro_step();
  void substep(int index);  // index in 1..n_substep
  void finish_macro_step();

  /// Fills the free-flow interface slots from the latest subsurface flux.
  void push_flux_to_swe();
  /// Builds the subsurface interface vectors from the completed accumulator.
  void push_head_to_darcy();
  /// Adds the current free-flow traces into the accumulator.
  void accumulate_head(double weight);

  /// Cumulative lagged interface-flux mismatch (mass ledger) and the number
  /// of steps whose mismatch exceeded the tolerance.
  double mass_ledger() const { return ledger_; }
  int ledger_warnings() const { return ledger_warnings_; }

 private:
  SweProblem swe_;
  DarcyProblem darcy_;
  CouplingConfig config_;
  std::vector<InterfacePair> pairs_;
  HeadAccumulator accumulator_;

  // Per-point interface velocity data of the current macro step.
  std::vector<double> u1_data_, u2_data_;
  double ledger_ = 0.0;
  double darcy_outflow_rate_ = 0.0;
  double swe_inflow_rate_ = 0.0;
  int ledger_warnings_ = 0;
};

}  // namespace hydrodg

#endif
