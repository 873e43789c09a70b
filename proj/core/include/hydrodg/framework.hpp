#ifndef HYDRODG_FRAMEWORK_HPP
#define HYDRODG_FRAMEWORK_HPP

#include <functional>
#include <string>

#include "hydrodg/types.hpp"

namespace hydrodg {

/// Generic problem life-cycle: a setup phase (configure, preprocess, init),
/// an iterated solver phase (preprocess_step, optional sub-step trio inside
/// the solve step, solve_step, postprocess_step, output_step) controlled by
/// the record's is_finished flag, and a finalize phase (postprocess,
/// error_eval, output). Step functions are registered once and dispatched
/// directly in the loop.
///
/// The record type is opaque to the framework except for two contracted
/// members: `bool is_finished` and, when sub-stepping is used,
/// `int num_substeps`.
template <typename Record>
struct ProblemSteps {
  using Step = std::function<void(Record&, int)>;

  Step configure, preprocess, init;
  Step preprocess_step, solve_step, postprocess_step, output_step;
  Step preprocess_substep, solve_substep, postprocess_substep;
  Step postprocess, error_eval, output;

  /// Optional observer for phase-order assertions; receives the step name
  /// and the iteration counter.
  std::function<void(const std::string&, int)> trace;
};

template <typename Record>
Record run_problem(const ProblemSteps<Record>& steps, Record record) {
  auto call = [&](const typename ProblemSteps<Record>::Step& fn, const char* name,
                  int iteration) {
    if (steps.trace) steps.trace(name, iteration);
    if (!fn) return;
    try {
      fn(record, iteration);
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw NumericalError(std::string(name) + " (iteration " +
                           std::to_string(iteration) + "): " + e.what());
    }
  };

  call(steps.configure, "configure", 0);
  call(steps.preprocess, "preprocess", 0);
  call(steps.init, "init", 0);

  const bool has_substeps =
      steps.preprocess_substep || steps.solve_substep || steps.postprocess_substep;

  int iteration = 1;
  while (!record.is_finished) {
    call(steps.preprocess_step, "preprocessStep", iteration);
    if (has_substeps) {
      const int count = record.num_substeps;
      for (int sub = 1; sub <= count; ++sub) {
        call(steps.preprocess_substep, "preprocessSubStep", sub);
        call(steps.solve_substep, "solveSubStep", sub);
        call(steps.postprocess_substep, "postprocessSubStep", sub);
      }
    }
    call(steps.solve_step, "solveStep", iteration);
    call(steps.postprocess_step, "postprocessStep", iteration);
    call(steps.output_step, "outputStep", iteration);
    ++iteration;
  }

  call(steps.postprocess, "postprocess", iteration);
  call(steps.error_eval, "errorEval", iteration);
  call(steps.output, "output", iteration);
  return record;
}

}  // namespace hydrodg

#endif
