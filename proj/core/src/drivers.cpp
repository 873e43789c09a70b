#include "hydrodg/drivers.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>

#include "hydrodg/error_norms.hpp"
#include "hydrodg/framework.hpp"

namespace hydrodg {

namespace {

struct TimeLoopRecord {
  std::function<void()> advance;
  int total = 0;
  int done = 0;
  bool is_finished = false;
  int num_substeps = 0;
};

/// Runs `advance` total times through the generic framework.
void run_time_loop(std::function<void()> advance, int total) {
  ProblemSteps<TimeLoopRecord> steps;
  steps.solve_step = [](TimeLoopRecord& rec, int) { rec.advance(); };
  steps.postprocess_step = [](TimeLoopRecord& rec, int) {
    rec.is_finished = ++rec.done >= rec.total;
  };
  TimeLoopRecord record{std::move(advance), total};
  record.is_finished = total == 0;
  run_problem(steps, std::move(record));
}

struct CoupledLoopRecord {
  CoupledProblem* problem = nullptr;
  std::function<void(int)> on_output;
  int total = 0;
  int done = 0;
  bool is_finished = false;
  int num_substeps = 0;
};

/// Drives a coupled problem through the framework: the free-flow sub-steps
/// run in the sub-step trio inside the solver phase, the implicit subsurface
/// step in the solve step.
void run_coupled_loop(CoupledProblem& problem, int total,
                      const std::function<void(int)>& on_output = {}) {
  ProblemSteps<CoupledLoopRecord> steps;
  steps.preprocess_step = [](CoupledLoopRecord& rec, int) {
    rec.problem->begin_macro_step();
  };
  steps.solve_substep = [](CoupledLoopRecord& rec, int sub) { rec.problem->substep(sub); };
  steps.solve_step = [](CoupledLoopRecord& rec, int) { rec.problem->finish_macro_step(); };
  steps.postprocess_step = [](CoupledLoopRecord& rec, int) {
    rec.is_finished = ++rec.done >= rec.total;
  };
  steps.output_step = [](CoupledLoopRecord& rec, int it) {
    if (rec.on_output) rec.on_output(it);
  };
  CoupledLoopRecord record{&problem, on_output, total};
  record.num_substeps = problem.config().n_substep;
  record.is_finished = total == 0;
  run_problem(steps, std::move(record));
}

int step_count(double t_end, double dt) {
  const double steps = t_end / dt;
  const int n = static_cast<int>(std::lround(steps));
  if (n < 1 || std::abs(steps - n) > 1e-8 * std::max(1.0, steps))
    throw ConfigError("driver: t_end is not an integer multiple of the step size");
  return n;
}

void append_darcy_errors(ErrorReport::Level& level, const DarcyProblem& darcy,
                         const scenarios::AnalyticCase& c, double t) {
  level.err["ht"] = compute_l2_error(darcy.mesh(), darcy.state().head,
                                     [&](const Vec2& x) { return c.head(t, x); });
  level.err["qt1"] = compute_l2_error(darcy.mesh(), darcy.state().q1,
                                      [&](const Vec2& x) { return c.qt1(t, x); });
  level.err["qt2"] = compute_l2_error(darcy.mesh(), darcy.state().q2,
                                      [&](const Vec2& x) { return c.qt2(t, x); });
}

void append_swe_errors(ErrorReport::Level& level, SweProblem& swe,
                       const scenarios::AnalyticCase& c, double t) {
  swe.refresh_diagnostics();
  level.err["h"] = compute_l2_error_1d(swe.mesh1d(), swe.state().h,
                                       [&](double x1) { return c.h(t, x1); });
  level.err["u1"] = compute_l2_error(swe.mesh(), swe.state().u1,
                                     [&](const Vec2& x) { return c.u1(t, x); });
  level.err["u2"] = compute_l2_error(swe.mesh(), swe.state().u2,
                                     [&](const Vec2& x) { return c.u2(t, x); });
}

}  // namespace

ErrorReport run_convergence(const RunConfig& config, std::ostream* log) {
  if (config.scenario != "table1-darcy" && config.scenario != "table1-swe" &&
      config.scenario != "table2-coupled")
    throw ConfigError("run_convergence: scenario must be one of table1-darcy, "
                      "table1-swe, table2-coupled");
  const int p = config.degree;
  const double t_end = config.time.t_end > 0.0 ? config.time.t_end : scenarios::kTEnd;
  const scenarios::AnalyticCase analytic = scenarios::convergence_case(config.gravity);

  ErrorReport report;
  report.degree = p;
  if (config.scenario == "table1-darcy") report.unknowns = {"ht", "qt1", "qt2"};
  else if (config.scenario == "table1-swe") report.unknowns = {"h", "u1", "u2"};
  else report.unknowns = {"h", "u1", "u2", "ht", "qt1", "qt2"};

  for (int j : config.levels) {
    const auto start = std::chrono::steady_clock::now();
    ErrorReport::Level level;
    level.j = j;
    if (config.scenario == "table1-darcy") {
      DarcyProblem darcy =
          scenarios::make_table1_darcy(j, p, config.penalty, config.gravity);
      const double dt = scenarios::darcy_dt(p, j);
      run_time_loop([&] { darcy.step(dt); }, step_count(t_end, dt));
      append_darcy_errors(level, darcy, analytic, darcy.state().time);
    } else if (config.scenario == "table1-swe") {
      SweProblem swe = scenarios::make_table1_swe(j, p, config.gravity);
      const double dt = scenarios::swe_dt(p, j);
      run_time_loop([&] { swe.step(dt); }, step_count(t_end, dt));
      append_swe_errors(level, swe, analytic, swe.state().time);
    } else {
      CoupledProblem coupled =
          scenarios::make_table2_coupled(j, p, config.penalty, config.gravity);
      const double dt_tilde = coupled.config().n_substep * coupled.config().dt;
      run_coupled_loop(coupled, step_count(t_end, dt_tilde));
      append_swe_errors(level, coupled.swe(), analytic, coupled.swe().state().time);
      append_darcy_errors(level, coupled.darcy(), analytic, coupled.darcy().state().time);
    }
    level.runtime_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report.levels.push_back(std::move(level));
    if (log && !config.output.quiet) {
      *log << "level j=" << j << " done in " << report.levels.back().runtime_seconds
           << " s:";
      for (const auto& name : report.unknowns)
        *log << "  Err(" << name << ")=" << report.levels.back().err.at(name);
      *log << "\n";
    }
  }
  return report;
}

ShowcaseOutcome run_showcase(const RunConfig& config, std::ostream* log) {
  scenarios::ShowcaseSettings settings;
  settings.degree = config.degree;
  settings.penalty = config.penalty;
  if (config.time.t_end > 0.0) settings.t_end = config.time.t_end;
  if (config.time.dt > 0.0) settings.dt = config.time.dt;
  if (config.time.n_substep > 1) settings.n_substep = config.time.n_substep;

  CoupledProblem coupled = scenarios::make_showcase(settings);
  const double dt_tilde = settings.n_substep * settings.dt;
  const int total = step_count(settings.t_end, dt_tilde);

  std::filesystem::create_directories(config.output.dir);
  auto write_snapshot = [&](const std::string& name) {
    SweProblem& swe = coupled.swe();
    swe.refresh_diagnostics();
    write_vtk(swe.mesh(), swe.ref(),
              {{"u1", &swe.state().u1, false},
               {"u2", &swe.state().u2, false},
               {"h", &swe.state().h, true}},
              config.output.dir + "/" + name + "_freeflow.vtk");
    const DarcyProblem& darcy = coupled.darcy();
    write_vtk(darcy.mesh(), darcy.ref(),
              {{"head", &darcy.state().head, false},
               {"qt1", &darcy.state().q1, false},
               {"qt2", &darcy.state().q2, false}},
              config.output.dir + "/" + name + "_subsurface.vtk");
  };

  run_coupled_loop(coupled, total, [&](int it) {
    if (config.output.vtk_every > 0 && it % config.output.vtk_every == 0)
      write_snapshot("showcase_" + std::to_string(it));
    if (log && !config.output.quiet && (it % 100 == 0 || it == total))
      *log << "macro step " << it << "/" << total
           << ", t=" << coupled.swe().state().time << "\n";
  });
  write_snapshot("showcase_final");

  ShowcaseOutcome outcome;
  outcome.macro_steps = total;
  outcome.final_time = coupled.swe().state().time;
  outcome.ledger_warnings = coupled.ledger_warnings();
  const auto& surface = coupled.swe().surface();
  const auto& nodes = coupled.swe().mesh1d().nodes;
  outcome.surface_min = outcome.surface_min_flat = surface.xi.front();
  outcome.surface_max = outcome.surface_max_flat = surface.xi.front();
  bool has_flat = false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const double xi = surface.xi[i];
    outcome.surface_min = std::min(outcome.surface_min, xi);
    outcome.surface_max = std::max(outcome.surface_max, xi);
    if (scenarios::showcase_bed(nodes[i]) == 0.0) {
      if (!has_flat) {
        outcome.surface_min_flat = outcome.surface_max_flat = xi;
        has_flat = true;
      } else {
        outcome.surface_min_flat = std::min(outcome.surface_min_flat, xi);
        outcome.surface_max_flat = std::max(outcome.surface_max_flat, xi);
      }
    }
  }
  return outcome;
}

Marker marker_from_name(const std::string& name) {
  if (name == "land") return Marker::Land;
  if (name == "openSea") return Marker::OpenSea;
  if (name == "river") return Marker::River;
  if (name == "radiation") return Marker::Radiation;
  if (name == "top") return Marker::Top;
  if (name == "bottom") return Marker::Bottom;
  if (name == "dirichlet") return Marker::Dirichlet;
  if (name == "neumann") return Marker::Neumann;
  if (name == "interface") return Marker::Interface;
  throw ConfigError("unknown boundary marker '" + name + "'");
}

DarcyProblem build_custom_darcy(const RunConfig& config) {
  const auto& u = config.custom;
  DarcyConfig dc;
  dc.diffusion = [=](double t, const Vec2& x) {
    return Matrix2{{u.diffusion_11(t, x), u.diffusion_12(t, x)},
                   {u.diffusion_21(t, x), u.diffusion_22(t, x)}};
  };
  dc.source = [=](double t, const Vec2& x) { return u.source(t, x); };
  dc.dirichlet = [=](double t, const Vec2& x) { return u.dirichlet(t, x); };
  dc.neumann = [=](double t, const Vec2& x) { return u.neumann(t, x); };
  dc.initial_head = [=](const Vec2& x) { return u.initial_head(0.0, x); };
  dc.penalty = config.penalty;

  std::vector<double> partition(config.mesh.columns + 1);
  for (int i = 0; i <= config.mesh.columns; ++i)
    partition[i] = config.mesh.x1_range[0] +
                   (config.mesh.x1_range[1] - config.mesh.x1_range[0]) * i /
                       config.mesh.columns;
  BoundarySpec markers{marker_from_name(u.left), marker_from_name(u.right),
                       marker_from_name(u.bottom), marker_from_name(u.top)};
  Mesh2D mesh = build_column_mesh(
      partition, config.mesh.layers, [&](double) { return config.mesh.x2_range[0]; },
      [&](double) { return config.mesh.x2_range[1]; }, markers);
  return DarcyProblem(std::move(dc), std::move(mesh), config.degree);
}

SweProblem build_custom_swe(const RunConfig& config) {
  const auto& u = config.custom;
  SweConfig sc;
  sc.diffusion = [=](double t, const Vec2& x) {
    return Matrix2{{u.diffusion_11(t, x), u.diffusion_12(t, x)},
                   {u.diffusion_21(t, x), u.diffusion_22(t, x)}};
  };
  sc.source = [=](double t, const Vec2& x) { return u.source(t, x); };
  sc.gravity = config.gravity;
  sc.bathymetry = [=](double x1) { return u.bathymetry(0.0, x1); };
  sc.u1_dirichlet = [=](double t, const Vec2& x) { return u.u1_dirichlet(t, x); };
  sc.u2_dirichlet = [=](double t, const Vec2& x) { return u.u2_dirichlet(t, x); };
  sc.q1_dirichlet = [=](double t, const Vec2& x) { return u.q1_dirichlet(t, x); };
  sc.q2_dirichlet = [=](double t, const Vec2& x) { return u.q2_dirichlet(t, x); };
  sc.h_dirichlet = [=](double t, double x1) { return u.h_dirichlet(t, x1); };
  sc.initial_u1 = [=](const Vec2& x) { return u.initial_u1(0.0, x); };
  sc.initial_h = [=](double x1) { return u.initial_h(0.0, x1); };

  std::vector<double> partition(config.mesh.columns + 1);
  for (int i = 0; i <= config.mesh.columns; ++i)
    partition[i] = config.mesh.x1_range[0] +
                   (config.mesh.x1_range[1] - config.mesh.x1_range[0]) * i /
                       config.mesh.columns;
  BoundarySpec markers{marker_from_name(u.left), marker_from_name(u.right),
                       marker_from_name(u.bottom), marker_from_name(u.top)};
  return SweProblem(std::move(sc), partition, config.mesh.layers, markers, config.degree);
}

void run_single(const RunConfig& config, std::ostream* log) {
  std::filesystem::create_directories(config.output.dir);
  const int level = config.levels.front();

  if (config.problem == "coupled") {
    if (config.scenario == "showcase") {
      run_showcase(config, log);
      return;
    }
    if (config.scenario != "table2-coupled")
      throw ConfigError("run: coupled problems support table2-coupled or showcase");
    CoupledProblem coupled =
        scenarios::make_table2_coupled(level, config.degree, config.penalty, config.gravity);
    const double dt_tilde = coupled.config().n_substep * coupled.config().dt;
    const double t_end = config.time.t_end > 0.0 ? config.time.t_end : scenarios::kTEnd;
    run_coupled_loop(coupled, step_count(t_end, dt_tilde));
    coupled.swe().refresh_diagnostics();
    write_vtk(coupled.swe().mesh(), coupled.swe().ref(),
              {{"u1", &coupled.swe().state().u1, false},
               {"u2", &coupled.swe().state().u2, false},
               {"h", &coupled.swe().state().h, true}},
              config.output.dir + "/coupled_freeflow.vtk");
    write_vtk(coupled.darcy().mesh(), coupled.darcy().ref(),
              {{"head", &coupled.darcy().state().head, false}},
              config.output.dir + "/coupled_subsurface.vtk");
    if (log && !config.output.quiet) *log << "coupled run finished at t=" << coupled.swe().state().time << "\n";
    return;
  }

  if (config.problem == "darcy") {
    DarcyProblem darcy = config.scenario == "custom"
                             ? build_custom_darcy(config)
                             : scenarios::make_table1_darcy(level, config.degree,
                                                            config.penalty, config.gravity);
    const double dt =
        config.time.dt > 0.0 ? config.time.dt : scenarios::darcy_dt(config.degree, level);
    const double t_end = config.time.t_end > 0.0 ? config.time.t_end : scenarios::kTEnd;
    run_time_loop([&] { darcy.step(dt); }, step_count(t_end, dt));
    write_vtk(darcy.mesh(), darcy.ref(),
              {{"head", &darcy.state().head, false},
               {"qt1", &darcy.state().q1, false},
               {"qt2", &darcy.state().q2, false}},
              config.output.dir + "/darcy.vtk");
    if (log && !config.output.quiet) *log << "darcy run finished at t=" << darcy.state().time << "\n";
    return;
  }

  if (config.problem == "swe") {
    SweProblem swe = config.scenario == "custom"
                         ? build_custom_swe(config)
                         : scenarios::make_table1_swe(level, config.degree, config.gravity);
    const double dt =
        config.time.dt > 0.0 ? config.time.dt : scenarios::swe_dt(config.degree, level);
    const double t_end = config.time.t_end > 0.0 ? config.time.t_end : scenarios::kTEnd;
    run_time_loop([&] { swe.step(dt); }, step_count(t_end, dt));
    swe.refresh_diagnostics();
    write_vtk(swe.mesh(), swe.ref(),
              {{"u1", &swe.state().u1, false},
               {"u2", &swe.state().u2, false},
               {"h", &swe.state().h, true}},
              config.output.dir + "/swe.vtk");
    if (log && !config.output.quiet) *log << "swe run finished at t=" << swe.state().time << "\n";
    return;
  }

  throw ConfigError("run: problem kind '" + config.problem + "' is not runnable here");
}

}  // namespace hydrodg
