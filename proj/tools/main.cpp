#include <CLI11.hpp>
#include <filesystem>
#include <iostream>

#include "hydrodg/config.hpp"
#include "hydrodg/drivers.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitNumericalError = 2;

struct CliOptions {
  std::string config_path;
  std::string out_dir;
  std::string scenario;
  int levels = -1;
  int degree = -1;
  bool quiet = false;
};

hydrodg::RunConfig resolve_config(const CliOptions& opts, const std::string& problem) {
  hydrodg::RunConfig config;
  if (!opts.config_path.empty()) {
    config = hydrodg::load_config(opts.config_path);
  } else {
    config.problem = problem;
  }
  if (!problem.empty() && opts.config_path.empty()) config.problem = problem;
  if (!opts.scenario.empty()) config.scenario = opts.scenario;
  if (opts.degree >= 0) config.degree = opts.degree;
  if (opts.levels >= 0) {
    config.levels.clear();
    for (int j = 0; j <= opts.levels; ++j) config.levels.push_back(j);
  }
  if (!opts.out_dir.empty()) config.output.dir = opts.out_dir;
  if (opts.quiet) config.output.quiet = true;
  hydrodg::validate_config(config);
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coupled free-surface/groundwater discontinuous Galerkin solver"};
  app.require_subcommand(1);

  CliOptions opts;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "JSON configuration file");
    cmd->add_option("--out", opts.out_dir, "Output directory");
    cmd->add_option("--levels", opts.levels, "Run refinement levels 0..J");
    cmd->add_option("--degree", opts.degree, "Polynomial degree p");
    cmd->add_flag("--quiet", opts.quiet, "Suppress progress output");
  };

  CLI::App* cmd_run = app.add_subcommand("run", "Run a single simulation");
  add_common(cmd_run);
  cmd_run->add_option("--scenario", opts.scenario,
                      "table1-darcy | table1-swe | table2-coupled | showcase | custom");

  CLI::App* cmd_conv = app.add_subcommand("convergence", "Run a convergence study");
  add_common(cmd_conv);
  cmd_conv->add_option("--scenario", opts.scenario,
                       "table1-darcy | table1-swe | table2-coupled");

  CLI::App* cmd_show = app.add_subcommand("showcase", "Run the channel-flow demonstration");
  add_common(cmd_show);

  CLI::App* cmd_validate =
      app.add_subcommand("validate-config", "Parse and validate a configuration file");
  cmd_validate->add_option("--config", opts.config_path, "JSON configuration file")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (cmd_validate->parsed()) {
      const hydrodg::RunConfig config = hydrodg::load_config(opts.config_path);
      std::cout << hydrodg::serialize_config(config) << "\n";
      return kExitOk;
    }
    if (cmd_conv->parsed()) {
      hydrodg::RunConfig config = resolve_config(opts, "convergence");
      if (config.scenario.empty()) config.scenario = "table1-darcy";
      const hydrodg::ErrorReport report = hydrodg::run_convergence(config, &std::cout);
      const std::string csv = hydrodg::format_csv(report);
      if (!config.output.quiet) std::cout << csv;
      if (!config.output.csv.empty()) {
        std::filesystem::create_directories(config.output.dir);
        hydrodg::write_csv(report, config.output.dir + "/" + config.output.csv);
      }
      return kExitOk;
    }
    if (cmd_show->parsed()) {
      hydrodg::RunConfig config = resolve_config(opts, "showcase");
      config.scenario = "showcase";
      const hydrodg::ShowcaseOutcome outcome = hydrodg::run_showcase(config, &std::cout);
      if (!config.output.quiet)
        std::cout << "showcase finished: " << outcome.macro_steps << " macro steps, t="
                  << outcome.final_time << ", surface range [" << outcome.surface_min
                  << ", " << outcome.surface_max << "]\n";
      return kExitOk;
    }
    if (cmd_run->parsed()) {
      std::string problem;
      if (opts.config_path.empty()) {
        // Without a config file, infer the problem kind from the scenario.
        if (opts.scenario == "table1-darcy") problem = "darcy";
        else if (opts.scenario == "table1-swe") problem = "swe";
        else if (opts.scenario == "table2-coupled" || opts.scenario == "showcase")
          problem = "coupled";
        else
          throw hydrodg::ConfigError(
              "run: provide --config or a built-in --scenario");
      }
      hydrodg::RunConfig config = resolve_config(opts, problem);
      if (config.problem.empty() || config.problem == "convergence")
        throw hydrodg::ConfigError("run: a problem kind (darcy/swe/coupled) is required");
      hydrodg::run_single(config, &std::cout);
      return kExitOk;
    }
  } catch (const hydrodg::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfigError;
  } catch (const hydrodg::Error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumericalError;
  }
  return kExitOk;
}
