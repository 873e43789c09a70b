#include "hydrodg/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hydrodg {

namespace {

using nlohmann::json;

json affine_to_json(const AffineExpr& e) {
  return json{{"c0", e.c0}, {"cx1", e.cx1}, {"cx2", e.cx2}, {"ct", e.ct}};
}

AffineExpr affine_from_json(const json& j, const char* field) {
  AffineExpr e;
  if (j.is_number()) {
    e.c0 = j.get<double>();
    return e;
  }
  if (!j.is_object())
    throw ConfigError(std::string("config: expression '") + field +
                      "' must be a number or an object");
  for (const auto& [key, value] : j.items()) {
    if (key == "c0") e.c0 = value.get<double>();
    else if (key == "cx1") e.cx1 = value.get<double>();
    else if (key == "cx2") e.cx2 = value.get<double>();
    else if (key == "ct") e.ct = value.get<double>();
    else
      throw ConfigError(std::string("config: unknown key '") + key + "' in expression '" +
                        field + "'");
  }
  return e;
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  RunConfig c;
  c.version = j.value("version", 1);
  if (c.version != 1) throw ConfigError("config: unsupported schema version");
  c.problem = j.value("problem", "");
  c.scenario = j.value("scenario", "");
  c.degree = j.value("degree", 1);
  if (j.contains("levels")) c.levels = j.at("levels").get<std::vector<int>>();
  if (j.contains("time")) {
    const auto& t = j.at("time");
    c.time.t_end = t.value("t_end", 0.0);
    c.time.dt = t.value("dt", 0.0);
    c.time.dt_tilde = t.value("dt_tilde", 0.0);
    c.time.n_substep = t.value("n_substep", 1);
  }
  c.penalty = j.value("penalty", 1.0);
  c.gravity = j.value("gravity", 10.0);
  c.interface_scaling = j.value("interface_scaling", 1.0);
  if (j.contains("mesh")) {
    const auto& m = j.at("mesh");
    c.mesh.columns = m.value("columns", 0);
    c.mesh.layers = m.value("layers", 0);
    if (m.contains("x1_range")) c.mesh.x1_range = m.at("x1_range").get<std::array<double, 2>>();
    if (m.contains("x2_range")) c.mesh.x2_range = m.at("x2_range").get<std::array<double, 2>>();
  }
  if (j.contains("custom")) {
    const auto& u = j.at("custom");
    auto expr = [&](const char* name, AffineExpr fallback = {}) {
      return u.contains(name) ? affine_from_json(u.at(name), name) : fallback;
    };
    c.custom.diffusion_11 = expr("diffusion_11", {1, 0, 0, 0});
    c.custom.diffusion_22 = expr("diffusion_22", {1, 0, 0, 0});
    c.custom.diffusion_12 = expr("diffusion_12");
    c.custom.diffusion_21 = expr("diffusion_21");
    c.custom.source = expr("source");
    c.custom.dirichlet = expr("dirichlet");
    c.custom.neumann = expr("neumann");
    c.custom.initial_head = expr("initial_head");
    c.custom.bathymetry = expr("bathymetry");
    c.custom.u1_dirichlet = expr("u1_dirichlet");
    c.custom.u2_dirichlet = expr("u2_dirichlet");
    c.custom.q1_dirichlet = expr("q1_dirichlet");
    c.custom.q2_dirichlet = expr("q2_dirichlet");
    c.custom.h_dirichlet = expr("h_dirichlet");
    c.custom.initial_u1 = expr("initial_u1");
    c.custom.initial_h = expr("initial_h");
    c.custom.left = u.value("left", "dirichlet");
    c.custom.right = u.value("right", "dirichlet");
    c.custom.top = u.value("top", "dirichlet");
    c.custom.bottom = u.value("bottom", "dirichlet");
  }
  if (j.contains("output")) {
    const auto& o = j.at("output");
    c.output.dir = o.value("dir", "out");
    c.output.vtk_every = o.value("vtk_every", 0);
    c.output.csv = o.value("csv", "");
    c.output.quiet = o.value("quiet", false);
  }
  validate_config(c);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string serialize_config(const RunConfig& c) {
  json j;
  j["version"] = c.version;
  j["problem"] = c.problem;
  j["scenario"] = c.scenario;
  j["degree"] = c.degree;
  j["levels"] = c.levels;
  j["time"] = {{"t_end", c.time.t_end},
               {"dt", c.time.dt},
               {"dt_tilde", c.time.dt_tilde},
               {"n_substep", c.time.n_substep}};
  j["penalty"] = c.penalty;
  j["gravity"] = c.gravity;
  j["interface_scaling"] = c.interface_scaling;
  j["mesh"] = {{"columns", c.mesh.columns},
               {"layers", c.mesh.layers},
               {"x1_range", c.mesh.x1_range},
               {"x2_range", c.mesh.x2_range}};
  j["custom"] = {{"diffusion_11", affine_to_json(c.custom.diffusion_11)},
                 {"diffusion_22", affine_to_json(c.custom.diffusion_22)},
                 {"diffusion_12", affine_to_json(c.custom.diffusion_12)},
                 {"diffusion_21", affine_to_json(c.custom.diffusion_21)},
                 {"source", affine_to_json(c.custom.source)},
                 {"dirichlet", affine_to_json(c.custom.dirichlet)},
                 {"neumann", affine_to_json(c.custom.neumann)},
                 {"initial_head", affine_to_json(c.custom.initial_head)},
                 {"bathymetry", affine_to_json(c.custom.bathymetry)},
                 {"u1_dirichlet", affine_to_json(c.custom.u1_dirichlet)},
                 {"u2_dirichlet", affine_to_json(c.custom.u2_dirichlet)},
                 {"q1_dirichlet", affine_to_json(c.custom.q1_dirichlet)},
                 {"q2_dirichlet", affine_to_json(c.custom.q2_dirichlet)},
                 {"h_dirichlet", affine_to_json(c.custom.h_dirichlet)},
                 {"initial_u1", affine_to_json(c.custom.initial_u1)},
                 {"initial_h", affine_to_json(c.custom.initial_h)},
                 {"left", c.custom.left},
                 {"right", c.custom.right},
                 {"top", c.custom.top},
                 {"bottom", c.custom.bottom}};
  j["output"] = {{"dir", c.output.dir},
                 {"vtk_every", c.output.vtk_every},
                 {"csv", c.output.csv},
                 {"quiet", c.output.quiet}};
  return j.dump(2);
}

void validate_config(const RunConfig& c) {
  static const std::set<std::string> kProblems = {"darcy", "swe", "coupled",
                                                  "convergence", "showcase"};
  if (!kProblems.count(c.problem))
    throw ConfigError("config: problem must be one of darcy/swe/coupled/convergence/showcase");
  static const std::set<std::string> kScenarios = {"",         "table1-darcy",
                                                   "table1-swe", "table2-coupled",
                                                   "showcase",   "custom"};
  if (!kScenarios.count(c.scenario))
    throw ConfigError("config: unknown scenario '" + c.scenario + "'");
  if (c.degree < 0 || c.degree > 4)
    throw ConfigError("config: degree must be in 0..4");
  if (c.levels.empty()) throw ConfigError("config: levels must not be empty");
  for (int j : c.levels)
    if (j < 0 || j > 8) throw ConfigError("config: level out of range 0..8");
  if (!(c.penalty > 0.0)) throw ConfigError("config: penalty must be positive");
  if (!(c.gravity > 0.0)) throw ConfigError("config: gravity must be positive");
  if (c.time.n_substep < 1) throw ConfigError("config: n_substep must be >= 1");
  if (c.time.dt < 0.0 || c.time.dt_tilde < 0.0 || c.time.t_end < 0.0)
    throw ConfigError("config: time values must be nonnegative");
  if (c.time.dt > 0.0 && c.time.dt_tilde > 0.0) {
    const double ratio = c.time.dt_tilde / c.time.dt;
    if (std::abs(ratio - c.time.n_substep) > 1e-9 * c.time.n_substep)
      throw ConfigError("config: dt_tilde must equal n_substep * dt");
  }
  if (c.scenario == "custom") {
    if (c.problem != "darcy" && c.problem != "swe")
      throw ConfigError("config: custom scenarios support darcy and swe problems");
    if (c.mesh.columns < 1 || c.mesh.layers < 1)
      throw ConfigError("config: custom scenario needs mesh.columns and mesh.layers");
    if (!(c.mesh.x1_range[1] > c.mesh.x1_range[0]))
      throw ConfigError("config: mesh.x1_range must be increasing");
    if (c.time.dt <= 0.0 || c.time.t_end <= 0.0)
      throw ConfigError("config: custom scenario needs time.dt and time.t_end");
    static const std::set<std::string> kMarkers = {
        "land", "openSea", "river", "radiation", "top",
        "bottom", "dirichlet", "neumann", "interface"};
    for (const std::string& side :
         {c.custom.left, c.custom.right, c.custom.top, c.custom.bottom})
      if (!kMarkers.count(side))
        throw ConfigError("config: unknown boundary marker '" + side + "'");
  }
}

}  // namespace hydrodg
