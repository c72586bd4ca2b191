#include "sheetlimit/cli/config.hpp"

#include <set>

namespace sheetlimit::cli {

namespace {

using json = io::json;

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorKind::SchemaViolation, msg); }

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
  if (!obj.is_object()) schema(where + " must be an object");
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.count(key)) throw Error(ErrorKind::UnknownKey, "unknown key '" + key + "' in " + where);
  }
}

double number(const json& obj, const std::string& key, double def) {
  if (!obj.contains(key)) return def;
  if (!obj[key].is_number()) schema("'" + key + "' must be a number");
  return obj[key].get<double>();
}

int integer(const json& obj, const std::string& key, int def) {
  if (!obj.contains(key)) return def;
  if (!obj[key].is_number_integer()) schema("'" + key + "' must be an integer");
  return obj[key].get<int>();
}

std::string text(const json& obj, const std::string& key, const std::string& def) {
  if (!obj.contains(key)) return def;
  if (!obj[key].is_string()) schema("'" + key + "' must be a string");
  return obj[key].get<std::string>();
}

bool boolean(const json& obj, const std::string& key, bool def) {
  if (!obj.contains(key)) return def;
  if (!obj[key].is_boolean()) schema("'" + key + "' must be a boolean");
  return obj[key].get<bool>();
}

void positive(double x, const std::string& name) {
  if (!(x > 0.0)) schema("'" + name + "' must be strictly positive");
}

GeometryConfig parse_geometry(const json& j) {
  GeometryConfig g;
  if (j.is_string()) {
    g.shape = j.get<std::string>();
  } else {
    check_keys(j, "geometry", {"shape", "radius", "a", "b", "mode", "amplitude", "M", "tracers"});
    g.shape = text(j, "shape", g.shape);
    g.radius = number(j, "radius", g.radius);
    g.a = number(j, "a", g.a);
    g.b = number(j, "b", g.b);
    g.mode = integer(j, "mode", g.mode);
    g.amplitude = number(j, "amplitude", g.amplitude);
    g.M = integer(j, "M", g.M);
    g.tracers = integer(j, "tracers", g.tracers);
  }
  if (g.shape != "circle" && g.shape != "ellipse" && g.shape != "perturbed_circle") {
    schema("unknown shape '" + g.shape + "'");
  }
  positive(g.radius, "radius");
  positive(g.a, "a");
  positive(g.b, "b");
  if (g.M < 16 || (g.M & (g.M - 1)) != 0) schema("'M' must be a power of two >= 16");
  if (g.mode < 1) schema("'mode' must be >= 1");
  if (g.amplitude < 0.0 || g.amplitude >= 1.0) schema("'amplitude' must lie in [0, 1)");
  if (g.tracers < 0) schema("'tracers' must be non-negative");
  return g;
}

PhysicsConfig parse_physics(const json& j) {
  PhysicsConfig p;
  check_keys(j, "physics",
             {"model", "rho_plus", "rho_minus", "epsilon", "k", "shear", "potential_mode", "potential_amplitude",
              "circulation", "probe_modes"});
  p.model = text(j, "model", p.model);
  if (p.model != "twofluid" && p.model != "onefluid") schema("unknown model '" + p.model + "'");
  p.rho_plus = number(j, "rho_plus", p.rho_plus);
  positive(p.rho_plus, "rho_plus");
  if (j.contains("rho_minus")) {
    const json& r = j["rho_minus"];
    p.rho_minus.clear();
    if (r.is_number()) {
      p.rho_minus.push_back(r.get<double>());
    } else if (r.is_array() && !r.empty()) {
      for (const auto& x : r) {
        if (!x.is_number()) schema("'rho_minus' entries must be numbers");
        p.rho_minus.push_back(x.get<double>());
      }
    } else {
      schema("'rho_minus' must be a number or a non-empty list");
    }
  }
  for (std::size_t i = 0; i < p.rho_minus.size(); ++i) {
    positive(p.rho_minus[i], "rho_minus");
    if (i > 0 && !(p.rho_minus[i] < p.rho_minus[i - 1])) schema("'rho_minus' sweep must be strictly decreasing");
  }
  p.epsilon = number(j, "epsilon", p.epsilon);
  if (!(p.epsilon >= 0.0)) schema("'epsilon' must be non-negative");
  p.k = integer(j, "k", p.k);
  if (p.k < 2) schema("'k' must be >= 2");
  p.shear = number(j, "shear", p.shear);
  positive(p.shear, "shear");
  p.potential_mode = integer(j, "potential_mode", p.potential_mode);
  if (p.potential_mode < 1) schema("'potential_mode' must be >= 1");
  p.potential_amplitude = number(j, "potential_amplitude", p.potential_amplitude);
  p.circulation = number(j, "circulation", p.circulation);
  if (j.contains("probe_modes")) {
    const json& m = j["probe_modes"];
    if (!m.is_array() || m.size() != 2 || !m[0].is_number_integer() || !m[1].is_number_integer()) {
      schema("'probe_modes' must be two integers");
    }
    p.probe_modes = {m[0].get<int>(), m[1].get<int>()};
    if (p.probe_modes[0] < 1 || p.probe_modes[1] < 1) schema("'probe_modes' must be >= 1");
  }
  return p;
}

NumericsConfig parse_numerics(const json& j) {
  NumericsConfig n;
  check_keys(j, "numerics",
             {"dt", "steps", "T", "c_stab", "c_adv", "filter_threshold", "r_inf", "record_every", "lambda0",
              "lambda0_delta", "lambda0_L"});
  if (j.contains("dt")) {
    n.dt = number(j, "dt", 0.0);
    positive(*n.dt, "dt");
  }
  if (j.contains("steps")) {
    n.steps = integer(j, "steps", 0);
    if (*n.steps < 1) schema("'steps' must be >= 1");
  }
  if (j.contains("T")) {
    n.T = number(j, "T", 0.0);
    positive(*n.T, "T");
  }
  n.c_stab = number(j, "c_stab", n.c_stab);
  positive(n.c_stab, "c_stab");
  n.c_adv = number(j, "c_adv", n.c_adv);
  positive(n.c_adv, "c_adv");
  n.filter_threshold = number(j, "filter_threshold", n.filter_threshold);
  if (!(n.filter_threshold >= 0.0)) schema("'filter_threshold' must be non-negative");
  if (j.contains("r_inf") && !j.at("r_inf").is_null()) {
    n.r_inf = number(j, "r_inf", n.r_inf);
    positive(n.r_inf, "r_inf");
  }
  n.record_every = integer(j, "record_every", n.record_every);
  if (n.record_every < 1) schema("'record_every' must be >= 1");
  n.lambda0 = boolean(j, "lambda0", n.lambda0);
  n.lambda0_delta = number(j, "lambda0_delta", n.lambda0_delta);
  positive(n.lambda0_delta, "lambda0_delta");
  n.lambda0_L = number(j, "lambda0_L", n.lambda0_L);
  positive(n.lambda0_L, "lambda0_L");
  return n;
}

OutputsConfig parse_outputs(const json& j) {
  OutputsConfig o;
  check_keys(j, "outputs", {"directory", "formats"});
  o.directory = text(j, "directory", o.directory);
  if (j.contains("formats")) {
    if (!j["formats"].is_array()) schema("'formats' must be a list");
    o.formats.clear();
    for (const auto& f : j["formats"]) {
      if (!f.is_string() || (f != "csv" && f != "json")) schema("'formats' entries must be \"csv\" or \"json\"");
      o.formats.push_back(f.get<std::string>());
    }
  }
  return o;
}

}  // namespace

RunConfig parse_config_text(const std::string& str) {
  json j;
  try {
    j = json::parse(str);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ConfigParse, "byte " + std::to_string(e.byte) + ": " + e.what());
  }
  check_keys(j, "config", {"geometry", "physics", "numerics", "outputs", "seed"});
  RunConfig cfg;
  if (j.contains("geometry")) cfg.geometry = parse_geometry(j["geometry"]);
  if (j.contains("physics")) cfg.physics = parse_physics(j["physics"]);
  if (j.contains("numerics")) cfg.numerics = parse_numerics(j["numerics"]);
  if (j.contains("outputs")) cfg.outputs = parse_outputs(j["outputs"]);
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) schema("'seed' must be a non-negative integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  return cfg;
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::string str;
  try {
    str = io::read_text(path);
  } catch (const Error& e) {
    throw Error(ErrorKind::ConfigParse, e.what());
  }
  return parse_config_text(str);
}

io::json to_json(const RunConfig& c) {
  json j;
  j["geometry"] = {{"shape", c.geometry.shape}, {"radius", c.geometry.radius}, {"a", c.geometry.a},
                   {"b", c.geometry.b},         {"mode", c.geometry.mode},     {"amplitude", c.geometry.amplitude},
                   {"M", c.geometry.M},         {"tracers", c.geometry.tracers}};
  j["physics"] = {{"model", c.physics.model},
                  {"rho_plus", c.physics.rho_plus},
                  {"rho_minus", c.physics.rho_minus},
                  {"epsilon", c.physics.epsilon},
                  {"k", c.physics.k},
                  {"shear", c.physics.shear},
                  {"potential_mode", c.physics.potential_mode},
                  {"potential_amplitude", c.physics.potential_amplitude},
                  {"circulation", c.physics.circulation},
                  {"probe_modes", c.physics.probe_modes}};
  json n = {{"c_stab", c.numerics.c_stab},
            {"c_adv", c.numerics.c_adv},
            {"filter_threshold", c.numerics.filter_threshold},
            {"r_inf", c.numerics.r_inf > 0.0 ? json(c.numerics.r_inf) : json(nullptr)},
            {"record_every", c.numerics.record_every},
            {"lambda0", c.numerics.lambda0},
            {"lambda0_delta", c.numerics.lambda0_delta},
            {"lambda0_L", c.numerics.lambda0_L}};
  if (c.numerics.dt) n["dt"] = *c.numerics.dt;
  if (c.numerics.steps) n["steps"] = *c.numerics.steps;
  if (c.numerics.T) n["T"] = *c.numerics.T;
  j["numerics"] = n;
  j["outputs"] = {{"directory", c.outputs.directory}, {"formats", c.outputs.formats}};
  j["seed"] = c.seed;
  return j;
}

}  // namespace sheetlimit::cli
