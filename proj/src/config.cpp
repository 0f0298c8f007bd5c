#include "steady/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "steady/error.hpp"
#include "steady/seed3d.hpp"

namespace steady {

using nlohmann::json;

namespace {

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

// Overlays `patch` onto `target`, rejecting keys the defaults do not know.
void overlay(json& target, const json& patch, const std::string& prefix) {
  if (!patch.is_object()) throw ConfigError("config: '" + (prefix.empty() ? "<root>" : prefix) + "' must be an object");
  for (const auto& [key, value] : patch.items()) {
    const std::string path = prefix.empty() ? key : prefix + "." + key;
    if (!target.contains(key)) throw ConfigError("config: unknown field '" + path + "'");
    if (target[key].is_object()) {
      overlay(target[key], value, path);
    } else {
      target[key] = value;
    }
  }
}

json parse_override_value(const std::string& text) {
  const json v = json::parse(text, nullptr, false);
  if (!v.is_discarded()) return v;
  return json(text);
}

void apply_override(json& doc, const std::string& spec) {
  std::string s = spec;
  if (s.rfind("--", 0) == 0) s = s.substr(2);
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + spec + "' must have the form key.path=value");
  const std::string path = s.substr(0, eq);
  json* node = &doc;
  std::stringstream ss(path);
  std::string part;
  std::string walked;
  while (std::getline(ss, part, '.')) {
    walked = walked.empty() ? part : walked + "." + part;
    if (!node->is_object() || !node->contains(part)) throw ConfigError("config: unknown field '" + walked + "'");
    node = &(*node)[part];
  }
  if (node->is_object()) throw ConfigError("config: field '" + path + "' is a section, not a value");
  *node = parse_override_value(s.substr(eq + 1));
}

double number(const json& doc, const std::string& path) {
  const json* node = &doc;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) node = &node->at(part);
  if (!node->is_number()) throw ConfigError("config: field '" + path + "' must be a number");
  const double v = node->get<double>();
  if (!std::isfinite(v)) throw ConfigError("config: field '" + path + "' must be finite");
  return v;
}

std::optional<double> optional_number(const json& doc, const std::string& path) {
  const json* node = &doc;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) node = &node->at(part);
  if (node->is_null()) return std::nullopt;
  return number(doc, path);
}

std::string string_field(const json& doc, const std::string& path) {
  const json* node = &doc;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) node = &node->at(part);
  if (!node->is_string()) throw ConfigError("config: field '" + path + "' must be a string");
  return node->get<std::string>();
}

std::optional<std::string> optional_string(const json& doc, const std::string& path) {
  const json* node = &doc;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) node = &node->at(part);
  if (node->is_null()) return std::nullopt;
  return string_field(doc, path);
}

void require(bool ok, const std::string& field, const std::string& rule) {
  if (!ok) throw ConfigError("config: field '" + field + "' " + rule);
}

void validate(const RunConfig& c) {
  require(c.eos.gamma > 1.0, "eos.gamma", "must be > 1");
  require(c.eos.a > 0.0, "eos.a", "must be > 0");
  require(c.vortex.shape == "bump" || c.vortex.shape == "annular_bump", "vortex.shape",
          "must be 'bump' or 'annular_bump'");
  require(c.vortex.t2 > 0.0, "vortex.t2", "must be > 0");
  if (c.vortex.shape == "annular_bump") {
    require(c.vortex.t1 >= 0.0, "vortex.t1", "must be >= 0");
    require(c.vortex.t1 < c.vortex.t2, "vortex.t1", "must be < vortex.t2");
  }
  require(c.ramps.direction == "profile_first" || c.ramps.direction == "psi_first", "ramps.direction",
          "must be 'profile_first' or 'psi_first'");
  if (c.ramps.rho_inf) require(*c.ramps.rho_inf > 0.0, "ramps.rho_inf", "must be > 0");
  if (c.ramps.rho_0) require(*c.ramps.rho_0 > 0.0, "ramps.rho_0", "must be > 0");
  require(c.ramps.s_0 <= c.ramps.s_inf, "ramps.s_0", "must be <= ramps.s_inf (non-decreasing entropy ramp)");
  if (c.ramps.direction == "profile_first") {
    require(c.ramps.rho_0.has_value(), "ramps.rho_0", "is required for profile_first");
    require(c.ramps.rho_inf.has_value(), "ramps.rho_inf", "is required for profile_first");
    require(*c.ramps.rho_0 <= *c.ramps.rho_inf, "ramps.rho_0", "must be <= ramps.rho_inf (increasing density ramp)");
  } else {
    require(c.ramps.rho_0.has_value() != c.ramps.rho_inf.has_value(), "ramps.rho_0",
            "psi_first needs exactly one of ramps.rho_0 (integrate) or ramps.rho_inf (shoot)");
  }
  require(c.ramps.ode_step > 0.0, "ramps.ode_step", "must be > 0");
  require(c.ramps.shoot_tol > 0.0, "ramps.shoot_tol", "must be > 0");
  require(c.ramps.b_stretch >= 1.0, "ramps.b_stretch", "must be >= 1");
  require(c.grid.h > 0.0, "grid.h", "must be > 0");
  require(c.grid.margin >= 0.0, "grid.margin", "must be >= 0");
  require(c.evolve.t_end > 0.0, "evolve.t_end", "must be > 0");
  require(c.evolve.cfl > 0.0 && c.evolve.cfl <= 0.9, "evolve.cfl", "must lie in (0, 0.9]");
  require(c.evolve.record_every > 0.0, "evolve.record_every", "must be > 0");
  if (c.evolve.margin) require(*c.evolve.margin >= 0.0, "evolve.margin", "must be >= 0");
  require(c.quad_tol > 0.0, "quad_tol", "must be > 0");
}

}  // namespace

json default_config_json() { return to_json(RunConfig{}); }

json to_json(const RunConfig& c) {
  json j;
  j["eos"] = {{"gamma", c.eos.gamma}, {"a", c.eos.a}};
  j["vortex"] = {{"shape", c.vortex.shape},
                 {"t1", c.vortex.t1},
                 {"t2", c.vortex.t2},
                 {"amplitude", c.vortex.amplitude},
                 {"p_inf", c.vortex.p_inf}};
  j["ramps"] = {{"direction", c.ramps.direction}, {"rho_inf", opt(c.ramps.rho_inf)},
                {"s_inf", c.ramps.s_inf},         {"rho_0", opt(c.ramps.rho_0)},
                {"s_0", c.ramps.s_0},             {"b", opt(c.ramps.b)},
                {"b_stretch", c.ramps.b_stretch},
                {"psi_amplitude", c.ramps.psi_amplitude}, {"ode_step", c.ramps.ode_step},
                {"shoot_tol", c.ramps.shoot_tol}};
  j["grid"] = {{"h", c.grid.h}, {"margin", c.grid.margin}};
  j["evolve"] = {{"t_end", c.evolve.t_end},
                 {"cfl", c.evolve.cfl},
                 {"record_every", c.evolve.record_every},
                 {"margin", opt(c.evolve.margin)}};
  j["seed3d_file"] = opt(c.seed3d_file);
  j["quad_tol"] = c.quad_tol;
  j["outputs"] = {{"csv", c.outputs.csv}, {"vtk", c.outputs.vtk}, {"json", opt(c.outputs.json)}};
  j["seed"] = c.seed;
  return j;
}

RunConfig parse_config(const json& doc_in, const std::vector<std::string>& overrides) {
  json doc = default_config_json();
  if (!doc_in.is_null()) overlay(doc, doc_in, "");
  for (const auto& o : overrides) apply_override(doc, o);

  RunConfig c;
  c.eos.gamma = number(doc, "eos.gamma");
  c.eos.a = number(doc, "eos.a");
  c.vortex.shape = string_field(doc, "vortex.shape");
  c.vortex.t1 = number(doc, "vortex.t1");
  c.vortex.t2 = number(doc, "vortex.t2");
  c.vortex.amplitude = number(doc, "vortex.amplitude");
  c.vortex.p_inf = number(doc, "vortex.p_inf");
  c.ramps.direction = string_field(doc, "ramps.direction");
  c.ramps.rho_inf = optional_number(doc, "ramps.rho_inf");
  c.ramps.s_inf = number(doc, "ramps.s_inf");
  c.ramps.rho_0 = optional_number(doc, "ramps.rho_0");
  c.ramps.s_0 = number(doc, "ramps.s_0");
  c.ramps.b = optional_number(doc, "ramps.b");
  c.ramps.b_stretch = number(doc, "ramps.b_stretch");
  c.ramps.psi_amplitude = number(doc, "ramps.psi_amplitude");
  c.ramps.ode_step = number(doc, "ramps.ode_step");
  c.ramps.shoot_tol = number(doc, "ramps.shoot_tol");
  c.grid.h = number(doc, "grid.h");
  c.grid.margin = number(doc, "grid.margin");
  c.evolve.t_end = number(doc, "evolve.t_end");
  c.evolve.cfl = number(doc, "evolve.cfl");
  c.evolve.record_every = number(doc, "evolve.record_every");
  c.evolve.margin = optional_number(doc, "evolve.margin");
  c.seed3d_file = optional_string(doc, "seed3d_file");
  c.quad_tol = number(doc, "quad_tol");
  c.outputs.csv = string_field(doc, "outputs.csv");
  c.outputs.vtk = string_field(doc, "outputs.vtk");
  c.outputs.json = optional_string(doc, "outputs.json");
  const json& seed = doc.at("seed");
  if (!seed.is_number_unsigned() && !(seed.is_number_integer() && seed.get<long long>() >= 0)) {
    throw ConfigError("config: field 'seed' must be a non-negative integer");
  }
  c.seed = seed.get<std::uint64_t>();
  validate(c);
  return c;
}

RunConfig load_config(const std::filesystem::path& file, const std::vector<std::string>& overrides) {
  std::ifstream in(file);
  if (!in) throw ConfigError("config: cannot open " + file.string());
  const json doc = json::parse(in, nullptr, false);
  if (doc.is_discarded()) throw ConfigError("config: " + file.string() + " is not valid JSON");
  return parse_config(doc, overrides);
}

VortexSpec vortex_spec(const RunConfig& cfg) {
  VortexSpec spec;
  spec.p_inf = cfg.vortex.p_inf;
  if (cfg.vortex.shape == "bump") {
    spec.shape = bump(-cfg.vortex.t2, cfg.vortex.t2, cfg.vortex.amplitude);
  } else {
    spec.shape = bump(cfg.vortex.t1, cfg.vortex.t2, cfg.vortex.amplitude);
  }
  return spec;
}

double evolve_half_width(const RunConfig& cfg, const SteadyFields& sol) {
  if (cfg.evolve.margin) return sol.support_radius() + *cfg.evolve.margin;
  const FieldValues f = sol.farfield();
  const double c_inf = std::sqrt(cfg.eos.gamma * f.pi / f.rho);
  return sol.support_radius() + 1.2 * c_inf * cfg.evolve.t_end + 0.25;
}

Construction construct(const RunConfig& cfg) {
  Construction out;
  if (cfg.seed3d_file) {
    out.base = ingest_seed3d(*cfg.seed3d_file);
    out.warnings.push_back("seed ingested from file: upstream identities are unverified");
  } else {
    out.base = make_rankine(vortex_spec(cfg), cfg.quad_tol);
  }
  const double p_inf = out.base->p_inf();
  const double p_min = out.base->p_min();
  double b = cfg.ramps.b.value_or(p_inf - cfg.ramps.b_stretch * (p_inf - p_min));
  if (b > p_min) {
    std::ostringstream msg;
    msg << "config: field 'ramps.b' = " << b << " exceeds the minimum base pressure " << p_min
        << "; Psi must be supported in [b, p_inf] with b <= inf P";
    throw ConfigError(msg.str());
  }
  if (!(p_min < p_inf)) {
    out.warnings.push_back("trivial solution: the base pressure is constant, the lift is the constant state");
  }
  if (!(b < p_inf)) b = p_inf - 1.0;

  RampPair ramps;
  std::optional<SmoothProfile> psi;
  if (cfg.ramps.direction == "profile_first") {
    ramps = RampPair::canonical(b, p_inf, *cfg.ramps.rho_0, *cfg.ramps.rho_inf, cfg.ramps.s_0,
                                cfg.ramps.s_inf);
    const auto violations = check_solv(ramps);
    if (!violations.empty()) {
      std::ostringstream msg;
      msg << "config: ramps violate '" << violations.front().condition << "' at z = " << violations.front().z;
      throw ConfigError(msg.str());
    }
    out.rho_0 = ramps.rho_0;
  } else {
    const SmoothProfile p = bump(b, p_inf, cfg.ramps.psi_amplitude);
    const SmoothProfile s_tilde = ramp(cfg.ramps.s_0, cfg.ramps.s_inf, b, p_inf);
    const double rho_0 = cfg.ramps.rho_0
                             ? *cfg.ramps.rho_0
                             : shoot_rho0(p, s_tilde, *cfg.ramps.rho_inf, cfg.eos, b, p_inf,
                                          cfg.ramps.shoot_tol, cfg.ramps.ode_step);
    const RhoFromPsi r = rho_from_psi(p, s_tilde, rho_0, cfg.eos, b, p_inf, cfg.ramps.ode_step);
    ramps.rho_tilde = r.rho_tilde;
    ramps.s_tilde = s_tilde;
    ramps.b = b;
    ramps.p_inf = p_inf;
    ramps.rho_0 = rho_0;
    ramps.rho_inf = r.rho_inf;
    ramps.s_0 = cfg.ramps.s_0;
    ramps.s_inf = cfg.ramps.s_inf;
    out.rho_0 = rho_0;
    out.ode_error = r.error_estimate;
    psi = p;
  }
  out.lifted = lift_solution(out.base, ramps, cfg.eos, psi);
  constexpr int kSamples = 1000;
  for (int i = 0; i <= kSamples; ++i) {
    out.psi_sup = std::max(out.psi_sup, std::abs(out.lifted->psi()(b + (p_inf - b) * i / kSamples)));
  }
  if (cfg.vortex.amplitude == 0.0 && !cfg.seed3d_file) {
    out.warnings.push_back("vortex.amplitude is 0: the constructed solution is trivial");
  }
  return out;
}

}  // namespace steady
