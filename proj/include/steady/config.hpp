#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "steady/eos.hpp"
#include "steady/lift.hpp"
#include "steady/seed2d.hpp"

namespace steady {

struct RunConfig {
  EosParams eos;

  struct Vortex {
    std::string shape = "annular_bump";  // bump | annular_bump
    double t1 = 0.1;                     // support of Phi in |x|^2 (annular_bump only)
    double t2 = 2.0;
    double amplitude = 1.0;
    double p_inf = 1.0;
  } vortex;

  struct Ramps {
    std::string direction = "profile_first";  // profile_first | psi_first
    std::optional<double> rho_inf = 1.0;
    double s_inf = 0.0;
    std::optional<double> rho_0 = 0.9;
    double s_0 = -0.2;
    std::optional<double> b;     // defaults to p_inf - b_stretch (p_inf - p_min)
    double b_stretch = 4.0;      // ramp interval length over the base pressure deficit, >= 1
    double psi_amplitude = 1.0;  // psi_first: Psi = psi_amplitude * bump(b, p_inf)
    double ode_step = 1e-3;
    double shoot_tol = 1e-10;
  } ramps;

  struct Grid {
    double h = 1.0 / 32.0;
    double margin = 0.125;
  } grid;

  struct Evolve {
    double t_end = 1.0;
    double cfl = 0.45;
    double record_every = 0.25;
    std::optional<double> margin;  // defaults to 1.2 c_inf t_end + 0.25
  } evolve;

  std::optional<std::string> seed3d_file;
  double quad_tol = 1e-12;

  struct Outputs {
    std::string csv = "fields.csv";
    std::string vtk = "fields.vtk";
    std::optional<std::string> json;  // defaults to <command>.json
  } outputs;

  std::uint64_t seed = 42;
};

// Default configuration as a JSON document (the schema reference).
nlohmann::json default_config_json();

// Merges `doc` over the defaults, applies dotted overrides ("eos.gamma=2"), and validates.
// Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& doc, const std::vector<std::string>& overrides = {});
RunConfig load_config(const std::filesystem::path& file, const std::vector<std::string>& overrides = {});
nlohmann::json to_json(const RunConfig& cfg);

struct Construction {
  std::shared_ptr<const BaseSolution> base;
  std::shared_ptr<const LiftedSolution> lifted;
  double rho_0 = 0.0;
  double psi_sup = 0.0;
  double ode_error = 0.0;
  std::vector<std::string> warnings;
};

// Seed (2D Rankine or ingested 3D file) followed by the lift in the configured direction.
Construction construct(const RunConfig& cfg);

VortexSpec vortex_spec(const RunConfig& cfg);

// Half width of the evolution box: support radius plus evolve.margin, whose default keeps
// the box edge out of acoustic reach (1.2 c_inf t_end + 0.25).
double evolve_half_width(const RunConfig& cfg, const SteadyFields& sol);

}  // namespace steady
