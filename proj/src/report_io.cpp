#include "steady/report_io.hpp"

#include <fstream>

#include "steady/error.hpp"

namespace steady {

using nlohmann::json;

namespace {

json vec(const Vec3& v) { return json::array({v[0], v[1], v[2]}); }

json drift_series(const std::vector<DriftNorms>& series) {
  json out = json::array();
  for (const auto& n : series) out.push_back({{"l1", n.l1}, {"l2", n.l2}, {"linf", n.linf}});
  return out;
}

}  // namespace

json to_json(const Grid2D& g) {
  return {{"origin", {g.x0, g.y0}}, {"h", g.h}, {"dims", {g.nx, g.ny}}};
}

json to_json(const CellGrid& g) {
  return {{"origin", {g.x0, g.y0}}, {"h", g.h}, {"dims", {g.nx, g.ny}}};
}

json to_json(const ResidualReport& r) {
  json eq = json::object();
  for (const auto& e : r.equations) {
    eq[e.name] = {{"linf", e.norms.linf}, {"l2", e.norms.l2}, {"scale", e.scale},
                  {"relative_linf", e.relative_linf()}};
  }
  json j = {{"method", r.method}, {"equations", eq}, {"points", r.points}, {"seed", r.seed},
            {"verified_upstream", r.verified_upstream}};
  j["grid"] = r.grid ? to_json(*r.grid) : json(nullptr);
  return j;
}

json to_json(const DriftReport& r) {
  return {{"grid", to_json(r.grid)},
          {"cfl", r.cfl},
          {"steps", r.steps},
          {"kernels", r.kernels},
          {"times", r.times},
          {"drift",
           {{"rho", drift_series(r.rho)}, {"mom", drift_series(r.mom)}, {"energy", drift_series(r.energy)}}},
          {"mass", {{"initial", r.mass_initial}, {"final", r.mass_final}, {"relative_change", r.mass_change()}}},
          {"energy",
           {{"initial", r.energy_initial}, {"final", r.energy_final}, {"relative_change", r.energy_change()}}},
          {"boundary_entropy_error", r.boundary_entropy_error},
          {"min_density", r.min_density},
          {"min_internal_energy", r.min_internal_energy}};
}

json to_json(const VirialReport& r) {
  return {{"kinetic", r.kinetic},
          {"pressure_deficit", r.pressure_deficit},
          {"identity_residual", r.identity_residual},
          {"trivial", r.trivial},
          {"pass", r.pass}};
}

json to_json(const FarfieldReport& r) {
  json v = json::array();
  for (const auto& x : r.violations) v.push_back({{"x", vec(x.x)}, {"field", x.field}});
  return {{"pass", r.pass},
          {"radius", r.radius},
          {"checked", r.checked},
          {"violation_count", r.violation_count},
          {"violations", v}};
}

json to_json(const DeficitReport& r) {
  return {{"trivial", r.trivial}, {"pass", r.pass},        {"p_min", r.p_min},
          {"p_inf", r.p_inf},     {"center", vec(r.center)}, {"ball_radius", r.ball_radius},
          {"samples", r.samples}};
}

void write_json(const std::filesystem::path& file, const json& doc) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write " + file.string());
  out << doc.dump(2) << '\n';
}

}  // namespace steady
