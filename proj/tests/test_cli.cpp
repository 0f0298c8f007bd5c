#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "../tools/cli_app.hpp"
#include "steady/config.hpp"
#include "steady/error.hpp"
#include "steady/export.hpp"
#include "steady/report_io.hpp"

using namespace steady;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("steady_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void expect_field_error(const json& doc, const std::string& field) {
  try {
    parse_config(doc);
    FAIL("expected ConfigError for ", field);
  } catch (const ConfigError& e) {
    INFO(e.what());
    CHECK(std::string(e.what()).find(field) != std::string::npos);
  }
}

}  // namespace

TEST_CASE("default configuration") {
  const RunConfig c = parse_config(json::object());
  CHECK(c.eos.gamma == 1.4);
  CHECK(c.eos.a == 1.0);
  CHECK(c.vortex.shape == "annular_bump");
  CHECK(c.ramps.rho_inf == 1.0);
  CHECK(c.ramps.s_inf == 0.0);
  CHECK(c.evolve.cfl == 0.45);
  CHECK(c.seed == 42);
  // The serialized defaults parse back to the same document.
  CHECK(to_json(parse_config(to_json(c))) == to_json(c));
  CHECK(default_config_json() == to_json(c));
}

TEST_CASE("config validation names the offending field") {
  expect_field_error({{"eos", {{"gamma", 1.0}}}}, "eos.gamma");
  expect_field_error({{"eos", {{"a", -1.0}}}}, "eos.a");
  expect_field_error({{"eos", {{"gamma", "x"}}}}, "eos.gamma");
  expect_field_error({{"vortex", {{"shape", "square"}}}}, "vortex.shape");
  expect_field_error({{"vortex", {{"t1", 2.0}}}}, "vortex.t1");
  expect_field_error({{"ramps", {{"direction", "sideways"}}}}, "ramps.direction");
  expect_field_error({{"ramps", {{"s_0", 1.0}}}}, "ramps.s_0");
  expect_field_error({{"ramps", {{"rho_0", 1.5}}}}, "ramps.rho_0");
  expect_field_error({{"grid", {{"h", 0.0}}}}, "grid.h");
  expect_field_error({{"evolve", {{"cfl", 1.0}}}}, "evolve.cfl");
  expect_field_error({{"seed", -3}}, "seed");
  expect_field_error({{"eos", {{"gama", 1.4}}}}, "eos.gama");
  expect_field_error({{"extra", 1}}, "extra");
}

TEST_CASE("dotted overrides") {
  const RunConfig c = parse_config(json::object(), {"eos.gamma=2", "vortex.shape=bump", "ramps.b=0.5"});
  CHECK(c.eos.gamma == 2.0);
  CHECK(c.vortex.shape == "bump");
  CHECK(c.ramps.b == 0.5);
  CHECK_THROWS_AS(parse_config(json::object(), {"eos.nothing=1"}), ConfigError);
}

TEST_CASE("construction warnings and the psi-first route") {
  const RunConfig flat = parse_config(json::object(), {"vortex.amplitude=0"});
  const Construction c = construct(flat);
  REQUIRE_FALSE(c.warnings.empty());
  CHECK(c.warnings.front().find("trivial") != std::string::npos);

  const RunConfig psi = parse_config(json::object(), {"ramps.direction=psi_first", "ramps.rho_0=null"});
  const Construction p = construct(psi);
  CHECK(p.lifted->farfield().rho == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(p.rho_0 > 0.0);
  CHECK_THROWS_WITH_AS(parse_config(json::object(), {"ramps.direction=psi_first"}),
                       doctest::Contains("ramps.rho_0"), ConfigError);

  CHECK_THROWS_WITH_AS(construct(parse_config(json::object(), {"ramps.b=1.5"})),
                       doctest::Contains("b <= inf P"), ConfigError);
}

TEST_CASE("exit codes") {
  const auto dir = scratch("exit").string();
  CHECK(cli::main({"construct", "--out", dir}) == cli::kPass);
  CHECK(fs::exists(fs::path(dir) / "construct.json"));
  CHECK(cli::main({"construct", "--out", dir, "--eos.gamma=0.5"}) == cli::kConfigError);
  CHECK(cli::main({"construct", "--out", dir, "--eos.gamma", "0.5"}) == cli::kConfigError);
  CHECK(cli::main({"construct", "--out", dir, "--config", "/nonexistent.json"}) == cli::kConfigError);
  const std::string cfg = dir + "/seed.json";
  std::ofstream(cfg) << R"({"seed3d_file": "/nonexistent.csv"})";
  CHECK(cli::main({"construct", "--out", dir, "--config", cfg}) == cli::kConfigError);
  CHECK(cli::main({"frobnicate"}) == cli::kConfigError);
  CHECK(cli::main({"verify", "--out", dir, "--corrupt", "nope"}) == cli::kConfigError);
  // An ODE step far too coarse for the requested accuracy.
  CHECK(cli::main({"construct", "--out", dir, "--ramps.direction=psi_first", "--ramps.rho_0=null",
                   "--ramps.ode_step=0.5"}) ==
        cli::kNumericalError);
}

TEST_CASE("verify passes and a corruption fails it") {
  const auto dir = scratch("verify");
  CHECK(cli::main({"verify", "--out", dir.string()}) == cli::kPass);
  const json ok = json::parse(slurp(dir / "verify.json"));
  CHECK(ok["command"] == "verify");
  CHECK(ok["corruption"].is_null());
  CHECK(cli::main({"verify", "--out", dir.string(), "--corrupt", "velocity_scale"}) == cli::kGateFailure);
  const json bad = json::parse(slurp(dir / "verify.json"));
  CHECK(bad["corruption"] == "velocity_scale");
}

TEST_CASE("export writes consistent CSV and VTK") {
  const auto dir = scratch("export");
  REQUIRE(cli::main({"export", "--out", dir.string(), "--grid.h=0.0625"}) == cli::kPass);
  const FieldTable t = read_fields_csv(dir / "fields.csv");
  const RunConfig cfg = parse_config(json::object());
  const CellGrid g = CellGrid::square(construct(cfg).lifted->support_radius() + cfg.grid.margin, 0.0625);
  CHECK(t.rows() == g.size());
  CHECK(slurp(dir / "fields.csv").rfind(kFieldCsvHeader, 0) == 0);

  // Round trip through the reader is exact.
  const auto again = scratch("export2");
  write_fields_csv(again / "f.csv", t);
  CHECK(slurp(again / "f.csv") == slurp(dir / "fields.csv"));

  const std::string vtk = slurp(dir / "fields.vtk");
  CHECK(vtk.rfind("# vtk DataFile Version 3.0", 0) == 0);
  std::ostringstream dims;
  dims << "DIMENSIONS " << g.nx << " " << g.ny << " 1";
  CHECK(vtk.find(dims.str()) != std::string::npos);
  CHECK(vtk.find("POINT_DATA " + std::to_string(g.size())) != std::string::npos);
  for (const char* name : {"SCALARS rho", "VECTORS u", "SCALARS s", "SCALARS pi", "SCALARS res_mass",
                           "VECTORS res_mom", "SCALARS res_entropy"}) {
    CHECK(vtk.find(name) != std::string::npos);
  }
  const json meta = json::parse(slurp(dir / "export.json"));
  CHECK(meta["rows"] == g.size());
}

TEST_CASE("outputs are deterministic for a fixed seed") {
  const auto a = scratch("det_a"), b = scratch("det_b");
  REQUIRE(cli::main({"export", "--out", a.string(), "--grid.h=0.125"}) == cli::kPass);
  REQUIRE(cli::main({"export", "--out", b.string(), "--grid.h=0.125"}) == cli::kPass);
  CHECK(slurp(a / "fields.csv") == slurp(b / "fields.csv"));
  CHECK(slurp(a / "fields.vtk") == slurp(b / "fields.vtk"));
  REQUIRE(cli::main({"construct", "--out", a.string(), "--seed", "7"}) == cli::kPass);
  REQUIRE(cli::main({"construct", "--out", b.string(), "--seed", "7"}) == cli::kPass);
  CHECK(slurp(a / "construct.json") == slurp(b / "construct.json"));
}

TEST_CASE("malformed field CSV") {
  const auto dir = scratch("badcsv");
  std::ofstream(dir / "x.csv") << "x,y\n1,2\n";
  CHECK_THROWS_AS(read_fields_csv(dir / "x.csv"), IngestError);
  CHECK_THROWS_AS(read_fields_csv(dir / "missing.csv"), IngestError);
}

TEST_CASE("report serialization") {
  DriftReport r;
  r.grid = CellGrid::square(1.0, 0.5);
  r.cfl = 0.45;
  r.times = {0.0, 1.0};
  r.rho = r.mom = r.energy = {DriftNorms{}, DriftNorms{1.0, 2.0, 3.0}};
  const json j = to_json(r);
  CHECK(j["grid"]["dims"] == json::array({4, 4}));
  CHECK(j["drift"]["rho"][1]["l2"] == 2.0);
  CHECK(j["times"].size() == 2);
}

TEST_CASE("default ramp interval scales with the pressure deficit") {
  const Construction c = construct(parse_config(json::object()));
  const double p_inf = c.base->p_inf(), p_min = c.base->p_min();
  CHECK(c.lifted->ramps().b == p_inf - 4.0 * (p_inf - p_min));
  const Construction tight = construct(parse_config(json::object(), {"ramps.b_stretch=1"}));
  CHECK(tight.lifted->ramps().b == p_min);
  CHECK_THROWS_WITH_AS(parse_config(json::object(), {"ramps.b_stretch=0.5"}), doctest::Contains("ramps.b_stretch"),
                       ConfigError);
  // The relative default keeps the lifted fields independent of the vortex amplitude.
  const Construction strong = construct(parse_config(json::object(), {"vortex.amplitude=3"}));
  for (double r : {0.2, 0.5, 0.9, 1.3}) {
    CHECK(strong.lifted->values({r, 0.0, 0.0}).rho == doctest::Approx(c.lifted->values({r, 0.0, 0.0}).rho).epsilon(1e-9));
  }
}
