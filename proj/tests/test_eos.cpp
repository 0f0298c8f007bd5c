#include <doctest.h>

#include <cmath>
#include <vector>

#include "steady/eos.hpp"
#include "steady/error.hpp"
#include "steady/smoothfn.hpp"
#include "support.hpp"

using namespace steady;

TEST_CASE("pressure values") {
  const EosParams e{1.4, 1.0};
  CHECK(pressure(e, 1.0, 0.0) == 1.0);
  CHECK(pressure(e, 2.0, 0.0) == doctest::Approx(static_cast<double>(std::pow(2.0L, 1.4L))).epsilon(1e-15));
  CHECK(pressure(e, 1.0, 1.0) == doctest::Approx(static_cast<double>(std::exp(1.0L))).epsilon(1e-15));
  CHECK(pressure(e, 0.0, 3.0) == 0.0);
  CHECK_THROWS_AS(pressure(e, -1e-3, 0.0), DomainError);
}

TEST_CASE("pressure partials") {
  const auto p2 = pressure_partials(EosParams{2.0, 1.0}, 1.0, 0.0);
  CHECK(p2.dpi_drho == 2.0);
  CHECK(p2.dpi_ds == 1.0);
  const auto p14 = pressure_partials(EosParams{1.4, 1.0}, 1.0, 0.0);
  CHECK(p14.dpi_drho == doctest::Approx(1.4));
  CHECK(p14.dpi_ds == doctest::Approx(1.0));
  CHECK_THROWS_AS(pressure_partials(EosParams{}, 0.0, 0.0), DomainError);
}

TEST_CASE("partials match central differences at second order") {
  const EosParams e{1.4, 0.7};
  const std::vector<double> hs = {1e-2, 5e-3, 2.5e-3};
  std::vector<double> er, es;
  for (double h : hs) {
    double wr = 0, ws = 0;
    for (double rho : {0.3, 1.0, 2.5}) {
      for (double s : {-1.0, 0.0, 0.8}) {
        const auto d = pressure_partials(e, rho, s);
        wr = std::max(wr, std::abs((pressure(e, rho + h, s) - pressure(e, rho - h, s)) / (2 * h) - d.dpi_drho));
        ws = std::max(ws, std::abs((pressure(e, rho, s + h) - pressure(e, rho, s - h)) / (2 * h) - d.dpi_ds));
      }
    }
    er.push_back(wr);
    es.push_back(ws);
  }
  CHECK(test::slope(hs, er) == doctest::Approx(2.0).epsilon(0.15));
  CHECK(test::slope(hs, es) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("internal energy") {
  CHECK(internal_energy(EosParams{2.0, 1.0}, 1.0, 0.0) == doctest::Approx(1.0));
  CHECK(internal_energy(EosParams{1.4, 1.0}, 1.0, 0.0) == doctest::Approx(2.5));
  CHECK(internal_energy(EosParams{1.4, 1.0}, 2.0, 0.0) == doctest::Approx(std::pow(2.0, 1.4) / 0.8));
  CHECK_THROWS_AS(internal_energy(EosParams{}, 0.0, 0.0), DomainError);
}

TEST_CASE("positivity on a sample grid") {
  const EosParams e{1.4, 1.0};
  for (int i = 0; i < 100; ++i) {
    const double rho = 1e-3 + 10.0 * i / 99.0;
    for (int j = 0; j < 100; ++j) {
      const double s = -10.0 + 20.0 * j / 99.0;
      const auto d = pressure_partials(e, rho, s);
      REQUIRE(pressure(e, rho, s) > 0.0);
      REQUIRE(d.dpi_drho > 0.0);
      REQUIRE(d.dpi_ds > 0.0);
    }
  }
}

TEST_CASE("pressure along monotone ramps is non-decreasing") {
  const EosParams e{1.4, 1.0};
  const auto rho = ramp(0.7, 1.3, 0.0, 1.0);
  const auto s = ramp(-0.5, 0.0, 0.0, 1.0);
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double z = -0.2 + 1.4 * i / 1000.0;
    const double p = pressure(e, rho(z), s(z));
    CHECK(p >= prev);
    prev = p;
  }
}

TEST_CASE("entropy_from inverts pressure") {
  const EosParams e{1.67, 0.9};
  for (double rho : {0.2, 1.0, 3.0}) {
    for (double s : {-2.0, 0.0, 1.5}) CHECK(entropy_from(e, rho, pressure(e, rho, s)) == doctest::Approx(s));
  }
}

TEST_CASE("parameter validation names the field") {
  try {
    EosParams{1.0, 1.0}.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(std::string(err.what()).find("gamma") != std::string::npos);
  }
  try {
    EosParams{1.4, 0.0}.validate();
    FAIL("expected ConfigError");
  } catch (const ConfigError& err) {
    CHECK(std::string(err.what()).find("a") != std::string::npos);
  }
}
