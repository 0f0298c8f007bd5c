#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "steady/error.hpp"
#include "steady/lift.hpp"
#include "steady/seed2d.hpp"
#include "steady/smoothfn.hpp"
#include "steady/verify.hpp"
#include "support.hpp"

using namespace steady;

namespace {

const EosParams kAir{1.4, 1.0};

class ConstantState final : public SteadyFields {
 public:
  FieldPoint eval(const Vec3&) const override {
    FieldPoint f;
    f.rho = 1.3;
    f.u = {0.2, -0.1, 0.0};
    f.s = 0.4;
    f.pi = pressure(kAir, f.rho, f.s);
    return f;
  }
  int dim() const override { return 2; }
  double support_radius() const override { return 0.0; }
  FieldValues farfield() const override { return eval({}).values(); }
};

std::shared_ptr<const LiftedSolution> lifted(const std::string& shape = "annular", double amplitude = 1.0) {
  const auto phi = shape == "annular" ? bump(0.25, 1.0, amplitude) : bump(-1.0, 1.0, amplitude);
  const auto base = make_rankine(VortexSpec{phi, 1.0}, 1e-12);
  const double b = amplitude == 0.0 ? 0.0 : base->p_min();
  return lift_solution(base, RampPair::canonical(b, 1.0, 0.8, 1.0, -0.2, 0.0), kAir);
}

std::vector<double> fd_linf(const SteadyFields& sol, const std::vector<double>& hs, int order,
                            const std::string& eq) {
  std::vector<double> out;
  for (double h : hs) out.push_back(residual_fd(sol, Grid2D::covering(1.0, h, 4 * h), order).equation(eq).norms.linf);
  return out;
}

}  // namespace

TEST_CASE("constant state has zero residuals") {
  const ConstantState c;
  const auto pts = random_points(2, 1.0, 1000, 3);
  const auto a = residual_analytic(c, pts);
  CHECK(a.method == "analytic");
  CHECK(a.points == 1000);
  CHECK(a.max_relative_linf() == 0.0);
  for (int order : {2, 4}) {
    const auto f = residual_fd(c, Grid2D::covering(1.0, 0.1, 0.2), order);
    for (const auto& e : f.equations) CHECK(e.norms.linf == 0.0);
  }
}

TEST_CASE("grid covering is nested and symmetric") {
  const auto g = Grid2D::covering(1.0, 0.125, 0.25);
  CHECK(g.x0 == -1.25);
  CHECK(g.x(g.nx - 1) == 1.25);
  const auto f = Grid2D::covering(1.0, 0.0625, 0.25);
  CHECK(f.nx == 2 * g.nx - 1);
  CHECK(f.x(2 * 3) == g.x(3));
}

TEST_CASE("random points are seeded and inside the box") {
  const auto a = random_points(2, 1.5, 500, 9), b = random_points(2, 1.5, 500, 9), c = random_points(2, 1.5, 500, 10);
  CHECK(a == b);
  CHECK(a != c);
  for (const auto& p : a) {
    CHECK(std::abs(p[0]) <= 1.5);
    CHECK(std::abs(p[1]) <= 1.5);
    CHECK(p[2] == 0.0);
  }
}

TEST_CASE("lifted solution passes the analytic residual gate") {
  const auto sol = lifted();
  const auto r = residual_analytic(*sol, random_points(2, 1.25, 10000, 42));
  REQUIRE(r.equations.size() == 4);
  for (const auto& e : r.equations) {
    INFO(e.name);
    CHECK(e.scale > 0.0);
    CHECK(e.relative_linf() <= 1e-10);
  }
  for (const auto& x : random_points(2, 1.1, 2000, 5)) {
    const auto t = transport_terms(*sol, x);
    const double tol = 1e-12 * std::max(t.scale, 1e-12);
    REQUIRE(std::abs(t.grad_rho_dot_u) <= tol);
    REQUIRE(std::abs(t.grad_s_dot_u) <= tol);
    REQUIRE(std::abs(t.div_u) <= tol);
  }
}

TEST_CASE("finite-difference residuals converge at the stencil order") {
  const auto sol = lifted("bump");
  const std::vector<double> hs = {1.0 / 32, 1.0 / 64, 1.0 / 128};
  for (const char* eq : {"mass", "momx", "momy", "entropy"}) {
    INFO(eq);
    const double p2 = test::slope(hs, fd_linf(*sol, hs, 2, eq));
    CHECK(p2 >= 1.7);
    CHECK(p2 <= 2.3);
  }
  const double p4 = test::slope(hs, fd_linf(*sol, hs, 4, "momx"));
  CHECK(p4 >= 3.0);
}

TEST_CASE("fitted order is the log-log slope") {
  const std::vector<double> h = {0.1, 0.05, 0.025};
  const std::vector<double> e = {3e-2, 7.5e-3, 1.875e-3};
  CHECK(fitted_order(h, e) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(fitted_order(h, e) == doctest::Approx(test::slope(h, e)).epsilon(1e-12));
}

TEST_CASE("virial identity with independent radial quadrature") {
  const auto sol = lifted();
  const auto v = virial_check(*sol, 1e-10);
  CHECK(v.pass);
  CHECK_FALSE(v.trivial);
  CHECK(v.kinetic > 0.0);
  CHECK(v.pressure_deficit < 0.0);
  CHECK(v.identity_residual <= 1e-8 * std::max({v.kinetic, std::abs(v.pressure_deficit), 1.0}));

  // Rotational symmetry: K = 2 pi int rho |u|^2 r dr, D = 2 pi int (pi - pi_inf) r dr.
  const double pi_inf = sol->farfield().pi;
  const long double k = 2 * std::numbers::pi * test::simpson([&](long double r) {
    const auto f = sol->values({static_cast<double>(r), 0.0, 0.0});
    return static_cast<long double>(f.rho * dot(f.u, f.u)) * r;
  }, 0.0L, 1.0L, 200000);
  const long double d = 2 * std::numbers::pi * test::simpson([&](long double r) {
    return static_cast<long double>(sol->values({static_cast<double>(r), 0.0, 0.0}).pi - pi_inf) * r;
  }, 0.0L, 1.0L, 200000);
  CHECK(std::abs(v.kinetic - static_cast<double>(k)) <= 1e-8 * static_cast<double>(k));
  CHECK(std::abs(v.pressure_deficit - static_cast<double>(d)) <= 1e-8 * std::abs(static_cast<double>(d)));
}

TEST_CASE("far field is exact outside the support and not inside it") {
  const auto sol = lifted();
  const auto ok = farfield_check(*sol, sol->support_radius(), 2000, 7);
  CHECK(ok.pass);
  CHECK(ok.checked == 2000);
  CHECK(ok.violation_count == 0);
  const auto bad = farfield_check(*sol, 0.5 * sol->support_radius(), 2000, 7);
  CHECK_FALSE(bad.pass);
  CHECK(bad.violation_count > 0);
  CHECK(bad.violations.size() <= 32);
}

TEST_CASE("pressure deficit") {
  const auto sol = lifted();
  const auto d = pressure_deficit_check(sol->base());
  CHECK(d.pass);
  CHECK_FALSE(d.trivial);
  CHECK(d.p_min < d.p_inf);
  CHECK(d.ball_radius > 0.0);
  // Annular vortex: the minimum is on the core disk |x|^2 <= 1/4.
  CHECK(norm(d.center) <= 0.5 + 1e-12);

  const auto flat = make_rankine(VortexSpec{bump(0.25, 1.0, 0.0), 1.0}, 1e-12);
  const auto t = pressure_deficit_check(*flat);
  CHECK(t.trivial);
}

TEST_CASE("corruptions break the residual gate") {
  const auto sol = lifted();
  const auto pts = random_points(2, 1.25, 4000, 42);
  for (Corruption c : {Corruption::VelocityScale, Corruption::DensityOffset, Corruption::EntropyFlip}) {
    INFO(corruption_name(c));
    const auto bad = corrupt(sol, c);
    CHECK(residual_analytic(*bad, pts).max_relative_linf() >= 1e-3);
    // Outside the support the corrupted state is still the far field.
    CHECK(bad->values({2.0, 0.0, 0.0}).rho == sol->farfield().rho);
  }
}
