#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "steady/error.hpp"
#include "steady/lift.hpp"
#include "steady/seed2d.hpp"
#include "steady/smoothfn.hpp"
#include "support.hpp"

using namespace steady;

namespace {

const EosParams kAir{1.4, 1.0};

std::shared_ptr<const RankineVortex> annular(double amplitude = 1.0) {
  return make_rankine(VortexSpec{bump(0.25, 1.0, amplitude), 1.0}, 1e-12);
}

std::vector<Vec3> points(std::size_t n, double extent, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> u(-extent, extent);
  std::vector<Vec3> out(n);
  for (auto& p : out) p = {u(g), u(g), 0.0};
  return out;
}

// a(z) + c * b(z) as a profile.
class SumImpl final : public ProfileImpl {
 public:
  SumImpl(SmoothProfile a, SmoothProfile b, double c) : a_(std::move(a)), b_(std::move(b)), c_(c) {}
  Jet jet(double z) const override { return a_.jet(z) + c_ * b_.jet(z); }
  int max_order() const override { return std::min(a_.max_order(), b_.max_order()); }

 private:
  SmoothProfile a_, b_;
  double c_;
};

SmoothProfile sum(SmoothProfile a, SmoothProfile b, double c) {
  return SmoothProfile(std::make_shared<SumImpl>(a, b, c), Support::entire_line(), 3);
}

double frob(const Mat3& m) {
  double acc = 0.0;
  for (const auto& row : m)
    for (double v : row) acc += v * v;
  return std::sqrt(acc);
}

double sup_diff(const SmoothProfile& f, const SmoothProfile& g, double lo, double hi) {
  double worst = 0.0;
  for (int i = 0; i <= 4000; ++i) {
    const double z = lo + (hi - lo) * i / 4000.0;
    worst = std::max(worst, std::abs(f(z) - g(z)));
  }
  return worst;
}

}  // namespace

TEST_CASE("degenerate ramps give a zero Psi") {
  const auto r = RampPair::canonical(0.0, 1.0, 1.0, 1.0, 0.0, 0.0);
  const auto psi = psi_from_ramps(r, kAir);
  for (int i = -10; i <= 20; ++i) CHECK(psi(0.1 * i) == 0.0);
}

TEST_CASE("Psi for gamma = 2 and zero entropy is sqrt(2 rho')") {
  const EosParams e{2.0, 0.6};
  const auto r = RampPair::canonical(0.2, 1.0, 0.5, 1.0, 0.0, 0.0);
  const auto psi = psi_from_ramps(r, e);
  for (int i = 1; i < 100; ++i) {
    const double z = 0.2 + 0.8 * i / 100.0;
    CHECK(psi(z) == doctest::Approx(std::sqrt(2.0 * r.rho_tilde.eval(z, 1))).epsilon(1e-12));
  }
  for (double z : {-1.0, 0.2, 1.0, 1.5}) {
    for (int k = 0; k <= 3; ++k) CHECK(psi.eval(z, k) == 0.0);
  }
}

TEST_CASE("Psi derivatives are consistent with differences") {
  const auto r = RampPair::canonical(0.0, 1.0, 0.7, 1.0, -0.3, 0.0);
  const auto psi = psi_from_ramps(r, kAir);
  const std::vector<double> hs = {1e-3, 5e-4, 2.5e-4};
  for (int k = 0; k < 3; ++k) {
    std::vector<double> err;
    for (double h : hs) {
      double worst = 0.0;
      for (int i = 0; i < 100; ++i) {
        const double z = 0.1 + 0.8 * (i + 0.5) / 100.0;
        worst = std::max(worst, std::abs((psi.eval(z + h, k) - psi.eval(z - h, k)) / (2 * h) - psi.eval(z, k + 1)));
      }
      err.push_back(worst);
    }
    INFO("k = ", k);
    const double p = test::slope(hs, err);
    CHECK(p >= 1.7);
    CHECK(p <= 2.3);
  }
}

TEST_CASE("negative radicand names the offending z") {
  RampPair r = RampPair::canonical(0.0, 1.0, 1.0, 0.5, 0.0, 0.0);  // decreasing density
  try {
    psi_from_ramps(r, kAir);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("z =") != std::string::npos);
  }
}

TEST_CASE("rho_from_psi with zero Psi and constant entropy is constant") {
  const auto out = rho_from_psi(SmoothProfile::constant(0.0), SmoothProfile::constant(0.3), 0.9, kAir, 0.0, 1.0, 1e-2);
  CHECK(out.rho_inf == 0.9);
  for (double z : {-1.0, 0.0, 0.5, 1.0, 2.0}) CHECK(out.rho_tilde(z) == 0.9);
}

TEST_CASE("rho_from_psi matches the gamma = 2 closed form") {
  const EosParams e{2.0, 1.0};
  const auto psi = bump(0.1, 0.9, 1.3);
  const auto out = rho_from_psi(psi, SmoothProfile::constant(0.0), 0.6, e, 0.1, 0.9, 1e-3);
  for (int i = 0; i <= 40; ++i) {
    const double z = 0.1 + 0.8 * i / 40.0;
    const double half_int = z == 0.1 ? 0.0 : static_cast<double>(0.5L * test::simpson([&](long double t) {
      const long double v = psi(static_cast<double>(t));
      return v * v;
    }, 0.1L, static_cast<long double>(z), 20000));
    CHECK(std::abs(out.rho_tilde(z) - (0.6 + half_int)) <= 1e-8);
  }
  CHECK(out.rho_tilde(5.0) == out.rho_inf);
  CHECK(out.rho_tilde(-5.0) == 0.6);
}

TEST_CASE("round trip between the two construction directions") {
  for (double gamma : {1.4, 5.0 / 3.0, 2.0}) {
    const EosParams e{gamma, 1.0};
    const auto r = RampPair::canonical(0.8, 1.0, 0.8, 1.0, -0.2, 0.0);
    const auto psi = psi_from_ramps(r, e);
    const auto back = rho_from_psi(psi, r.s_tilde, r.rho_0, e, r.b, r.p_inf, 1e-4);
    INFO("gamma = ", gamma);
    CHECK(sup_diff(back.rho_tilde, r.rho_tilde, 0.7, 1.1) <= 1e-6);
    CHECK(std::abs(back.rho_inf - 1.0) <= 1e-6);
  }
}

TEST_CASE("shooting") {
  CHECK(shoot_rho0(SmoothProfile::constant(0.0), SmoothProfile::constant(0.0), 1.0, kAir, 0.0, 1.0, 1e-12, 1e-2) ==
        doctest::Approx(1.0).epsilon(1e-11));
  const EosParams e{2.0, 1.0};
  const auto psi = bump(0.0, 1.0, 0.8);
  const double rho0 = shoot_rho0(psi, SmoothProfile::constant(0.0), 1.0, e, 0.0, 1.0, 1e-11, 1e-3);
  const double half_int = static_cast<double>(0.5L * test::simpson([&](long double t) {
    const long double v = psi(static_cast<double>(t));
    return v * v;
  }, 0.0L, 1.0L, 20000));
  CHECK(std::abs(rho0 - (1.0 - half_int)) <= 1e-8);
  const auto s = ramp(-0.3, 0.0, 0.0, 1.0);
  const double r0 = shoot_rho0(psi, s, 1.2, kAir, 0.0, 1.0, 1e-10, 1e-3);
  CHECK(std::abs(rho_from_psi(psi, s, r0, kAir, 0.0, 1.0, 1e-3).rho_inf - 1.2) <= 1e-10);
  CHECK_THROWS_AS(shoot_rho0(psi, s, -1.0, kAir, 0.0, 1.0, 1e-10, 1e-3), ConfigError);
}

TEST_CASE("ODE failures are numerical errors") {
  // A steep entropy rise with a coarse step drives an RK stage through zero density.
  CHECK_THROWS_AS(rho_from_psi(SmoothProfile::constant(0.0), ramp(0.0, 400.0, 0.0, 1.0), 1.0, kAir, 0.0, 1.0, 0.25),
                  NumericalError);
  // Coarse steps on a sharp Psi fail the step-doubling accuracy check.
  CHECK_THROWS_AS(rho_from_psi(bump(0.0, 0.02, 5.0), SmoothProfile::constant(0.0), 1.0, kAir, 0.0, 1.0, 0.05),
                  NumericalError);
  CHECK_THROWS_AS(rho_from_psi(SmoothProfile::constant(0.0), SmoothProfile::constant(0.0), 0.0, kAir, 0.0, 1.0, 0.1),
                  ConfigError);
}

TEST_CASE("lift preconditions") {
  const auto base = annular();
  const auto bad_b = RampPair::canonical(base->p_min() + 1e-3, 1.0, 0.8, 1.0, 0.0, 0.0);
  CHECK_THROWS_AS(lift_solution(base, bad_b, kAir), ConfigError);
  const auto bad_p = RampPair::canonical(base->p_min(), 1.5, 0.8, 1.0, 0.0, 0.0);
  CHECK_THROWS_AS(lift_solution(base, bad_p, kAir), ConfigError);
}

TEST_CASE("lifted solution invariants") {
  const auto base = annular();
  const auto ramps = RampPair::canonical(base->p_min(), 1.0, 0.8, 1.0, -0.2, 0.0);
  const auto sol = lift_solution(base, ramps, kAir);
  const FieldValues far = sol->farfield();
  CHECK(far.rho == 1.0);
  CHECK(far.s == 0.0);
  CHECK(far.pi == pressure(kAir, 1.0, 0.0));
  for (const auto& x : points(10000, 1.25, 11)) {
    const FieldPoint f = sol->eval(x);
    REQUIRE(f.rho >= 0.8);
    const double r = std::hypot(x[0], x[1]);
    if (r >= sol->support_radius()) {
      REQUIRE(f.rho == far.rho);
      REQUIRE(f.s == far.s);
      REQUIRE(f.pi == far.pi);
      REQUIRE(f.u == Vec3{0.0, 0.0, 0.0});
    }
    const BasePoint b = base->eval(x);
    REQUIRE(std::abs(dot(f.u, b.gradP)) <= 1e-14 * std::max(norm(f.u) * norm(b.gradP), 1e-300));

    // The transport identities hold term by term.
    const double div_u = trace(f.grad_u);
    const double mag_u = norm(f.u);
    const double scale_rho = std::max(norm(f.grad_rho) * mag_u + f.rho * frob(f.grad_u), 1e-12);
    REQUIRE(std::abs(dot(f.grad_rho, f.u)) <= 1e-12 * scale_rho);
    REQUIRE(std::abs(f.rho * div_u) <= 1e-12 * std::max(f.rho * frob(f.grad_u), 1e-12));
    Vec3 grad_rs{};
    for (int i = 0; i < 3; ++i) grad_rs[i] = f.grad_rho[i] * f.s + f.rho * f.grad_s[i];
    REQUIRE(std::abs(dot(grad_rs, f.u)) <= 1e-12 * std::max(norm(grad_rs) * mag_u, 1e-12));

    const Vec3 conv = convect(f.grad_u, f.u);
    double mom_scale = norm(f.grad_pi);
    for (int i = 0; i < 2; ++i) mom_scale = std::max(mom_scale, std::abs(f.rho * conv[i]));
    for (int i = 0; i < 2; ++i) REQUIRE(std::abs(f.rho * conv[i] + f.grad_pi[i]) <= 1e-10 * std::max(mom_scale, 1e-12));
  }
}

TEST_CASE("isentropic lift is also incompressible and density-transporting") {
  const auto base = annular();
  const auto ramps = RampPair::canonical(base->p_min(), 1.0, 0.7, 1.0, 0.0, 0.0);
  const auto sol = lift_solution(base, ramps, kAir);
  for (const auto& x : points(5000, 1.1, 12)) {
    const FieldPoint f = sol->eval(x);
    const double scale = std::max({norm(f.u) * norm(f.grad_rho), frob(f.grad_u), 1e-12});
    REQUIRE(std::abs(trace(f.grad_u)) <= 1e-12 * scale);
    REQUIRE(std::abs(dot(f.u, f.grad_rho)) <= 1e-12 * scale);
    REQUIRE(f.s == 0.0);
  }
}

TEST_CASE("different ramp pairs with equal far field give different solutions") {
  const auto base = annular();
  const auto a = lift_solution(base, RampPair::canonical(base->p_min(), 1.0, 0.8, 1.0, -0.2, 0.0), kAir);
  const auto b = lift_solution(base, RampPair::canonical(base->p_min(), 1.0, 0.6, 1.0, 0.0, 0.0), kAir);
  CHECK(a->farfield().rho == b->farfield().rho);
  CHECK(a->farfield().s == b->farfield().s);
  double worst = 0.0;
  for (const auto& x : points(2000, 1.0, 13)) worst = std::max(worst, std::abs(a->values(x).rho - b->values(x).rho));
  CHECK(worst >= 1e-3);
}

TEST_CASE("vortex amplitude does not change the lifted fields") {
  const auto ramps1 = [&](const BaseSolution& b) {
    return RampPair::canonical(b.p_min(), 1.0, 0.8, 1.0, -0.2, 0.0);
  };
  const auto b1 = annular(1.0), b2 = annular(2.0);
  const auto s1 = lift_solution(b1, ramps1(*b1), kAir);
  const auto s2 = lift_solution(b2, ramps1(*b2), kAir);
  for (const auto& x : points(500, 1.0, 14)) {
    const auto v1 = s1->values(x), v2 = s2->values(x);
    CHECK(v1.rho == doctest::Approx(v2.rho).epsilon(1e-9));
    CHECK(v1.u[0] == doctest::Approx(v2.u[0]).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("check_solv") {
  const auto good = RampPair::canonical(0.0, 1.0, 0.5, 1.0, -1.0, 0.0);
  CHECK(check_solv(good).empty());

  RampPair dec = good;
  dec.rho_tilde = ramp(1.0, 0.5, 0.0, 1.0);
  dec.rho_0 = 1.0;
  dec.rho_inf = 0.5;
  std::size_t interior = 0;
  for (const auto& v : check_solv(dec)) interior += v.condition.find("rho~'") != std::string::npos;
  CHECK(interior == 1000);

  RampPair dip = good;
  dip.s_tilde = sum(ramp(-1.0, 0.0, 0.0, 1.0), bump(0.4, 0.6, 1.0), -0.5);
  std::vector<double> expected;
  for (int i = 0; i < 1000; ++i) {
    const double z = 0.005 + 0.99 * i / 999.0;
    // Closed-form sign: S'(z) - 0.5 B'(z) with the profiles' own analytic derivatives.
    if (ramp(-1.0, 0.0, 0.0, 1.0).eval(z, 1) - 0.5 * bump(0.4, 0.6, 1.0).eval(z, 1) < 0.0) expected.push_back(z);
  }
  std::vector<double> got;
  for (const auto& v : check_solv(dip)) {
    if (v.condition.find("s~'") != std::string::npos) got.push_back(v.z);
  }
  REQUIRE(!expected.empty());
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(expected[i]).epsilon(1e-15));
}
