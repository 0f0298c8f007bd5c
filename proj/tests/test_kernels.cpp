#include <doctest.h>

#include <cstring>
#include <random>
#include <vector>

#include "steady/eos.hpp"
#include "steady/evolve.hpp"
#include "steady/kernels.hpp"
#include "steady/lift.hpp"
#include "steady/seed2d.hpp"
#include "steady/smoothfn.hpp"

using namespace steady;
using namespace steady::kernels;

namespace {

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Admissible random states (rho, m_x, m_y, E); odd length exercises the vector tails.
std::array<std::vector<double>, 4> random_states(std::size_t n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::uniform_real_distribution<double> rho(0.5, 2.0), u(-1.0, 1.0), p(0.3, 3.0);
  std::array<std::vector<double>, 4> q;
  for (auto& c : q) c.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double r = rho(g), ux = u(g), uy = u(g);
    q[0][i] = r;
    q[1][i] = r * ux;
    q[2][i] = r * uy;
    q[3][i] = p(g) / 0.4 + 0.5 * r * (ux * ux + uy * uy);
  }
  return q;
}

}  // namespace

TEST_CASE("kernel registry") {
  CHECK(std::string(scalar_kernels().name) == "scalar");
  CHECK(kernels_by_name("scalar") == &scalar_kernels());
  CHECK(kernels_by_name("nonsense") == nullptr);
  if (const FvKernels* k = avx2_kernels()) CHECK(std::string(k->name) == "avx2");
}

TEST_CASE("scalar reconstruction limits slopes") {
  const std::vector<double> qm = {0.0, 1.0, 0.0, 2.0}, q0 = {1.0, 1.0, 1.0, 3.0}, qp = {3.0, 2.0, 0.5, 5.0};
  std::vector<double> lo(4), hi(4);
  scalar_kernels().reconstruct(qm.data(), q0.data(), qp.data(), lo.data(), hi.data(), 4);
  // minmod(1, 2) = 1; flat side gives 0; extremum gives 0; minmod(1, 2) = 1.
  CHECK(lo == std::vector<double>{0.5, 1.0, 1.0, 2.5});
  CHECK(hi == std::vector<double>{1.5, 1.0, 1.0, 3.5});
}

TEST_CASE("Rusanov flux of equal states is the physical flux") {
  const auto q = random_states(7, 3);
  FaceStates s;
  for (int c = 0; c < 4; ++c) s.left[c] = s.right[c] = q[c].data();
  std::array<std::vector<double>, 4> f;
  for (auto& c : f) c.resize(7);
  double* out[4] = {f[0].data(), f[1].data(), f[2].data(), f[3].data()};
  scalar_kernels().rusanov(s, out, 7, 1.4, 0);
  for (std::size_t i = 0; i < 7; ++i) {
    const double ux = q[1][i] / q[0][i], uy = q[2][i] / q[0][i];
    const double p = 0.4 * (q[3][i] - 0.5 * q[0][i] * (ux * ux + uy * uy));
    CHECK(f[0][i] == doctest::Approx(q[1][i]).epsilon(1e-15));
    CHECK(f[1][i] == doctest::Approx(q[1][i] * ux + p).epsilon(1e-14));
    CHECK(f[2][i] == doctest::Approx(q[1][i] * uy).epsilon(1e-14));
    CHECK(f[3][i] == doctest::Approx((q[3][i] + p) * ux).epsilon(1e-14));
  }
}

TEST_CASE("AVX2 kernels are bitwise equal to the scalar reference") {
  const FvKernels* v = avx2_kernels();
  if (!v) {
    MESSAGE("AVX2 kernels unavailable on this machine; equivalence not exercised");
    return;
  }
  const FvKernels& s = scalar_kernels();
  for (std::size_t n : {1u, 3u, 4u, 5u, 17u, 1023u}) {
    const auto a = random_states(n, 10 + n), b = random_states(n, 20 + n), c = random_states(n, 30 + n);

    std::vector<double> lo1(n), hi1(n), lo2(n), hi2(n);
    s.reconstruct(a[0].data(), b[0].data(), c[0].data(), lo1.data(), hi1.data(), n);
    v->reconstruct(a[0].data(), b[0].data(), c[0].data(), lo2.data(), hi2.data(), n);
    CHECK(same_bits(lo1, lo2));
    CHECK(same_bits(hi1, hi2));

    for (int axis : {0, 1}) {
      FaceStates fs;
      for (int k = 0; k < 4; ++k) {
        fs.left[k] = a[k].data();
        fs.right[k] = b[k].data();
      }
      std::array<std::vector<double>, 4> f1, f2;
      double* o1[4];
      double* o2[4];
      for (int k = 0; k < 4; ++k) {
        f1[k].resize(n);
        f2[k].resize(n);
        o1[k] = f1[k].data();
        o2[k] = f2[k].data();
      }
      s.rusanov(fs, o1, n, 1.4, axis);
      v->rusanov(fs, o2, n, 1.4, axis);
      for (int k = 0; k < 4; ++k) CHECK(same_bits(f1[k], f2[k]));
    }

    const double* qa[4] = {a[0].data(), a[1].data(), a[2].data(), a[3].data()};
    CHECK(s.max_wave_speed(qa, n, 1.4) == v->max_wave_speed(qa, n, 1.4));

    std::vector<double> o1(n), o2(n);
    s.combine(o1.data(), a[0].data(), b[0].data(), c[0].data(), 0.5, 0.5, 0.01, n);
    v->combine(o2.data(), a[0].data(), b[0].data(), c[0].data(), 0.5, 0.5, 0.01, n);
    CHECK(same_bits(o1, o2));
  }
}

TEST_CASE("full runs agree bitwise across kernel variants") {
  const FvKernels* v = avx2_kernels();
  if (!v) return;
  const EosParams e{1.4, 1.0};
  const auto base = make_rankine(VortexSpec{bump(0.25, 1.0, 1.0), 1.0}, 1e-12);
  const auto sol = lift_solution(base, RampPair::canonical(base->p_min(), 1.0, 0.8, 1.0, -0.2, 0.0), e);
  const auto s0 = discretize(*sol, CellGrid::square(1.3, 1.0 / 20), e);
  const auto r1 = run(s0, 0.2, 0.45, 0.1, scalar_kernels());
  const auto r2 = run(s0, 0.2, 0.45, 0.1, *v);
  CHECK(r1.steps == r2.steps);
  for (std::size_t i = 0; i < r1.rho.size(); ++i) {
    CHECK(r1.rho[i].l1 == r2.rho[i].l1);
    CHECK(r1.mom[i].linf == r2.mom[i].linf);
    CHECK(r1.energy[i].l2 == r2.energy[i].l2);
  }
  CHECK(r1.mass_final == r2.mass_final);
}
