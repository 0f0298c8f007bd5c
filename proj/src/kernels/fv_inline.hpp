#pragma once

// Single-element reference operations shared by the scalar kernels and the SIMD tails.

#include <cmath>
#include <cstddef>

#include "steady/kernels.hpp"

namespace steady::kernels::detail {

// Matches _mm256_max_pd operand semantics, including the NaN case.
inline double vmax(double a, double b) { return a > b ? a : b; }

inline double minmod(double a, double b) {
  if (!(a * b > 0.0)) return 0.0;
  return std::fabs(a) < std::fabs(b) ? a : b;
}

inline void reconstruct_one(const double* qm, const double* q0, const double* qp, double* minus,
                            double* plus, std::size_t k) {
  const double slope = minmod(q0[k] - qm[k], qp[k] - q0[k]);
  const double half = 0.5 * slope;
  minus[k] = q0[k] - half;
  plus[k] = q0[k] + half;
}

struct Primitive {
  double un;  // normal velocity
  double ut;  // tangential velocity
  double p;
  double c;
};

inline Primitive primitive(double rho, double mn, double mt, double E, double gamma) {
  Primitive w;
  w.un = mn / rho;
  w.ut = mt / rho;
  w.p = (gamma - 1.0) * (E - 0.5 * (mn * w.un + mt * w.ut));
  w.c = std::sqrt(gamma * w.p / rho);
  return w;
}

inline void rusanov_one(const FaceStates& s, double* const flux[4], std::size_t k, double gamma,
                        int axis) {
  const int in = axis == 0 ? 1 : 2;  // normal momentum component
  const int it = axis == 0 ? 2 : 1;
  const double rl = s.left[0][k], rr = s.right[0][k];
  const double mnl = s.left[in][k], mnr = s.right[in][k];
  const double mtl = s.left[it][k], mtr = s.right[it][k];
  const double el = s.left[3][k], er = s.right[3][k];
  const Primitive wl = primitive(rl, mnl, mtl, el, gamma);
  const Primitive wr = primitive(rr, mnr, mtr, er, gamma);
  const double smax = vmax(std::fabs(wl.un) + wl.c, std::fabs(wr.un) + wr.c);
  // F = (F_l + F_r)/2 - smax (q_r - q_l)/2
  flux[0][k] = 0.5 * ((mnl + mnr) - smax * (rr - rl));
  flux[in][k] = 0.5 * ((mnl * wl.un + wl.p + (mnr * wr.un + wr.p)) - smax * (mnr - mnl));
  flux[it][k] = 0.5 * ((mtl * wl.un + mtr * wr.un) - smax * (mtr - mtl));
  flux[3][k] = 0.5 * (((el + wl.p) * wl.un + (er + wr.p) * wr.un) - smax * (er - el));
}

inline double wave_speed_one(const double* const q[4], std::size_t k, double gamma) {
  const Primitive w = primitive(q[0][k], q[1][k], q[2][k], q[3][k], gamma);
  return std::sqrt(w.un * w.un + w.ut * w.ut) + w.c;
}

}  // namespace steady::kernels::detail
