#pragma once

#include <array>
#include <cmath>

namespace steady {

using Vec3 = std::array<double, 3>;
// m[i][j] = d v_i / d x_j
using Mat3 = std::array<std::array<double, 3>, 3>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline double trace(const Mat3& m) { return m[0][0] + m[1][1] + m[2][2]; }
// (v . grad) w for w with Jacobian m.
inline Vec3 convect(const Mat3& m, const Vec3& v) {
  Vec3 r{};
  for (int i = 0; i < 3; ++i) r[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return r;
}

// Pointwise evaluation of a steady incompressible pair (U, P).
struct BasePoint {
  Vec3 U{};
  Mat3 gradU{};
  double P = 0.0;
  Vec3 gradP{};
};

// Steady incompressible Euler solution U.grad U + grad P = 0, div U = 0, with
// compactly supported U and U.grad P = 0. Implementations are immutable and
// safe for concurrent evaluation.
class BaseSolution {
 public:
  virtual ~BaseSolution() = default;

  virtual BasePoint eval(const Vec3& x) const = 0;
  // Pressure alone; may be cheaper than eval().
  virtual double pressure(const Vec3& x) const { return eval(x).P; }
  virtual Vec3 velocity(const Vec3& x) const { return eval(x).U; }

  virtual int dim() const = 0;
  virtual double p_inf() const = 0;
  virtual double p_min() const = 0;
  // U = 0 and P = p_inf for |x| >= support_radius().
  virtual double support_radius() const = 0;
  // False for seeds ingested from sampled files, whose identities hold only to sampling accuracy.
  virtual bool verified_upstream() const { return true; }
};

}  // namespace steady
