#pragma once

#include "steady/base.hpp"

namespace steady {

struct FieldValues {
  double rho = 0.0;
  Vec3 u{};
  double s = 0.0;
  double pi = 0.0;
};

struct FieldPoint {
  double rho = 0.0;
  Vec3 u{};
  double s = 0.0;
  double pi = 0.0;
  Vec3 grad_rho{};
  Mat3 grad_u{};
  Vec3 grad_s{};
  Vec3 grad_pi{};

  FieldValues values() const { return {rho, u, s, pi}; }
};

// Steady state (rho, u, s, pi) with exact first derivatives; the common input of the
// verification and evolution modules. Immutable; evaluation is pure.
class SteadyFields {
 public:
  virtual ~SteadyFields() = default;

  virtual FieldPoint eval(const Vec3& x) const = 0;
  virtual FieldValues values(const Vec3& x) const { return eval(x).values(); }

  virtual int dim() const = 0;
  // For |x| >= support_radius(): u = 0 and pi = farfield().pi exactly; rho and s also
  // equal farfield() when constant_farfield() holds.
  virtual double support_radius() const = 0;
  virtual FieldValues farfield() const = 0;
  virtual bool constant_farfield() const { return true; }
  virtual bool verified_upstream() const { return true; }
};

}  // namespace steady
