#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <memory>
#include <vector>

#include "steady/jet.hpp"

namespace steady {

// Closed interval outside of which a profile and all its derivatives are exactly zero.
// Infinite endpoints denote an unbounded side.
struct Support {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  static Support entire_line() { return {}; }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool contains(double z) const { return z >= lo && z <= hi; }
};

class ProfileImpl {
 public:
  virtual ~ProfileImpl() = default;
  // Derivatives 0..max_order(); entries above max_order() are unspecified.
  virtual Jet jet(double z) const = 0;
  virtual double value(double z) const { return jet(z)[0]; }
  virtual int max_order() const = 0;
};

// Immutable one-dimensional profile with analytic derivatives and an explicit support.
// Copies share the underlying implementation.
class SmoothProfile {
 public:
  SmoothProfile(std::shared_ptr<const ProfileImpl> impl, Support support, int class_order);

  double operator()(double z) const;
  // k-th derivative, 0 <= k <= max_order().
  double eval(double z, int k) const;
  Jet jet(double z) const;

  const Support& support() const { return support_; }
  int class_order() const { return class_order_; }
  int max_order() const { return impl_->max_order(); }

  static SmoothProfile constant(double value);

 private:
  std::shared_ptr<const ProfileImpl> impl_;
  Support support_;
  int class_order_;
};

// C-infinity transition from 0 (z <= z0) to 1 (z >= z1):
// S(t) = e(t) / (e(t) + e(1 - t)), e(t) = exp(-1/t) for t > 0, t = (z - z0) / (z1 - z0).
SmoothProfile smoothstep(double z0, double z1);

// amplitude * exp(1 - 1/(1 - t^2)), t = (2z - z0 - z1) / (z1 - z0); zero for |t| >= 1.
SmoothProfile bump(double z0, double z1, double amplitude);

// v_lo below z0, v_hi above z1, smoothstep blend in between. Plateau values are returned exactly.
SmoothProfile ramp(double v_lo, double v_hi, double z0, double z1);

// sum_k coeffs[k] * z^k on the whole line.
SmoothProfile polynomial(std::vector<double> coeffs);

// Defaults used across the library.
inline constexpr double kDefaultQuadTol = 1e-10;
inline constexpr int kDefaultQuadDepth = 40;

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
};

// Adaptive Gauss-Kronrod quadrature on [a, b], bisecting the worst segment until the summed
// error estimate is below max(rel_tol * int |f|, abs_tol). Segments stop splitting at
// max_depth. Infinite limits are clipped to `support`, which must then be bounded on that
// side. Throws QuadratureError when the tolerance is not met.
QuadratureResult integrate_with_error(const std::function<double(double)>& f, double a, double b,
                                      double rel_tol = kDefaultQuadTol,
                                      Support support = Support::entire_line(),
                                      int max_depth = kDefaultQuadDepth, double abs_tol = 0.0);

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = kDefaultQuadTol, Support support = Support::entire_line(),
                 double abs_tol = 0.0);

double integrate(const SmoothProfile& f, double a, double b, double rel_tol = kDefaultQuadTol);

}  // namespace steady
