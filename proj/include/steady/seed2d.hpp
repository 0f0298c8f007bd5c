#pragma once

#include <memory>

#include "steady/base.hpp"
#include "steady/fields.hpp"
#include "steady/smoothfn.hpp"

namespace steady {

// Rankine-type vortex U = (-x2 Phi(|x|^2), x1 Phi(|x|^2)); shape is Phi as a function of
// the squared radius and must have bounded support.
struct VortexSpec {
  SmoothProfile shape = SmoothProfile::constant(0.0);
  double p_inf = 1.0;
};

class RankineVortex final : public BaseSolution {
 public:
  RankineVortex(VortexSpec spec, double quad_tol);

  BasePoint eval(const Vec3& x) const override;
  double pressure(const Vec3& x) const override;
  Vec3 velocity(const Vec3& x) const override;

  int dim() const override { return 2; }
  double p_inf() const override { return spec_.p_inf; }
  double p_min() const override { return p_min_; }
  double support_radius() const override { return r2_; }

  // P as a function of the squared radius.
  double pressure_at_r2(double q) const;
  const VortexSpec& spec() const { return spec_; }

 private:
  VortexSpec spec_;
  double quad_tol_;
  double deficit_scale_ = 0.0;  // int Phi^2 over the support, sets the absolute tolerance
  double q_lo_;  // lower end of the shape support in the squared radius, clipped at 0
  double q_hi_;
  double r2_;
  double p_min_;
};

std::shared_ptr<const RankineVortex> make_rankine(const VortexSpec& spec,
                                                   double quad_tol = kDefaultQuadTol);

// U.grad U + grad P from the closed-form pieces.
Vec3 momentum_residual_base(const BaseSolution& base, const Vec3& x);

// Non-homogeneous incompressible steady state: density rho_radial(|x|), the vortex
// velocity and pi(r) = p_inf - int_r^inf rho(t) t Phi^2(t^2) dt. Entropy is identically 0.
class InhomogeneousVortex final : public SteadyFields {
 public:
  InhomogeneousVortex(SmoothProfile rho_radial, VortexSpec spec, double quad_tol);

  FieldPoint eval(const Vec3& x) const override;
  FieldValues values(const Vec3& x) const override;
  int dim() const override { return 2; }
  double support_radius() const override { return base_->support_radius(); }
  FieldValues farfield() const override;
  bool constant_farfield() const override { return constant_density_; }

  double pi_at_r2(double q) const;
  const RankineVortex& base() const { return *base_; }

 private:
  SmoothProfile rho_;
  std::shared_ptr<const RankineVortex> base_;
  double quad_tol_;
  double deficit_scale_ = 0.0;
  bool constant_density_;

  double weighted_deficit(double lo, double abs_tol) const;
};

std::shared_ptr<const InhomogeneousVortex> make_inhomogeneous(const SmoothProfile& rho_radial,
                                                               const VortexSpec& spec,
                                                               double quad_tol = kDefaultQuadTol);

}  // namespace steady
