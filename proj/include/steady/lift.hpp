#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "steady/base.hpp"
#include "steady/eos.hpp"
#include "steady/fields.hpp"
#include "steady/smoothfn.hpp"

namespace steady {

// Density and entropy as functions of the base pressure, flat outside (b, p_inf).
struct RampPair {
  SmoothProfile rho_tilde = SmoothProfile::constant(1.0);
  SmoothProfile s_tilde = SmoothProfile::constant(0.0);
  double b = 0.0;
  double p_inf = 1.0;
  double rho_0 = 1.0;
  double rho_inf = 1.0;
  double s_0 = 0.0;
  double s_inf = 0.0;

  // Smoothstep ramps rho_0 -> rho_inf and s_0 -> s_inf on [b, p_inf].
  static RampPair canonical(double b, double p_inf, double rho_0, double rho_inf, double s_0,
                            double s_inf);
};

// Psi(z) = sqrt( d/dz pi(rho~(z), s~(z)) / rho~(z) ), supported on [b, p_inf].
// Derivatives up to order 3; identically zero where the radicand vanishes.
SmoothProfile psi_from_ramps(const RampPair& ramps, const EosParams& eos);

struct RhoFromPsi {
  SmoothProfile rho_tilde;
  double rho_inf;         // achieved rho~(p_inf)
  double error_estimate;  // Richardson estimate of the terminal/nodal error
};

inline constexpr double kDefaultOdeTol = 1e-10;

// Integrates rho~' = (rho~^(2-gamma) Psi^2 exp(-a s~) - a rho~ s~') / gamma from
// rho~(b) = rho_0 with classical RK4 at fixed step. Throws NumericalError on a vacuum breach
// or when the step-doubling estimate exceeds tol.
RhoFromPsi rho_from_psi(const SmoothProfile& psi, const SmoothProfile& s_tilde, double rho_0,
                        const EosParams& eos, double b, double p_inf, double step,
                        double tol = kDefaultOdeTol);

// rho_0 such that rho_from_psi(...).rho_inf hits target_rho_inf within tol.
double shoot_rho0(const SmoothProfile& psi, const SmoothProfile& s_tilde, double target_rho_inf,
                  const EosParams& eos, double b, double p_inf, double tol, double step);

// rho = rho~(P), s = s~(P), u = Psi(P) U, pi = pi(rho, s), with chain-rule gradients.
class LiftedSolution final : public SteadyFields {
 public:
  LiftedSolution(std::shared_ptr<const BaseSolution> base, RampPair ramps, EosParams eos,
                 SmoothProfile psi);

  FieldPoint eval(const Vec3& x) const override;
  FieldValues values(const Vec3& x) const override;
  int dim() const override { return base_->dim(); }
  double support_radius() const override { return base_->support_radius(); }
  FieldValues farfield() const override { return farfield_; }
  bool verified_upstream() const override { return base_->verified_upstream(); }

  const BaseSolution& base() const { return *base_; }
  std::shared_ptr<const BaseSolution> base_ptr() const { return base_; }
  const RampPair& ramps() const { return ramps_; }
  const EosParams& eos() const { return eos_; }
  const SmoothProfile& psi() const { return psi_; }

 private:
  std::shared_ptr<const BaseSolution> base_;
  RampPair ramps_;
  EosParams eos_;
  SmoothProfile psi_;
  FieldValues farfield_;
};

// Throws ConfigError if ramps.p_inf != base.p_inf() or ramps.b > base.p_min().
// Psi defaults to psi_from_ramps(ramps, eos).
std::shared_ptr<const LiftedSolution> lift_solution(std::shared_ptr<const BaseSolution> base,
                                                    const RampPair& ramps, const EosParams& eos,
                                                    std::optional<SmoothProfile> psi = std::nullopt);

struct SolvViolation {
  double z;
  std::string condition;
};

// Samples 1000 interior points plus the plateaus and lists every violated ramp condition.
std::vector<SolvViolation> check_solv(const RampPair& ramps);

}  // namespace steady
