#include "steady/seed2d.hpp"

#include <algorithm>
#include <sstream>

#include "steady/error.hpp"

namespace steady {

namespace {

void check_shape(const VortexSpec& spec) {
  if (!spec.shape.support().bounded()) throw ConfigError("vortex shape must have bounded support");
  if (!std::isfinite(spec.p_inf)) throw ConfigError("vortex.p_inf must be finite");
}

// Velocity and its Jacobian for U = (-y Phi(q), x Phi(q)), q = x^2 + y^2.
void vortex_velocity(const SmoothProfile& shape, double x, double y, Vec3& U, Mat3* grad) {
  const double q = x * x + y * y;
  const double phi = shape(q);
  U = {-y * phi, x * phi, 0.0};
  if (grad == nullptr) return;
  const double dphi = shape.eval(q, 1);
  const double c = 2.0 * x * y * dphi;
  Mat3& J = *grad;
  J = Mat3{};
  J[0][0] = -c;
  J[0][1] = -phi - 2.0 * y * y * dphi;
  J[1][0] = phi + 2.0 * x * x * dphi;
  J[1][1] = c;
}

}  // namespace

RankineVortex::RankineVortex(VortexSpec spec, double quad_tol)
    : spec_(std::move(spec)), quad_tol_(quad_tol) {
  check_shape(spec_);
  q_lo_ = std::max(spec_.shape.support().lo, 0.0);
  q_hi_ = std::max(spec_.shape.support().hi, 0.0);
  r2_ = std::sqrt(q_hi_);
  if (q_hi_ > q_lo_) {
    const SmoothProfile& shape = spec_.shape;
    deficit_scale_ = integrate([&shape](double t) {
      const double v = shape(t);
      return v * v;
    }, q_lo_, q_hi_, quad_tol_);
  }
  p_min_ = pressure_at_r2(0.0);
}

double RankineVortex::pressure_at_r2(double q) const {
  if (q >= q_hi_) return spec_.p_inf;
  const double lo = std::max(q, q_lo_);
  const SmoothProfile& shape = spec_.shape;
  // int_r^inf t Phi^2(t^2) dt = 1/2 int_{r^2}^inf Phi^2(tau) dtau
  const double deficit = 0.5 * integrate([&shape](double t) {
    const double v = shape(t);
    return v * v;
  }, lo, q_hi_, quad_tol_, Support::entire_line(), quad_tol_ * deficit_scale_);
  return spec_.p_inf - deficit;
}

BasePoint RankineVortex::eval(const Vec3& x) const {
  BasePoint out;
  const double q = x[0] * x[0] + x[1] * x[1];
  if (q >= q_hi_) {
    out.P = spec_.p_inf;
    return out;
  }
  vortex_velocity(spec_.shape, x[0], x[1], out.U, &out.gradU);
  const double phi = spec_.shape(q);
  out.gradP = {phi * phi * x[0], phi * phi * x[1], 0.0};
  out.P = pressure_at_r2(q);
  return out;
}

double RankineVortex::pressure(const Vec3& x) const { return pressure_at_r2(x[0] * x[0] + x[1] * x[1]); }

Vec3 RankineVortex::velocity(const Vec3& x) const {
  Vec3 U{};
  if (x[0] * x[0] + x[1] * x[1] >= q_hi_) return U;
  vortex_velocity(spec_.shape, x[0], x[1], U, nullptr);
  return U;
}

std::shared_ptr<const RankineVortex> make_rankine(const VortexSpec& spec, double quad_tol) {
  return std::make_shared<const RankineVortex>(spec, quad_tol);
}

Vec3 momentum_residual_base(const BaseSolution& base, const Vec3& x) {
  const BasePoint b = base.eval(x);
  const Vec3 conv = convect(b.gradU, b.U);
  return {conv[0] + b.gradP[0], conv[1] + b.gradP[1], conv[2] + b.gradP[2]};
}

InhomogeneousVortex::InhomogeneousVortex(SmoothProfile rho_radial, VortexSpec spec, double quad_tol)
    : rho_(std::move(rho_radial)),
      base_(make_rankine(spec, quad_tol)),
      quad_tol_(quad_tol),
      constant_density_(true) {
  const double r_max = 2.0 * std::max(base_->support_radius(), 1.0);
  constexpr int kSamples = 256;
  for (int i = 0; i <= kSamples; ++i) {
    const double r = r_max * i / kSamples;
    if (rho_(r) < 0.0) {
      std::ostringstream msg;
      msg << "make_inhomogeneous: density negative at r = " << r;
      throw ConfigError(msg.str());
    }
    if (rho_.eval(r, 1) != 0.0) constant_density_ = false;
  }
  if (!constant_density_ && spec.shape.support().lo <= 0.0 && spec.shape.support().hi > 0.0) {
    throw ConfigError(
        "make_inhomogeneous: a non-constant density requires the vortex shape to vanish near the "
        "origin");
  }
  deficit_scale_ = weighted_deficit(0.0, 0.0);
}

// 1/2 int_lo^q_hi rho(sqrt t) Phi^2(t) dt
double InhomogeneousVortex::weighted_deficit(double lo, double abs_tol) const {
  const SmoothProfile& shape = base_->spec().shape;
  const double q_hi = std::max(shape.support().hi, 0.0);
  lo = std::max(lo, std::max(shape.support().lo, 0.0));
  if (lo >= q_hi) return 0.0;
  return 0.5 * integrate([&](double t) {
    const double v = shape(t);
    return rho_(std::sqrt(t)) * v * v;
  }, lo, q_hi, quad_tol_, Support::entire_line(), abs_tol);
}

double InhomogeneousVortex::pi_at_r2(double q) const {
  const double q_hi = std::max(base_->spec().shape.support().hi, 0.0);
  if (q >= q_hi) return base_->p_inf();
  return base_->p_inf() - weighted_deficit(q, quad_tol_ * deficit_scale_);
}

FieldPoint InhomogeneousVortex::eval(const Vec3& x) const {
  FieldPoint f;
  const double q = x[0] * x[0] + x[1] * x[1];
  const double r = std::sqrt(q);
  const Jet rho = rho_.jet(r);
  f.rho = rho[0];
  if (r > 0.0) f.grad_rho = {rho[1] * x[0] / r, rho[1] * x[1] / r, 0.0};
  f.pi = pi_at_r2(q);
  if (q < std::max(base_->spec().shape.support().hi, 0.0)) {
    vortex_velocity(base_->spec().shape, x[0], x[1], f.u, &f.grad_u);
    const double phi = base_->spec().shape(q);
    f.grad_pi = {f.rho * phi * phi * x[0], f.rho * phi * phi * x[1], 0.0};
  }
  return f;
}

FieldValues InhomogeneousVortex::values(const Vec3& x) const {
  FieldValues v;
  const double q = x[0] * x[0] + x[1] * x[1];
  v.rho = rho_(std::sqrt(q));
  v.pi = pi_at_r2(q);
  if (q < std::max(base_->spec().shape.support().hi, 0.0)) {
    vortex_velocity(base_->spec().shape, x[0], x[1], v.u, nullptr);
  }
  return v;
}

FieldValues InhomogeneousVortex::farfield() const {
  FieldValues v;
  v.rho = rho_(base_->support_radius());
  v.pi = base_->p_inf();
  return v;
}

std::shared_ptr<const InhomogeneousVortex> make_inhomogeneous(const SmoothProfile& rho_radial,
                                                               const VortexSpec& spec,
                                                               double quad_tol) {
  return std::make_shared<const InhomogeneousVortex>(rho_radial, spec, quad_tol);
}

}  // namespace steady
