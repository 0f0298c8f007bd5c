#include "steady/lift.hpp"

#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "steady/error.hpp"

namespace steady {

namespace {

// Jet of f' from the jet of f; the top entry is unknown and left at zero.
Jet shift(const Jet& f) {
  Jet r;
  for (int k = 0; k < Jet::kOrder; ++k) r.d[k] = f.d[k + 1];
  return r;
}

// Below this the radicand is treated as an exact zero: its square root is < 1e-140.
constexpr double kRadicandFloor = 1e-280;

class PsiImpl final : public ProfileImpl {
 public:
  PsiImpl(RampPair ramps, EosParams eos) : ramps_(std::move(ramps)), eos_(eos) {}

  Jet jet(double z) const override {
    if (z <= ramps_.b || z >= ramps_.p_inf) return Jet{};
    const Jet q = radicand(z);
    if (q.d[0] < 0.0) {
      std::ostringstream msg;
      msg << "psi_from_ramps: negative radicand " << q.d[0] << " at z = " << z;
      throw ConfigError(msg.str());
    }
    if (q.d[0] <= kRadicandFloor) return Jet{};
    return sqrt(q);
  }

  int max_order() const override {
    return std::min({3, ramps_.rho_tilde.max_order() - 1, ramps_.s_tilde.max_order() - 1});
  }

  // (1/rho~) d/dz pi(rho~, s~)
  Jet radicand(double z) const {
    const Jet rho = ramps_.rho_tilde.jet(z);
    const Jet s = ramps_.s_tilde.jet(z);
    const Jet pi = pow(rho, eos_.gamma) * exp(eos_.a * s);
    return shift(pi) / rho;
  }

 private:
  RampPair ramps_;
  EosParams eos_;
};

// Right-hand side of the density ODE as a jet in z.
Jet density_rhs(const Jet& rho, const Jet& psi, const Jet& s, const EosParams& eos) {
  const Jet ds = shift(s);
  return (1.0 / eos.gamma) * (pow(rho, 2.0 - eos.gamma) * psi * psi * exp(-eos.a * s) -
                              eos.a * (rho * ds));
}

double density_rhs(double z, double rho, const SmoothProfile& psi, const SmoothProfile& s_tilde,
                   const EosParams& eos) {
  const double p = psi(z);
  const double ds = s_tilde.eval(z, 1);
  return (std::pow(rho, 2.0 - eos.gamma) * p * p * std::exp(-eos.a * s_tilde(z)) -
          eos.a * rho * ds) /
         eos.gamma;
}

struct OdeRun {
  std::vector<double> y;  // nodal values at b + i * h
  bool breached = false;
  double breach_z = 0.0;
};

OdeRun rk4(const SmoothProfile& psi, const SmoothProfile& s_tilde, double rho_0,
           const EosParams& eos, double b, double p_inf, std::size_t n) {
  OdeRun run;
  run.y.resize(n + 1);
  const double h = (p_inf - b) / static_cast<double>(n);
  double y = rho_0;
  run.y[0] = y;
  auto breach = [&run](double z) {
    run.breached = true;
    run.breach_z = z;
  };
  for (std::size_t i = 0; i < n; ++i) {
    const double z = b + static_cast<double>(i) * h;
    const double k1 = density_rhs(z, y, psi, s_tilde, eos);
    const double y2 = y + 0.5 * h * k1;
    if (!(y2 > 0.0)) {
      breach(z);
      return run;
    }
    const double k2 = density_rhs(z + 0.5 * h, y2, psi, s_tilde, eos);
    const double y3 = y + 0.5 * h * k2;
    if (!(y3 > 0.0)) {
      breach(z);
      return run;
    }
    const double k3 = density_rhs(z + 0.5 * h, y3, psi, s_tilde, eos);
    const double y4 = y + h * k3;
    if (!(y4 > 0.0)) {
      breach(z);
      return run;
    }
    const double k4 = density_rhs(z + h, y4, psi, s_tilde, eos);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!(y > 0.0)) {
      breach(z + h);
      return run;
    }
    run.y[i + 1] = y;
  }
  return run;
}

// Tabulated ODE solution with cubic Hermite dense output; derivatives from the ODE itself.
class OdeDensityImpl final : public ProfileImpl {
 public:
  OdeDensityImpl(std::vector<double> y, SmoothProfile psi, SmoothProfile s_tilde, EosParams eos,
                 double b, double p_inf)
      : y_(std::move(y)), psi_(std::move(psi)), s_(std::move(s_tilde)), eos_(eos), b_(b), p_inf_(p_inf) {
    h_ = (p_inf_ - b_) / static_cast<double>(y_.size() - 1);
    dy_.resize(y_.size());
    for (std::size_t i = 0; i < y_.size(); ++i) {
      dy_[i] = density_rhs(node(i), y_[i], psi_, s_, eos_);
    }
  }

  double value(double z) const override {
    if (z <= b_) return y_.front();
    if (z >= p_inf_) return y_.back();
    const std::size_t n = y_.size() - 1;
    std::size_t i = std::min(static_cast<std::size_t>((z - b_) / h_), n - 1);
    const double t = (z - node(i)) / h_;
    const double t2 = t * t, t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y_[i] + (t3 - 2 * t2 + t) * h_ * dy_[i] +
           (-2 * t3 + 3 * t2) * y_[i + 1] + (t3 - t2) * h_ * dy_[i + 1];
  }

  Jet jet(double z) const override {
    Jet rho = Jet::constant(value(z));
    if (z <= b_ || z >= p_inf_) return rho;
    const Jet psi = psi_.jet(z);
    const Jet s = s_.jet(z);
    for (int k = 1; k <= Jet::kOrder; ++k) {
      const Jet f = density_rhs(rho, psi, s, eos_);
      rho.d[k] = f.d[k - 1];
    }
    return rho;
  }

  int max_order() const override {
    return std::min({Jet::kOrder, psi_.max_order() + 1, s_.max_order()});
  }

 private:
  double node(std::size_t i) const { return b_ + static_cast<double>(i) * h_; }

  std::vector<double> y_, dy_;
  SmoothProfile psi_, s_;
  EosParams eos_;
  double b_, p_inf_, h_;
};

std::size_t step_count(double b, double p_inf, double step) {
  if (!(step > 0.0)) throw ConfigError("rho_from_psi: step must be positive");
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((p_inf - b) / step)));
}

}  // namespace

RampPair RampPair::canonical(double b, double p_inf, double rho_0, double rho_inf, double s_0,
                             double s_inf) {
  RampPair r;
  r.rho_tilde = ramp(rho_0, rho_inf, b, p_inf);
  r.s_tilde = ramp(s_0, s_inf, b, p_inf);
  r.b = b;
  r.p_inf = p_inf;
  r.rho_0 = rho_0;
  r.rho_inf = rho_inf;
  r.s_0 = s_0;
  r.s_inf = s_inf;
  return r;
}

SmoothProfile psi_from_ramps(const RampPair& ramps, const EosParams& eos) {
  eos.validate();
  if (!(ramps.b < ramps.p_inf)) throw ConfigError("psi_from_ramps: requires b < p_inf");
  auto impl = std::make_shared<const PsiImpl>(ramps, eos);
  constexpr int kScan = 1000;
  for (int i = 1; i < kScan; ++i) {
    const double z = ramps.b + (ramps.p_inf - ramps.b) * i / kScan;
    const double q = impl->radicand(z).d[0];
    if (q < 0.0) {
      std::ostringstream msg;
      msg << "psi_from_ramps: negative radicand " << q << " at z = " << z;
      throw ConfigError(msg.str());
    }
  }
  return SmoothProfile(impl, Support{ramps.b, ramps.p_inf}, 3);
}

RhoFromPsi rho_from_psi(const SmoothProfile& psi, const SmoothProfile& s_tilde, double rho_0,
                        const EosParams& eos, double b, double p_inf, double step, double tol) {
  eos.validate();
  if (!(rho_0 > 0.0)) throw ConfigError("rho_from_psi: rho_0 must be positive");
  if (!(b < p_inf)) throw ConfigError("rho_from_psi: requires b < p_inf");
  if (psi.support().lo < b || psi.support().hi > p_inf) {
    throw ConfigError("rho_from_psi: psi must be supported in [b, p_inf]");
  }
  const std::size_t n = step_count(b, p_inf, step);
  const OdeRun coarse = rk4(psi, s_tilde, rho_0, eos, b, p_inf, n);
  const OdeRun fine = rk4(psi, s_tilde, rho_0, eos, b, p_inf, 2 * n);
  for (const OdeRun* run : {&coarse, &fine}) {
    if (run->breached) {
      std::ostringstream msg;
      msg << "rho_from_psi: vacuum breach (density <= 0) at z = " << run->breach_z;
      throw NumericalError(msg.str());
    }
  }
  double err = 0.0;
  for (std::size_t i = 0; i <= n; ++i) {
    err = std::max(err, std::abs(coarse.y[i] - fine.y[2 * i]) / 15.0);
  }
  if (err > tol) {
    std::ostringstream msg;
    msg << "rho_from_psi: step-doubling error estimate " << err << " exceeds tolerance " << tol
        << "; use a step smaller than " << step;
    throw NumericalError(msg.str());
  }
  const double rho_inf = fine.y.back();
  auto impl = std::make_shared<const OdeDensityImpl>(fine.y, psi, s_tilde, eos, b, p_inf);
  const int order = std::min(3, impl->max_order());
  return {SmoothProfile(impl, Support::entire_line(), order), rho_inf, err};
}

double shoot_rho0(const SmoothProfile& psi, const SmoothProfile& s_tilde, double target_rho_inf,
                  const EosParams& eos, double b, double p_inf, double tol, double step) {
  eos.validate();
  if (!(target_rho_inf > 0.0)) throw ConfigError("shoot_rho0: target density must be positive");
  if (!(tol > 0.0)) throw ConfigError("shoot_rho0: tol must be positive");
  const std::size_t n = 2 * step_count(b, p_inf, step);
  auto terminal = [&](double rho_0) {
    const OdeRun run = rk4(psi, s_tilde, rho_0, eos, b, p_inf, n);
    return run.breached ? 0.0 : run.y.back();
  };
  auto miss = [&](double rho_0) { return terminal(rho_0) - target_rho_inf; };

  double lo = 1e-6 * target_rho_inf, hi = 1e6 * target_rho_inf;
  double f_lo = miss(lo), f_hi = miss(hi);
  if (f_lo > 0.0 || f_hi < 0.0) {
    lo = 1e-12 * target_rho_inf;
    hi = 1e12 * target_rho_inf;
    f_lo = miss(lo);
    f_hi = miss(hi);
  }
  if (f_lo > 0.0 || f_hi < 0.0) {
    std::ostringstream msg;
    msg << "shoot_rho0: far-field density " << target_rho_inf << " unreachable from the bracket";
    throw NumericalError(msg.str());
  }
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  std::uintmax_t max_iter = 200;
  const auto stop = [tol](double a, double c) { return std::abs(c - a) <= 1e-3 * tol; };
  const auto bracket =
      boost::math::tools::toms748_solve(miss, lo, hi, f_lo, f_hi, stop, max_iter);
  const double a = bracket.first, c = bracket.second;
  const double fa = std::abs(miss(a)), fc = std::abs(miss(c));
  const double rho_0 = fa <= fc ? a : c;
  if (std::min(fa, fc) > tol) {
    std::ostringstream msg;
    msg << "shoot_rho0: terminal mismatch " << std::min(fa, fc) << " above tolerance " << tol;
    throw NumericalError(msg.str());
  }
  return rho_0;
}

LiftedSolution::LiftedSolution(std::shared_ptr<const BaseSolution> base, RampPair ramps,
                               EosParams eos, SmoothProfile psi)
    : base_(std::move(base)), ramps_(std::move(ramps)), eos_(eos), psi_(std::move(psi)) {
  farfield_.rho = ramps_.rho_tilde(base_->p_inf());
  farfield_.s = ramps_.s_tilde(base_->p_inf());
  farfield_.pi = pressure(eos_, farfield_.rho, farfield_.s);
}

FieldPoint LiftedSolution::eval(const Vec3& x) const {
  const BasePoint b = base_->eval(x);
  const Jet r = ramps_.rho_tilde.jet(b.P);
  const Jet s = ramps_.s_tilde.jet(b.P);
  const double psi = psi_(b.P);
  const double dpsi = psi_.eval(b.P, 1);
  FieldPoint f;
  f.rho = r[0];
  f.s = s[0];
  f.pi = pressure(eos_, f.rho, f.s);
  const PressurePartials dp = pressure_partials(eos_, f.rho, f.s);
  const double dpi_dz = dp.dpi_drho * r[1] + dp.dpi_ds * s[1];
  for (int i = 0; i < 3; ++i) {
    f.u[i] = psi * b.U[i];
    f.grad_rho[i] = r[1] * b.gradP[i];
    f.grad_s[i] = s[1] * b.gradP[i];
    f.grad_pi[i] = dpi_dz * b.gradP[i];
    for (int j = 0; j < 3; ++j) f.grad_u[i][j] = dpsi * b.U[i] * b.gradP[j] + psi * b.gradU[i][j];
  }
  return f;
}

FieldValues LiftedSolution::values(const Vec3& x) const {
  const double P = base_->pressure(x);
  const Vec3 U = base_->velocity(x);
  FieldValues v;
  v.rho = ramps_.rho_tilde(P);
  v.s = ramps_.s_tilde(P);
  v.pi = pressure(eos_, v.rho, v.s);
  const double psi = psi_(P);
  for (int i = 0; i < 3; ++i) v.u[i] = psi * U[i];
  return v;
}

std::shared_ptr<const LiftedSolution> lift_solution(std::shared_ptr<const BaseSolution> base,
                                                    const RampPair& ramps, const EosParams& eos,
                                                    std::optional<SmoothProfile> psi) {
  if (!base) throw ConfigError("lift_solution: missing base solution");
  eos.validate();
  if (ramps.p_inf != base->p_inf()) {
    std::ostringstream msg;
    msg << "lift_solution: ramps.p_inf " << ramps.p_inf << " differs from the base far-field pressure "
        << base->p_inf();
    throw ConfigError(msg.str());
  }
  if (ramps.b > base->p_min()) {
    std::ostringstream msg;
    msg << "lift_solution: b = " << ramps.b << " exceeds inf P = " << base->p_min()
        << " (psi support must lie in [inf P, p_inf])";
    throw ConfigError(msg.str());
  }
  if (!(ramps.rho_0 > 0.0)) throw ConfigError("lift_solution: rho_0 must be positive");
  SmoothProfile p = psi ? *psi : psi_from_ramps(ramps, eos);
  return std::make_shared<const LiftedSolution>(std::move(base), ramps, eos, std::move(p));
}

std::vector<SolvViolation> check_solv(const RampPair& ramps) {
  std::vector<SolvViolation> out;
  const double len = ramps.p_inf - ramps.b;
  if (!(len > 0.0)) {
    out.push_back({ramps.b, "b < p_inf"});
    return out;
  }
  if (!(ramps.rho_0 > 0.0)) out.push_back({ramps.b, "rho_0 > 0"});
  for (int i = 1; i <= 10; ++i) {
    const double below = ramps.b - len * i / 10.0;
    const double above = ramps.p_inf + len * i / 10.0;
    if (ramps.rho_tilde(below) != ramps.rho_0) out.push_back({below, "rho~ = rho_0 for z <= b"});
    if (ramps.s_tilde(below) != ramps.s_0) out.push_back({below, "s~ = s_0 for z <= b"});
    if (ramps.rho_tilde(above) != ramps.rho_inf) out.push_back({above, "rho~ = rho_inf for z >= p_inf"});
    if (ramps.s_tilde(above) != ramps.s_inf) out.push_back({above, "s~ = s_inf for z >= p_inf"});
  }
  // Interior samples stay clear of the endpoint layers where exp(-1/t) underflows.
  constexpr int kSamples = 1000;
  for (int i = 0; i < kSamples; ++i) {
    const double z = ramps.b + len * (0.005 + 0.99 * i / (kSamples - 1));
    const double drho = ramps.rho_tilde.eval(z, 1);
    if (ramps.rho_0 != ramps.rho_inf && !(drho > 0.0)) out.push_back({z, "rho~' > 0 on (b, p_inf)"});
    if (ramps.s_tilde.eval(z, 1) < 0.0) out.push_back({z, "s~' >= 0 on (b, p_inf)"});
  }
  return out;
}

}  // namespace steady
