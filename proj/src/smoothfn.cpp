#include "steady/smoothfn.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>

#include "steady/error.hpp"

namespace steady {

SmoothProfile::SmoothProfile(std::shared_ptr<const ProfileImpl> impl, Support support,
                             int class_order)
    : impl_(std::move(impl)), support_(support), class_order_(class_order) {}

double SmoothProfile::operator()(double z) const {
  if (!support_.contains(z)) return 0.0;
  return impl_->value(z);
}

double SmoothProfile::eval(double z, int k) const {
  if (k < 0 || k > impl_->max_order()) {
    std::ostringstream msg;
    msg << "derivative order " << k << " not available (max " << impl_->max_order() << ")";
    throw DomainError(msg.str());
  }
  if (!support_.contains(z)) return 0.0;
  if (k == 0) return impl_->value(z);
  return impl_->jet(z)[k];
}

Jet SmoothProfile::jet(double z) const {
  if (!support_.contains(z)) return Jet{};
  return impl_->jet(z);
}

namespace {

void require_interval(double z0, double z1, const char* who) {
  if (!(z0 < z1)) {
    std::ostringstream msg;
    msg << who << ": invalid interval [" << z0 << ", " << z1 << "]";
    throw ConfigError(msg.str());
  }
}

class ConstantImpl final : public ProfileImpl {
 public:
  explicit ConstantImpl(double v) : v_(v) {}
  Jet jet(double) const override { return Jet::constant(v_); }
  double value(double) const override { return v_; }
  int max_order() const override { return Jet::kOrder; }

 private:
  double v_;
};

// Derivatives of e(t) = exp(-1/t): e^(n)(t) = e(t) P_n(t) / t^(2n),
// P_1 = 1, P_{n+1} = t^2 P_n' + (1 - 2 n t) P_n.
Jet flat_exp_jet(double t) {
  Jet j;
  if (t <= 0.0) return j;
  const double e = std::exp(-1.0 / t);
  if (e == 0.0) return j;
  const double t2 = t * t;
  const double p2 = 1.0 - 2.0 * t;
  const double p3 = (6.0 * t - 6.0) * t + 1.0;
  const double p4 = ((-24.0 * t + 36.0) * t - 12.0) * t + 1.0;
  j.d[0] = e;
  j.d[1] = e / t2;
  j.d[2] = e * p2 / (t2 * t2);
  j.d[3] = e * p3 / (t2 * t2 * t2);
  j.d[4] = e * p4 / (t2 * t2 * t2 * t2);
  return j;
}

// Smoothstep in the unit variable t.
Jet unit_step_jet(double t) {
  Jet s;
  if (t <= 0.0) return s;
  if (t >= 1.0) {
    s.d[0] = 1.0;
    return s;
  }
  if (t > 0.5) {
    // s(t) = 1 - s(1 - t); the quotient below loses the derivatives to cancellation here.
    Jet r = unit_step_jet(1.0 - t);
    r.d[0] = 1.0 - r.d[0];
    r.d[2] = -r.d[2];
    r.d[4] = -r.d[4];
    return r;
  }
  const Jet f = flat_exp_jet(t);
  Jet g = flat_exp_jet(1.0 - t);
  g.d[1] = -g.d[1];
  g.d[3] = -g.d[3];
  return f / (f + g);
}

double unit_step_value(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  if (t > 0.5) return 1.0 - unit_step_value(1.0 - t);
  const double f = std::exp(-1.0 / t);
  const double g = std::exp(-1.0 / (1.0 - t));
  return f / (f + g);
}

Jet rescale(Jet j, double dt_dz) {
  double f = dt_dz;
  for (int k = 1; k <= Jet::kOrder; ++k) {
    j.d[k] *= f;
    f *= dt_dz;
  }
  return j;
}

class SmoothstepImpl final : public ProfileImpl {
 public:
  SmoothstepImpl(double z0, double z1) : z0_(z0), inv_len_(1.0 / (z1 - z0)) {}
  Jet jet(double z) const override { return rescale(unit_step_jet((z - z0_) * inv_len_), inv_len_); }
  double value(double z) const override { return unit_step_value((z - z0_) * inv_len_); }
  int max_order() const override { return Jet::kOrder; }

 private:
  double z0_;
  double inv_len_;
};

class BumpImpl final : public ProfileImpl {
 public:
  BumpImpl(double z0, double z1, double amplitude)
      : mid_(0.5 * (z0 + z1)), scale_(2.0 / (z1 - z0)), amplitude_(amplitude) {}

  Jet jet(double z) const override {
    const double t = (z - mid_) * scale_;
    Jet out;
    if (!(std::abs(t) < 1.0)) return out;
    const double w = 1.0 - t * t;
    const double e = std::exp(1.0 - 1.0 / w);
    if (e == 0.0) return out;
    // g(t) = 1 - 1/w and its derivatives.
    const double iw = 1.0 / w;
    const double iw2 = iw * iw, iw3 = iw2 * iw, iw4 = iw3 * iw, iw5 = iw4 * iw;
    const double t2 = t * t;
    Jet g;
    g.d[0] = 1.0 - iw;
    g.d[1] = -2.0 * t * iw2;
    g.d[2] = -2.0 * iw2 - 8.0 * t2 * iw3;
    g.d[3] = -24.0 * t * iw3 - 48.0 * t2 * t * iw4;
    g.d[4] = -24.0 * iw3 - 288.0 * t2 * iw4 - 384.0 * t2 * t2 * iw5;
    const double ae = amplitude_ * e;
    return rescale(compose({ae, ae, ae, ae, ae}, g), scale_);
  }

  double value(double z) const override {
    const double t = (z - mid_) * scale_;
    if (!(std::abs(t) < 1.0)) return 0.0;
    return amplitude_ * std::exp(1.0 - 1.0 / (1.0 - t * t));
  }

  int max_order() const override { return Jet::kOrder; }

 private:
  double mid_;
  double scale_;
  double amplitude_;
};

class RampImpl final : public ProfileImpl {
 public:
  RampImpl(double v_lo, double v_hi, double z0, double z1)
      : v_lo_(v_lo), v_hi_(v_hi), z0_(z0), z1_(z1), inv_len_(1.0 / (z1 - z0)) {}

  Jet jet(double z) const override {
    if (z <= z0_) return Jet::constant(v_lo_);
    if (z >= z1_) return Jet::constant(v_hi_);
    const Jet s = rescale(unit_step_jet((z - z0_) * inv_len_), inv_len_);
    Jet out = (v_hi_ - v_lo_) * s;
    out.d[0] = blend(s.d[0]);
    return out;
  }

  double value(double z) const override {
    if (z <= z0_) return v_lo_;
    if (z >= z1_) return v_hi_;
    return blend(unit_step_value((z - z0_) * inv_len_));
  }

  int max_order() const override { return Jet::kOrder; }

 private:
  // Exact at both plateaus: s = 0 gives v_lo, s = 1 gives v_hi.
  double blend(double s) const { return v_lo_ * (1.0 - s) + v_hi_ * s; }

  double v_lo_, v_hi_, z0_, z1_, inv_len_;
};

class PolynomialImpl final : public ProfileImpl {
 public:
  explicit PolynomialImpl(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

  Jet jet(double z) const override {
    Jet out;
    for (int k = 0; k <= Jet::kOrder; ++k) {
      // Horner on the k-th derivative's coefficients.
      double acc = 0.0;
      for (std::size_t n = c_.size(); n-- > static_cast<std::size_t>(k);) {
        double falling = 1.0;
        for (int m = 0; m < k; ++m) falling *= static_cast<double>(n - m);
        acc = acc * z + falling * c_[n];
      }
      out.d[k] = acc;
    }
    return out;
  }

  int max_order() const override { return Jet::kOrder; }

 private:
  std::vector<double> c_;
};

}  // namespace

SmoothProfile polynomial(std::vector<double> coeffs) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  return SmoothProfile(std::make_shared<PolynomialImpl>(std::move(coeffs)), Support::entire_line(),
                       Jet::kOrder);
}

SmoothProfile SmoothProfile::constant(double value) {
  const Support sup = value == 0.0 ? Support{0.0, 0.0} : Support::entire_line();
  return SmoothProfile(std::make_shared<ConstantImpl>(value), sup, Jet::kOrder);
}

SmoothProfile smoothstep(double z0, double z1) {
  require_interval(z0, z1, "smoothstep");
  return SmoothProfile(std::make_shared<SmoothstepImpl>(z0, z1),
                       Support{z0, std::numeric_limits<double>::infinity()}, Jet::kOrder);
}

SmoothProfile bump(double z0, double z1, double amplitude) {
  require_interval(z0, z1, "bump");
  const Support sup = amplitude == 0.0 ? Support{z0, z0} : Support{z0, z1};
  return SmoothProfile(std::make_shared<BumpImpl>(z0, z1, amplitude), sup, Jet::kOrder);
}

SmoothProfile ramp(double v_lo, double v_hi, double z0, double z1) {
  require_interval(z0, z1, "ramp");
  constexpr double inf = std::numeric_limits<double>::infinity();
  Support sup = Support::entire_line();
  if (v_lo == 0.0 && v_hi == 0.0) sup = Support{z0, z0};
  else if (v_lo == 0.0) sup = Support{z0, inf};
  else if (v_hi == 0.0) sup = Support{-inf, z1};
  return SmoothProfile(std::make_shared<RampImpl>(v_lo, v_hi, z0, z1), sup, Jet::kOrder);
}

QuadratureResult integrate_with_error(const std::function<double(double)>& f, double a, double b,
                                      double rel_tol, Support support, int max_depth,
                                      double abs_tol) {
  if (!(rel_tol > 0.0)) throw ConfigError("integrate: rel_tol must be positive");
  if (!(abs_tol >= 0.0)) throw ConfigError("integrate: abs_tol must be non-negative");
  if (std::isnan(a) || std::isnan(b) || a > b) throw ConfigError("integrate: requires a <= b");
  double lo = std::max(a, support.lo);
  double hi = std::min(b, support.hi);
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw ConfigError("integrate: infinite limit requires an integrand with bounded support");
  }
  if (lo >= hi) return {};

  // Global adaptive bisection on the segment with the largest error estimate. Boost's own
  // recursive driver demands local relative accuracy on every piece, which never settles on
  // the exp(-1/t) tails of the flat profiles and costs 2^depth evaluations there.
  struct Segment {
    double a, b, value, error, l1;
    int depth;
  };
  auto rule = [&f](double a, double b, int depth) {
    Segment s{a, b, 0.0, 0.0, 0.0, depth};
    s.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &s.error, &s.l1);
    return s;
  };
  auto worse = [](const Segment& x, const Segment& y) { return x.error < y.error; };
  std::priority_queue<Segment, std::vector<Segment>, decltype(worse)> open(worse);
  std::vector<Segment> done;
  open.push(rule(lo, hi, 0));
  double error = open.top().error;
  double l1 = open.top().l1;
  constexpr std::size_t kMaxSegments = 4096;
  while (!open.empty() && error > std::max(rel_tol * l1, abs_tol) && open.size() + done.size() < kMaxSegments) {
    const Segment s = open.top();
    open.pop();
    const double mid = 0.5 * (s.a + s.b);
    if (s.depth >= max_depth || !(s.a < mid && mid < s.b)) {
      done.push_back(s);
      continue;
    }
    const Segment left = rule(s.a, mid, s.depth + 1);
    const Segment right = rule(mid, s.b, s.depth + 1);
    error += left.error + right.error - s.error;
    l1 += left.l1 + right.l1 - s.l1;
    open.push(left);
    open.push(right);
  }
  while (!open.empty()) {
    done.push_back(open.top());
    open.pop();
  }
  std::sort(done.begin(), done.end(), [](const Segment& x, const Segment& y) { return x.a < y.a; });
  double value = 0.0;
  error = 0.0;
  l1 = 0.0;
  for (const auto& s : done) {
    value += s.value;
    error += s.error;
    l1 += s.l1;
  }
  if (!std::isfinite(value) || error > std::max(rel_tol * l1, abs_tol)) {
    std::ostringstream msg;
    msg << "integrate: no convergence on [" << lo << ", " << hi << "] with " << done.size()
        << " segments (estimate " << value << ", error " << error << ")";
    throw QuadratureError(msg.str(), value, error);
  }
  return {value, error};
}

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 Support support, double abs_tol) {
  return integrate_with_error(f, a, b, rel_tol, support, kDefaultQuadDepth, abs_tol).value;
}

double integrate(const SmoothProfile& f, double a, double b, double rel_tol) {
  return integrate([&f](double z) { return f(z); }, a, b, rel_tol, f.support());
}

}  // namespace steady
