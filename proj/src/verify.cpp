#include "steady/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "steady/error.hpp"
#include "steady/smoothfn.hpp"

namespace steady {

namespace {

// Fixed-order pairwise summation so that norms do not depend on any evaluation schedule.
double pairwise_sum(std::span<const double> v) {
  if (v.size() <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t half = v.size() / 2;
  return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double frobenius(const Mat3& m) {
  double s = 0.0;
  for (const auto& row : m)
    for (double v : row) s += v * v;
  return std::sqrt(s);
}

struct PointResidual {
  double mass;
  Vec3 mom;
  double entropy;
  double scale_mass, scale_mom, scale_entropy;
};

PointResidual analytic_at(const FieldPoint& f) {
  const double div_u = trace(f.grad_u);
  const double grho_u = dot(f.grad_rho, f.u);
  const Vec3 conv = convect(f.grad_u, f.u);
  PointResidual r;
  r.mass = grho_u + f.rho * div_u;
  for (int i = 0; i < 3; ++i) {
    r.mom[i] = f.u[i] * grho_u + f.rho * conv[i] + f.rho * f.u[i] * div_u + f.grad_pi[i];
  }
  r.entropy = f.s * grho_u + f.rho * dot(f.grad_s, f.u) + f.rho * f.s * div_u;
  const double un = norm(f.u), gu = frobenius(f.grad_u), grho = norm(f.grad_rho);
  r.scale_mass = grho * un + std::abs(f.rho) * gu;
  r.scale_mom = grho * un * un + 2.0 * std::abs(f.rho) * un * gu + norm(f.grad_pi);
  r.scale_entropy = std::abs(f.s) * grho * un + std::abs(f.rho) * norm(f.grad_s) * un +
                    std::abs(f.rho * f.s) * gu;
  return r;
}

std::vector<std::string> equation_names(int dim) {
  if (dim == 3) return {"mass", "momx", "momy", "momz", "entropy"};
  return {"mass", "momx", "momy", "entropy"};
}

}  // namespace

Grid2D Grid2D::covering(double radius, double h, double margin) {
  if (!(h > 0.0)) throw ConfigError("grid.h must be positive");
  if (!(radius >= 0.0) || !(margin >= 0.0)) throw ConfigError("grid radius and margin must be >= 0");
  const int n = static_cast<int>(std::ceil((radius + margin) / h - 1e-9));
  Grid2D g;
  g.h = h;
  g.x0 = g.y0 = -n * h;
  g.nx = g.ny = 2 * n + 1;
  return g;
}

const EquationResidual& ResidualReport::equation(const std::string& name) const {
  for (const auto& e : equations)
    if (e.name == name) return e;
  throw ConfigError("residual report has no equation '" + name + "'");
}

double ResidualReport::max_relative_linf() const {
  double m = 0.0;
  for (const auto& e : equations) m = std::max(m, e.relative_linf());
  return m;
}

std::array<std::vector<double>, 4> residual_fd_fields(const SteadyFields& sol, const Grid2D& grid,
                                                      int order) {
  if (order != 2 && order != 4) throw ConfigError("residual_fd: order must be 2 or 4");
  const int w = order / 2;
  if (grid.nx < 2 * w + 1 || grid.ny < 2 * w + 1) {
    throw ConfigError("residual_fd: grid too small for the difference stencil");
  }
  const std::size_t n = grid.size();
  std::array<std::vector<double>, 4> fx, fy, res;
  for (int e = 0; e < 4; ++e) {
    fx[e].resize(n);
    fy[e].resize(n);
    res[e].assign(n, 0.0);
  }
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
      const FieldValues v = sol.values(grid.node(i, j));
      const double mx = v.rho * v.u[0], my = v.rho * v.u[1];
      fx[0][k] = mx;
      fy[0][k] = my;
      fx[1][k] = mx * v.u[0] + v.pi;
      fy[1][k] = mx * v.u[1];
      fx[2][k] = my * v.u[0];
      fy[2][k] = my * v.u[1] + v.pi;
      fx[3][k] = mx * v.s;
      fy[3][k] = my * v.s;
    }
  const double inv2h = 1.0 / (2.0 * grid.h), inv12h = 1.0 / (12.0 * grid.h);
  const std::size_t sx = 1, sy = static_cast<std::size_t>(grid.nx);
  auto diff = [&](const std::vector<double>& f, std::size_t k, std::size_t s) {
    if (order == 2) return (f[k + s] - f[k - s]) * inv2h;
    return (8.0 * (f[k + s] - f[k - s]) - (f[k + 2 * s] - f[k - 2 * s])) * inv12h;
  };
  for (int j = w; j < grid.ny - w; ++j)
    for (int i = w; i < grid.nx - w; ++i) {
      const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
      for (int e = 0; e < 4; ++e) res[e][k] = diff(fx[e], k, sx) + diff(fy[e], k, sy);
    }
  return res;
}

ResidualReport residual_fd(const SteadyFields& sol, const Grid2D& grid, int order) {
  const auto res = residual_fd_fields(sol, grid, order);
  const int w = order / 2;
  ResidualReport rep;
  rep.method = order == 2 ? "fd2" : "fd4";
  rep.grid = grid;
  rep.verified_upstream = sol.verified_upstream();
  rep.points = static_cast<std::size_t>(grid.nx - 2 * w) * (grid.ny - 2 * w);

  // Field scales: flux magnitudes over the characteristic length.
  const double len = std::max(sol.support_radius(), grid.h);
  std::array<double, 4> flux_max{};
  for (int j = 0; j < grid.ny; j += std::max(1, grid.ny / 64))
    for (int i = 0; i < grid.nx; i += std::max(1, grid.nx / 64)) {
      const FieldValues v = sol.values(grid.node(i, j));
      const double un = norm(v.u);
      flux_max[0] = std::max(flux_max[0], std::abs(v.rho) * un);
      flux_max[1] = std::max(flux_max[1], std::abs(v.rho) * un * un + std::abs(v.pi));
      flux_max[2] = flux_max[1];
      flux_max[3] = std::max(flux_max[3], std::abs(v.rho * v.s) * un);
    }

  const auto names = equation_names(2);
  std::vector<double> sq;
  sq.reserve(rep.points);
  for (int e = 0; e < 4; ++e) {
    EquationResidual er;
    er.name = names[e];
    sq.clear();
    for (int j = w; j < grid.ny - w; ++j)
      for (int i = w; i < grid.nx - w; ++i) {
        const double r = res[e][static_cast<std::size_t>(j) * grid.nx + i];
        er.norms.linf = std::max(er.norms.linf, std::abs(r));
        sq.push_back(r * r);
      }
    er.norms.l2 = std::sqrt(grid.h * grid.h * pairwise_sum(sq));
    er.scale = flux_max[e] / len;
    rep.equations.push_back(er);
  }
  return rep;
}

ResidualReport residual_analytic(const SteadyFields& sol, std::span<const Vec3> points) {
  const int dim = sol.dim();
  const auto names = equation_names(dim);
  const std::size_t neq = names.size();
  std::vector<std::vector<double>> sq(neq);
  std::vector<double> linf(neq, 0.0), scale(neq, 0.0);
  for (auto& v : sq) v.reserve(points.size());
  for (const Vec3& x : points) {
    const PointResidual r = analytic_at(sol.eval(x));
    std::vector<double> vals{r.mass};
    std::vector<double> scales{r.scale_mass};
    for (int i = 0; i < dim; ++i) {
      vals.push_back(r.mom[i]);
      scales.push_back(r.scale_mom);
    }
    vals.push_back(r.entropy);
    scales.push_back(r.scale_entropy);
    for (std::size_t e = 0; e < neq; ++e) {
      linf[e] = std::max(linf[e], std::abs(vals[e]));
      scale[e] = std::max(scale[e], scales[e]);
      sq[e].push_back(vals[e] * vals[e]);
    }
  }
  ResidualReport rep;
  rep.method = "analytic";
  rep.points = points.size();
  rep.verified_upstream = sol.verified_upstream();
  for (std::size_t e = 0; e < neq; ++e) {
    EquationResidual er;
    er.name = names[e];
    er.norms.linf = linf[e];
    er.norms.l2 = points.empty() ? 0.0 : std::sqrt(pairwise_sum(sq[e]) / points.size());
    er.scale = scale[e];
    rep.equations.push_back(er);
  }
  return rep;
}

TransportTerms transport_terms(const SteadyFields& sol, const Vec3& x) {
  const FieldPoint f = sol.eval(x);
  TransportTerms t;
  t.div_u = trace(f.grad_u);
  t.grad_rho_dot_u = dot(f.grad_rho, f.u);
  t.rho_div_u = f.rho * t.div_u;
  t.grad_s_dot_u = dot(f.grad_s, f.u);
  const double un = norm(f.u);
  t.scale = std::max({norm(f.grad_rho) * un, std::abs(f.rho) * frobenius(f.grad_u),
                      norm(f.grad_s) * un, frobenius(f.grad_u)});
  return t;
}

std::vector<Vec3> random_points(int dim, double extent, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-extent, extent);
  std::vector<Vec3> pts(count);
  for (auto& p : pts) {
    p[0] = dist(rng);
    p[1] = dist(rng);
    p[2] = dim == 3 ? dist(rng) : 0.0;
  }
  return pts;
}

VirialReport virial_check(const SteadyFields& sol, double quad_tol) {
  if (sol.dim() != 2) throw ConfigError("virial_check: only planar states are supported");
  VirialReport rep;
  const double R = sol.support_radius();
  const double pi_inf = sol.farfield().pi;
  if (R > 0.0) {
    const double inner_tol = 0.1 * quad_tol;
    // The integrands have flat tails towards the edge of the support, where relative accuracy
    // is unattainable and irrelevant; absolute tolerances come from a coarse sup estimate.
    auto over_disk = [&](auto&& integrand) {
      constexpr int kProbe = 64;
      double sup = 0.0;
      for (int i = 0; i <= kProbe; ++i) {
        for (int j = 0; j <= kProbe; ++j) {
          const Vec3 p{R * (2.0 * i / kProbe - 1.0), R * (2.0 * j / kProbe - 1.0), 0.0};
          if (p[0] * p[0] + p[1] * p[1] <= R * R) sup = std::max(sup, std::abs(integrand(p)));
        }
      }
      const double outer_abs = quad_tol * sup * 4.0 * R * R;
      const double inner_abs = inner_tol * sup * 2.0 * R;
      return integrate([&](double x) {
        const double half = std::sqrt(std::max(R * R - x * x, 0.0));
        if (half == 0.0) return 0.0;
        return integrate([&](double y) { return integrand(Vec3{x, y, 0.0}); }, -half, half, inner_tol,
                         Support::entire_line(), inner_abs);
      }, -R, R, quad_tol, Support::entire_line(), outer_abs);
    };
    rep.kinetic = over_disk([&](const Vec3& p) {
      const FieldValues v = sol.values(p);
      return v.rho * dot(v.u, v.u);
    });
    rep.pressure_deficit = over_disk([&](const Vec3& p) { return sol.values(p).pi - pi_inf; });
  }
  rep.identity_residual = std::abs(rep.kinetic + 2.0 * rep.pressure_deficit);
  rep.trivial = rep.kinetic == 0.0 && rep.pressure_deficit == 0.0;
  const double tol = 1e-8 * std::max({rep.kinetic, std::abs(rep.pressure_deficit), 1.0});
  rep.pass = rep.identity_residual <= tol &&
             (rep.trivial || (rep.kinetic > 0.0 && rep.pressure_deficit < 0.0));
  return rep;
}

FarfieldReport farfield_check(const SteadyFields& sol, double radius, std::size_t samples,
                              std::uint64_t seed) {
  FarfieldReport rep;
  rep.radius = radius;
  const FieldValues far = sol.farfield();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> rdist(radius, 2.0 * radius);
  std::uniform_real_distribution<double> adist(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> zdist(-1.0, 1.0);
  auto record = [&rep](const Vec3& x, const char* field) {
    ++rep.violation_count;
    if (rep.violations.size() < 32) rep.violations.push_back({x, field});
  };
  for (std::size_t n = 0; n < samples; ++n) {
    const double r = rdist(rng);
    Vec3 x;
    if (sol.dim() == 3) {
      const double cz = zdist(rng), th = adist(rng);
      const double sz = std::sqrt(1.0 - cz * cz);
      x = {r * sz * std::cos(th), r * sz * std::sin(th), r * cz};
    } else {
      const double th = adist(rng);
      x = {r * std::cos(th), r * std::sin(th), 0.0};
    }
    // Rounding of the polar map may place x a hair inside the requested radius.
    if (norm(x) < radius) continue;
    ++rep.checked;
    for (const FieldValues& v : {sol.values(x), sol.eval(x).values()}) {
      if (v.rho != far.rho) record(x, "rho");
      if (v.s != far.s) record(x, "s");
      if (v.pi != far.pi) record(x, "pi");
      if (v.u[0] != 0.0 || v.u[1] != 0.0 || v.u[2] != 0.0) record(x, "u");
    }
  }
  rep.pass = rep.violation_count == 0;
  return rep;
}

DeficitReport pressure_deficit_check(const BaseSolution& base, std::uint64_t seed) {
  DeficitReport rep;
  rep.p_min = base.p_min();
  rep.p_inf = base.p_inf();
  const int dim = base.dim();
  if (!(rep.p_min < rep.p_inf)) {
    rep.trivial = true;
    rep.pass = false;
    return rep;
  }
  const double R = base.support_radius();
  // Pressure minimizer: the origin when it attains p_min, else the best node of a coarse grid.
  Vec3 center{};
  if (base.pressure(center) != rep.p_min) {
    double best = base.pressure(center);
    constexpr int kN = 40;
    for (int i = 0; i <= kN; ++i)
      for (int j = 0; j <= kN; ++j)
        for (int k = 0; k <= (dim == 3 ? kN : 0); ++k) {
          const Vec3 x{-R + 2 * R * i / kN, -R + 2 * R * j / kN, dim == 3 ? -R + 2 * R * k / kN : 0.0};
          const double p = base.pressure(x);
          if (p < best) {
            best = p;
            center = x;
          }
        }
  }
  rep.center = center;
  // Grow the ball while P stays strictly below p_inf on its boundary.
  constexpr int kRadii = 100, kDirs = 16;
  double ball = 0.0;
  for (int k = 1; k <= kRadii; ++k) {
    const double r = R * k / kRadii;
    bool ok = true;
    for (int d = 0; d < kDirs && ok; ++d) {
      const double th = 2.0 * M_PI * d / kDirs;
      const Vec3 x{center[0] + r * std::cos(th), center[1] + r * std::sin(th), center[2]};
      ok = base.pressure(x) < rep.p_inf;
    }
    if (!ok) break;
    ball = r;
  }
  rep.ball_radius = ball;
  if (ball == 0.0) return rep;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  constexpr std::size_t kSamples = 100;
  bool all_below = true;
  while (rep.samples < kSamples) {
    Vec3 d{dist(rng), dist(rng), dim == 3 ? dist(rng) : 0.0};
    if (norm(d) >= 1.0) continue;
    const Vec3 x{center[0] + ball * d[0], center[1] + ball * d[1], center[2] + ball * d[2]};
    ++rep.samples;
    if (!(base.pressure(x) < rep.p_inf)) all_below = false;
  }
  rep.pass = all_below;
  return rep;
}

double fitted_order(std::span<const double> h, std::span<const double> err) {
  if (h.size() != err.size() || h.size() < 2) throw ConfigError("fitted_order: need >= 2 pairs");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) {
    const double lx = std::log(h[i]);
    const double ly = std::log(err[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

const char* corruption_name(Corruption c) {
  switch (c) {
    case Corruption::VelocityScale: return "velocity_scale";
    case Corruption::DensityOffset: return "density_offset";
    case Corruption::EntropyFlip: return "entropy_flip";
  }
  return "unknown";
}

namespace {

class CorruptedSolution final : public SteadyFields {
 public:
  CorruptedSolution(std::shared_ptr<const LiftedSolution> sol, Corruption kind)
      : sol_(std::move(sol)), kind_(kind) {
    const double R = sol_->support_radius();
    radius_ = R;
    if (kind_ == Corruption::DensityOffset && R > 0.0) {
      radius_ = 1.2 * R;
      window_ = smoothstep(R * R, radius_ * radius_);
    }
    farfield_ = sol_->farfield();
    if (kind_ == Corruption::EntropyFlip) {
      farfield_.s = flip(farfield_.s);
      farfield_.pi = pressure(sol_->eos(), farfield_.rho, farfield_.s);
    }
  }

  FieldPoint eval(const Vec3& x) const override {
    FieldPoint f = sol_->eval(x);
    apply(x, f);
    return f;
  }

  FieldValues values(const Vec3& x) const override {
    FieldPoint f;
    const FieldValues v = sol_->values(x);
    f.rho = v.rho;
    f.u = v.u;
    f.s = v.s;
    f.pi = v.pi;
    apply(x, f);
    return f.values();
  }

  int dim() const override { return sol_->dim(); }
  double support_radius() const override { return radius_; }
  FieldValues farfield() const override { return farfield_; }

 private:
  double flip(double s) const { return sol_->ramps().s_0 + sol_->ramps().s_inf - s; }

  void apply(const Vec3& x, FieldPoint& f) const {
    const EosParams& eos = sol_->eos();
    switch (kind_) {
      case Corruption::VelocityScale:
        for (int i = 0; i < 3; ++i) {
          f.u[i] *= 1.1;
          for (int j = 0; j < 3; ++j) f.grad_u[i][j] *= 1.1;
        }
        return;
      case Corruption::DensityOffset: {
        if (!window_) return;
        const double q = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
        const Jet w = window_->jet(q);
        f.rho += 0.1 * (1.0 - w[0]);
        for (int i = 0; i < 3; ++i) f.grad_rho[i] += -0.1 * w[1] * 2.0 * x[i];
        break;
      }
      case Corruption::EntropyFlip:
        f.s = flip(f.s);
        for (int i = 0; i < 3; ++i) f.grad_s[i] = -f.grad_s[i];
        break;
    }
    f.pi = pressure(eos, f.rho, f.s);
    const PressurePartials dp = pressure_partials(eos, f.rho, f.s);
    for (int i = 0; i < 3; ++i) f.grad_pi[i] = dp.dpi_drho * f.grad_rho[i] + dp.dpi_ds * f.grad_s[i];
  }

  std::shared_ptr<const LiftedSolution> sol_;
  Corruption kind_;
  double radius_ = 0.0;
  std::optional<SmoothProfile> window_;
  FieldValues farfield_;
};

}  // namespace

std::shared_ptr<const SteadyFields> corrupt(std::shared_ptr<const LiftedSolution> sol, Corruption c) {
  if (!sol) throw ConfigError("corrupt: missing solution");
  return std::make_shared<const CorruptedSolution>(std::move(sol), c);
}

}  // namespace steady
