#include "steady/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "steady/error.hpp"

namespace steady {

namespace {

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

std::array<double, 4> conserved(const FieldValues& v, double gamma) {
  const double mx = v.rho * v.u[0], my = v.rho * v.u[1];
  const double kinetic = 0.5 * v.rho * (v.u[0] * v.u[0] + v.u[1] * v.u[1]);
  return {v.rho, mx, my, v.pi / (gamma - 1.0) + kinetic};
}

double internal_energy_density(double rho, double mx, double my, double E) {
  return E - 0.5 * (mx * mx + my * my) / rho;
}

}  // namespace

CellGrid CellGrid::square(double half_width, double h) {
  if (!(h > 0.0)) throw ConfigError("grid.h must be positive");
  if (!(half_width > 0.0)) throw ConfigError("evolution domain half width must be positive");
  const int n = static_cast<int>(std::ceil(half_width / h - 1e-9));
  CellGrid g;
  g.h = h;
  g.nx = g.ny = 2 * n;
  g.x0 = g.y0 = -n * h + 0.5 * h;
  return g;
}

ConservativeState discretize(const SteadyFields& sol, const CellGrid& grid, const EosParams& eos) {
  eos.validate();
  if (sol.dim() != 2) throw ConfigError("discretize: only planar states can be evolved");
  ConservativeState s;
  s.grid = grid;
  s.eos = eos;
  for (auto& c : s.q) c.resize(grid.size());
  for (int j = 0; j < grid.ny; ++j)
    for (int i = 0; i < grid.nx; ++i) {
      const auto u = conserved(sol.values(grid.center(i, j)), eos.gamma);
      const std::size_t k = static_cast<std::size_t>(j) * grid.nx + i;
      for (int c = 0; c < 4; ++c) s.q[c][k] = u[c];
    }
  s.farfield = conserved(sol.farfield(), eos.gamma);
  check_admissible(s);
  return s;
}

void check_admissible(const ConservativeState& s) {
  const CellGrid& g = s.grid;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double rho = s.q[0][k];
    const bool ok = rho > 0.0 && internal_energy_density(rho, s.q[1][k], s.q[2][k], s.q[3][k]) > 0.0;
    if (!ok) {
      const int i = static_cast<int>(k % g.nx), j = static_cast<int>(k / g.nx);
      const Vec3 c = g.center(i, j);
      std::ostringstream msg;
      msg << "inadmissible state (rho <= 0 or internal energy <= 0) at t = " << s.time << " in cell ("
          << i << ", " << j << ") centered at (" << c[0] << ", " << c[1] << ")";
      throw NumericalError(msg.str());
    }
  }
}

double total(const ConservativeState& s, int component) {
  return s.grid.h * s.grid.h * pairwise_sum(s.q[component].data(), s.q[component].size());
}

FvSolver::FvSolver(const CellGrid& grid, const kernels::FvKernels& k)
    : k_(k), grid_(grid), px_(grid.nx + 4), py_(grid.ny + 4) {
  const std::size_t npad = px_ * py_;
  for (int c = 0; c < 4; ++c) {
    pad_[c].assign(npad, 0.0);
    xm_[c].assign(npad, 0.0);
    xp_[c].assign(npad, 0.0);
    ym_[c].assign(npad, 0.0);
    yp_[c].assign(npad, 0.0);
    fx_[c].assign(static_cast<std::size_t>(grid.nx + 1) * grid.ny, 0.0);
    fy_[c].assign(static_cast<std::size_t>(grid.ny + 1) * grid.nx, 0.0);
    l0_[c].assign(grid.size(), 0.0);
    q1_[c].assign(grid.size(), 0.0);
  }
}

void FvSolver::rhs(const ConservativeState& s, const std::array<std::vector<double>, 4>& q,
                   std::array<std::vector<double>, 4>& out) {
  const std::size_t nx = grid_.nx, ny = grid_.ny, px = px_;
  for (int c = 0; c < 4; ++c) {
    double* p = pad_[c].data();
    std::fill(p, p + 2 * px, s.farfield[c]);
    std::fill(p + (ny + 2) * px, p + (ny + 4) * px, s.farfield[c]);
    for (std::size_t j = 0; j < ny; ++j) {
      double* row = p + (j + 2) * px;
      row[0] = row[1] = row[nx + 2] = row[nx + 3] = s.farfield[c];
      std::copy_n(q[c].data() + j * nx, nx, row + 2);
    }
  }

  // x direction: reconstruct interior rows including one ghost column per side.
  for (std::size_t j = 2; j < ny + 2; ++j) {
    const std::size_t base = j * px + 1;
    for (int c = 0; c < 4; ++c) {
      const double* p = pad_[c].data();
      k_.reconstruct(p + base - 1, p + base, p + base + 1, xm_[c].data() + base, xp_[c].data() + base,
                     nx + 2);
    }
    kernels::FaceStates fs{};
    double* flux[4];
    for (int c = 0; c < 4; ++c) {
      fs.left[c] = xp_[c].data() + base;       // cells 1 .. nx+1 (padded)
      fs.right[c] = xm_[c].data() + base + 1;  // cells 2 .. nx+2
      flux[c] = fx_[c].data() + (j - 2) * (nx + 1);
    }
    k_.rusanov(fs, flux, nx + 1, s.eos.gamma, 0);
  }

  // y direction: interior columns, rows including one ghost row per side.
  for (std::size_t j = 1; j < ny + 3; ++j) {
    const std::size_t base = j * px + 2;
    for (int c = 0; c < 4; ++c) {
      const double* p = pad_[c].data();
      k_.reconstruct(p + base - px, p + base, p + base + px, ym_[c].data() + base, yp_[c].data() + base,
                     nx);
    }
  }
  for (std::size_t g = 0; g <= ny; ++g) {
    kernels::FaceStates fs{};
    double* flux[4];
    for (int c = 0; c < 4; ++c) {
      fs.left[c] = yp_[c].data() + (g + 1) * px + 2;
      fs.right[c] = ym_[c].data() + (g + 2) * px + 2;
      flux[c] = fy_[c].data() + g * nx;
    }
    k_.rusanov(fs, flux, nx, s.eos.gamma, 1);
  }

  const double inv_h = 1.0 / grid_.h;
  for (int c = 0; c < 4; ++c) {
    const double* fx = fx_[c].data();
    const double* fy = fy_[c].data();
    double* o = out[c].data();
    for (std::size_t j = 0; j < ny; ++j) {
      const double* fxr = fx + j * (nx + 1);
      const double* fyb = fy + j * nx;
      const double* fyt = fy + (j + 1) * nx;
      double* orow = o + j * nx;
      for (std::size_t i = 0; i < nx; ++i) {
        orow[i] = -((fxr[i + 1] - fxr[i]) + (fyt[i] - fyb[i])) * inv_h;
      }
    }
  }
}

double FvSolver::step(ConservativeState& s, double cfl, double max_dt) {
  if (!(cfl > 0.0 && cfl <= 0.9)) {
    std::ostringstream msg;
    msg << "step: cfl must lie in (0, 0.9] (got " << cfl << ")";
    throw ConfigError(msg.str());
  }
  const std::size_t n = grid_.size();
  const double* qs[4] = {s.q[0].data(), s.q[1].data(), s.q[2].data(), s.q[3].data()};
  double speed = k_.max_wave_speed(qs, n, s.eos.gamma);
  const double* far[4] = {&s.farfield[0], &s.farfield[1], &s.farfield[2], &s.farfield[3]};
  speed = std::max(speed, k_.max_wave_speed(far, 1, s.eos.gamma));
  if (!std::isfinite(speed) || !(speed > 0.0)) {
    check_admissible(s);
    throw NumericalError("step: non-finite wave speed");
  }
  const double dt = std::min(cfl * grid_.h / speed, max_dt);

  rhs(s, s.q, l0_);
  for (int c = 0; c < 4; ++c) k_.combine(q1_[c].data(), s.q[c].data(), s.q[c].data(), l0_[c].data(), 0.0, 1.0, dt, n);
  rhs(s, q1_, l0_);
  for (int c = 0; c < 4; ++c) k_.combine(s.q[c].data(), s.q[c].data(), q1_[c].data(), l0_[c].data(), 0.5, 0.5, dt, n);
  s.time += dt;
  check_admissible(s);
  return dt;
}

ConservativeState step(const ConservativeState& state, double cfl) {
  ConservativeState next = state;
  FvSolver solver(state.grid);
  solver.step(next, cfl, std::numeric_limits<double>::infinity());
  return next;
}

namespace {

std::array<DriftNorms, 3> drift(const ConservativeState& s, const ConservativeState& init) {
  const double area = s.grid.h * s.grid.h;
  const std::size_t n = s.grid.size();
  std::array<DriftNorms, 3> out{};
  std::vector<double> a1(n), a2(n);
  auto finish = [&](DriftNorms& d) {
    d.l1 = area * pairwise_sum(a1.data(), n);
    d.l2 = std::sqrt(area * pairwise_sum(a2.data(), n));
  };
  for (int which = 0; which < 3; ++which) {
    DriftNorms& d = out[which];
    for (std::size_t k = 0; k < n; ++k) {
      double e;
      if (which == 0) {
        e = std::abs(s.q[0][k] - init.q[0][k]);
      } else if (which == 1) {
        e = std::hypot(s.q[1][k] - init.q[1][k], s.q[2][k] - init.q[2][k]);
      } else {
        e = std::abs(s.q[3][k] - init.q[3][k]);
      }
      a1[k] = e;
      a2[k] = e * e;
      d.linf = std::max(d.linf, e);
    }
    finish(d);
  }
  return out;
}

double entropy_of(const EosParams& eos, double rho, double mx, double my, double E) {
  const double pi = (eos.gamma - 1.0) * internal_energy_density(rho, mx, my, E);
  return entropy_from(eos, rho, pi);
}

}  // namespace

DriftReport run(const ConservativeState& initial, double t_end, double cfl, double record_every,
                const kernels::FvKernels& k) {
  if (!(t_end > 0.0)) throw ConfigError("run: t_end must be positive");
  if (!(record_every > 0.0)) throw ConfigError("run: record_every must be positive");
  if (!(cfl > 0.0 && cfl <= 0.9)) throw ConfigError("run: cfl must lie in (0, 0.9]");

  DriftReport rep;
  rep.grid = initial.grid;
  rep.cfl = cfl;
  rep.kernels = k.name;
  rep.mass_initial = total(initial, 0);
  rep.energy_initial = total(initial, 3);
  rep.min_density = std::numeric_limits<double>::infinity();
  rep.min_internal_energy = std::numeric_limits<double>::infinity();

  const EosParams& eos = initial.eos;
  const auto& ff = initial.farfield;
  const double s_far = entropy_of(eos, ff[0], ff[1], ff[2], ff[3]);
  const CellGrid& g = initial.grid;

  ConservativeState s = initial;
  auto record = [&] {
    rep.times.push_back(s.time);
    const auto d = drift(s, initial);
    rep.rho.push_back(d[0]);
    rep.mom.push_back(d[1]);
    rep.energy.push_back(d[2]);
    for (std::size_t c = 0; c < g.size(); ++c) {
      rep.min_density = std::min(rep.min_density, s.q[0][c]);
      rep.min_internal_energy = std::min(
          rep.min_internal_energy, internal_energy_density(s.q[0][c], s.q[1][c], s.q[2][c], s.q[3][c]));
    }
    auto ring = [&](int i, int j) {
      const std::size_t c = static_cast<std::size_t>(j) * g.nx + i;
      const double sv = entropy_of(eos, s.q[0][c], s.q[1][c], s.q[2][c], s.q[3][c]);
      rep.boundary_entropy_error = std::max(rep.boundary_entropy_error, std::abs(sv - s_far));
    };
    for (int i = 0; i < g.nx; ++i) {
      ring(i, 0);
      ring(i, g.ny - 1);
    }
    for (int j = 0; j < g.ny; ++j) {
      ring(0, j);
      ring(g.nx - 1, j);
    }
  };

  record();
  FvSolver solver(g, k);
  double next_record = std::min(record_every, t_end);
  while (s.time < t_end) {
    const double remaining = next_record - s.time;
    solver.step(s, cfl, remaining);
    ++rep.steps;
    // Land exactly on record times to avoid a sliver step.
    if (next_record - s.time <= 1e-12 * std::max(1.0, t_end)) {
      s.time = next_record;
      record();
      if (next_record >= t_end) break;
      next_record = std::min(next_record + record_every, t_end);
    }
  }
  rep.mass_final = total(s, 0);
  rep.energy_final = total(s, 3);
  return rep;
}

}  // namespace steady
