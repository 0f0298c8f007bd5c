#pragma once

#include <array>
#include <cstddef>
#include <vector>

#include "steady/eos.hpp"
#include "steady/fields.hpp"
#include "steady/kernels.hpp"
#include "steady/verify.hpp"

namespace steady {

// Cell-centered grid: cell (i, j) has center (x0 + i h, y0 + j h).
struct CellGrid {
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 1.0;
  int nx = 1;
  int ny = 1;

  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  Vec3 center(int i, int j) const { return {x0 + i * h, y0 + j * h, 0.0}; }

  // Square [-half_width, half_width]^2 split into cells of size h; half_width is rounded up
  // to a multiple of h.
  static CellGrid square(double half_width, double h);
};

// Conserved variables (rho, rho u_x, rho u_y, E) per cell, E = pi/(gamma-1) + rho |u|^2 / 2.
struct ConservativeState {
  CellGrid grid;
  EosParams eos;
  std::array<std::vector<double>, 4> q;
  std::array<double, 4> farfield{};  // Dirichlet ghost state
  double time = 0.0;
};

ConservativeState discretize(const SteadyFields& sol, const CellGrid& grid, const EosParams& eos);

// Throws NumericalError naming the first cell with rho <= 0 or internal energy <= 0.
void check_admissible(const ConservativeState& s);

double total(const ConservativeState& s, int component);  // sum q h^2, pairwise

// Second-order SSP Runge-Kutta with Rusanov fluxes and minmod-limited linear
// reconstruction; Dirichlet far-field ghost cells. Owns its work buffers.
class FvSolver {
 public:
  explicit FvSolver(const CellGrid& grid, const kernels::FvKernels& k = kernels::active_kernels());

  // Advances in place by one step with dt = cfl h / max(|u| + c), capped at max_dt.
  // Returns the step taken.
  double step(ConservativeState& s, double cfl, double max_dt);

  const kernels::FvKernels& kernels() const { return k_; }

 private:
  void rhs(const ConservativeState& s, const std::array<std::vector<double>, 4>& q,
           std::array<std::vector<double>, 4>& out);

  const kernels::FvKernels& k_;
  CellGrid grid_;
  std::size_t px_, py_;  // padded extents (two ghost layers per side)
  std::array<std::vector<double>, 4> pad_, xm_, xp_, ym_, yp_, fx_, fy_, l0_, q1_;
};

// One step on a copy; 0 < cfl <= 0.9.
ConservativeState step(const ConservativeState& state, double cfl);

struct DriftNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double linf = 0.0;
};

struct DriftReport {
  CellGrid grid;
  double cfl = 0.0;
  std::size_t steps = 0;
  std::vector<double> times;
  std::vector<DriftNorms> rho, mom, energy;
  double mass_initial = 0.0, mass_final = 0.0;
  double energy_initial = 0.0, energy_final = 0.0;
  double boundary_entropy_error = 0.0;  // max |s - s_inf| over the outer cell ring, all records
  double min_density = 0.0;
  double min_internal_energy = 0.0;
  const char* kernels = "";

  double mass_change() const { return std::abs(mass_final - mass_initial) / std::abs(mass_initial); }
  double energy_change() const {
    return std::abs(energy_final - energy_initial) / std::abs(energy_initial);
  }
};

// Advances to t_end recording drift norms (area-weighted) against the initial state at
// t = 0, every record_every, and t_end. Blow-up errors carry the time and cell.
DriftReport run(const ConservativeState& initial, double t_end, double cfl, double record_every,
                const kernels::FvKernels& k = kernels::active_kernels());

}  // namespace steady
