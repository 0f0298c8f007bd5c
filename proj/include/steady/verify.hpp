#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "steady/base.hpp"
#include "steady/eos.hpp"
#include "steady/fields.hpp"
#include "steady/lift.hpp"

namespace steady {

// Uniform node grid, spacing h on both axes.
struct Grid2D {
  double x0 = 0.0;
  double y0 = 0.0;
  double h = 1.0;
  int nx = 1;
  int ny = 1;

  double x(int i) const { return x0 + i * h; }
  double y(int j) const { return y0 + j * h; }
  Vec3 node(int i, int j) const { return {x(i), y(j), 0.0}; }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }

  // Square grid centered at the origin covering [-radius - margin, radius + margin]^2
  // with nodes on multiples of h (nested under h -> h/2 when margin is a multiple of h).
  static Grid2D covering(double radius, double h, double margin);
};

struct Norms {
  double linf = 0.0;
  double l2 = 0.0;
};

struct EquationResidual {
  std::string name;  // mass, momx, momy, [momz,] entropy
  Norms norms;
  double scale = 0.0;  // field scale used for relative tolerances

  double relative_linf() const { return norms.linf == 0.0 ? 0.0 : norms.linf / scale; }
};

struct ResidualReport {
  std::string method;  // analytic | fd2 | fd4
  std::optional<Grid2D> grid;
  std::vector<EquationResidual> equations;
  std::size_t points = 0;
  std::uint64_t seed = 0;
  bool verified_upstream = true;

  const EquationResidual& equation(const std::string& name) const;
  double max_relative_linf() const;
};

// Conservative-form residuals of the steady system from pointwise values only, using
// central differences of order 2 or 4 on the interior nodes of the grid. L2 is the
// grid-weighted norm sqrt(h^2 sum r^2).
ResidualReport residual_fd(const SteadyFields& sol, const Grid2D& grid, int order);

// Same residual fields on every node (zero on stencil-truncated boundary nodes), in the
// order mass, momx, momy, entropy; each vector has grid.size() entries, x fastest.
std::array<std::vector<double>, 4> residual_fd_fields(const SteadyFields& sol, const Grid2D& grid,
                                                      int order);

// Residuals from the exact gradients; L2 is the root mean square over the points.
ResidualReport residual_analytic(const SteadyFields& sol, std::span<const Vec3> points);

// Individual terms of the mass and entropy balances, each of which vanishes on its own
// for a lifted solution.
struct TransportTerms {
  double grad_rho_dot_u;
  double rho_div_u;
  double grad_s_dot_u;
  double div_u;
  double scale;
};
TransportTerms transport_terms(const SteadyFields& sol, const Vec3& x);

// Uniform points in the cube/square [-extent, extent]^dim.
std::vector<Vec3> random_points(int dim, double extent, std::size_t count, std::uint64_t seed);

struct VirialReport {
  double kinetic = 0.0;           // K = int rho |u|^2
  double pressure_deficit = 0.0;  // D = int (pi - pi_inf)
  double identity_residual = 0.0; // |K + d D|
  bool pass = false;              // identity within tolerance, and K > 0, D < 0 unless trivial
  bool trivial = false;
};

// Tensorized adaptive quadrature over the support disk of a 2D steady state.
VirialReport virial_check(const SteadyFields& sol, double quad_tol = 1e-10);

struct FarfieldViolation {
  Vec3 x;
  std::string field;
};

struct FarfieldReport {
  bool pass = true;
  double radius = 0.0;
  std::size_t checked = 0;
  std::vector<FarfieldViolation> violations;  // first 32 at most
  std::size_t violation_count = 0;
};

// Bitwise comparison with the far-field state at `samples` points with |x| in [radius, 2 radius].
FarfieldReport farfield_check(const SteadyFields& sol, double radius, std::size_t samples = 1000,
                              std::uint64_t seed = 42);

struct DeficitReport {
  bool trivial = false;
  bool pass = false;
  double p_min = 0.0;
  double p_inf = 0.0;
  Vec3 center{};
  double ball_radius = 0.0;
  std::size_t samples = 0;
};

// p_min < p_inf and P < p_inf on a ball around a pressure minimizer.
DeficitReport pressure_deficit_check(const BaseSolution& base, std::uint64_t seed = 42);

// Least-squares slope of log(err) against log(h).
double fitted_order(std::span<const double> h, std::span<const double> err);

enum class Corruption { VelocityScale, DensityOffset, EntropyFlip };
const char* corruption_name(Corruption c);

// Canned perturbations of a lifted solution: u * 1.1; rho + 0.1 on the support disk
// (smoothly cut off just outside it); s~ reflected to s_0 + s_inf - s~.
std::shared_ptr<const SteadyFields> corrupt(std::shared_ptr<const LiftedSolution> sol, Corruption c);

}  // namespace steady
