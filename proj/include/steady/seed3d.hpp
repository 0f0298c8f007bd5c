#pragma once

#include <array>
#include <filesystem>
#include <memory>
#include <vector>

#include "steady/base.hpp"

namespace steady {

struct StructuredGrid3D {
  Vec3 origin{};
  Vec3 spacing{1.0, 1.0, 1.0};
  std::array<int, 3> dims{1, 1, 1};

  std::size_t size() const {
    return static_cast<std::size_t>(dims[0]) * dims[1] * dims[2];
  }
  std::size_t index(int i, int j, int k) const {
    return (static_cast<std::size_t>(k) * dims[1] + j) * dims[0] + i;
  }
  Vec3 node(int i, int j, int k) const {
    return {origin[0] + i * spacing[0], origin[1] + j * spacing[1], origin[2] + k * spacing[2]};
  }
};

// Channels per node: U (3), gradU (9, row-major dU_i/dx_j), P, gradP (3).
inline constexpr int kSeedChannels = 16;
using SeedNode = std::array<double, kSeedChannels>;

// Sampled 3D seed with trilinear interpolation. Never verified upstream: orthogonality and
// divergence hold only to the sampling accuracy of the file.
class SampledSeed3D final : public BaseSolution {
 public:
  SampledSeed3D(StructuredGrid3D grid, std::vector<SeedNode> nodes, double p_inf,
                double support_radius);

  BasePoint eval(const Vec3& x) const override;
  int dim() const override { return 3; }
  double p_inf() const override { return p_inf_; }
  double p_min() const override { return p_min_; }
  double support_radius() const override { return support_radius_; }
  bool verified_upstream() const override { return false; }

  const StructuredGrid3D& grid() const { return grid_; }

 private:
  StructuredGrid3D grid_;
  std::vector<SeedNode> nodes_;
  double p_inf_;
  double p_min_;
  double support_radius_;
};

// Accepts CSV-with-header (".csv") or legacy-VTK STRUCTURED_POINTS (".vtk"); throws IngestError.
std::shared_ptr<const SampledSeed3D> ingest_seed3d(const std::filesystem::path& file);
std::shared_ptr<const SampledSeed3D> read_seed_csv(std::istream& in);
std::shared_ptr<const SampledSeed3D> read_seed_vtk(std::istream& in);

// Sample any base solution on a grid in the seed-file formats.
void write_seed_csv(std::ostream& out, const BaseSolution& base, const StructuredGrid3D& grid);
void write_seed_vtk(std::ostream& out, const BaseSolution& base, const StructuredGrid3D& grid);

}  // namespace steady
