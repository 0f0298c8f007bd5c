#pragma once

#include <array>
#include <filesystem>
#include <string>
#include <vector>

#include "steady/evolve.hpp"
#include "steady/fields.hpp"

namespace steady {

// Cell-centered samples of a 2D steady state plus its order-2 FD residual fields.
struct FieldTable {
  CellGrid grid;
  std::vector<double> x, y, rho, ux, uy, s, pi;
  std::array<std::vector<double>, 4> residual;  // mass, momx, momy, entropy

  std::size_t rows() const { return x.size(); }
};

inline constexpr const char* kFieldCsvHeader = "x,y,rho,ux,uy,s,pi,res_mass,res_momx,res_momy,res_entropy";

FieldTable sample_fields(const SteadyFields& sol, const CellGrid& grid);

// Numbers are written with 17 significant digits so that re-reading is exact.
void write_fields_csv(const std::filesystem::path& file, const FieldTable& t);
void write_fields_vtk(const std::filesystem::path& file, const FieldTable& t);
FieldTable read_fields_csv(const std::filesystem::path& file);

}  // namespace steady
