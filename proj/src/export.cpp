#include "steady/export.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "steady/error.hpp"
#include "steady/verify.hpp"

namespace steady {

namespace {

void put(std::ostream& out, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  out << buf;
}

std::ofstream open_out(const std::filesystem::path& file) {
  if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot write " + file.string());
  return out;
}

void vtk_scalars(std::ostream& out, const char* name, const std::vector<double>& v) {
  out << "SCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
  for (double x : v) {
    put(out, x);
    out << '\n';
  }
}

}  // namespace

FieldTable sample_fields(const SteadyFields& sol, const CellGrid& grid) {
  if (sol.dim() != 2) throw ConfigError("field export needs a 2D steady state");
  FieldTable t;
  t.grid = grid;
  const std::size_t n = grid.size();
  for (auto* v : {&t.x, &t.y, &t.rho, &t.ux, &t.uy, &t.s, &t.pi}) v->reserve(n);
  for (int j = 0; j < grid.ny; ++j) {
    for (int i = 0; i < grid.nx; ++i) {
      const Vec3 p = grid.center(i, j);
      const FieldValues f = sol.values(p);
      t.x.push_back(p[0]);
      t.y.push_back(p[1]);
      t.rho.push_back(f.rho);
      t.ux.push_back(f.u[0]);
      t.uy.push_back(f.u[1]);
      t.s.push_back(f.s);
      t.pi.push_back(f.pi);
    }
  }
  const Grid2D nodes{grid.x0, grid.y0, grid.h, grid.nx, grid.ny};
  t.residual = residual_fd_fields(sol, nodes, 2);
  return t;
}

void write_fields_csv(const std::filesystem::path& file, const FieldTable& t) {
  auto out = open_out(file);
  out << kFieldCsvHeader << '\n';
  for (std::size_t k = 0; k < t.rows(); ++k) {
    const double row[] = {t.x[k],  t.y[k], t.rho[k],         t.ux[k],          t.uy[k],         t.s[k],
                          t.pi[k], t.residual[0][k], t.residual[1][k], t.residual[2][k], t.residual[3][k]};
    for (std::size_t c = 0; c < std::size(row); ++c) {
      if (c) out << ',';
      put(out, row[c]);
    }
    out << '\n';
  }
}

void write_fields_vtk(const std::filesystem::path& file, const FieldTable& t) {
  auto out = open_out(file);
  out << "# vtk DataFile Version 3.0\n";
  out << "steady compressible Euler fields\n";
  out << "ASCII\n";
  out << "DATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << t.grid.nx << ' ' << t.grid.ny << " 1\n";
  out << "ORIGIN ";
  put(out, t.grid.x0);
  out << ' ';
  put(out, t.grid.y0);
  out << " 0\nSPACING ";
  put(out, t.grid.h);
  out << ' ';
  put(out, t.grid.h);
  out << " 1\n";
  out << "POINT_DATA " << t.rows() << '\n';
  vtk_scalars(out, "rho", t.rho);
  out << "VECTORS u double\n";
  for (std::size_t k = 0; k < t.rows(); ++k) {
    put(out, t.ux[k]);
    out << ' ';
    put(out, t.uy[k]);
    out << " 0\n";
  }
  vtk_scalars(out, "s", t.s);
  vtk_scalars(out, "pi", t.pi);
  vtk_scalars(out, "res_mass", t.residual[0]);
  out << "VECTORS res_mom double\n";
  for (std::size_t k = 0; k < t.rows(); ++k) {
    put(out, t.residual[1][k]);
    out << ' ';
    put(out, t.residual[2][k]);
    out << " 0\n";
  }
  vtk_scalars(out, "res_entropy", t.residual[3]);
}

FieldTable read_fields_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IngestError("cannot open " + file.string());
  std::string line;
  if (!std::getline(in, line) || line != kFieldCsvHeader) {
    throw IngestError(file.string() + ": unexpected header");
  }
  FieldTable t;
  std::vector<double>* cols[] = {&t.x,  &t.y,  &t.rho,         &t.ux,          &t.uy,          &t.s,
                                 &t.pi, &t.residual[0], &t.residual[1], &t.residual[2], &t.residual[3]};
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const char* p = line.data();
    const char* end = p + line.size();
    for (std::size_t c = 0; c < std::size(cols); ++c) {
      double v = 0.0;
      auto [next, ec] = std::from_chars(p, end, v);
      if (ec != std::errc()) throw IngestError(file.string() + ": bad number on line " + std::to_string(lineno));
      cols[c]->push_back(v);
      p = next;
      if (c + 1 < std::size(cols)) {
        if (p == end || *p != ',') throw IngestError(file.string() + ": too few columns on line " + std::to_string(lineno));
        ++p;
      }
    }
    if (p != end) throw IngestError(file.string() + ": too many columns on line " + std::to_string(lineno));
  }
  return t;
}

}  // namespace steady
