#include "steady/seed3d.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <map>
#include <sstream>
#include <string>

#include "steady/error.hpp"

namespace steady {

namespace {

const std::array<const char*, 19> kCsvColumns = {
    "x",     "y",     "z",     "Ux",    "Uy",    "Uz",    "dUxdx", "dUxdy", "dUxdz", "dUydx",
    "dUydy", "dUydz", "dUzdx", "dUzdy", "dUzdz", "P",     "dPdx",  "dPdy",  "dPdz"};

SeedNode pack(const BasePoint& b) {
  SeedNode n{};
  for (int i = 0; i < 3; ++i) n[i] = b.U[i];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) n[3 + 3 * i + j] = b.gradU[i][j];
  n[12] = b.P;
  for (int i = 0; i < 3; ++i) n[13 + i] = b.gradP[i];
  return n;
}

BasePoint unpack(const SeedNode& n) {
  BasePoint b;
  for (int i = 0; i < 3; ++i) b.U[i] = n[i];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b.gradU[i][j] = n[3 + 3 * i + j];
  b.P = n[12];
  for (int i = 0; i < 3; ++i) b.gradP[i] = n[13 + i];
  return b;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& tok, const std::string& context) {
  try {
    std::size_t used = 0;
    const double v = std::stod(tok, &used);
    if (used != tok.size()) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw IngestError("seed file: bad number '" + tok + "' in " + context);
  }
}

// Unique sorted coordinates along one axis, checked for uniform spacing.
void axis_from_coords(std::vector<double> c, double& origin, double& spacing, int& count,
                      const char* axis) {
  std::sort(c.begin(), c.end());
  std::vector<double> u;
  for (double v : c) {
    if (u.empty() || std::abs(v - u.back()) > 1e-12 * std::max(1.0, std::abs(v))) u.push_back(v);
  }
  origin = u.front();
  count = static_cast<int>(u.size());
  if (count == 1) {
    spacing = 1.0;
    return;
  }
  spacing = (u.back() - u.front()) / (count - 1);
  for (int i = 1; i < count; ++i) {
    const double d = u[i] - u[i - 1];
    if (std::abs(d - spacing) > 1e-6 * spacing) {
      throw IngestError(std::string("seed file: non-uniform grid along ") + axis);
    }
  }
}

}  // namespace

SampledSeed3D::SampledSeed3D(StructuredGrid3D grid, std::vector<SeedNode> nodes, double p_inf,
                             double support_radius)
    : grid_(grid), nodes_(std::move(nodes)), p_inf_(p_inf), support_radius_(support_radius) {
  if (nodes_.size() != grid_.size()) throw IngestError("seed file: node count does not match grid");
  if (!std::isfinite(p_inf_)) throw IngestError("seed file: p_inf missing or not finite");
  if (!(support_radius_ >= 0.0)) throw IngestError("seed file: support_radius missing or negative");
  for (int a = 0; a < 3; ++a) {
    if (grid_.dims[a] < 1 || !(grid_.spacing[a] > 0.0)) throw IngestError("seed file: bad grid");
  }
  p_min_ = p_inf_;
  for (const SeedNode& n : nodes_) p_min_ = std::min(p_min_, n[12]);
}

BasePoint SampledSeed3D::eval(const Vec3& x) const {
  BasePoint far;
  far.P = p_inf_;
  if (norm(x) >= support_radius_) return far;
  std::array<int, 3> i0{};
  std::array<double, 3> w{};
  for (int a = 0; a < 3; ++a) {
    const double t = (x[a] - grid_.origin[a]) / grid_.spacing[a];
    const int n = grid_.dims[a];
    if (n == 1) {
      i0[a] = 0;
      w[a] = 0.0;
      continue;
    }
    if (t < 0.0 || t > n - 1) return far;
    i0[a] = std::min(static_cast<int>(std::floor(t)), n - 2);
    w[a] = t - i0[a];
  }
  SeedNode acc{};
  for (int c = 0; c < 8; ++c) {
    const int di = c & 1, dj = (c >> 1) & 1, dk = (c >> 2) & 1;
    if ((di && grid_.dims[0] == 1) || (dj && grid_.dims[1] == 1) || (dk && grid_.dims[2] == 1)) continue;
    const double wt = (di ? w[0] : 1.0 - w[0]) * (dj ? w[1] : 1.0 - w[1]) * (dk ? w[2] : 1.0 - w[2]);
    const SeedNode& n = nodes_[grid_.index(i0[0] + di, i0[1] + dj, i0[2] + dk)];
    for (int ch = 0; ch < kSeedChannels; ++ch) acc[ch] += wt * n[ch];
  }
  return unpack(acc);
}

std::shared_ptr<const SampledSeed3D> read_seed_csv(std::istream& in) {
  double p_inf = std::numeric_limits<double>::quiet_NaN();
  double support_radius = std::numeric_limits<double>::quiet_NaN();
  std::string line;
  bool have_header = false;
  std::vector<int> column_of(kCsvColumns.size(), -1);
  std::size_t ncols = 0;
  std::vector<std::array<double, 19>> rows;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = trim(line.substr(1, colon - 1));
      const std::string val = trim(line.substr(colon + 1));
      if (key == "p_inf") p_inf = parse_double(val, "p_inf");
      else if (key == "support_radius") support_radius = parse_double(val, "support_radius");
      continue;
    }
    std::vector<std::string> toks;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) toks.push_back(trim(tok));
    if (!have_header) {
      ncols = toks.size();
      for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
        const auto it = std::find(toks.begin(), toks.end(), kCsvColumns[c]);
        if (it == toks.end()) {
          throw IngestError(std::string("seed csv: missing column '") + kCsvColumns[c] + "'");
        }
        column_of[c] = static_cast<int>(it - toks.begin());
      }
      have_header = true;
      continue;
    }
    if (toks.size() != ncols) {
      throw IngestError("seed csv: wrong field count on line " + std::to_string(line_no));
    }
    std::array<double, 19> row{};
    for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
      row[c] = parse_double(toks[column_of[c]], "line " + std::to_string(line_no));
    }
    rows.push_back(row);
  }
  if (!have_header) throw IngestError("seed csv: missing header row");
  if (rows.empty()) throw IngestError("seed csv: no data rows");

  StructuredGrid3D grid;
  const char* axis_names[3] = {"x", "y", "z"};
  for (int a = 0; a < 3; ++a) {
    std::vector<double> c;
    c.reserve(rows.size());
    for (const auto& r : rows) c.push_back(r[a]);
    axis_from_coords(std::move(c), grid.origin[a], grid.spacing[a], grid.dims[a], axis_names[a]);
  }
  if (grid.size() != rows.size()) throw IngestError("seed csv: rows do not form a structured grid");
  std::vector<SeedNode> nodes(grid.size());
  std::vector<char> seen(grid.size(), 0);
  for (const auto& r : rows) {
    std::array<int, 3> ijk{};
    for (int a = 0; a < 3; ++a) {
      const double t = (r[a] - grid.origin[a]) / grid.spacing[a];
      ijk[a] = static_cast<int>(std::lround(t));
      if (std::abs(t - ijk[a]) > 1e-6) throw IngestError("seed csv: node off the structured grid");
    }
    const std::size_t idx = grid.index(ijk[0], ijk[1], ijk[2]);
    if (seen[idx]) throw IngestError("seed csv: duplicate grid node");
    seen[idx] = 1;
    for (int ch = 0; ch < kSeedChannels; ++ch) nodes[idx][ch] = r[3 + ch];
  }
  return std::make_shared<const SampledSeed3D>(grid, std::move(nodes), p_inf, support_radius);
}

std::shared_ptr<const SampledSeed3D> read_seed_vtk(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# vtk DataFile Version", 0) != 0) {
    throw IngestError("seed vtk: missing '# vtk DataFile Version' header");
  }
  std::getline(in, line);  // title
  if (!std::getline(in, line) || trim(line) != "ASCII") throw IngestError("seed vtk: only ASCII supported");

  StructuredGrid3D grid;
  bool have_dims = false, have_origin = false, have_spacing = false;
  std::map<std::string, std::vector<double>> arrays;
  std::map<std::string, int> components;
  std::size_t npoints = 0;

  std::string tok;
  auto next = [&](const char* what) {
    if (!(in >> tok)) throw IngestError(std::string("seed vtk: unexpected end of file reading ") + what);
    return tok;
  };
  auto next_int = [&](const char* what) {
    const std::string t = next(what);
    const double v = parse_double(t, what);
    if (v != std::floor(v) || v < 0) throw IngestError(std::string("seed vtk: bad integer for ") + what);
    return static_cast<long>(v);
  };
  auto read_values = [&](const std::string& name, std::size_t count) {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = parse_double(next(name.c_str()), name);
    return v;
  };

  while (in >> tok) {
    if (tok == "DATASET") {
      if (next("DATASET") != "STRUCTURED_POINTS") throw IngestError("seed vtk: dataset must be STRUCTURED_POINTS");
    } else if (tok == "DIMENSIONS") {
      for (int a = 0; a < 3; ++a) grid.dims[a] = static_cast<int>(next_int("DIMENSIONS"));
      have_dims = true;
    } else if (tok == "ORIGIN") {
      for (int a = 0; a < 3; ++a) grid.origin[a] = parse_double(next("ORIGIN"), "ORIGIN");
      have_origin = true;
    } else if (tok == "SPACING" || tok == "ASPECT_RATIO") {
      for (int a = 0; a < 3; ++a) grid.spacing[a] = parse_double(next("SPACING"), "SPACING");
      have_spacing = true;
    } else if (tok == "POINT_DATA") {
      npoints = static_cast<std::size_t>(next_int("POINT_DATA"));
    } else if (tok == "FIELD") {
      next("FIELD name");
      const long narrays = next_int("FIELD count");
      for (long a = 0; a < narrays; ++a) {
        const std::string name = next("FIELD array name");
        const long ncomp = next_int("FIELD components");
        const long ntuples = next_int("FIELD tuples");
        next("FIELD type");
        arrays[name] = read_values(name, static_cast<std::size_t>(ncomp * ntuples));
        components[name] = static_cast<int>(ncomp);
      }
    } else if (tok == "SCALARS") {
      const std::string name = next("SCALARS name");
      next("SCALARS type");
      std::string t = next("SCALARS");
      long ncomp = 1;
      if (t != "LOOKUP_TABLE") {
        ncomp = static_cast<long>(parse_double(t, "SCALARS components"));
        t = next("LOOKUP_TABLE");
      }
      if (t != "LOOKUP_TABLE") throw IngestError("seed vtk: SCALARS without LOOKUP_TABLE");
      next("LOOKUP_TABLE name");
      arrays[name] = read_values(name, npoints * static_cast<std::size_t>(ncomp));
      components[name] = static_cast<int>(ncomp);
    } else if (tok == "VECTORS") {
      const std::string name = next("VECTORS name");
      next("VECTORS type");
      arrays[name] = read_values(name, npoints * 3);
      components[name] = 3;
    } else {
      throw IngestError("seed vtk: unexpected token '" + tok + "'");
    }
  }
  if (!have_dims || !have_origin || !have_spacing) {
    throw IngestError("seed vtk: DIMENSIONS, ORIGIN and SPACING are required");
  }
  if (npoints != grid.size()) throw IngestError("seed vtk: POINT_DATA count does not match DIMENSIONS");

  auto scalar_meta = [&](const char* name) {
    const auto it = arrays.find(name);
    if (it == arrays.end() || it->second.size() != 1) {
      throw IngestError(std::string("seed vtk: missing metadata '") + name + "'");
    }
    return it->second[0];
  };
  auto channel = [&](const char* name, int ncomp) -> const std::vector<double>& {
    const auto it = arrays.find(name);
    if (it == arrays.end()) throw IngestError(std::string("seed vtk: missing array '") + name + "'");
    if (components[name] != ncomp || it->second.size() != npoints * ncomp) {
      throw IngestError(std::string("seed vtk: array '") + name + "' has the wrong shape");
    }
    return it->second;
  };
  const auto& U = channel("U", 3);
  const auto& gradU = channel("gradU", 9);
  const auto& P = channel("P", 1);
  const auto& gradP = channel("gradP", 3);
  std::vector<SeedNode> nodes(npoints);
  for (std::size_t n = 0; n < npoints; ++n) {
    for (int c = 0; c < 3; ++c) nodes[n][c] = U[3 * n + c];
    for (int c = 0; c < 9; ++c) nodes[n][3 + c] = gradU[9 * n + c];
    nodes[n][12] = P[n];
    for (int c = 0; c < 3; ++c) nodes[n][13 + c] = gradP[3 * n + c];
  }
  return std::make_shared<const SampledSeed3D>(grid, std::move(nodes), scalar_meta("p_inf"),
                                               scalar_meta("support_radius"));
}

std::shared_ptr<const SampledSeed3D> ingest_seed3d(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IngestError("seed file: cannot open " + file.string());
  const std::string ext = file.extension().string();
  if (ext == ".csv") return read_seed_csv(in);
  if (ext == ".vtk") return read_seed_vtk(in);
  throw IngestError("seed file: unknown extension '" + ext + "' (expected .csv or .vtk)");
}

void write_seed_csv(std::ostream& out, const BaseSolution& base, const StructuredGrid3D& grid) {
  out << std::setprecision(17);
  out << "# p_inf: " << base.p_inf() << "\n";
  out << "# support_radius: " << base.support_radius() << "\n";
  for (std::size_t c = 0; c < kCsvColumns.size(); ++c) out << (c ? "," : "") << kCsvColumns[c];
  out << "\n";
  for (int k = 0; k < grid.dims[2]; ++k)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int i = 0; i < grid.dims[0]; ++i) {
        const Vec3 x = grid.node(i, j, k);
        const SeedNode n = pack(base.eval(x));
        out << x[0] << "," << x[1] << "," << x[2];
        for (double v : n) out << "," << v;
        out << "\n";
      }
}

void write_seed_vtk(std::ostream& out, const BaseSolution& base, const StructuredGrid3D& grid) {
  std::vector<SeedNode> nodes;
  nodes.reserve(grid.size());
  for (int k = 0; k < grid.dims[2]; ++k)
    for (int j = 0; j < grid.dims[1]; ++j)
      for (int i = 0; i < grid.dims[0]; ++i) nodes.push_back(pack(base.eval(grid.node(i, j, k))));
  out << std::setprecision(17);
  out << "# vtk DataFile Version 3.0\nsteady seed field\nASCII\nDATASET STRUCTURED_POINTS\n";
  out << "DIMENSIONS " << grid.dims[0] << " " << grid.dims[1] << " " << grid.dims[2] << "\n";
  out << "ORIGIN " << grid.origin[0] << " " << grid.origin[1] << " " << grid.origin[2] << "\n";
  out << "SPACING " << grid.spacing[0] << " " << grid.spacing[1] << " " << grid.spacing[2] << "\n";
  out << "FIELD metadata 2\n";
  out << "p_inf 1 1 double\n" << base.p_inf() << "\n";
  out << "support_radius 1 1 double\n" << base.support_radius() << "\n";
  out << "POINT_DATA " << grid.size() << "\n";
  out << "VECTORS U double\n";
  for (const auto& n : nodes) out << n[0] << " " << n[1] << " " << n[2] << "\n";
  out << "SCALARS P double 1\nLOOKUP_TABLE default\n";
  for (const auto& n : nodes) out << n[12] << "\n";
  out << "VECTORS gradP double\n";
  for (const auto& n : nodes) out << n[13] << " " << n[14] << " " << n[15] << "\n";
  out << "FIELD gradients 1\ngradU 9 " << grid.size() << " double\n";
  for (const auto& n : nodes) {
    for (int c = 0; c < 9; ++c) out << (c ? " " : "") << n[3 + c];
    out << "\n";
  }
}

}  // namespace steady
