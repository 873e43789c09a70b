#include "hydrodg/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hydrodg {

void write_vtk(const Mesh2D& mesh, const RefBlocks& rb,
               const std::vector<VtkField>& fields, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("write_vtk: cannot open " + path);
  const int K = mesh.num_elements();
  const Vec2 corners[4] = {{0.0, 0.0}, {1.0, 0.0}, {1.0, 1.0}, {0.0, 1.0}};

  out << "# vtk DataFile Version 3.0\n";
  out << "hydrodg field output\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << 4 * K << " double\n";
  char buf[128];
  for (int k = 0; k < K; ++k)
    for (const auto& corner : corners) {
      const Vec2 x = mesh.mapping[k].map_point(corner);
      std::snprintf(buf, sizeof(buf), "%.9g %.9g 0\n", x[0], x[1]);
      out << buf;
    }
  out << "CELLS " << K << " " << 5 * K << "\n";
  for (int k = 0; k < K; ++k)
    out << "4 " << 4 * k << " " << 4 * k + 1 << " " << 4 * k + 2 << " " << 4 * k + 3
        << "\n";
  out << "CELL_TYPES " << K << "\n";
  for (int k = 0; k < K; ++k) out << "9\n";

  if (!fields.empty()) {
    out << "POINT_DATA " << 4 * K << "\n";
    for (const auto& field : fields) {
      out << "SCALARS " << field.name << " double 1\n";
      out << "LOOKUP_TABLE default\n";
      for (int k = 0; k < K; ++k) {
        for (const auto& corner : corners) {
          double value = 0.0;
          if (field.one_dimensional) {
            const int kbar = mesh.column_of[k];
            for (int i = 0; i < field.coeffs->block_size; ++i)
              value += field.coeffs->at(kbar, i) * rb.basis1d.eval(i, corner[0]);
          } else {
            for (int i = 0; i < field.coeffs->block_size; ++i)
              value += field.coeffs->at(k, i) * rb.basis.eval(i, corner);
          }
          std::snprintf(buf, sizeof(buf), "%.9g\n", value);
          out << buf;
        }
      }
    }
  }
  if (!out) throw ConfigError("write_vtk: write failure on " + path);
}

double ErrorReport::eoc(std::size_t i, const std::string& unknown) const {
  const double prev = levels[i - 1].err.at(unknown);
  const double cur = levels[i].err.at(unknown);
  return std::log(prev / cur) / std::log(2.0);
}

std::string format_csv(const ErrorReport& report) {
  std::ostringstream out;
  out << "p,j";
  for (const auto& name : report.unknowns) out << ",Err(" << name << "),EOC(" << name << ")";
  out << "\n";
  char buf[64];
  for (std::size_t i = 0; i < report.levels.size(); ++i) {
    const auto& level = report.levels[i];
    out << report.degree << "," << level.j;
    for (const auto& name : report.unknowns) {
      std::snprintf(buf, sizeof(buf), "%.6e", level.err.at(name));
      out << "," << buf;
      if (i == 0) {
        out << ",---";
      } else {
        std::snprintf(buf, sizeof(buf), "%.2f", report.eoc(i, name));
        out << "," << buf;
      }
    }
    out << "\n";
  }
  return out.str();
}

void write_csv(const ErrorReport& report, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("write_csv: cannot open " + path);
  out << format_csv(report);
  if (!out) throw ConfigError("write_csv: write failure on " + path);
}

}  // namespace hydrodg
