#ifndef HYDRODG_OUTPUT_HPP
#define HYDRODG_OUTPUT_HPP

#include <map>
#include <string>
#include <vector>

#include "hydrodg/linalg.hpp"
#include "hydrodg/mesh.hpp"
#include "hydrodg/refblocks.hpp"

namespace hydrodg {

/// A named DG field attached to a 2D mesh for visualization. 1D fields are
/// evaluated at the x1 coordinate of each corner.
struct VtkField {
  std::string name;
  const CoeffVector* coeffs = nullptr;
  bool one_dimensional = false;
};

/// Legacy ASCII UNSTRUCTURED_GRID with quad cells; DG fields are written as
/// per-vertex one-sided traces (4 points per cell, no point sharing).
void write_vtk(const Mesh2D& mesh, const RefBlocks& rb,
               const std::vector<VtkField>& fields, const std::string& path);

/// Per-level error/EOC table of a convergence study.
struct ErrorReport {
  int degree = 0;
  std::vector<std::string> unknowns;  // column group names, e.g. {"h", "u1"}
  struct Level {
    int j = 0;
    std::map<std::string, double> err;
    double runtime_seconds = 0.0;
  };
  std::vector<Level> levels;

  /// EOC between level index i-1 and i for one unknown (mesh halving).
  double eoc(std::size_t i, const std::string& unknown) const;
};

void write_csv(const ErrorReport& report, const std::string& path);
std::string format_csv(const ErrorReport& report);

}  // namespace hydrodg

#endif
