#ifndef HYDRODG_TESTS_TEST_UTIL_HPP
#define HYDRODG_TESTS_TEST_UTIL_HPP

#include <random>

#include "hydrodg/assembly.hpp"
#include "hydrodg/linalg.hpp"
#include "hydrodg/mesh.hpp"

namespace testutil {

using hydrodg::CoeffVector;
using hydrodg::DenseMatrix;
using hydrodg::Mesh2D;
using hydrodg::Vector;

/// Random trapezoidal column mesh with gently sloped layer interfaces.
inline Mesh2D random_column_mesh(std::mt19937& rng, int columns, int layers,
                                 const hydrodg::BoundarySpec& markers = {}) {
  std::uniform_real_distribution<double> jitter(-0.2, 0.2);
  std::vector<double> partition(columns + 1);
  for (int i = 0; i <= columns; ++i) {
    partition[i] = double(i);
    if (i > 0 && i < columns) partition[i] += 0.4 * jitter(rng);
  }
  std::vector<std::vector<double>> levels(layers + 1,
                                          std::vector<double>(columns + 1, 0.0));
  for (int l = 0; l <= layers; ++l)
    for (int i = 0; i <= columns; ++i) levels[l][i] = double(l) + jitter(rng);
  return hydrodg::build_column_mesh_from_levels(partition, levels, markers);
}

inline CoeffVector random_coeffs(std::mt19937& rng, int blocks, int block_size,
                                 double scale = 1.0) {
  std::uniform_real_distribution<double> dist(-scale, scale);
  CoeffVector out(blocks, block_size);
  for (long i = 0; i < out.data.size(); ++i) out.data[i] = dist(rng);
  return out;
}

inline double rel_diff(const DenseMatrix& a, const DenseMatrix& b) {
  const double scale = std::max(1.0, std::max(a.cwiseAbs().maxCoeff(),
                                              b.cwiseAbs().maxCoeff()));
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

inline double rel_diff(const Vector& a, const Vector& b) {
  const double scale =
      std::max(1.0, std::max(a.cwiseAbs().maxCoeff(), b.cwiseAbs().maxCoeff()));
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

/// All interior edges / boundary edges of a mesh.
inline hydrodg::EdgeSet interior_edges(const Mesh2D& mesh, bool vertical_only = false,
                                       bool horizontal_only = false) {
  hydrodg::EdgeSet set;
  for (int k = 0; k < mesh.num_elements(); ++k)
    for (int n = 1; n <= 4; ++n)
      if (mesh.edge(k, n).neighbor >= 0) {
        if (vertical_only && n < 3) continue;
        if (horizontal_only && n > 2) continue;
        set.add(k, n);
      }
  return set;
}

inline hydrodg::EdgeSet boundary_edges(const Mesh2D& mesh) {
  hydrodg::EdgeSet set;
  for (int k = 0; k < mesh.num_elements(); ++k)
    for (int n = 1; n <= 4; ++n)
      if (mesh.edge(k, n).neighbor < 0) set.add(k, n);
  return set;
}

}  // namespace testutil

#endif
