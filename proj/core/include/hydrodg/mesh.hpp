#ifndef HYDRODG_MESH_HPP
#define HYDRODG_MESH_HPP

#include <array>
#include <functional>
#include <vector>

#include "hydrodg/basis.hpp"
#include "hydrodg/linalg.hpp"
#include "hydrodg/transform.hpp"
#include "hydrodg/types.hpp"

namespace hydrodg {

enum class Marker {
  Interior,
  Land,
  OpenSea,
  River,
  Radiation,
  Top,
  Bottom,
  Dirichlet,
  Neumann,
  Interface,
};

const char* marker_name(Marker m);

/// Boundary markers for the four sides of a column mesh.
struct BoundarySpec {
  Marker left = Marker::Land;
  Marker right = Marker::Land;
  Marker bottom = Marker::Bottom;
  Marker top = Marker::Top;
};

/// Trapezoidal column mesh. Elements are numbered column-major and
/// bottom-to-top inside each column: k = column*layers + layer. Local vertex
/// numbering is 1 bottom-left, 2 bottom-right, 3 top-right, 4 top-left; local
/// edges are 1 bottom, 2 top, 3 right, 4 left (n is 1-based in all APIs).
struct Mesh2D {
  struct EdgeInfo {
    int neighbor = -1;  // adjacent element, or -1 on the boundary
    Marker marker = Marker::Interior;
    double length = 0.0;
    Vec2 normal = Vec2::Zero();
  };

  int num_columns = 0;
  int num_layers = 0;
  std::vector<double> x1_nodes;               // size num_columns+1
  std::vector<std::vector<double>> levels;    // [layer 0..L][node] interface heights

  std::vector<std::array<Vec2, 4>> verts;     // per element
  std::vector<std::array<EdgeInfo, 4>> edges; // per element, edge n-1
  std::vector<ElementMapping> mapping;
  std::vector<int> column_of;
  std::vector<int> layer_of;

  int num_elements() const { return static_cast<int>(verts.size()); }
  int element_index(int column, int layer) const { return column * num_layers + layer; }

  const EdgeInfo& edge(int k, int n) const { return edges[k][n - 1]; }

  /// Recomputes vertices, mappings, lengths, and normals from levels.
  void rebuild_geometry();
};

/// Projection of a column mesh onto the x1 axis: one element per column.
struct Mesh1D {
  std::vector<double> nodes;  // size Kbar+1
  Marker left_marker = Marker::Interior;
  Marker right_marker = Marker::Interior;
  std::vector<double> smoothed_height;  // nodal H_s, used by the free-flow solver

  int num_elements() const { return static_cast<int>(nodes.size()) - 1; }
  double length(int kbar) const { return nodes[kbar + 1] - nodes[kbar]; }
  double map_point(int kbar, double xhat) const {
    return nodes[kbar] + length(kbar) * xhat;
  }
};

/// Incidence relation between 2D elements and their 1D projections.
inline bool mark_t2dt(const Mesh2D& mesh, int k, int kbar) {
  return mesh.column_of[k] == kbar;
}

/// Piecewise-linear free-surface geometry over the 1D mesh nodes.
struct SurfaceGeometry {
  std::vector<double> zeta_b;  // nodal bathymetry
  std::vector<double> xi;      // nodal free-surface elevation

  double zeta_b_at(const Mesh1D& mesh, double x1) const;
  double slope_zeta_b(int kbar, const Mesh1D& mesh) const {
    return (zeta_b[kbar + 1] - zeta_b[kbar]) / mesh.length(kbar);
  }
};

/// Column mesh with equally spaced layer interfaces between two profiles.
Mesh2D build_column_mesh(const std::vector<double>& x1_partition, int layers,
                         const std::function<double(double)>& bottom_profile,
                         const std::function<double(double)>& top_profile,
                         const BoundarySpec& markers = {});

/// Column mesh from explicit nodal interface heights, level_values[l][node]
/// for l = 0..layers; levels must be strictly increasing in l at every node.
Mesh2D build_column_mesh_from_levels(const std::vector<double>& x1_partition,
                                     const std::vector<std::vector<double>>& level_values,
                                     const BoundarySpec& markers = {});

Mesh1D project_mesh(const Mesh2D& mesh);

/// Moves the free surface so that it interpolates zeta_b + h at the 1D mesh
/// nodes, where nodal values of the discontinuous field h are one-sided
/// traces at boundary nodes and trace averages at interior nodes. Interior
/// layer interfaces are re-equidistributed per column and the stored nodal
/// H_s is refreshed. Throws NumericalError when the new surface drops below
/// the previous second-highest interface (drying) or H_s <= 0.
void adapt_free_surface(Mesh2D& mesh, Mesh1D& mesh1d, SurfaceGeometry& surface,
                        const CoeffVector& h, const Basis1D& basis1d);

}  // namespace hydrodg

#endif
