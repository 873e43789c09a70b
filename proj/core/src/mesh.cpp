#include "hydrodg/mesh.hpp"

#include <cmath>
#include <sstream>

namespace hydrodg {

const char* marker_name(Marker m) {
  switch (m) {
    case Marker::Interior: return "interior";
    case Marker::Land: return "land";
    case Marker::OpenSea: return "openSea";
    case Marker::River: return "river";
    case Marker::Radiation: return "radiation";
    case Marker::Top: return "top";
    case Marker::Bottom: return "bottom";
    case Marker::Dirichlet: return "dirichlet";
    case Marker::Neumann: return "neumann";
    case Marker::Interface: return "interface";
  }
  return "?";
}

void Mesh2D::rebuild_geometry() {
  const int K = num_columns * num_layers;
  verts.resize(K);
  mapping.resize(K);
  for (int c = 0; c < num_columns; ++c) {
    for (int l = 0; l < num_layers; ++l) {
      const int k = element_index(c, l);
      const Vec2 a1{x1_nodes[c], levels[l][c]};
      const Vec2 a2{x1_nodes[c + 1], levels[l][c + 1]};
      const Vec2 a3{x1_nodes[c + 1], levels[l + 1][c + 1]};
      const Vec2 a4{x1_nodes[c], levels[l + 1][c]};
      verts[k] = {a1, a2, a3, a4};
      mapping[k] = mapping_from_vertices(a1, a2, a3, a4);
    }
  }
  for (int k = 0; k < K; ++k) {
    const auto& a = verts[k];
    // bottom: a1 -> a2, outward normal points away from the element interior
    {
      const Vec2 d = a[1] - a[0];
      const double len = d.norm();
      edges[k][0].length = len;
      edges[k][0].normal = Vec2{d[1], -d[0]} / len;
    }
    // top: a4 -> a3
    {
      const Vec2 d = a[2] - a[3];
      const double len = d.norm();
      edges[k][1].length = len;
      edges[k][1].normal = Vec2{-d[1], d[0]} / len;
    }
    // right: a2 -> a3 (strictly vertical)
    edges[k][2].length = a[2][1] - a[1][1];
    edges[k][2].normal = Vec2{1.0, 0.0};
    // left: a1 -> a4
    edges[k][3].length = a[3][1] - a[0][1];
    edges[k][3].normal = Vec2{-1.0, 0.0};
    for (int n = 0; n < 4; ++n)
      if (!(edges[k][n].length > 0.0))
        throw NumericalError("Mesh2D: degenerate edge");
  }
}

namespace {

void check_partition(const std::vector<double>& x1) {
  if (x1.size() < 2) throw ConfigError("mesh: partition needs at least two points");
  for (std::size_t i = 1; i < x1.size(); ++i)
    if (!(x1[i] > x1[i - 1]))
      throw ConfigError("mesh: partition must be strictly increasing");
}

}  // namespace

Mesh2D build_column_mesh_from_levels(const std::vector<double>& x1_partition,
                                     const std::vector<std::vector<double>>& level_values,
                                     const BoundarySpec& markers) {
  check_partition(x1_partition);
  if (level_values.size() < 2)
    throw ConfigError("mesh: need at least two level profiles");
  const int columns = static_cast<int>(x1_partition.size()) - 1;
  const int layers = static_cast<int>(level_values.size()) - 1;
  for (const auto& level : level_values)
    if (static_cast<int>(level.size()) != columns + 1)
      throw ConfigError("mesh: level profile size does not match partition");
  for (int l = 0; l < layers; ++l)
    for (int i = 0; i <= columns; ++i)
      if (!(level_values[l + 1][i] > level_values[l][i]))
        throw ConfigError("mesh: level profiles must be strictly increasing (inverted profiles)");

  Mesh2D mesh;
  mesh.num_columns = columns;
  mesh.num_layers = layers;
  mesh.x1_nodes = x1_partition;
  mesh.levels = level_values;
  const int K = columns * layers;
  mesh.edges.resize(K);
  mesh.column_of.resize(K);
  mesh.layer_of.resize(K);
  for (int c = 0; c < columns; ++c) {
    for (int l = 0; l < layers; ++l) {
      const int k = mesh.element_index(c, l);
      mesh.column_of[k] = c;
      mesh.layer_of[k] = l;
      auto& e = mesh.edges[k];
      e[0].neighbor = l > 0 ? mesh.element_index(c, l - 1) : -1;
      e[1].neighbor = l + 1 < layers ? mesh.element_index(c, l + 1) : -1;
      e[2].neighbor = c + 1 < columns ? mesh.element_index(c + 1, l) : -1;
      e[3].neighbor = c > 0 ? mesh.element_index(c - 1, l) : -1;
      e[0].marker = e[0].neighbor < 0 ? markers.bottom : Marker::Interior;
      e[1].marker = e[1].neighbor < 0 ? markers.top : Marker::Interior;
      e[2].marker = e[2].neighbor < 0 ? markers.right : Marker::Interior;
      e[3].marker = e[3].neighbor < 0 ? markers.left : Marker::Interior;
    }
  }
  mesh.rebuild_geometry();
  return mesh;
}

Mesh2D build_column_mesh(const std::vector<double>& x1_partition, int layers,
                         const std::function<double(double)>& bottom_profile,
                         const std::function<double(double)>& top_profile,
                         const BoundarySpec& markers) {
  check_partition(x1_partition);
  if (layers < 1) throw ConfigError("mesh: need at least one layer");
  const int nodes = static_cast<int>(x1_partition.size());
  std::vector<std::vector<double>> level_values(
      layers + 1, std::vector<double>(nodes, 0.0));
  for (int i = 0; i < nodes; ++i) {
    const double bottom = bottom_profile(x1_partition[i]);
    const double top = top_profile(x1_partition[i]);
    if (!(top > bottom)) {
      std::ostringstream os;
      os << "mesh: top profile not above bottom at x1 = " << x1_partition[i];
      throw ConfigError(os.str());
    }
    for (int l = 0; l <= layers; ++l)
      level_values[l][i] = bottom + (top - bottom) * l / layers;
  }
  return build_column_mesh_from_levels(x1_partition, level_values, markers);
}

Mesh1D project_mesh(const Mesh2D& mesh) {
  Mesh1D out;
  out.nodes = mesh.x1_nodes;
  const int top = mesh.num_layers - 1;
  out.left_marker = mesh.edge(mesh.element_index(0, top), 4).marker;
  out.right_marker = mesh.edge(mesh.element_index(mesh.num_columns - 1, top), 3).marker;
  out.smoothed_height.assign(out.nodes.size(), 0.0);
  for (std::size_t i = 0; i < out.nodes.size(); ++i)
    out.smoothed_height[i] =
        mesh.levels[mesh.num_layers][i] - mesh.levels[0][i];
  return out;
}

double SurfaceGeometry::zeta_b_at(const Mesh1D& mesh, double x1) const {
  const auto& nodes = mesh.nodes;
  int lo = 0, hi = static_cast<int>(nodes.size()) - 1;
  while (hi - lo > 1) {
    const int mid = (lo + hi) / 2;
    (nodes[mid] <= x1 ? lo : hi) = mid;
  }
  const double s = (x1 - nodes[lo]) / (nodes[lo + 1] - nodes[lo]);
  return zeta_b[lo] + s * (zeta_b[lo + 1] - zeta_b[lo]);
}

void adapt_free_surface(Mesh2D& mesh, Mesh1D& mesh1d, SurfaceGeometry& surface,
                        const CoeffVector& h, const Basis1D& basis1d) {
  const int kbar_count = mesh1d.num_elements();
  if (h.num_blocks() != kbar_count)
    throw ConfigError("adapt_free_surface: h defined on a different 1D mesh");
  const int nbar = basis1d.size();
  const int L = mesh.num_layers;

  auto trace = [&](int kbar, double xhat) {
    double value = 0.0;
    for (int i = 0; i < nbar; ++i) value += h.at(kbar, i) * basis1d.eval(i, xhat);
    return value;
  };

  std::vector<double> h_node(kbar_count + 1, 0.0);
  h_node[0] = trace(0, 0.0);
  h_node[kbar_count] = trace(kbar_count - 1, 1.0);
  for (int j = 1; j < kbar_count; ++j)
    h_node[j] = 0.5 * (trace(j - 1, 1.0) + trace(j, 0.0));

  for (int j = 0; j <= kbar_count; ++j) {
    const double xi_new = surface.zeta_b[j] + h_node[j];
    if (!(xi_new > mesh.levels[L - 1][j])) {
      std::ostringstream os;
      os << "adapt_free_surface: surface at x1 = " << mesh1d.nodes[j]
         << " dropped below the top element layer (drying up)";
      throw NumericalError(os.str());
    }
    if (!(h_node[j] > 0.0))
      throw NumericalError("adapt_free_surface: nonpositive water column");
  }

  for (int j = 0; j <= kbar_count; ++j) {
    surface.xi[j] = surface.zeta_b[j] + h_node[j];
    for (int l = 0; l <= L; ++l)
      mesh.levels[l][j] = surface.zeta_b[j] + h_node[j] * l / L;
    mesh1d.smoothed_height[j] = h_node[j];
  }
  mesh.rebuild_geometry();
}

}  // namespace hydrodg
