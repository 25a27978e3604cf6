#pragma once

#include <string>
#include <vector>

#include "ipvem/geometry.hpp"

namespace ipvem {

/// Polygonal mesh with cells stored as counter-clockwise vertex cycles.
/// Hanging nodes are ordinary vertices: the coarse side of a refined
/// interface simply lists the midpoint as a (180 degree) polygon vertex.
class PolygonalMesh {
 public:
  PolygonalMesh(std::vector<Point2> vertices, std::vector<std::vector<int>> cells);

  int vertex_count() const { return static_cast<int>(vertices_.size()); }
  int cell_count() const { return static_cast<int>(cells_.size()); }

  const Point2& vertex(int v) const { return vertices_[v]; }
  const std::vector<Point2>& vertices() const { return vertices_; }
  const std::vector<int>& cell(int c) const { return cells_[c]; }
  const std::vector<std::vector<int>>& cells() const { return cells_; }

  std::vector<Point2> cell_vertices(int c) const;
  Point2 centroid(int c) const { return centroid_[c]; }
  double area(int c) const { return area_[c]; }
  double diameter(int c) const { return diameter_[c]; }

  double total_area() const;
  double max_diameter() const;

  /// Cells whose input orientation was clockwise and got reversed.
  const std::vector<int>& reoriented_cells() const { return reoriented_; }

 private:
  std::vector<Point2> vertices_;
  std::vector<std::vector<int>> cells_;
  std::vector<Point2> centroid_;
  std::vector<double> area_;
  std::vector<double> diameter_;
  std::vector<int> reoriented_;
};

/// Unique undirected edge. `left` traverses (v0,v1) in its own cycle order,
/// so `normal` (unit, pointing from left into right) is the outward normal
/// of `left`; `tangent` is `normal` rotated by +90 degrees, i.e. the unit
/// vector from v0 to v1. Boundary edges have right == -1.
struct Edge {
  int v0 = -1;
  int v1 = -1;
  int left = -1;
  int right = -1;
  double length = 0.0;
  Point2 normal;
  Point2 tangent;
  Point2 midpoint;
  bool boundary() const { return right < 0; }
};

class EdgeTable {
 public:
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int interior_count() const { return interior_count_; }
  int boundary_count() const { return edge_count() - interior_count_; }

  /// Edge id of local side j (from cell vertex j to j+1) of cell c.
  const std::vector<int>& cell_edges(int c) const { return cell_edges_[c]; }
  /// True when cell c traverses local side j in the stored (v0,v1) direction,
  /// i.e. when c is the minus cell of that edge.
  bool cell_edge_forward(int c, int j) const { return cell_forward_[c][j] != 0; }

  friend EdgeTable build_edge_table(const PolygonalMesh& mesh);

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> cell_edges_;
  std::vector<std::vector<char>> cell_forward_;
  int interior_count_ = 0;
};

/// Deterministic construction: cells scanned in index order, sides in cycle
/// order; the first cell to visit an edge becomes its minus side. Throws
/// TopologyError when an edge is shared by more than two cells or traversed
/// twice in the same direction.
EdgeTable build_edge_table(const PolygonalMesh& mesh);

struct ValidationThresholds {
  double max_edge_ratio = 20.0;    // longest/shortest edge of a cell (warning)
  double min_fan_angle_deg = 5.0;  // smallest centroid-fan triangle angle (warning)
  double collinear_tol = 1e-12;
};

struct CellDiagnostics {
  bool star_shaped = true;   // w.r.t. the area centroid
  double edge_ratio = 1.0;
  double min_fan_angle_deg = 180.0;
  int hanging_vertices = 0;  // vertices with collinear incident sides
};

struct MeshDiagnostics {
  std::vector<CellDiagnostics> cells;
  bool all_star_shaped = true;
  double max_edge_ratio = 1.0;
  double min_fan_angle_deg = 180.0;
  std::vector<int> shape_warnings;   // cells beyond the warning thresholds
  std::vector<int> reoriented;
};

/// Shape diagnostics. Star-shapedness w.r.t. the centroid is a hard
/// requirement (GeometryError); edge-ratio and fan-angle bounds only warn.
MeshDiagnostics validate_mesh(const PolygonalMesh& mesh,
                              const ValidationThresholds& thresholds = {});

/// Local vertex indices of cell c that are hanging nodes, i.e. whose two
/// incident sides are collinear within tol.
std::vector<int> hanging_vertices(const PolygonalMesh& mesh, int c, double tol = 1e-12);

/// True when no straight side of any cell carries more than one hanging node.
bool audit_one_hanging_node(const PolygonalMesh& mesh, double tol = 1e-12);

enum class Domain { UnitSquare, LShape };

/// n x n grid of unit-square cells scaled to (0,1)^2; for LShape the
/// quadrant [1/2,1] x [0,1/2] is removed (n must be even).
PolygonalMesh generate_square_mesh(int n, Domain domain = Domain::UnitSquare);

/// Plain-text or JSON mesh (auto-detected by a leading '{').
PolygonalMesh load_mesh(const std::string& text);
PolygonalMesh load_mesh_file(const std::string& path);
std::string save_mesh(const PolygonalMesh& mesh);
std::string save_mesh_json(const PolygonalMesh& mesh);

}  // namespace ipvem
