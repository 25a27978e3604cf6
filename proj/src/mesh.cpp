#include "ipvem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "ipvem/errors.hpp"

namespace ipvem {

PolygonalMesh::PolygonalMesh(std::vector<Point2> vertices, std::vector<std::vector<int>> cells)
    : vertices_(std::move(vertices)), cells_(std::move(cells)) {
  const int nv = vertex_count();
  centroid_.resize(cells_.size());
  area_.resize(cells_.size());
  diameter_.resize(cells_.size());
  for (int c = 0; c < cell_count(); ++c) {
    auto& cell = cells_[c];
    if (cell.size() < 3)
      throw TopologyError("cell " + std::to_string(c) + " has fewer than 3 vertices");
    for (std::size_t i = 0; i < cell.size(); ++i) {
      if (cell[i] < 0 || cell[i] >= nv)
        throw TopologyError("cell " + std::to_string(c) + " references vertex " +
                            std::to_string(cell[i]) + " out of range");
      if (cell[i] == cell[(i + 1) % cell.size()])
        throw TopologyError("cell " + std::to_string(c) + " repeats a vertex consecutively");
    }
    auto coords = cell_vertices(c);
    double a = polygon_area(coords);
    if (a < 0.0) {
      std::reverse(cell.begin(), cell.end());
      std::reverse(coords.begin(), coords.end());
      a = -a;
      reoriented_.push_back(c);
    }
    const double d = polygon_diameter(coords);
    if (!(a > 1e-14 * d * d))
      throw GeometryError("cell " + std::to_string(c) + " is degenerate (area " +
                          std::to_string(a) + ")");
    area_[c] = a;
    centroid_[c] = polygon_centroid(coords);
    diameter_[c] = d;
  }
}

std::vector<Point2> PolygonalMesh::cell_vertices(int c) const {
  const auto& cell = cells_[c];
  std::vector<Point2> coords(cell.size());
  for (std::size_t i = 0; i < cell.size(); ++i) coords[i] = vertices_[cell[i]];
  return coords;
}

double PolygonalMesh::total_area() const {
  double a = 0.0;
  for (double ac : area_) a += ac;
  return a;
}

double PolygonalMesh::max_diameter() const {
  double d = 0.0;
  for (double dc : diameter_) d = std::max(d, dc);
  return d;
}

EdgeTable build_edge_table(const PolygonalMesh& mesh) {
  EdgeTable table;
  table.cell_edges_.resize(mesh.cell_count());
  table.cell_forward_.resize(mesh.cell_count());
  std::map<std::pair<int, int>, int> index;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const auto& cell = mesh.cell(c);
    const int n = static_cast<int>(cell.size());
    table.cell_edges_[c].resize(n);
    table.cell_forward_[c].resize(n);
    for (int j = 0; j < n; ++j) {
      const int a = cell[j];
      const int b = cell[(j + 1) % n];
      const auto key = std::minmax(a, b);
      auto it = index.find(key);
      if (it == index.end()) {
        Edge e;
        e.v0 = a;
        e.v1 = b;
        e.left = c;
        const Point2 pa = mesh.vertex(a);
        const Point2 pb = mesh.vertex(b);
        e.length = distance(pa, pb);
        if (!(e.length > 0.0))
          throw GeometryError("zero-length edge in cell " + std::to_string(c));
        e.tangent = (pb - pa) / e.length;
        e.normal = {e.tangent.y, -e.tangent.x};  // outward for the minus cell
        e.midpoint = 0.5 * (pa + pb);
        index.emplace(key, table.edge_count());
        table.cell_edges_[c][j] = table.edge_count();
        table.cell_forward_[c][j] = 1;
        table.edges_.push_back(e);
      } else {
        Edge& e = table.edges_[it->second];
        if (e.right >= 0)
          throw TopologyError("edge (" + std::to_string(key.first) + "," +
                              std::to_string(key.second) + ") shared by more than two cells");
        if (e.v0 == a)
          throw TopologyError("edge (" + std::to_string(a) + "," + std::to_string(b) +
                              ") traversed twice in the same direction; inconsistent orientation");
        e.right = c;
        table.cell_edges_[c][j] = it->second;
        table.cell_forward_[c][j] = 0;
      }
    }
  }
  for (const Edge& e : table.edges_)
    if (!e.boundary()) ++table.interior_count_;
  return table;
}

namespace {

double angle_at(Point2 a, Point2 b, Point2 c) {
  // angle at vertex a of triangle (a,b,c)
  const Point2 u = b - a;
  const Point2 v = c - a;
  return std::atan2(std::abs(cross(u, v)), dot(u, v));
}

}  // namespace

std::vector<int> hanging_vertices(const PolygonalMesh& mesh, int c, double tol) {
  const auto& cell = mesh.cell(c);
  const int n = static_cast<int>(cell.size());
  std::vector<int> out;
  for (int i = 0; i < n; ++i) {
    const Point2 prev = mesh.vertex(cell[(i + n - 1) % n]);
    const Point2 cur = mesh.vertex(cell[i]);
    const Point2 next = mesh.vertex(cell[(i + 1) % n]);
    const Point2 u = cur - prev;
    const Point2 v = next - cur;
    if (std::abs(cross(u, v)) <= tol * norm(u) * norm(v) && dot(u, v) > 0.0) out.push_back(i);
  }
  return out;
}

bool audit_one_hanging_node(const PolygonalMesh& mesh, double tol) {
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const auto h = hanging_vertices(mesh, c, tol);
    const int n = static_cast<int>(mesh.cell(c).size());
    // two consecutive hanging vertices => three collinear sides => one
    // straight side carrying two hanging nodes
    for (std::size_t i = 0; i + 1 < h.size(); ++i)
      if (h[i + 1] == h[i] + 1) return false;
    if (h.size() >= 2 && h.front() == 0 && h.back() == n - 1) return false;
  }
  return true;
}

MeshDiagnostics validate_mesh(const PolygonalMesh& mesh, const ValidationThresholds& thresholds) {
  MeshDiagnostics diag;
  diag.cells.resize(mesh.cell_count());
  diag.reoriented = mesh.reoriented_cells();
  for (int c = 0; c < mesh.cell_count(); ++c) {
    CellDiagnostics& cd = diag.cells[c];
    const auto coords = mesh.cell_vertices(c);
    const int n = static_cast<int>(coords.size());
    const Point2 xc = mesh.centroid(c);
    double emin = std::numeric_limits<double>::max();
    double emax = 0.0;
    for (int i = 0; i < n; ++i) {
      const Point2 a = coords[i];
      const Point2 b = coords[(i + 1) % n];
      const double len = distance(a, b);
      emin = std::min(emin, len);
      emax = std::max(emax, len);
      const double tri2 = cross(a - xc, b - xc);  // twice the fan triangle area
      if (!(tri2 > 0.0)) cd.star_shaped = false;
      const double ang = std::min({angle_at(xc, a, b), angle_at(a, b, xc), angle_at(b, xc, a)});
      cd.min_fan_angle_deg = std::min(cd.min_fan_angle_deg, ang * 180.0 / std::numbers::pi);
    }
    cd.edge_ratio = emax / emin;
    cd.hanging_vertices = static_cast<int>(hanging_vertices(mesh, c, thresholds.collinear_tol).size());
    if (!cd.star_shaped) {
      diag.all_star_shaped = false;
      throw GeometryError("cell " + std::to_string(c) +
                          " is not star-shaped with respect to its centroid");
    }
    diag.max_edge_ratio = std::max(diag.max_edge_ratio, cd.edge_ratio);
    diag.min_fan_angle_deg = std::min(diag.min_fan_angle_deg, cd.min_fan_angle_deg);
    if (cd.edge_ratio > thresholds.max_edge_ratio ||
        cd.min_fan_angle_deg < thresholds.min_fan_angle_deg)
      diag.shape_warnings.push_back(c);
  }
  return diag;
}

PolygonalMesh generate_square_mesh(int n, Domain domain) {
  if (n < 1) throw ConfigError("mesh subdivision count must be positive");
  if (domain == Domain::LShape && n % 2 != 0)
    throw ConfigError("L-shaped mesh needs an even subdivision count");
  const double h = 1.0 / n;
  std::vector<Point2> vertices((n + 1) * (n + 1));
  for (int j = 0; j <= n; ++j)
    for (int i = 0; i <= n; ++i) vertices[j * (n + 1) + i] = {i * h, j * h};
  std::vector<std::vector<int>> cells;
  cells.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (domain == Domain::LShape && i >= n / 2 && j < n / 2) continue;
      const int v0 = j * (n + 1) + i;
      cells.push_back({v0, v0 + 1, v0 + n + 2, v0 + n + 1});
    }
  }
  if (domain == Domain::UnitSquare) return PolygonalMesh(std::move(vertices), std::move(cells));
  // drop vertices unused by the kept cells and reindex
  std::vector<int> remap(vertices.size(), -1);
  std::vector<Point2> used;
  for (auto& cell : cells)
    for (int& v : cell) {
      if (remap[v] < 0) {
        remap[v] = static_cast<int>(used.size());
        used.push_back(vertices[v]);
      }
      v = remap[v];
    }
  return PolygonalMesh(std::move(used), std::move(cells));
}

namespace {

std::string format_coord(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

PolygonalMesh load_mesh_text(const std::string& text) {
  std::istringstream in(text);
  std::string tag;
  int nv = 0;
  if (!(in >> tag >> nv) || tag != "VERTICES" || nv < 0)
    throw FormatError("expected 'VERTICES <count>' header");
  std::vector<Point2> vertices(nv);
  for (int i = 0; i < nv; ++i)
    if (!(in >> vertices[i].x >> vertices[i].y))
      throw FormatError("truncated vertex list at entry " + std::to_string(i));
  int nc = 0;
  if (!(in >> tag >> nc) || tag != "CELLS" || nc < 0)
    throw FormatError("expected 'CELLS <count>' header");
  std::string line;
  std::getline(in, line);  // rest of the CELLS line
  std::vector<std::vector<int>> cells;
  cells.reserve(nc);
  while (static_cast<int>(cells.size()) < nc && std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<int> cell;
    int v;
    while (ls >> v) cell.push_back(v);
    if (cell.empty()) continue;
    cells.push_back(std::move(cell));
  }
  if (static_cast<int>(cells.size()) != nc)
    throw FormatError("expected " + std::to_string(nc) + " cell lines, got " +
                      std::to_string(cells.size()));
  return PolygonalMesh(std::move(vertices), std::move(cells));
}

PolygonalMesh load_mesh_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("invalid JSON mesh: ") + e.what());
  }
  if (!j.contains("vertices") || !j.contains("cells"))
    throw FormatError("JSON mesh needs 'vertices' and 'cells' arrays");
  std::vector<Point2> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_array() || v.size() != 2) throw FormatError("each vertex must be [x, y]");
    vertices.push_back({v[0].get<double>(), v[1].get<double>()});
  }
  std::vector<std::vector<int>> cells;
  for (const auto& c : j["cells"]) {
    if (!c.is_array()) throw FormatError("each cell must be an index array");
    cells.push_back(c.get<std::vector<int>>());
  }
  return PolygonalMesh(std::move(vertices), std::move(cells));
}

}  // namespace

PolygonalMesh load_mesh(const std::string& text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) throw FormatError("empty mesh input");
  if (text[first] == '{') return load_mesh_json(text);
  return load_mesh_text(text);
}

PolygonalMesh load_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open mesh file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_mesh(buf.str());
}

std::string save_mesh(const PolygonalMesh& mesh) {
  std::ostringstream os;
  os << "VERTICES " << mesh.vertex_count() << "\n";
  for (const Point2& p : mesh.vertices())
    os << format_coord(p.x) << " " << format_coord(p.y) << "\n";
  os << "CELLS " << mesh.cell_count() << "\n";
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const auto& cell = mesh.cell(c);
    for (std::size_t i = 0; i < cell.size(); ++i) os << (i ? " " : "") << cell[i];
    os << "\n";
  }
  return os.str();
}

std::string save_mesh_json(const PolygonalMesh& mesh) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const Point2& p : mesh.vertices()) j["vertices"].push_back({p.x, p.y});
  j["cells"] = mesh.cells();
  return j.dump(2) + "\n";
}

}  // namespace ipvem
