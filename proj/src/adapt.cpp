#include "ipvem/adapt.hpp"

#include <algorithm>
#include <numeric>

#include "ipvem/errors.hpp"

namespace ipvem {

MarkSet dorfler_mark(const std::vector<double>& local_squared, double theta) {
  if (!(theta > 0.0) || theta > 1.0) throw ConfigError("marking fraction must be in (0, 1]");
  MarkSet out;
  out.theta = theta;
  double total = 0.0;
  for (double s : local_squared) {
    if (s < 0.0) throw ConfigError("negative squared indicator");
    total += s;
  }
  if (total == 0.0) return out;  // nothing to mark

  std::vector<int> order(local_squared.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (local_squared[a] != local_squared[b]) return local_squared[a] > local_squared[b];
    return a < b;
  });
  double acc = 0.0;
  for (int c : order) {
    out.cells.push_back(c);
    acc += local_squared[c];
    if (acc >= theta * total) break;
  }
  std::sort(out.cells.begin(), out.cells.end());
  out.achieved_fraction = acc / total;
  return out;
}

std::vector<int> expand_plan(const PolygonalMesh& mesh, const EdgeTable& edges,
                             const std::vector<int>& marked, double collinear_tol) {
  std::vector<char> flag(mesh.cell_count(), 0);
  for (int c : marked) {
    if (c < 0 || c >= mesh.cell_count()) throw ConfigError("marked cell out of range");
    flag[c] = 1;
  }
  // global vertex ids that hang in each cell
  std::vector<std::vector<int>> hanging(mesh.cell_count());
  for (int c = 0; c < mesh.cell_count(); ++c)
    for (int i : hanging_vertices(mesh, c, collinear_tol))
      hanging[c].push_back(mesh.cell(c)[i]);

  bool changed = true;
  while (changed) {
    changed = false;
    for (const Edge& e : edges.edges()) {
      if (e.boundary()) continue;
      for (const auto [from, to] : {std::pair{e.left, e.right}, std::pair{e.right, e.left}}) {
        if (!flag[from] || flag[to]) continue;
        const auto& h = hanging[to];
        if (std::find(h.begin(), h.end(), e.v0) != h.end() ||
            std::find(h.begin(), h.end(), e.v1) != h.end()) {
          flag[to] = 1;
          changed = true;
        }
      }
    }
  }
  std::vector<int> plan;
  for (int c = 0; c < mesh.cell_count(); ++c)
    if (flag[c]) plan.push_back(c);
  return plan;
}

PolygonalMesh refine_mesh(const PolygonalMesh& mesh, const EdgeTable& edges,
                          const std::vector<int>& plan) {
  std::vector<char> planned(mesh.cell_count(), 0);
  for (int c : plan) {
    if (c < 0 || c >= mesh.cell_count()) throw ConfigError("planned cell out of range");
    planned[c] = 1;
  }

  std::vector<Point2> vertices = mesh.vertices();
  std::vector<int> edge_mid(edges.edge_count(), -1);
  for (int e = 0; e < edges.edge_count(); ++e) {
    const Edge& edge = edges.edge(e);
    const bool split = planned[edge.left] || (!edge.boundary() && planned[edge.right]);
    if (!split) continue;
    edge_mid[e] = static_cast<int>(vertices.size());
    vertices.push_back(edge.midpoint);
  }

  std::vector<int> cell_center(mesh.cell_count(), -1);
  for (int c = 0; c < mesh.cell_count(); ++c) {
    if (!planned[c]) continue;
    // splitting joins side midpoints to the centroid, so the cell must be
    // star-shaped with respect to it
    const auto coords = mesh.cell_vertices(c);
    const Point2 xc = mesh.centroid(c);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (!(cross(coords[i] - xc, coords[(i + 1) % coords.size()] - xc) > 0.0))
        throw GeometryError("cell " + std::to_string(c) +
                            " cannot be refined: centroid does not see every side");
    cell_center[c] = static_cast<int>(vertices.size());
    vertices.push_back(xc);
  }

  std::vector<std::vector<int>> cells;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    const auto& cell = mesh.cell(c);
    const int n = static_cast<int>(cell.size());
    const auto& ce = edges.cell_edges(c);
    if (planned[c]) {
      for (int i = 0; i < n; ++i) {
        const int prev = ce[(i + n - 1) % n];
        cells.push_back({cell[i], edge_mid[ce[i]], cell_center[c], edge_mid[prev]});
      }
    } else {
      std::vector<int> cycle;
      for (int i = 0; i < n; ++i) {
        cycle.push_back(cell[i]);
        if (edge_mid[ce[i]] >= 0) cycle.push_back(edge_mid[ce[i]]);
      }
      cells.push_back(std::move(cycle));
    }
  }
  return PolygonalMesh(std::move(vertices), std::move(cells));
}

}  // namespace ipvem
