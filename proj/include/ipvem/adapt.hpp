#pragma once

#include <vector>

#include "ipvem/mesh.hpp"

namespace ipvem {

/// Doerfler marking: the smallest prefix of cells in decreasing order of
/// their squared indicator (ties by ascending cell id) whose squared sum
/// reaches theta times the total.
struct MarkSet {
  std::vector<int> cells;
  double theta = 0.0;
  double achieved_fraction = 0.0;
};

MarkSet dorfler_mark(const std::vector<double>& local_squared, double theta);

/// Closure of the marked set: a neighbor joins when it sees a marked cell
/// across one of its sides whose endpoint is one of its own hanging nodes;
/// iterated to a fixed point.
std::vector<int> expand_plan(const PolygonalMesh& mesh, const EdgeTable& edges,
                             const std::vector<int>& marked, double collinear_tol = 1e-12);

/// Splits every planned cell into quads by joining side midpoints to the
/// centroid; unrefined neighbors keep conforming cycles by absorbing the new
/// midpoints as (hanging) vertices. Midpoint vertices are created once per
/// edge and shared bit-identically.
PolygonalMesh refine_mesh(const PolygonalMesh& mesh, const EdgeTable& edges,
                          const std::vector<int>& plan);

}  // namespace ipvem
