#pragma once

#include <functional>
#include <string>

#include <Eigen/Dense>

#include "ipvem/jet.hpp"
#include "ipvem/mesh.hpp"

namespace ipvem {

/// Manufactured benchmark: the exact solution is carried as a degree-4
/// expansion generator, so the load f = lap^2 u, the boundary data and the
/// error integrands all come from one definition.
struct BenchmarkProblem {
  std::string id;
  Domain domain = Domain::UnitSquare;
  std::function<Jet4(double, double)> expansion;

  Jet4 at(Point2 p) const { return expansion(p.x, p.y); }
  double u(Point2 p) const { return at(p).value(); }
  Point2 grad(Point2 p) const;
  Eigen::Matrix2d hess(Point2 p) const;
  double f(Point2 p) const { return biharmonic(at(p)); }
  double gD(Point2 p) const { return u(p); }
  double gN(Point2 p, Point2 n) const { return dot(grad(p), n); }
};

/// ids: ex1, ex1-inhom, ex2, ex3 (uses delta), patch (uses seed).
BenchmarkProblem make_problem(const std::string& id, double delta = 1e-6,
                              unsigned patch_seed = 20240901);

}  // namespace ipvem
