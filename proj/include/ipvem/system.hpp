#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Sparse>

#include "ipvem/localforms.hpp"
#include "ipvem/penalty.hpp"
#include "ipvem/projectors.hpp"

namespace ipvem {

/// Global numbering: vertex values, then k-1 interior Gauss-Lobatto values
/// per edge (ordered along the edge's stored minus-side direction), then the
/// cell moments. Boundary DoFs are the vertex/edge values on boundary edges.
struct GlobalDofMap {
  int k = 2;
  int n_vertices = 0;
  int n_edges = 0;
  int n_cells = 0;
  std::vector<char> boundary;               // per global dof
  std::vector<std::vector<int>> cell_dofs;  // local slot -> global dof

  int edge_interior() const { return k - 1; }
  int moment_count() const { return (k - 1) * k / 2; }
  long size() const {
    return n_vertices + static_cast<long>(n_edges) * edge_interior() +
           static_cast<long>(n_cells) * moment_count();
  }
  int vertex_dof(int v) const { return v; }
  int edge_dof(int e, int j) const { return n_vertices + e * edge_interior() + j; }
  int cell_dof(int c, int m) const {
    return n_vertices + n_edges * edge_interior() + c * moment_count() + m;
  }
};

GlobalDofMap number_dofs(const PolygonalMesh& mesh, const EdgeTable& edges, int k);

/// Builds the per-cell operators; parallel construction fills preallocated
/// slots so results do not depend on scheduling.
std::vector<ElementOperators> build_all_operators(const PolygonalMesh& mesh, int k,
                                                  int quad_degree = -1, bool parallel = true);

struct AssemblyOptions {
  double lambda = 1.0;
  SchemeVariant variant = SchemeVariant::Grad;
  int quad_degree = -1;
  bool parallel = true;
};

struct GlobalSystem {
  Eigen::SparseMatrix<double> A;
  Eigen::VectorXd b;
  std::vector<char> is_dirichlet;
  Eigen::VectorXd dirichlet_values;
};

/// Stiffness + penalty + load. gD / gN may be empty for homogeneous data;
/// gN receives the outward unit normal as second argument.
GlobalSystem assemble(const PolygonalMesh& mesh, const EdgeTable& edges,
                      const GlobalDofMap& dofs, const std::vector<ElementOperators>& ops,
                      const std::function<double(Point2)>& f,
                      const std::function<double(Point2)>& gD,
                      const std::function<double(Point2, Point2)>& gN,
                      const AssemblyOptions& options);

struct SolveOptions {
  double rel_tol = 1e-10;
  bool force_iterative = false;
};

struct Solution {
  Eigen::VectorXd dofs;
  std::vector<Eigen::VectorXd> grad_coeffs;  // H1-projected polynomial per cell
  std::vector<Eigen::VectorXd> hess_coeffs;  // H2-projected polynomial per cell
  double residual = 0.0;
  std::string solver;
};

/// Direct sparse factorization with an iterative fallback; throws SolveError
/// when the relative residual of the reduced system stays above tolerance.
Solution solve_system(const GlobalSystem& system, const GlobalDofMap& dofs,
                      const std::vector<ElementOperators>& ops,
                      const SolveOptions& options = {});

/// DoF interpolant of a smooth function (vertex/edge values and moments).
Eigen::VectorXd interpolate(const PolygonalMesh& mesh, const EdgeTable& edges,
                            const GlobalDofMap& dofs, const std::vector<ElementOperators>& ops,
                            const std::function<double(Point2)>& u);

/// Broken H2 seminorm distance sum_K |u - Pi^D u_h|_{2,K}^2, square-rooted.
double compute_errh2(const std::vector<ElementOperators>& ops, const Solution& sol,
                     const std::function<Eigen::Matrix2d(Point2)>& exact_hess);

}  // namespace ipvem
