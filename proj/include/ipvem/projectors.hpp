#pragma once

#include <vector>

#include <Eigen/Dense>

#include "ipvem/mesh.hpp"
#include "ipvem/monomial.hpp"
#include "ipvem/quadrature.hpp"

namespace ipvem {

/// Local DoF ordering of a cell with nv vertices, for order k: vertex values
/// in cycle order, then k-1 interior Gauss-Lobatto values per side (sides in
/// cycle order, nodes along the cell's own traversal direction), then the
/// dim P_{k-2} scaled moments.
struct DofLayout {
  int k = 2;
  int n_vertices = 0;

  int edge_interior() const { return k - 1; }
  int moment_count() const { return (k - 1) * k / 2; }
  int size() const { return n_vertices * k + moment_count(); }

  int vertex_dof(int i) const { return i; }
  int edge_dof(int side, int m) const { return n_vertices + side * (k - 1) + m; }
  int moment_dof(int m) const { return n_vertices * k + m; }
};

/// Per-element projection machinery. D maps polynomial coefficients to DoFs;
/// Pgrad / Phess / Phess are coefficient-valued projectors applied to DoF
/// vectors; Bgrad / Bhess are the right-hand-side maps they were solved
/// from, kept for verification (e.g. Bhess * D reproduces G2).
struct ElementOperators {
  int cell = -1;
  DofLayout layout;
  MonomialBasis basis;
  PolygonQuadrature quad;

  std::vector<Point2> verts;
  std::vector<Point2> edge_normal;   // outward for this cell
  std::vector<Point2> edge_tangent;  // traversal direction
  std::vector<double> edge_length;

  Eigen::MatrixXd D;      // size x np
  Eigen::MatrixXd G1;     // np x np, (grad m_a, grad m_b)
  Eigen::MatrixXd G2;     // np x np, (hess m_a : hess m_b)
  Eigen::MatrixXd Mass;   // np x np, (m_a, m_b)
  Eigen::MatrixXd Bgrad;  // np x size
  Eigen::MatrixXd Bhess;  // np x size
  Eigen::MatrixXd Pgrad;  // np x size
  Eigen::MatrixXd Phess;  // np x size
  Eigen::MatrixXd P0;     // np x size

  double cond_h1 = 0.0;  // bordered H1 system
  double cond_h2 = 0.0;  // bordered H2 system

  double area() const;
  double hK() const { return basis.scale(); }
};

/// Builds D, the Gram matrices and the three projectors for one cell.
/// quad_degree < 0 picks the default 2k+2.
ElementOperators build_element_operators(const PolygonalMesh& mesh, int cell, int k,
                                         int quad_degree = -1);

}  // namespace ipvem
