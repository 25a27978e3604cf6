#pragma once

#include <functional>

#include <Eigen/Dense>

#include "ipvem/projectors.hpp"
#include "ipvem/quadrature.hpp"

namespace helper {

using ipvem::ElementOperators;
using ipvem::Point2;

using ScalarField = std::function<double(Point2)>;

/// Interpolation DoFs of a smooth function on one element: vertex values,
/// interior Gauss-Lobatto values per side, scaled moments by quadrature.
inline Eigen::VectorXd dof_vector(const ElementOperators& ops, const ScalarField& u) {
  const auto& layout = ops.layout;
  const int nv = layout.n_vertices;
  Eigen::VectorXd chi = Eigen::VectorXd::Zero(layout.size());
  for (int i = 0; i < nv; ++i) chi[layout.vertex_dof(i)] = u(ops.verts[i]);
  const auto gl = ipvem::gauss_lobatto_rule(layout.k);
  for (int j = 0; j < nv; ++j) {
    const Point2 a = ops.verts[j];
    const Point2 b = ops.verts[(j + 1) % nv];
    for (int m = 1; m < layout.k; ++m) {
      const Point2 p = a + (0.5 * (gl.nodes[m] + 1.0)) * (b - a);
      chi[layout.edge_dof(j, m - 1)] = u(p);
    }
  }
  const double area = ops.area();
  for (int m = 0; m < layout.moment_count(); ++m) {
    double s = 0.0;
    for (std::size_t q = 0; q < ops.quad.points.size(); ++q)
      s += ops.quad.weights[q] * u(ops.quad.points[q]) * ops.basis.value(m, ops.quad.points[q]);
    chi[layout.moment_dof(m)] = s / area;
  }
  return chi;
}

/// Least-squares fit of a smooth function in the element's scaled monomial
/// basis; exact (to roundoff) when the function is a polynomial of degree
/// at most the basis order.
inline Eigen::VectorXd scaled_coeffs(const ElementOperators& ops, const ScalarField& u) {
  const int nq = static_cast<int>(ops.quad.points.size());
  Eigen::MatrixXd V(nq, ops.basis.dim());
  Eigen::VectorXd f(nq);
  for (int q = 0; q < nq; ++q) {
    V.row(q) = ops.basis.values(ops.quad.points[q]).transpose();
    f[q] = u(ops.quad.points[q]);
  }
  return (V.transpose() * V).ldlt().solve(V.transpose() * f);
}

}  // namespace helper
