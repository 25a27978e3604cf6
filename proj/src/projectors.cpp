#include "ipvem/projectors.hpp"

#include <cmath>

#include "ipvem/errors.hpp"

namespace ipvem {

namespace {

double svd_condition(const Eigen::MatrixXd& A) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& s = svd.singularValues();
  return s(0) / s(s.size() - 1);
}

}  // namespace

double ElementOperators::area() const { return quad.total_weight(); }

ElementOperators build_element_operators(const PolygonalMesh& mesh, int cell, int k,
                                         int quad_degree) {
  if (k < 2 || k > 3) throw ConfigError("order k must be 2 or 3");
  const int degree = quad_degree < 0 ? 2 * k + 2 : quad_degree;

  ElementOperators ops{.cell = cell,
                       .layout = {.k = k, .n_vertices = static_cast<int>(mesh.cell(cell).size())},
                       .basis = MonomialBasis(mesh.centroid(cell), mesh.diameter(cell), k),
                       .quad = {}};
  ops.verts = mesh.cell_vertices(cell);
  ops.quad = polygon_quadrature(ops.verts, degree);

  const int nv = ops.layout.n_vertices;
  const int np = ops.basis.dim();
  const int nd = ops.layout.size();
  const int nm = ops.layout.moment_count();
  const double area = mesh.area(cell);

  ops.edge_normal.resize(nv);
  ops.edge_tangent.resize(nv);
  ops.edge_length.resize(nv);
  for (int j = 0; j < nv; ++j) {
    const Point2 a = ops.verts[j];
    const Point2 b = ops.verts[(j + 1) % nv];
    const double len = distance(a, b);
    ops.edge_length[j] = len;
    ops.edge_tangent[j] = (b - a) / len;
    ops.edge_normal[j] = {ops.edge_tangent[j].y, -ops.edge_tangent[j].x};
  }

  const GaussLobattoRule gl = gauss_lobatto_rule(k);
  const GaussRule edge_gauss = gauss_rule(k + 2);

  // basis values and derivatives at the volume quadrature points
  const int nq = static_cast<int>(ops.quad.points.size());
  Eigen::MatrixXd V(nq, np);
  for (int q = 0; q < nq; ++q) V.row(q) = ops.basis.values(ops.quad.points[q]).transpose();
  const Eigen::VectorXd W = Eigen::Map<const Eigen::VectorXd>(ops.quad.weights.data(), nq);
  const auto weighted_gram = [&](const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
    return Eigen::MatrixXd(A.transpose() * W.asDiagonal() * B);
  };
  const Eigen::MatrixXd Vx = V * ops.basis.dx();
  const Eigen::MatrixXd Vy = V * ops.basis.dy();
  const Eigen::MatrixXd Vxx = Vx * ops.basis.dx();
  const Eigen::MatrixXd Vxy = Vx * ops.basis.dy();
  const Eigen::MatrixXd Vyy = Vy * ops.basis.dy();

  ops.Mass = weighted_gram(V, V);
  ops.G1 = weighted_gram(Vx, Vx) + weighted_gram(Vy, Vy);
  ops.G2 = weighted_gram(Vxx, Vxx) + 2.0 * weighted_gram(Vxy, Vxy) + weighted_gram(Vyy, Vyy);

  // DoF matrix
  ops.D = Eigen::MatrixXd::Zero(nd, np);
  for (int i = 0; i < nv; ++i) ops.D.row(ops.layout.vertex_dof(i)) = ops.basis.values(ops.verts[i]);
  for (int j = 0; j < nv; ++j) {
    const Point2 a = ops.verts[j];
    const Point2 b = ops.verts[(j + 1) % nv];
    for (int m = 1; m < k; ++m) {
      const Point2 p = a + (0.5 * (gl.nodes[m] + 1.0)) * (b - a);
      ops.D.row(ops.layout.edge_dof(j, m - 1)) = ops.basis.values(p);
    }
  }
  for (int m = 0; m < nm; ++m)
    ops.D.row(ops.layout.moment_dof(m)) = (V.col(m).asDiagonal() * V).transpose() * W / area;

  // DoF index of the i-th Gauss-Lobatto node on side j
  const auto gl_dof = [&](int j, int i) {
    if (i == 0) return ops.layout.vertex_dof(j);
    if (i == k) return ops.layout.vertex_dof((j + 1) % nv);
    return ops.layout.edge_dof(j, i - 1);
  };

  // ---- modified H1 projector ----
  const Eigen::MatrixXd lap = ops.basis.laplacian();
  ops.Bgrad = Eigen::MatrixXd::Zero(np, nd);
  for (int a = 0; a < np; ++a)
    for (int m = 0; m < nm; ++m) ops.Bgrad(a, ops.layout.moment_dof(m)) -= lap(m, a) * area;
  for (int j = 0; j < nv; ++j) {
    const Point2 a = ops.verts[j];
    const Point2 b = ops.verts[(j + 1) % nv];
    const Eigen::MatrixXd Dn = ops.basis.directional(ops.edge_normal[j]);
    for (int i = 0; i <= k; ++i) {
      const Point2 p = a + (0.5 * (gl.nodes[i] + 1.0)) * (b - a);
      const Eigen::RowVectorXd dn = ops.basis.values(p).transpose() * Dn;
      ops.Bgrad.col(gl_dof(j, i)) += (0.5 * ops.edge_length[j] * gl.weights[i]) * dn.transpose();
    }
  }

  Eigen::MatrixXd A1 = Eigen::MatrixXd::Zero(np + 1, np + 1);
  A1.topLeftCorner(np, np) = ops.G1;
  Eigen::RowVectorXd vertex_sum = Eigen::RowVectorXd::Zero(np);
  for (int i = 0; i < nv; ++i) vertex_sum += ops.basis.values(ops.verts[i]).transpose();
  A1.block(np, 0, 1, np) = vertex_sum;
  A1.block(0, np, np, 1) = vertex_sum.transpose();
  Eigen::MatrixXd R1 = Eigen::MatrixXd::Zero(np + 1, nd);
  R1.topRows(np) = ops.Bgrad;
  for (int i = 0; i < nv; ++i) R1(np, ops.layout.vertex_dof(i)) = 1.0;
  ops.Pgrad = A1.fullPivLu().solve(R1).topRows(np);
  ops.cond_h1 = svd_condition(A1);

  // ---- H2 projector via the integrated-by-parts right side ----
  // a(q,v) = (lap^2 q, v) - sum_e int_e (dn lap q + dnttt q) v
  //        + sum_e int_e dnn q * dn v + sum_z (g_in(z) - g_out(z)) v(z),
  // g_e = d^2 q / dt dn; dn v is replaced by dn Pgrad v.
  const Eigen::MatrixXd bilap = ops.basis.bilaplacian();
  ops.Bhess = Eigen::MatrixXd::Zero(np, nd);
  for (int a = 0; a < np; ++a)
    for (int m = 0; m < nm; ++m) ops.Bhess(a, ops.layout.moment_dof(m)) += bilap(m, a) * area;

  Eigen::MatrixXd Rn = Eigen::MatrixXd::Zero(np, np);  // sum_e int_e dnn m_a dn m_b
  Eigen::RowVectorXd boundary_avg = Eigen::RowVectorXd::Zero(np);
  Eigen::MatrixXd edge_dn_int(nv, np);  // int_e dn m_b per side
  double perimeter = 0.0;
  for (int j = 0; j < nv; ++j) {
    const Point2 a = ops.verts[j];
    const Point2 b = ops.verts[(j + 1) % nv];
    const double len = ops.edge_length[j];
    perimeter += len;
    const Eigen::MatrixXd Dn = ops.basis.directional(ops.edge_normal[j]);
    const Eigen::MatrixXd Dt = ops.basis.directional(ops.edge_tangent[j]);
    const Eigen::MatrixXd shear = Dn * lap + Dn * Dt * Dt;
    for (int i = 0; i <= k; ++i) {
      const Point2 p = a + (0.5 * (gl.nodes[i] + 1.0)) * (b - a);
      const Eigen::RowVectorXd sh = ops.basis.values(p).transpose() * shear;
      ops.Bhess.col(gl_dof(j, i)) -= (0.5 * len * gl.weights[i]) * sh.transpose();
    }
    edge_dn_int.row(j).setZero();
    for (std::size_t i = 0; i < edge_gauss.nodes.size(); ++i) {
      const Point2 p = a + (0.5 * (edge_gauss.nodes[i] + 1.0)) * (b - a);
      const Eigen::RowVectorXd vals = ops.basis.values(p).transpose();
      const double w = 0.5 * len * edge_gauss.weights[i];
      Rn += w * (Dn * Dn).transpose() * vals.transpose() * vals * Dn;
      boundary_avg += w * vals;
      edge_dn_int.row(j) += w * vals * Dn;
    }
  }
  ops.Bhess += Rn * ops.Pgrad;
  for (int i = 0; i < nv; ++i) {
    const int jin = (i + nv - 1) % nv;   // side arriving at vertex i
    const int jout = i;                  // side leaving vertex i
    const Eigen::RowVectorXd vals = ops.basis.values(ops.verts[i]).transpose();
    const Eigen::MatrixXd gin =
        ops.basis.directional(ops.edge_tangent[jin]) * ops.basis.directional(ops.edge_normal[jin]);
    const Eigen::MatrixXd gout = ops.basis.directional(ops.edge_tangent[jout]) *
                                 ops.basis.directional(ops.edge_normal[jout]);
    ops.Bhess.col(ops.layout.vertex_dof(i)) += (vals * (gin - gout)).transpose();
  }

  // constraints: boundary quasi-averages of the value and both gradient parts
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(3, np);
  C.row(0) = boundary_avg / perimeter;
  Eigen::MatrixXd Rc = Eigen::MatrixXd::Zero(3, nd);
  for (int j = 0; j < nv; ++j) {
    const Point2 a = ops.verts[j];
    const Point2 b = ops.verts[(j + 1) % nv];
    const double len = ops.edge_length[j];
    for (int i = 0; i <= k; ++i)
      Rc(0, gl_dof(j, i)) += 0.5 * len * gl.weights[i] / perimeter;
    // tangential part of int_e grad v integrates exactly to endpoint values
    const Point2 t = ops.edge_tangent[j];
    const Point2 n = ops.edge_normal[j];
    Rc(1, ops.layout.vertex_dof((j + 1) % nv)) += t.x / perimeter;
    Rc(1, ops.layout.vertex_dof(j)) -= t.x / perimeter;
    Rc(2, ops.layout.vertex_dof((j + 1) % nv)) += t.y / perimeter;
    Rc(2, ops.layout.vertex_dof(j)) -= t.y / perimeter;
    Rc.row(1) += (n.x / perimeter) * edge_dn_int.row(j) * ops.Pgrad;
    Rc.row(2) += (n.y / perimeter) * edge_dn_int.row(j) * ops.Pgrad;
  }
  // polynomial side of the gradient constraints, integrated exactly
  for (int a = 0; a < np; ++a) {
    double gx = 0.0;
    double gy = 0.0;
    for (int j = 0; j < nv; ++j) {
      const Point2 pa = ops.verts[j];
      const Point2 pb = ops.verts[(j + 1) % nv];
      for (std::size_t i = 0; i < edge_gauss.nodes.size(); ++i) {
        const Point2 p = pa + (0.5 * (edge_gauss.nodes[i] + 1.0)) * (pb - pa);
        const double w = 0.5 * ops.edge_length[j] * edge_gauss.weights[i];
        const Eigen::VectorXd vals = ops.basis.values(p);
        gx += w * vals.dot(ops.basis.dx().col(a));
        gy += w * vals.dot(ops.basis.dy().col(a));
      }
    }
    C(1, a) = gx / perimeter;
    C(2, a) = gy / perimeter;
  }

  Eigen::MatrixXd A2 = Eigen::MatrixXd::Zero(np + 3, np + 3);
  A2.topLeftCorner(np, np) = ops.G2;
  A2.block(np, 0, 3, np) = C;
  A2.block(0, np, np, 3) = C.transpose();
  Eigen::MatrixXd R2 = Eigen::MatrixXd::Zero(np + 3, nd);
  R2.topRows(np) = ops.Bhess;
  R2.bottomRows(3) = Rc;
  ops.Phess = A2.fullPivLu().solve(R2).topRows(np);
  ops.cond_h2 = svd_condition(A2);

  // ---- L2 projector with enhancement moments ----
  Eigen::MatrixXd B0(np, nd);
  const Eigen::MatrixXd MP = ops.Mass * ops.Pgrad;
  for (int a = 0; a < np; ++a) {
    if (a < nm) {
      B0.row(a).setZero();
      B0(a, ops.layout.moment_dof(a)) = area;
    } else {
      B0.row(a) = MP.row(a);
    }
  }
  ops.P0 = ops.Mass.llt().solve(B0);

  return ops;
}

}  // namespace ipvem
