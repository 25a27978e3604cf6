#include "ipvem/penalty.hpp"

#include "ipvem/errors.hpp"

namespace ipvem {

namespace {

Eigen::MatrixXd deriv_map(const MonomialBasis& basis, Point2 n_e, Point2 t_e, EdgeDeriv deriv) {
  const Eigen::MatrixXd Dn = basis.directional(n_e);
  switch (deriv) {
    case EdgeDeriv::Normal:
      return Dn;
    case EdgeDeriv::SecondNormal:
      return Dn * Dn;
    case EdgeDeriv::EffectiveShear: {
      const Eigen::MatrixXd Dt = basis.directional(t_e);
      return Dn * basis.laplacian() + Dn * Dt * Dt;
    }
  }
  return Dn;
}

struct EdgeQuad {
  std::vector<Point2> pts;
  Eigen::VectorXd w;
};

EdgeQuad edge_quadrature(const Edge& edge, int k) {
  const GaussRule g = gauss_rule(k + 2);
  const Point2 a = edge.midpoint - (0.5 * edge.length) * edge.tangent;
  const Point2 b = edge.midpoint + (0.5 * edge.length) * edge.tangent;
  EdgeQuad q;
  q.pts = segment_points(g.nodes, a, b);
  const auto w = segment_weights(g.weights, edge.length);
  q.w = Eigen::Map<const Eigen::VectorXd>(w.data(), static_cast<long>(w.size()));
  return q;
}

}  // namespace

Eigen::VectorXd edge_trace_eval(const MonomialBasis& basis, const Eigen::VectorXd& coeffs,
                                Point2 n_e, Point2 t_e, EdgeDeriv deriv,
                                std::span<const Point2> pts) {
  const Eigen::VectorXd dc = deriv_map(basis, n_e, t_e, deriv) * coeffs;
  Eigen::VectorXd out(static_cast<long>(pts.size()));
  for (std::size_t i = 0; i < pts.size(); ++i) out(static_cast<long>(i)) = basis.eval(dc, pts[i]);
  return out;
}

Eigen::MatrixXd edge_trace_rows(const ElementOperators& ops, const Eigen::MatrixXd& projector,
                                Point2 n_e, Point2 t_e, EdgeDeriv deriv,
                                std::span<const Point2> pts) {
  const Eigen::MatrixXd map = deriv_map(ops.basis, n_e, t_e, deriv) * projector;
  Eigen::MatrixXd rows(static_cast<long>(pts.size()), projector.cols());
  for (std::size_t i = 0; i < pts.size(); ++i)
    rows.row(static_cast<long>(i)) = ops.basis.values(pts[i]).transpose() * map;
  return rows;
}

EdgeCoupling assemble_penalty_blocks(const Edge& edge, int edge_id,
                                     const ElementOperators& minus,
                                     const ElementOperators* plus, double lambda,
                                     SchemeVariant variant) {
  if (edge.left != minus.cell)
    throw TopologyError("penalty block: minus operators do not belong to the edge's left cell");
  if (edge.boundary() != (plus == nullptr) || (plus && edge.right != plus->cell))
    throw TopologyError("penalty block: plus operators do not match the edge");

  const EdgeQuad q = edge_quadrature(edge, minus.layout.k);
  const Point2 n = edge.normal;
  const Point2 t = edge.tangent;
  const int ndm = minus.layout.size();
  const int ndp = plus ? plus->layout.size() : 0;

  const Eigen::MatrixXd& jump1_minus =
      variant == SchemeVariant::Hess ? minus.Phess : minus.Pgrad;
  // gradient jump of J1 (variant-selected projector)
  Eigen::MatrixXd J1(q.pts.size(), ndm + ndp);
  J1.leftCols(ndm) = edge_trace_rows(minus, jump1_minus, n, t, EdgeDeriv::Normal, q.pts);
  // gradient jump inside J2/J3 (always the H1 projector)
  Eigen::MatrixXd J23(q.pts.size(), ndm + ndp);
  J23.leftCols(ndm) = edge_trace_rows(minus, minus.Pgrad, n, t, EdgeDeriv::Normal, q.pts);
  // second-derivative average (variant-selected projector)
  const Eigen::MatrixXd& avg_minus = variant == SchemeVariant::Hess ? minus.Phess : minus.Pgrad;
  Eigen::MatrixXd A2(q.pts.size(), ndm + ndp);
  A2.leftCols(ndm) = edge_trace_rows(minus, avg_minus, n, t, EdgeDeriv::SecondNormal, q.pts);
  if (plus) {
    const Eigen::MatrixXd& jump1_plus =
        variant == SchemeVariant::Hess ? plus->Phess : plus->Pgrad;
    const Eigen::MatrixXd& avg_plus = variant == SchemeVariant::Hess ? plus->Phess : plus->Pgrad;
    J1.rightCols(ndp) = -edge_trace_rows(*plus, jump1_plus, n, t, EdgeDeriv::Normal, q.pts);
    J23.rightCols(ndp) = -edge_trace_rows(*plus, plus->Pgrad, n, t, EdgeDeriv::Normal, q.pts);
    A2.leftCols(ndm) *= 0.5;
    A2.rightCols(ndp) =
        0.5 * edge_trace_rows(*plus, avg_plus, n, t, EdgeDeriv::SecondNormal, q.pts);
  }

  EdgeCoupling out;
  out.edge = edge_id;
  out.minus_cell = minus.cell;
  out.plus_cell = plus ? plus->cell : -1;
  out.block = (lambda / edge.length) * J1.transpose() * q.w.asDiagonal() * J1 -
              J23.transpose() * q.w.asDiagonal() * A2 - A2.transpose() * q.w.asDiagonal() * J23;
  return out;
}

Eigen::VectorXd boundary_neumann_load(const Edge& edge, const ElementOperators& minus,
                                      const std::function<double(Point2)>& gN, double lambda,
                                      SchemeVariant variant) {
  if (!edge.boundary() || edge.left != minus.cell)
    throw TopologyError("Neumann load needs a boundary edge of the given cell");
  const EdgeQuad q = edge_quadrature(edge, minus.layout.k);
  const Eigen::MatrixXd& proj = variant == SchemeVariant::Hess ? minus.Phess : minus.Pgrad;
  const Eigen::MatrixXd T1 =
      edge_trace_rows(minus, proj, edge.normal, edge.tangent, EdgeDeriv::Normal, q.pts);
  const Eigen::MatrixXd T2 =
      edge_trace_rows(minus, proj, edge.normal, edge.tangent, EdgeDeriv::SecondNormal, q.pts);
  Eigen::VectorXd g(q.w.size());
  for (long i = 0; i < g.size(); ++i) g(i) = gN(q.pts[static_cast<std::size_t>(i)]);
  const Eigen::VectorXd gw = g.cwiseProduct(q.w);
  return (lambda / edge.length) * T1.transpose() * gw - T2.transpose() * gw;
}

}  // namespace ipvem
