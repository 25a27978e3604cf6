#include "ipvem/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace ipvem {

std::vector<double> EstimatorResult::local_squared() const {
  std::vector<double> s(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i) s[i] = cells[i].squared();
  return s;
}

EstimatorResult estimate(const PolygonalMesh& mesh, const EdgeTable& edges,
                         const GlobalDofMap& dofs, const std::vector<ElementOperators>& ops,
                         const Solution& sol, const std::function<double(Point2)>& f,
                         const std::function<double(Point2, Point2)>& gN,
                         EstimatorVariant variant) {
  EstimatorResult res;
  res.cells.resize(mesh.cell_count());
  std::vector<ElementEstimate> sq(mesh.cell_count());  // accumulate squares

  const int k = dofs.k;
  const GaussRule rule = gauss_rule(k + 2);
  const auto side_coeffs = [&](int c, bool second_order) -> const Eigen::VectorXd& {
    return second_order ? sol.hess_coeffs[c] : sol.grad_coeffs[c];
  };
  const bool eta1_hess = variant == EstimatorVariant::HessFull;
  const bool eta236_hess = variant != EstimatorVariant::Grad;

  for (int e = 0; e < edges.edge_count(); ++e) {
    const Edge& edge = edges.edge(e);
    const Point2 a = edge.midpoint - (0.5 * edge.length) * edge.tangent;
    const Point2 b = edge.midpoint + (0.5 * edge.length) * edge.tangent;
    const auto pts = segment_points(rule.nodes, a, b);
    const auto w = segment_weights(rule.weights, edge.length);

    const auto jump_sq = [&](EdgeDeriv deriv, bool second_order) {
      Eigen::VectorXd vals =
          edge_trace_eval(ops[edge.left].basis, side_coeffs(edge.left, second_order),
                          edge.normal, edge.tangent, deriv, pts);
      if (!edge.boundary())
        vals -= edge_trace_eval(ops[edge.right].basis, side_coeffs(edge.right, second_order),
                                edge.normal, edge.tangent, deriv, pts);
      else if (deriv == EdgeDeriv::Normal && gN)
        for (long i = 0; i < vals.size(); ++i)
          vals(i) -= gN(pts[static_cast<std::size_t>(i)], edge.normal);
      double s = 0.0;
      for (long i = 0; i < vals.size(); ++i) s += w[static_cast<std::size_t>(i)] * vals(i) * vals(i);
      return s;
    };

    const double j1 = jump_sq(EdgeDeriv::Normal, eta1_hess) / edge.length;
    sq[edge.left].eta1 += j1;
    if (!edge.boundary()) sq[edge.right].eta1 += j1;

    if (!edge.boundary()) {
      const double j2 = jump_sq(EdgeDeriv::SecondNormal, eta236_hess) * edge.length;
      const double j3 =
          jump_sq(EdgeDeriv::EffectiveShear, eta236_hess) * std::pow(edge.length, 3);
      sq[edge.left].eta2 += j2;
      sq[edge.right].eta2 += j2;
      sq[edge.left].eta3 += j3;
      sq[edge.right].eta3 += j3;
    }
  }

  for (int c = 0; c < mesh.cell_count(); ++c) {
    const ElementOperators& op = ops[c];
    const double h = op.hK();
    const auto& map = dofs.cell_dofs[c];
    Eigen::VectorXd local(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) local(static_cast<long>(i)) = sol.dofs(map[i]);

    const Eigen::VectorXd slack = local - op.D * op.Pgrad * local;
    sq[c].eta4 = slack.squaredNorm() / (h * h);

    // L2 projection of the load on this cell
    Eigen::VectorXd fm = Eigen::VectorXd::Zero(op.basis.dim());
    for (std::size_t q = 0; q < op.quad.points.size(); ++q)
      fm += op.quad.weights[q] * f(op.quad.points[q]) * op.basis.values(op.quad.points[q]);
    const Eigen::VectorXd fh = op.Mass.llt().solve(fm);
    const Eigen::VectorXd vol =
        fh - op.basis.bilaplacian() * side_coeffs(c, eta236_hess);  // zero bilaplacian for k<=3
    double osc = 0.0;
    double volres = 0.0;
    for (std::size_t q = 0; q < op.quad.points.size(); ++q) {
      const Point2 p = op.quad.points[q];
      const Eigen::VectorXd vals = op.basis.values(p);
      const double fhp = vals.dot(fh);
      const double d = f(p) - fhp;
      osc += op.quad.weights[q] * d * d;
      const double r = vals.dot(vol);
      volres += op.quad.weights[q] * r * r;
    }
    sq[c].eta5 = std::pow(h, 4) * osc;
    sq[c].eta6 = std::pow(h, 4) * volres;
  }

  double total = 0.0;
  std::array<double, 6> comp{};
  for (int c = 0; c < mesh.cell_count(); ++c) {
    ElementEstimate& out = res.cells[c];
    out.eta1 = std::sqrt(sq[c].eta1);
    out.eta2 = std::sqrt(sq[c].eta2);
    out.eta3 = std::sqrt(sq[c].eta3);
    out.eta4 = std::sqrt(sq[c].eta4);
    out.eta5 = std::sqrt(sq[c].eta5);
    out.eta6 = std::sqrt(sq[c].eta6);
    comp[0] += sq[c].eta1;
    comp[1] += sq[c].eta2;
    comp[2] += sq[c].eta3;
    comp[3] += sq[c].eta4;
    comp[4] += sq[c].eta5;
    comp[5] += sq[c].eta6;
    total += out.squared();
  }
  for (int i = 0; i < 6; ++i) res.components[i] = std::sqrt(comp[i]);
  res.eta = std::sqrt(total);

  res.descending.resize(mesh.cell_count());
  std::iota(res.descending.begin(), res.descending.end(), 0);
  std::stable_sort(res.descending.begin(), res.descending.end(), [&](int a, int b) {
    return res.cells[a].squared() > res.cells[b].squared();
  });
  return res;
}

void write_breakdown_csv(std::ostream& os, const EstimatorResult& result) {
  os << "cell,eta1,eta2,eta3,eta4,eta5,eta6,etaK\n";
  os.precision(12);
  for (std::size_t c = 0; c < result.cells.size(); ++c) {
    const ElementEstimate& e = result.cells[c];
    os << c << ',' << e.eta1 << ',' << e.eta2 << ',' << e.eta3 << ',' << e.eta4 << ',' << e.eta5
       << ',' << e.eta6 << ',' << e.total() << '\n';
  }
}

}  // namespace ipvem
