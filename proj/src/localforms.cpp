#include "ipvem/localforms.hpp"

namespace ipvem {

Eigen::MatrixXd local_stiffness(const ElementOperators& ops) {
  const int nd = ops.layout.size();
  const Eigen::MatrixXd consistency = ops.Phess.transpose() * ops.G2 * ops.Phess;
  const Eigen::MatrixXd slack = Eigen::MatrixXd::Identity(nd, nd) - ops.D * ops.Phess;
  const double scale = 1.0 / (ops.hK() * ops.hK());
  return consistency + scale * slack.transpose() * slack;
}

Eigen::VectorXd local_load(const ElementOperators& ops, const std::function<double(Point2)>& f) {
  // moments (f, m_a)_K, then pulled back through the L2 projector
  Eigen::VectorXd fm = Eigen::VectorXd::Zero(ops.basis.dim());
  for (std::size_t q = 0; q < ops.quad.points.size(); ++q)
    fm += ops.quad.weights[q] * f(ops.quad.points[q]) * ops.basis.values(ops.quad.points[q]);
  return ops.P0.transpose() * fm;
}

}  // namespace ipvem
