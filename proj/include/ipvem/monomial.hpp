#pragma once

#include <utility>

#include <Eigen/Dense>

#include "ipvem/geometry.hpp"

namespace ipvem {

/// Scaled monomials m_a(x) = ((x - x_K)/h_K)^a on a cell, graded
/// lexicographic: 1, X, Y, X^2, XY, Y^2, ... Coefficient vectors live in
/// this basis; derivatives act as exact linear maps between coefficient
/// vectors (zero-padded back into the same length).
class MonomialBasis {
 public:
  MonomialBasis() : MonomialBasis({0.0, 0.0}, 1.0, 0) {}
  MonomialBasis(Point2 center, double scale, int order);

  int order() const { return order_; }
  int dim() const { return dimension(order_); }
  Point2 center() const { return center_; }
  double scale() const { return scale_; }

  static int dimension(int order) { return (order + 1) * (order + 2) / 2; }
  static std::pair<int, int> exponents(int i);
  static int index(int ax, int ay) { return (ax + ay) * (ax + ay + 1) / 2 + ay; }

  double value(int i, Point2 p) const;
  Eigen::VectorXd values(Point2 p) const;
  double eval(const Eigen::VectorXd& coeffs, Point2 p) const;

  /// Coefficient maps for d/dx and d/dy.
  const Eigen::MatrixXd& dx() const { return dx_; }
  const Eigen::MatrixXd& dy() const { return dy_; }
  /// d.x * dx + d.y * dy
  Eigen::MatrixXd directional(Point2 d) const { return d.x * dx_ + d.y * dy_; }
  Eigen::MatrixXd laplacian() const { return dx_ * dx_ + dy_ * dy_; }
  Eigen::MatrixXd bilaplacian() const;

 private:
  Point2 center_;
  double scale_;
  int order_;
  Eigen::MatrixXd dx_;
  Eigen::MatrixXd dy_;
};

}  // namespace ipvem
