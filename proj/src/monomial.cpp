#include "ipvem/monomial.hpp"

#include <cmath>

namespace ipvem {

MonomialBasis::MonomialBasis(Point2 center, double scale, int order)
    : center_(center), scale_(scale), order_(order) {
  const int n = dim();
  dx_ = Eigen::MatrixXd::Zero(n, n);
  dy_ = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const auto [ax, ay] = exponents(i);
    if (ax > 0) dx_(index(ax - 1, ay), i) = ax / scale_;
    if (ay > 0) dy_(index(ax, ay - 1), i) = ay / scale_;
  }
}

std::pair<int, int> MonomialBasis::exponents(int i) {
  int deg = 0;
  while (dimension(deg) <= i) ++deg;
  const int ay = i - deg * (deg + 1) / 2;
  return {deg - ay, ay};
}

double MonomialBasis::value(int i, Point2 p) const {
  const auto [ax, ay] = exponents(i);
  const double sx = (p.x - center_.x) / scale_;
  const double sy = (p.y - center_.y) / scale_;
  double v = 1.0;
  for (int a = 0; a < ax; ++a) v *= sx;
  for (int a = 0; a < ay; ++a) v *= sy;
  return v;
}

Eigen::VectorXd MonomialBasis::values(Point2 p) const {
  const double sx = (p.x - center_.x) / scale_;
  const double sy = (p.y - center_.y) / scale_;
  Eigen::VectorXd v(dim());
  v(0) = 1.0;
  for (int deg = 1, base = 1; deg <= order_; base += deg + 1, ++deg) {
    const int prev = base - deg;  // start of degree deg-1 block
    for (int j = 0; j < deg; ++j) v(base + j) = v(prev + j) * sx;
    v(base + deg) = v(prev + deg - 1) * sy;
  }
  return v;
}

double MonomialBasis::eval(const Eigen::VectorXd& coeffs, Point2 p) const {
  return values(p).dot(coeffs);
}

Eigen::MatrixXd MonomialBasis::bilaplacian() const {
  const Eigen::MatrixXd lap = laplacian();
  return lap * lap;
}

}  // namespace ipvem
