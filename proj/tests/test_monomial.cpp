#include <doctest.h>

#include <cmath>
#include <random>

#include "ipvem/monomial.hpp"

using namespace ipvem;

TEST_CASE("graded lexicographic indexing") {
  CHECK(MonomialBasis::dimension(2) == 6);
  CHECK(MonomialBasis::dimension(3) == 10);
  const std::vector<std::pair<int, int>> expected{{0, 0}, {1, 0}, {0, 1}, {2, 0},
                                                  {1, 1}, {0, 2}, {3, 0}, {2, 1},
                                                  {1, 2}, {0, 3}};
  for (int i = 0; i < 10; ++i) {
    CHECK(MonomialBasis::exponents(i) == expected[i]);
    CHECK(MonomialBasis::index(expected[i].first, expected[i].second) == i);
  }
}

TEST_CASE("values match direct powers") {
  const MonomialBasis basis({0.3, -0.2}, 1.7, 4);
  const Point2 p{1.1, 0.4};
  const auto v = basis.values(p);
  REQUIRE(v.size() == basis.dim());
  const double sx = (p.x - 0.3) / 1.7;
  const double sy = (p.y + 0.2) / 1.7;
  for (int i = 0; i < basis.dim(); ++i) {
    const auto [ax, ay] = MonomialBasis::exponents(i);
    CHECK(v[i] == doctest::Approx(std::pow(sx, ax) * std::pow(sy, ay)).epsilon(1e-14));
    CHECK(basis.value(i, p) == doctest::Approx(v[i]).epsilon(1e-14));
  }
}

TEST_CASE("derivative maps are exact on coefficients") {
  const MonomialBasis basis({0.5, 0.5}, 0.25, 3);
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd c(basis.dim());
  for (int i = 0; i < c.size(); ++i) c[i] = dist(rng);

  const Eigen::VectorXd cx = basis.dx() * c;
  const Eigen::VectorXd cy = basis.dy() * c;
  const double h = 1e-6;
  for (int t = 0; t < 5; ++t) {
    const Point2 p{dist(rng), dist(rng)};
    const double fdx =
        (basis.eval(c, {p.x + h, p.y}) - basis.eval(c, {p.x - h, p.y})) / (2 * h);
    const double fdy =
        (basis.eval(c, {p.x, p.y + h}) - basis.eval(c, {p.x, p.y - h})) / (2 * h);
    CHECK(basis.eval(cx, p) == doctest::Approx(fdx).epsilon(1e-7).scale(1.0));
    CHECK(basis.eval(cy, p) == doctest::Approx(fdy).epsilon(1e-7).scale(1.0));
  }

  // mixed partials commute exactly
  CHECK(((basis.dx() * basis.dy() - basis.dy() * basis.dx()).norm()) == 0.0);
}

TEST_CASE("laplacian and bilaplacian on closed forms") {
  const Point2 c{0.25, 0.75};
  const double h = 0.5;
  const MonomialBasis basis(c, h, 4);
  // u = X^2 + XY has laplacian 2/h^2 in physical coordinates
  Eigen::VectorXd u = Eigen::VectorXd::Zero(basis.dim());
  u[MonomialBasis::index(2, 0)] = 1.0;
  u[MonomialBasis::index(1, 1)] = 1.0;
  const Eigen::VectorXd lap = basis.laplacian() * u;
  CHECK(basis.eval(lap, {0.1, 0.9}) == doctest::Approx(2.0 / (h * h)).epsilon(1e-13));

  // bilaplacian kills everything below degree 4 and maps X^4 to 24/h^4
  for (int i = 0; i < MonomialBasis::dimension(3); ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(basis.dim());
    e[i] = 1.0;
    CHECK((basis.bilaplacian() * e).norm() == 0.0);
  }
  Eigen::VectorXd q = Eigen::VectorXd::Zero(basis.dim());
  q[MonomialBasis::index(4, 0)] = 1.0;
  const Eigen::VectorXd bi = basis.bilaplacian() * q;
  CHECK(basis.eval(bi, {0.3, 0.2}) == doctest::Approx(24.0 / (h * h * h * h)).epsilon(1e-13));
  // X^2 Y^2 contributes through the mixed term: 2 * d^4/dx^2dy^2 included
  Eigen::VectorXd m = Eigen::VectorXd::Zero(basis.dim());
  m[MonomialBasis::index(2, 2)] = 1.0;
  const Eigen::VectorXd bim = basis.bilaplacian() * m;
  CHECK(basis.eval(bim, {0.3, 0.2}) == doctest::Approx(8.0 / (h * h * h * h)).epsilon(1e-13));
}

TEST_CASE("directional derivative combines the maps") {
  const MonomialBasis basis({0, 0}, 1.0, 2);
  const Point2 d{0.6, 0.8};
  Eigen::VectorXd u = Eigen::VectorXd::Zero(basis.dim());
  u[MonomialBasis::index(1, 0)] = 2.0;
  u[MonomialBasis::index(0, 1)] = -3.0;
  const Eigen::VectorXd du = basis.directional(d) * u;
  CHECK(basis.eval(du, {0.4, 0.1}) == doctest::Approx(2.0 * 0.6 - 3.0 * 0.8).epsilon(1e-14));
}
