#include <doctest.h>

#include <cmath>
#include <random>

#include "ipvem/errors.hpp"
#include "ipvem/jet.hpp"
#include "ipvem/problems.hpp"
#include "oracles.hpp"

using namespace ipvem;

TEST_CASE("polynomial expansions are exact") {
  // u = x^3 y at (2, -1)
  const double x0 = 2.0;
  const double y0 = -1.0;
  const Jet4 x = Jet4::variable_x(x0);
  const Jet4 y = Jet4::variable_y(y0);
  const Jet4 u = x * x * x * y;
  CHECK(u.value() == doctest::Approx(x0 * x0 * x0 * y0).epsilon(1e-15));
  CHECK(u.derivative(1, 0) == doctest::Approx(3 * x0 * x0 * y0).epsilon(1e-15));
  CHECK(u.derivative(0, 1) == doctest::Approx(x0 * x0 * x0).epsilon(1e-15));
  CHECK(u.derivative(2, 0) == doctest::Approx(6 * x0 * y0).epsilon(1e-15));
  CHECK(u.derivative(2, 1) == doctest::Approx(6 * x0).epsilon(1e-15));
  CHECK(u.derivative(3, 1) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(u.derivative(4, 0) == 0.0);
  CHECK(biharmonic(u) == doctest::Approx(0.0).epsilon(1e-15).scale(1.0));

  // biharmonic of x^4 + x^2 y^2 + y^4 is 24 + 8 + 24
  const Jet4 q = x * x * x * x + x * x * y * y + y * y * y * y;
  CHECK(biharmonic(q) == doctest::Approx(56.0).epsilon(1e-13));
}

TEST_CASE("transcendental compositions match finite differences") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> dist(0.2, 0.8);
  const auto u_fn = [](double x, double y) {
    return std::sin(3.0 * x + y) * std::exp(0.5 * x * y) + std::pow(x * x + y * y + 0.3, 1.7);
  };
  const auto u_jet = [](double x, double y) {
    const Jet4 X = Jet4::variable_x(x);
    const Jet4 Y = Jet4::variable_y(y);
    return sin(3.0 * X + Y) * exp(0.5 * X * Y) + pow(X * X + Y * Y + 0.3, 1.7);
  };
  for (int t = 0; t < 10; ++t) {
    const Point2 p{dist(rng), dist(rng)};
    const Jet4 j = u_jet(p.x, p.y);
    CHECK(j.value() == doctest::Approx(u_fn(p.x, p.y)).epsilon(1e-13));
    const double fd = oracle::fd_biharmonic(u_fn, p, 1e-2);
    CHECK(biharmonic(j) == doctest::Approx(fd).epsilon(1e-6).scale(std::abs(fd) + 1.0));
  }
}

TEST_CASE("sqrt squares back to the input") {
  const Jet4 a = Jet4::variable_x(1.3) * Jet4::variable_y(0.7) + 2.0;
  const Jet4 r = sqrt(a);
  const Jet4 back = r * r;
  for (int ix = 0; ix <= 4; ++ix)
    for (int iy = 0; ix + iy <= 4; ++iy)
      CHECK(back.coeff(ix, iy) == doctest::Approx(a.coeff(ix, iy)).epsilon(1e-13).scale(1.0));
}

TEST_CASE("pow rejects non-positive bases") {
  const Jet4 zero = Jet4::variable_x(0.0) * Jet4::variable_y(0.0);
  CHECK_THROWS_AS(pow(zero, 0.5), SolveError);
  const Jet4 neg = Jet4::constant(-1.0);
  CHECK_THROWS_AS(pow(neg, 2.0), SolveError);
}

TEST_CASE("benchmark loads agree with finite differences") {
  struct Probe {
    const char* id;
    Point2 p;
    double delta;
  };
  const Probe probes[] = {
      {"ex1", {0.31, 0.62}, 1e-2},
      {"ex1-inhom", {0.55, 0.21}, 1e-2},
      {"ex2", {0.48, 0.13}, 1e-3},
      {"ex3", {0.82, 0.27}, 1e-2},
  };
  for (const auto& probe : probes) {
    const auto problem = make_problem(probe.id);
    const auto u_fn = [&](double x, double y) { return problem.u({x, y}); };
    const double fd = oracle::fd_biharmonic(u_fn, probe.p, probe.delta);
    const double f = problem.f(probe.p);
    CHECK(f == doctest::Approx(fd).epsilon(5e-6).scale(std::abs(fd) + 1.0));
  }
}

TEST_CASE("ex1 closed-form values") {
  const auto problem = make_problem("ex1");
  // u = 10 x^2 y^2 (1-x)^2 (1-y)^2 sin(pi x)
  CHECK(problem.u({0.5, 0.5}) == doctest::Approx(10.0 * 0.00390625).epsilon(1e-13));
  CHECK(problem.u({0.0, 0.3}) == doctest::Approx(0.0).epsilon(1e-15).scale(1.0));
  CHECK(problem.u({0.7, 1.0}) == doctest::Approx(0.0).epsilon(1e-15).scale(1.0));
  // clamped boundary: normal derivative vanishes too
  CHECK(problem.gN({0.0, 0.3}, {-1.0, 0.0}) == doctest::Approx(0.0).epsilon(1e-13).scale(1.0));
  const auto inhom = make_problem("ex1-inhom");
  // shifted by x^2 + y^2, which is biharmonic-free
  CHECK(inhom.u({0.3, 0.4}) ==
        doctest::Approx(problem.u({0.3, 0.4}) + 0.25).epsilon(1e-13));
  CHECK(inhom.f({0.3, 0.4}) == doctest::Approx(problem.f({0.3, 0.4})).epsilon(1e-12));
}

TEST_CASE("ex3 expansion handles the regularized corner distance") {
  const double delta = 1e-6;
  const auto problem = make_problem("ex3", delta);
  const Point2 p{0.75, 0.3};
  const double r2 = (p.x - 0.5) * (p.x - 0.5) + (p.y - 0.5) * (p.y - 0.5) + delta;
  CHECK(problem.u(p) == doctest::Approx(std::pow(r2, 5.0 / 6.0)).epsilon(1e-13));
  // right at the corner the regularization keeps everything finite
  CHECK(std::isfinite(problem.f({0.5, 0.5})));
  CHECK_THROWS_AS(make_problem("ex3", 0.0).f({0.5, 0.5}), SolveError);
}

TEST_CASE("patch problem is a quadratic fixed by the seed") {
  const auto a = make_problem("patch", 1e-6, 123);
  const auto b = make_problem("patch", 1e-6, 123);
  const auto c = make_problem("patch", 1e-6, 124);
  const Point2 p{0.37, 0.81};
  CHECK(a.u(p) == b.u(p));
  CHECK(a.u(p) != c.u(p));
  CHECK(a.f(p) == doctest::Approx(0.0).epsilon(1e-15).scale(1.0));
  // quadratic: fourth derivatives vanish, hessian is constant
  const Eigen::Matrix2d h1 = a.hess({0.1, 0.2});
  const Eigen::Matrix2d h2 = a.hess({0.9, 0.6});
  CHECK((h1 - h2).cwiseAbs().maxCoeff() < 1e-13);
  CHECK_THROWS_AS(make_problem("nope"), ConfigError);
}
