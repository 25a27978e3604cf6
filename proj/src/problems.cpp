#include "ipvem/problems.hpp"

#include <numbers>
#include <random>

#include "ipvem/errors.hpp"

namespace ipvem {

Point2 BenchmarkProblem::grad(Point2 p) const {
  const Jet4 j = at(p);
  return {j.derivative(1, 0), j.derivative(0, 1)};
}

Eigen::Matrix2d BenchmarkProblem::hess(Point2 p) const {
  const Jet4 j = at(p);
  Eigen::Matrix2d h;
  h(0, 0) = j.derivative(2, 0);
  h(0, 1) = j.derivative(1, 1);
  h(1, 0) = h(0, 1);
  h(1, 1) = j.derivative(0, 2);
  return h;
}

BenchmarkProblem make_problem(const std::string& id, double delta, unsigned patch_seed) {
  BenchmarkProblem p;
  p.id = id;
  if (id == "ex1" || id == "ex1-inhom") {
    const bool lift = id == "ex1-inhom";
    p.expansion = [lift](double x0, double y0) {
      const Jet4 x = Jet4::variable_x(x0);
      const Jet4 y = Jet4::variable_y(y0);
      const Jet4 bubble = (x * x) * (y * y) * ((1.0 - x) * (1.0 - x)) * ((1.0 - y) * (1.0 - y));
      Jet4 u = 10.0 * bubble * sin(std::numbers::pi * x);
      if (lift) u += x * x + y * y;
      return u;
    };
  } else if (id == "ex2") {
    p.expansion = [](double x0, double y0) {
      const Jet4 x = Jet4::variable_x(x0);
      const Jet4 y = Jet4::variable_y(y0);
      const Jet4 r2 = (x - 0.5) * (x - 0.5) + (y - 0.117) * (y - 0.117);
      return x * y * (1.0 - x) * (1.0 - y) * exp(-1000.0 * r2);
    };
  } else if (id == "ex3") {
    p.domain = Domain::LShape;
    p.expansion = [delta](double x0, double y0) {
      const Jet4 x = Jet4::variable_x(x0);
      const Jet4 y = Jet4::variable_y(y0);
      const Jet4 r2 = (x - 0.5) * (x - 0.5) + (y - 0.5) * (y - 0.5) + delta;
      return pow(r2, 5.0 / 6.0);
    };
  } else if (id == "patch") {
    std::mt19937 rng(patch_seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::array<double, 6> c;
    for (double& v : c) v = dist(rng);
    p.expansion = [c](double x0, double y0) {
      const Jet4 x = Jet4::variable_x(x0);
      const Jet4 y = Jet4::variable_y(y0);
      return c[0] + c[1] * x + c[2] * y + c[3] * (x * x) + c[4] * (x * y) + c[5] * (y * y);
    };
  } else {
    throw ConfigError("unknown problem id: " + id);
  }
  return p;
}

}  // namespace ipvem
