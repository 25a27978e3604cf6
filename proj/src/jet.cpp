#include "ipvem/jet.hpp"

#include <cmath>

#include "ipvem/errors.hpp"

namespace ipvem {

namespace {

constexpr std::array<std::pair<int, int>, Jet4::n_coeff> exponent_table() {
  std::array<std::pair<int, int>, Jet4::n_coeff> t{};
  int i = 0;
  for (int d = 0; d <= Jet4::degree; ++d)
    for (int iy = 0; iy <= d; ++iy) t[i++] = {d - iy, iy};
  return t;
}

constexpr auto kExponents = exponent_table();

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

Jet4 Jet4::constant(double v) {
  Jet4 j;
  j.c_[0] = v;
  return j;
}

Jet4 Jet4::variable_x(double x0) {
  Jet4 j;
  j.c_[0] = x0;
  j.coeff(1, 0) = 1.0;
  return j;
}

Jet4 Jet4::variable_y(double y0) {
  Jet4 j;
  j.c_[0] = y0;
  j.coeff(0, 1) = 1.0;
  return j;
}

double Jet4::derivative(int ix, int iy) const {
  return coeff(ix, iy) * factorial(ix) * factorial(iy);
}

Jet4 Jet4::operator-() const {
  Jet4 r;
  for (int i = 0; i < n_coeff; ++i) r.c_[i] = -c_[i];
  return r;
}

Jet4& Jet4::operator+=(const Jet4& o) {
  for (int i = 0; i < n_coeff; ++i) c_[i] += o.c_[i];
  return *this;
}

Jet4& Jet4::operator-=(const Jet4& o) {
  for (int i = 0; i < n_coeff; ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet4& Jet4::operator*=(double s) {
  for (int i = 0; i < n_coeff; ++i) c_[i] *= s;
  return *this;
}

Jet4 operator*(const Jet4& a, const Jet4& b) {
  Jet4 r;
  for (int i = 0; i < Jet4::n_coeff; ++i) {
    if (a.c_[i] == 0.0) continue;
    const auto [ax, ay] = kExponents[i];
    for (int j = 0; j < Jet4::n_coeff; ++j) {
      const auto [bx, by] = kExponents[j];
      if (ax + ay + bx + by > Jet4::degree) continue;
      r.coeff(ax + bx, ay + by) += a.c_[i] * b.c_[j];
    }
  }
  return r;
}

Jet4 Jet4::compose(const std::array<double, 5>& g, const Jet4& a) {
  Jet4 h = a;
  h.c_[0] = 0.0;  // the pure increment
  // Horner over the truncated series: g0 + h(g1 + h(g2 + h(g3 + h g4)))
  Jet4 r = Jet4::constant(g[4]);
  for (int m = 3; m >= 0; --m) {
    r = r * h;
    r.c_[0] += g[m];
  }
  return r;
}

Jet4 sin(const Jet4& a) {
  const double v = a.value();
  const double s = std::sin(v);
  const double c = std::cos(v);
  return Jet4::compose({s, c, -s / 2.0, -c / 6.0, s / 24.0}, a);
}

Jet4 cos(const Jet4& a) {
  const double v = a.value();
  const double s = std::sin(v);
  const double c = std::cos(v);
  return Jet4::compose({c, -s, -c / 2.0, s / 6.0, c / 24.0}, a);
}

Jet4 exp(const Jet4& a) {
  const double e = std::exp(a.value());
  return Jet4::compose({e, e, e / 2.0, e / 6.0, e / 24.0}, a);
}

Jet4 pow(const Jet4& a, double p) {
  const double v = a.value();
  if (!(v > 0.0))
    throw SolveError("pow of a jet requires a positive base value");
  std::array<double, 5> g{};
  double deriv = std::pow(v, p);  // m-th derivative of t^p at v, divided by m! below
  for (int m = 0; m <= 4; ++m) {
    g[m] = deriv / factorial(m);
    deriv *= (p - m) / v;
  }
  if (!std::isfinite(g[4])) throw SolveError("pow of a jet is singular at this point");
  return Jet4::compose(g, a);
}

Jet4 sqrt(const Jet4& a) { return pow(a, 0.5); }

double biharmonic(const Jet4& u) {
  const double v = u.derivative(4, 0) + 2.0 * u.derivative(2, 2) + u.derivative(0, 4);
  if (!std::isfinite(v)) throw SolveError("biharmonic of a singular expansion");
  return v;
}

}  // namespace ipvem
