#pragma once

#include <array>

#include "ipvem/geometry.hpp"

namespace ipvem {

/// Truncated bivariate Taylor expansion through total degree 4. Entry (i,j)
/// stores the Taylor coefficient d^{i+j}u / (dx^i dy^j) / (i! j!) at the
/// expansion point, graded order. Arithmetic is exact truncated-series
/// arithmetic, so fourth derivatives of composed expressions come out to
/// machine precision.
class Jet4 {
 public:
  static constexpr int degree = 4;
  static constexpr int n_coeff = 15;

  Jet4() { c_.fill(0.0); }

  static Jet4 constant(double v);
  static Jet4 variable_x(double x0);
  static Jet4 variable_y(double y0);

  static int index(int ix, int iy) { return (ix + iy) * (ix + iy + 1) / 2 + iy; }

  double coeff(int ix, int iy) const { return c_[index(ix, iy)]; }
  double& coeff(int ix, int iy) { return c_[index(ix, iy)]; }

  double value() const { return c_[0]; }
  /// Plain partial derivative (Taylor coefficient times the factorials).
  double derivative(int ix, int iy) const;

  Jet4 operator-() const;
  Jet4& operator+=(const Jet4& o);
  Jet4& operator-=(const Jet4& o);
  Jet4& operator*=(double s);

  friend Jet4 operator+(Jet4 a, const Jet4& b) { return a += b; }
  friend Jet4 operator-(Jet4 a, const Jet4& b) { return a -= b; }
  friend Jet4 operator*(Jet4 a, double s) { return a *= s; }
  friend Jet4 operator*(double s, Jet4 a) { return a *= s; }
  friend Jet4 operator+(Jet4 a, double b) { a.c_[0] += b; return a; }
  friend Jet4 operator+(double b, Jet4 a) { a.c_[0] += b; return a; }
  friend Jet4 operator-(Jet4 a, double b) { a.c_[0] -= b; return a; }
  friend Jet4 operator-(double b, const Jet4& a) { Jet4 r = -a; r.c_[0] += b; return r; }
  friend Jet4 operator*(const Jet4& a, const Jet4& b);

  friend Jet4 sin(const Jet4& a);
  friend Jet4 cos(const Jet4& a);
  friend Jet4 exp(const Jet4& a);
  friend Jet4 sqrt(const Jet4& a);
  /// a^p for real p; requires a positive base value.
  friend Jet4 pow(const Jet4& a, double p);

 private:
  /// Composes a univariate series g (g[m] = g^(m)(a0)/m!) with the
  /// zero-constant part of a.
  static Jet4 compose(const std::array<double, 5>& g, const Jet4& a);

  std::array<double, n_coeff> c_;
};

/// Biharmonic operator applied to the expansion: u_xxxx + 2 u_xxyy + u_yyyy.
double biharmonic(const Jet4& u);

}  // namespace ipvem
