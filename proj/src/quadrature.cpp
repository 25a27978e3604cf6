#include "ipvem/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "ipvem/errors.hpp"

namespace ipvem {

namespace {

/// Legendre P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {p0, 0.0};
  for (int m = 1; m < n; ++m) {
    const double p2 = ((2 * m + 1) * x * p1 - m * p0) / (m + 1);
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (p0 - x * p1) / (1.0 - x * x);
  return {p1, dp};
}

double legendre_value(int n, double x) { return legendre(n, x).first; }
double legendre_deriv(int n, double x) { return legendre(n, x).second; }

/// P_n''(x) from the Legendre differential equation.
double legendre_dderiv(int n, double x) {
  const auto [p, dp] = legendre(n, x);
  return (2.0 * x * dp - n * (n + 1) * p) / (1.0 - x * x);
}

std::vector<double> legendre_roots(int n) {
  std::vector<double> roots(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the classic Chebyshev-like estimate
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    roots[n - 1 - i] = x;  // ascending order
  }
  return roots;
}

/// Root of P_k' in (lo,hi), bracketed bisection refined by Newton.
double lobatto_interior_root(int k, double lo, double hi) {
  double flo = legendre_deriv(k, lo);
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = legendre_deriv(k, mid);
    if ((flo <= 0.0) == (fm <= 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 50; ++it) {
    const double dx = legendre_deriv(k, x) / legendre_dderiv(k, x);
    x -= dx;
    if (std::abs(dx) < 1e-16) break;
  }
  return x;
}

}  // namespace

GaussLobattoRule gauss_lobatto_rule(int k) {
  if (k < 1) throw ConfigError("Gauss-Lobatto rule needs order k >= 1");
  GaussLobattoRule rule;
  rule.order = k;
  rule.nodes.resize(k + 1);
  rule.weights.resize(k + 1);
  rule.nodes.front() = -1.0;
  rule.nodes.back() = 1.0;
  if (k >= 2) {
    // interior nodes are the roots of P_k', bracketed by the roots of P_k
    const auto pk_roots = legendre_roots(k);
    for (int i = 0; i + 1 < k; ++i)
      rule.nodes[i + 1] = lobatto_interior_root(k, pk_roots[i], pk_roots[i + 1]);
    if (k % 2 == 0) rule.nodes[k / 2] = 0.0;
  }
  const double scale = 2.0 / (k * (k + 1));
  for (int i = 0; i <= k; ++i) {
    const double p = legendre_value(k, rule.nodes[i]);
    rule.weights[i] = scale / (p * p);
  }
  return rule;
}

GaussRule gauss_rule(int n) {
  if (n < 1) throw ConfigError("Gauss rule needs at least one point");
  GaussRule rule;
  rule.nodes = legendre_roots(n);
  rule.weights.resize(n);
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rule.nodes[i];
    const double dp = legendre_deriv(n, x);
    rule.weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

double PolygonQuadrature::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

PolygonQuadrature polygon_quadrature(std::span<const Point2> poly, int degree) {
  if (degree < 0) throw ConfigError("quadrature degree must be non-negative");
  const Point2 c = polygon_centroid(poly);
  // collapsed map p = (1-u) P0 + u(1-v) P1 + uv P2 has Jacobian 2|T| u, so
  // a degree-d integrand needs degree d+1 in u and d in v
  const GaussRule gu = gauss_rule((degree + 3) / 2);
  const GaussRule gv = gauss_rule((degree + 2) / 2);
  PolygonQuadrature quad;
  const std::size_t n = poly.size();
  quad.points.reserve(n * gu.nodes.size() * gv.nodes.size());
  quad.weights.reserve(quad.points.capacity());
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 p1 = poly[i];
    const Point2 p2 = poly[(i + 1) % n];
    const double area2 = cross(p1 - c, p2 - c);  // twice the fan triangle area
    if (!(area2 > 0.0))
      throw GeometryError("polygon quadrature requires star-shapedness w.r.t. the centroid");
    for (std::size_t a = 0; a < gu.nodes.size(); ++a) {
      const double u = 0.5 * (gu.nodes[a] + 1.0);
      for (std::size_t b = 0; b < gv.nodes.size(); ++b) {
        const double v = 0.5 * (gv.nodes[b] + 1.0);
        quad.points.push_back((1.0 - u) * c + (u * (1.0 - v)) * p1 + (u * v) * p2);
        quad.weights.push_back(0.25 * gu.weights[a] * gv.weights[b] * area2 * u);
      }
    }
  }
  return quad;
}

std::vector<Point2> segment_points(std::span<const double> ref_nodes, Point2 a, Point2 b) {
  std::vector<Point2> pts(ref_nodes.size());
  for (std::size_t i = 0; i < ref_nodes.size(); ++i)
    pts[i] = a + (0.5 * (ref_nodes[i] + 1.0)) * (b - a);
  return pts;
}

std::vector<double> segment_weights(std::span<const double> ref_weights, double length) {
  std::vector<double> w(ref_weights.size());
  for (std::size_t i = 0; i < ref_weights.size(); ++i) w[i] = 0.5 * length * ref_weights[i];
  return w;
}

}  // namespace ipvem
