#include "ipvem/geometry.hpp"

namespace ipvem {

double polygon_area(std::span<const Point2> poly) {
  const std::size_t n = poly.size();
  double a = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    a += cross(p, q);
  }
  return 0.5 * a;
}

Point2 polygon_centroid(std::span<const Point2> poly) {
  const std::size_t n = poly.size();
  double a = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    const double w = cross(p, q);
    a += w;
    cx += w * (p.x + q.x);
    cy += w * (p.y + q.y);
  }
  a *= 0.5;
  return {cx / (6.0 * a), cy / (6.0 * a)};
}

double polygon_diameter(std::span<const Point2> poly) {
  double d = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i)
    for (std::size_t j = i + 1; j < poly.size(); ++j)
      d = std::max(d, distance(poly[i], poly[j]));
  return d;
}

}  // namespace ipvem
