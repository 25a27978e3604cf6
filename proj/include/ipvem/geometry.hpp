#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace ipvem {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

inline Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
inline Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
inline Point2 operator*(double s, Point2 p) { return {s * p.x, s * p.y}; }
inline Point2 operator*(Point2 p, double s) { return {s * p.x, s * p.y}; }
inline Point2 operator/(Point2 p, double s) { return {p.x / s, p.y / s}; }

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 p) { return std::hypot(p.x, p.y); }
inline double distance(Point2 a, Point2 b) { return norm(a - b); }

/// Rotates by +90 degrees (counter-clockwise).
inline Point2 rot90(Point2 p) { return {-p.y, p.x}; }

/// Signed area by the shoelace formula; positive for counter-clockwise order.
double polygon_area(std::span<const Point2> poly);

/// Area centroid (first moments over signed area).
Point2 polygon_centroid(std::span<const Point2> poly);

/// Largest pairwise vertex distance.
double polygon_diameter(std::span<const Point2> poly);

}  // namespace ipvem
