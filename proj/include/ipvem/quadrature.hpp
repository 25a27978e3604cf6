#pragma once

#include <span>
#include <vector>

#include "ipvem/geometry.hpp"

namespace ipvem {

/// Gauss-Lobatto rule with k+1 points on [-1,1]; exact through degree 2k-1,
/// weights sum to 2, endpoints included.
struct GaussLobattoRule {
  int order = 0;  // k
  std::vector<double> nodes;
  std::vector<double> weights;
  int point_count() const { return static_cast<int>(nodes.size()); }
};

GaussLobattoRule gauss_lobatto_rule(int k);

/// n-point Gauss-Legendre rule on [-1,1]; exact through degree 2n-1.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_rule(int n);

/// Quadrature over a star-shaped polygon: centroid fan, each triangle covered
/// by a collapsed tensor Gauss rule exact to the requested total degree.
/// All weights are positive and sum to the polygon area.
struct PolygonQuadrature {
  std::vector<Point2> points;
  std::vector<double> weights;
  double total_weight() const;
};

PolygonQuadrature polygon_quadrature(std::span<const Point2> poly, int degree);

/// Maps reference nodes on [-1,1] to the segment from a to b.
std::vector<Point2> segment_points(std::span<const double> ref_nodes, Point2 a, Point2 b);
/// Physical weights for a segment of the given length.
std::vector<double> segment_weights(std::span<const double> ref_weights, double length);

}  // namespace ipvem
