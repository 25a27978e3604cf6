#pragma once

#include <array>
#include <iosfwd>

#include "ipvem/system.hpp"

namespace ipvem {

/// Which projector feeds the jump/average terms: Grad uses the H1 projector
/// throughout; Hess switches the second-derivative, shear and volume terms
/// (eta2, eta3, eta6) to the H2 projector while the gradient-jump term eta1
/// stays with the H1 projector; HessFull switches eta1 as well.
enum class EstimatorVariant { Grad, Hess, HessFull };

struct ElementEstimate {
  static constexpr int component_count = 6;
  double eta1 = 0.0;  // gradient jumps, all edges of the cell
  double eta2 = 0.0;  // second-normal-derivative jumps, interior edges
  double eta3 = 0.0;  // effective-shear jumps, interior edges
  double eta4 = 0.0;  // projection slack of the DoF vector
  double eta5 = 0.0;  // data oscillation
  double eta6 = 0.0;  // volume residual
  double squared() const {
    return eta1 * eta1 + eta2 * eta2 + eta3 * eta3 + eta4 * eta4 + eta5 * eta5 + eta6 * eta6;
  }
  double total() const { return std::sqrt(squared()); }
};

struct EstimatorResult {
  std::vector<ElementEstimate> cells;
  std::array<double, ElementEstimate::component_count> components{};  // global, root-sum-square
  double eta = 0.0;
  std::vector<int> descending;  // cell ids by decreasing local estimate

  std::vector<double> local_squared() const;
};

/// gN (normal-derivative datum, second argument is the outward unit normal)
/// may be empty; when present, boundary-edge gradient jumps are measured
/// against it instead of the raw trace.
EstimatorResult estimate(const PolygonalMesh& mesh, const EdgeTable& edges,
                         const GlobalDofMap& dofs, const std::vector<ElementOperators>& ops,
                         const Solution& sol, const std::function<double(Point2)>& f,
                         const std::function<double(Point2, Point2)>& gN = nullptr,
                         EstimatorVariant variant = EstimatorVariant::Grad);

/// Per-cell breakdown as CSV (cell, eta1..eta6, etaK).
void write_breakdown_csv(std::ostream& os, const EstimatorResult& result);

}  // namespace ipvem
