#pragma once

#include <functional>
#include <span>

#include <Eigen/Dense>

#include "ipvem/projectors.hpp"

namespace ipvem {

/// Which projector feeds the penalty terms: Grad uses the H1 projector
/// everywhere; Hess uses the H2 projector inside the jump penalty and the
/// second-derivative averages while gradient jumps in the consistency pair
/// stay with the H1 projector.
enum class SchemeVariant { Grad, Hess };

enum class EdgeDeriv {
  Normal,          // d/dn_e
  SecondNormal,    // d^2/dn_e^2
  EffectiveShear,  // d(lap)/dn_e + d^3/(dn_e dt_e^2)
};

/// Evaluates a derivative of the polynomial with the given coefficients at
/// the listed edge points; n_e and t_e are the fixed edge frame (both sides
/// of an interface use the same frame).
Eigen::VectorXd edge_trace_eval(const MonomialBasis& basis, const Eigen::VectorXd& coeffs,
                                Point2 n_e, Point2 t_e, EdgeDeriv deriv,
                                std::span<const Point2> pts);

/// Rows of derivative values at pts for every local DoF of the cell, i.e.
/// the trace map applied to the chosen projector.
Eigen::MatrixXd edge_trace_rows(const ElementOperators& ops, const Eigen::MatrixXd& projector,
                                Point2 n_e, Point2 t_e, EdgeDeriv deriv,
                                std::span<const Point2> pts);

/// Dense penalty coupling for one edge over the stacked local DoFs
/// [minus cell; plus cell] (boundary edges: just the minus cell). Contains
/// J1 + J2 + J3 for that edge with penalty lambda.
struct EdgeCoupling {
  int edge = -1;
  int minus_cell = -1;
  int plus_cell = -1;  // -1 on the boundary
  Eigen::MatrixXd block;
};

EdgeCoupling assemble_penalty_blocks(const Edge& edge, int edge_id,
                                     const ElementOperators& minus,
                                     const ElementOperators* plus, double lambda,
                                     SchemeVariant variant);

/// Weak Neumann data on a boundary edge of the minus cell:
/// int_e ( -gN * dnn(proj v) + (lambda/|e|) gN * dn(proj v) ) ds.
Eigen::VectorXd boundary_neumann_load(const Edge& edge, const ElementOperators& minus,
                                      const std::function<double(Point2)>& gN, double lambda,
                                      SchemeVariant variant);

}  // namespace ipvem
