#pragma once

#include <functional>

#include <Eigen/Dense>

#include "ipvem/projectors.hpp"

namespace ipvem {

/// Local plate stiffness: consistency through the H2 projector plus the
/// dofi-dofi stabilization scaled by h_K^-2. Symmetric, reproduces the exact
/// energy on polynomial DoF vectors, kernel = affine functions.
Eigen::MatrixXd local_stiffness(const ElementOperators& ops);

/// Load vector (f, Pi0 v)_K using the element quadrature.
Eigen::VectorXd local_load(const ElementOperators& ops,
                           const std::function<double(Point2)>& f);

}  // namespace ipvem
