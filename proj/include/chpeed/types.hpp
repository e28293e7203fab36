#ifndef CHPEED_TYPES_HPP
#define CHPEED_TYPES_HPP

#include <Eigen/Core>

namespace chpeed {

using Scalar = double;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using Vec2 = Eigen::Vector2d;

// Objective vector: (fuel cost in $, emission in kg). Both minimized.
using Objectives = Eigen::Vector2d;

}  // namespace chpeed

#endif
