#pragma once

#include <Eigen/Dense>

namespace schottky {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

}  // namespace schottky
