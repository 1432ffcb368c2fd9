#pragma once

#include <Eigen/Dense>

namespace acs {

/// Dense matrix exponential by scaling and squaring with a diagonal Pade
/// approximant whose degree (3, 5, 7, 9 or 13) is chosen from the 1-norm.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

}  // namespace acs
