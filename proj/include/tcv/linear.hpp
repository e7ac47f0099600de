#pragma once

#include <Eigen/Dense>

#include "tcv/types.hpp"

namespace tcv {

struct LinearSolution {
  Eigen::VectorXcd x;
  double condition;  // sigma_max / sigma_min
};

// Solve A x = b for square complex A of size 2, 3 or 4.
// Rank and conditioning are estimated by SVD; a system whose smallest
// singular value is below eps_equal * sigma_max is rejected as singular
// (SingularSystemError carries the rank estimate).  The returned solution
// satisfies |A x - b|_inf < eps_residual * (1 + |b|_inf).
LinearSolution solve_linear(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b,
                            const Tolerance& tol = {});

}  // namespace tcv
