#include "tcv/linear.hpp"

#include <string>

namespace tcv {

LinearSolution solve_linear(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b,
                            const Tolerance& tol) {
  const auto n = A.rows();
  if (n < 2 || n > 4 || A.cols() != n)
    throw std::invalid_argument("solve_linear: A must be square of size 2, 3 or 4");
  if (b.size() != n) throw std::invalid_argument("solve_linear: b has wrong length");
  for (Eigen::Index i = 0; i < n; ++i) {
    require_finite(b(i), "solve_linear b");
    for (Eigen::Index j = 0; j < n; ++j) require_finite(A(i, j), "solve_linear A");
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sigma = svd.singularValues();
  const double smax = sigma(0);
  const double smin = sigma(n - 1);
  int rank = 0;
  for (Eigen::Index i = 0; i < n; ++i)
    if (sigma(i) > tol.eps_equal * smax) ++rank;
  if (smax == 0.0 || smin <= tol.eps_equal * smax)
    throw SingularSystemError(rank, "solve_linear: matrix is singular to working precision (rank " +
                                        std::to_string(rank) + " of " + std::to_string(n) + ")");

  LinearSolution sol;
  sol.x = svd.solve(b);
  sol.condition = smax / smin;

  const double resid = (A * sol.x - b).cwiseAbs().maxCoeff();
  const double bscale = 1.0 + b.cwiseAbs().maxCoeff();
  if (!(resid < tol.eps_residual * bscale))
    throw SingularSystemError(rank,
                              "solve_linear: residual exceeds tolerance (system too ill-conditioned)");
  return sol;
}

}  // namespace tcv
