#include <doctest.h>

#include <Eigen/Dense>

#include "tcv/linear.hpp"
#include "tcv/rng.hpp"
#include "tcv/types.hpp"

using namespace tcv;

TEST_CASE("2x2 with a known solution") {
  Eigen::MatrixXcd A(2, 2);
  A << Complex(2, 0), Complex(1, 0), Complex(1, 0), Complex(3, 0);
  Eigen::VectorXcd b(2);
  b << Complex(5, 0), Complex(10, 0);
  const auto sol = solve_linear(A, b);
  CHECK(std::abs(sol.x(0) - Complex(1, 0)) < 1e-12);
  CHECK(std::abs(sol.x(1) - Complex(3, 0)) < 1e-12);
  CHECK(sol.condition >= 1.0);
}

TEST_CASE("identity system is perfectly conditioned") {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(3, 3);
  Eigen::VectorXcd b(3);
  b << Complex(1, 2), Complex(-3, 0), Complex(0, 5);
  const auto sol = solve_linear(A, b);
  CHECK((sol.x - b).cwiseAbs().maxCoeff() == 0.0);
  CHECK(sol.condition == doctest::Approx(1.0));
}

TEST_CASE("random well-conditioned systems satisfy the residual contract") {
  Rng rng(31337);
  const Tolerance tol;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + (trial % 3);
    Eigen::MatrixXcd A(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) A(i, j) = rng.gaussian_complex();
    A += 3.0 * Eigen::MatrixXcd::Identity(n, n);  // keep it away from singular
    Eigen::VectorXcd b(n);
    for (int i = 0; i < n; ++i) b(i) = rng.gaussian_complex();
    const auto sol = solve_linear(A, b, tol);
    const double res = (A * sol.x - b).cwiseAbs().maxCoeff();
    CHECK(res < tol.eps_residual * (1.0 + b.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("singular systems are rejected with a rank estimate") {
  Eigen::MatrixXcd A(3, 3);
  A << Complex(1, 0), Complex(2, 0), Complex(3, 0),
       Complex(2, 0), Complex(4, 0), Complex(6, 0),
       Complex(1, 0), Complex(0, 0), Complex(1, 0);
  Eigen::VectorXcd b = Eigen::VectorXcd::Ones(3);
  try {
    solve_linear(A, b);
    FAIL("expected SingularSystemError");
  } catch (const SingularSystemError& e) {
    CHECK(e.rank() == 2);
    CHECK(std::string(e.kind()) == "singular-system");
  }
}

TEST_CASE("unsupported sizes are rejected") {
  Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(5, 5);
  Eigen::VectorXcd b = Eigen::VectorXcd::Ones(5);
  CHECK_THROWS_AS(solve_linear(A, b), std::invalid_argument);
}
