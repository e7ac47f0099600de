#include <doctest.h>

#include <Eigen/Dense>

#include "tcv/rng.hpp"
#include "tcv/trace_map.hpp"
#include "tcv/types.hpp"

using namespace tcv;

namespace {

Traces4 random_traces(Rng& rng, double r = 2.0) {
  return {rng.uniform_box(r), rng.uniform_box(r), rng.uniform_box(r), rng.uniform_box(r)};
}

}  // namespace

TEST_CASE("hand-checked images") {
  // (2,2,2,2):  p = q = r = 4+4 = 8,  s = 4 - 16 - 16 = -28
  const CubicParams P = phi({Complex(2, 0), Complex(2, 0), Complex(2, 0), Complex(2, 0)});
  CHECK(P.p == Complex(8, 0));
  CHECK(P.q == Complex(8, 0));
  CHECK(P.r == Complex(8, 0));
  CHECK(P.s == Complex(-28, 0));

  // the origin maps to (0,0,0,4)
  const CubicParams O = phi({Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0)});
  CHECK(O.p == Complex(0, 0));
  CHECK(O.s == Complex(4, 0));

  // (1,1,1,0): p = q = r = 1, s = 4 - 3 = 1
  const CubicParams I = phi({Complex(1, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)});
  CHECK(I.p == Complex(1, 0));
  CHECK(I.q == Complex(1, 0));
  CHECK(I.r == Complex(1, 0));
  CHECK(I.s == Complex(1, 0));
}

TEST_CASE("(p, q, r) are the resolvent values of the trace quartic") {
  // p+q+r = e2,  pq+qr+rp = e1 e3 - 4 e4,  pqr = e3^2 + e1^2 e4 - 4 e2 e4,
  // and s = 4 - (e1^2 - 2 e2) - e4
  Rng rng(61);
  for (int trial = 0; trial < 10000; ++trial) {
    const Traces4 t = random_traces(rng);
    const CubicParams P = phi(t);
    const ElemSym e = ElemSym::of(t);
    const double scale = 1.0 + std::pow(t.max_mod(), 4.0);
    CHECK(std::abs(P.p + P.q + P.r - e.e2) < 1e-12 * scale);
    CHECK(std::abs(P.p * P.q + P.q * P.r + P.r * P.p - (e.e1 * e.e3 - 4.0 * e.e4)) <
          1e-11 * scale * scale);
    CHECK(std::abs(P.p * P.q * P.r - (e.e3 * e.e3 + e.e1 * e.e1 * e.e4 - 4.0 * e.e2 * e.e4)) <
          1e-11 * scale * scale * scale);
    CHECK(std::abs(P.s - (4.0 - (e.e1 * e.e1 - 2.0 * e.e2) - e.e4)) < 1e-12 * scale);
  }
}

TEST_CASE("traces solve their own elementary-symmetric quartic") {
  Rng rng(67);
  for (int trial = 0; trial < 200; ++trial) {
    const Traces4 t = random_traces(rng);
    const UniPoly q = ElemSym::of(t).quartic();
    for (int i = 0; i < 4; ++i) CHECK(std::abs(poly_eval(q, t[i])) < 1e-11);
  }
}

TEST_CASE("all six sum/difference factorizations hold") {
  Rng rng(71);
  for (int trial = 0; trial < 10000; ++trial) {
    const auto res = factor_residuals(random_traces(rng, 3.0));
    for (double r : res) CHECK(r < 1e-12);
  }
}

TEST_CASE("jacobian determinant at (1,1,1,0) is exactly 4") {
  const Complex det =
      phi_jacobian_det({Complex(1, 0), Complex(1, 0), Complex(1, 0), Complex(0, 0)});
  CHECK(std::abs(det - Complex(4, 0)) < 1e-12);
}

TEST_CASE("cofactor determinant matches Eigen on random matrices") {
  Rng rng(73);
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::Matrix4cd M;
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) M(i, j) = rng.uniform_box(1.0);
    CHECK(std::abs(det4_cofactor(M) - M.determinant()) < 1e-12);
  }
}

TEST_CASE("jacobian matches central finite differences") {
  Rng rng(79);
  const double h = 1e-6;
  for (int trial = 0; trial < 100; ++trial) {
    const Traces4 t = random_traces(rng);
    const Eigen::Matrix4cd J = phi_jacobian(t);
    for (int col = 0; col < 4; ++col) {
      Traces4 tp = t, tm = t;
      tp[col] += h;
      tm[col] -= h;
      const CubicParams Pp = phi(tp), Pm = phi(tm);
      for (int row = 0; row < 4; ++row) {
        const Complex fd = (Pp[row] - Pm[row]) / (2.0 * h);
        CHECK(std::abs(J(row, col) - fd) < 1e-7 * (1.0 + std::abs(J(row, col))));
      }
    }
  }
}

TEST_CASE("trace families with vanishing (p, q, r)") {
  const Tolerance tol;
  CHECK(classify_pqr_zero({Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(5, 0)}, tol) ==
        PqrZeroFamily::all_zero_family);
  CHECK(classify_pqr_zero({Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(0, 0)}, tol) ==
        PqrZeroFamily::all_zero_family);
  CHECK(classify_pqr_zero({Complex(2, 0), Complex(2, 0), Complex(2, 0), Complex(-2, 0)}, tol) ==
        PqrZeroFamily::antidiagonal_family);
  CHECK(classify_pqr_zero({Complex(3, 0), Complex(-3, 0), Complex(3, 0), Complex(3, 0)}, tol) ==
        PqrZeroFamily::antidiagonal_family);
  CHECK(classify_pqr_zero({Complex(1, 0), Complex(2, 0), Complex(3, 0), Complex(4, 0)}, tol) ==
        PqrZeroFamily::none);
  CHECK(classify_pqr_zero({Complex(2, 0), Complex(0, 0), Complex(-2, 0), Complex(0, 0)}, tol) ==
        PqrZeroFamily::none);  // p = q = 0 but r = -4

  // members of both families really do land on p = q = r = 0
  const CubicParams A = phi({Complex(0, 0), Complex(0, 0), Complex(0, 0), Complex(5, 0)});
  CHECK(std::abs(A.p) + std::abs(A.q) + std::abs(A.r) < 1e-15);
  const CubicParams B = phi({Complex(2, 0), Complex(2, 0), Complex(-2, 0), Complex(2, 0)});
  CHECK(std::abs(B.p) + std::abs(B.q) + std::abs(B.r) < 1e-15);
}

TEST_CASE("forward residual vanishes exactly on the image") {
  Rng rng(83);
  for (int trial = 0; trial < 100; ++trial) {
    const Traces4 t = random_traces(rng);
    CHECK(forward_residual(t, phi(t)) == 0.0);
  }
}
