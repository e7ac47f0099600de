#include "tcv/characters.hpp"

#include <algorithm>
#include <cmath>

#include "tcv/linear.hpp"
#include "tcv/surface.hpp"

namespace tcv {

double unimodular_residual(const Matrix2c& M) { return std::abs(det2(M) - Complex(1, 0)); }

double CharacterPoint::max_mod() const {
  return std::max({std::abs(x), std::abs(y), std::abs(z)});
}

namespace {

void require_finite_mat(const Matrix2c& M, const char* what) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) require_finite(M(i, j), what);
}

Matrix2c inverse_unimodular(const Matrix2c& M) {
  Matrix2c inv;
  inv << M(1, 1), -M(0, 1), -M(1, 0), M(0, 0);
  return inv / det2(M);
}

}  // namespace

TracesAndPoint traces_of_rep(const FourHoledSphereRep& rep) {
  const Matrix2c* mats[4] = {&rep.A, &rep.B, &rep.C, &rep.D};
  for (const auto* M : mats) {
    require_finite_mat(*M, "representation matrix");
    if (unimodular_residual(*M) > 1e-10)
      throw DomainError("invalid-representation",
                        "traces_of_rep: a matrix fails det = 1 within 1e-10");
  }
  const Matrix2c prod = rep.A * rep.B * rep.C * rep.D;
  if ((prod - Matrix2c::Identity()).cwiseAbs().maxCoeff() > 1e-9)
    throw DomainError("invalid-representation",
                      "traces_of_rep: boundary relation ABCD = I fails within 1e-9");
  TracesAndPoint out;
  out.traces = {tr2(rep.A), tr2(rep.B), tr2(rep.C), tr2(rep.D)};
  out.point = {tr2(rep.A * rep.B), tr2(rep.B * rep.C), tr2(rep.C * rep.A)};
  return out;
}

Complex half_trace_root(const Complex& a) {
  const Complex sq = std::sqrt(a * a - 4.0);
  const Complex plus = 0.5 * (a + sq);
  const Complex minus = 0.5 * (a - sq);
  const double mp = std::abs(plus), mm = std::abs(minus);
  if (std::abs(mp - mm) > 1e-14 * (mp + mm)) return mp > mm ? plus : minus;
  return plus.imag() >= minus.imag() ? plus : minus;
}

FourHoledSphereRep build_rep_4holed(const Traces4& traces, const CharacterPoint& pt,
                                    const Tolerance& tol) {
  for (int i = 0; i < 4; ++i) require_finite(traces[i], "boundary traces");
  for (int i = 0; i < 3; ++i) require_finite(pt[i], "character point");
  const Complex a = traces.a, b = traces.b, c = traces.c, d = traces.d;
  const Complex x = pt.x, y = pt.y, z = pt.z;

  if (on_surface(phi(traces), Vector3c(x, y, z)) >= tol.eps_residual)
    throw DomainError("off-variety",
                      "build_rep_4holed: the point does not satisfy the defining equation "
                      "for these boundary traces");

  const double abx = std::max({std::abs(a), std::abs(b), std::abs(x)});
  if (std::abs(x * x + a * a + b * b - a * b * x - 4.0) <=
      tol.eps_equal * (1.0 + abx * abx))
    throw DomainError("reducible-locus",
                      "build_rep_4holed: (A, B) would share an eigenvector (x^2 + a^2 + b^2 "
                      "- abx - 4 = 0)");

  const Complex xi = half_trace_root(a);
  const Complex eta = half_trace_root(b);
  const Complex zeta = x - xi * eta - 1.0 / (xi * eta);

  Matrix2c A, B;
  A << xi, Complex(1, 0), Complex(0, 0), 1.0 / xi;
  B << eta, Complex(0, 0), zeta, 1.0 / eta;

  // entries of C = [[c1, c2], [c3, c4]] from the four trace conditions
  Eigen::MatrixXcd S(4, 4);
  Eigen::VectorXcd rhs(4);
  S << Complex(1, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0),
       xi, Complex(0, 0), Complex(1, 0), 1.0 / xi,
       eta, zeta, Complex(0, 0), 1.0 / eta,
       xi * eta + zeta, zeta / xi, 1.0 / eta, 1.0 / (xi * eta);
  rhs << c, z, y, d;

  Eigen::VectorXcd sol;
  try {
    sol = solve_linear(S, rhs, tol).x;
  } catch (const SingularSystemError& e) {
    throw DomainError("degenerate-configuration",
                      std::string("build_rep_4holed: trace conditions are degenerate (") +
                          e.what() + ")");
  }
  Matrix2c C;
  C << sol(0), sol(1), sol(2), sol(3);
  const double centry = C.cwiseAbs().maxCoeff();
  if (std::abs(det2(C) - 1.0) > 1e-7 * (1.0 + centry * centry))
    throw DomainError("degenerate-configuration",
                      "build_rep_4holed: det C drifts from 1 (degenerate configuration)");
  // renormalize the residual drift so downstream validation at 1e-10 passes
  C /= std::sqrt(det2(C));

  const Matrix2c D = inverse_unimodular(A * B * C);
  return {A, B, C, D};
}

Complex torus_char(const CharacterPoint& pt) {
  for (int i = 0; i < 3; ++i) require_finite(pt[i], "character point");
  const Complex x = pt.x, y = pt.y, z = pt.z;
  return x * x + y * y + z * z - x * y * z - 2.0;
}

TorusRep build_rep_torus(const CharacterPoint& pt, const Tolerance& tol) {
  for (int i = 0; i < 3; ++i) require_finite(pt[i], "character point");
  const double d222 = std::max({std::abs(pt.x - 2.0), std::abs(pt.y - 2.0), std::abs(pt.z - 2.0)});
  if (d222 <= tol.eps_equal) return {Matrix2c::Identity(), Matrix2c::Identity()};

  const Complex kappa = torus_char(pt);
  const double scale = pt.max_mod();
  if (std::abs(kappa - 2.0) <= tol.eps_equal * (1.0 + scale * scale * scale))
    throw DomainError("reducible-locus",
                      "build_rep_torus: the point lies on the reducible locus "
                      "(commutator trace 2)");

  const Complex xi = half_trace_root(pt.x);
  const Complex eta = half_trace_root(pt.y);
  const Complex zeta = pt.z - xi * eta - 1.0 / (xi * eta);
  TorusRep rep;
  rep.A << xi, Complex(1, 0), Complex(0, 0), 1.0 / xi;
  rep.B << eta, Complex(0, 0), zeta, 1.0 / eta;
  return rep;
}

DeltaOrbit delta_orbit(const CubicParams& params, const Tolerance& tol) {
  for (int i = 0; i < 4; ++i) require_finite(params[i], "cubic parameters");
  static const double patterns[4][3] = {
      {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
  const double thr = tol.eps_equal * (1.0 + params.max_mod());

  DeltaOrbit out;
  out.is_invariant = std::abs(params.p) <= thr && std::abs(params.q) <= thr &&
                     std::abs(params.r) <= thr;
  for (const auto& sgn : patterns) {
    CubicParams cand{sgn[0] * params.p, sgn[1] * params.q, sgn[2] * params.r, params.s};
    bool dup = false;
    for (const auto& kept : out.orbit) {
      double d = 0.0;
      for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(cand[i] - kept[i]));
      if (d <= thr) {
        dup = true;
        break;
      }
    }
    if (!dup) out.orbit.push_back(cand);
  }
  std::sort(out.orbit.begin(), out.orbit.end(), [](const CubicParams& A, const CubicParams& B) {
    for (int i = 0; i < 4; ++i) {
      if (A[i].real() != B[i].real()) return A[i].real() < B[i].real();
      if (A[i].imag() != B[i].imag()) return A[i].imag() < B[i].imag();
    }
    return false;
  });
  return out;
}

TorusCorrespondence torus_correspondence(const Complex& s) {
  require_finite(s, "torus parameter");
  return {s - 2.0, s + 2.0};
}

Matrix2c random_unimodular(Rng& rng) {
  for (;;) {
    Matrix2c M;
    M << rng.gaussian_complex(), rng.gaussian_complex(), rng.gaussian_complex(),
        rng.gaussian_complex();
    const Complex det = det2(M);
    if (std::abs(det) < 1e-3) continue;
    return M / std::sqrt(det);
  }
}

}  // namespace tcv
