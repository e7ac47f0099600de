#include "tcv/surface.hpp"

#include <algorithm>
#include <cmath>

#include "tcv/linear.hpp"
#include "tcv/rng.hpp"

namespace tcv {

namespace {

bool complex_lex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// descending lexicographic order on component tuples (used to orient line triples)
bool vec3_lex_greater(const Vector3c& a, const Vector3c& b) {
  for (int i = 0; i < 3; ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() > b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() > b(i).imag();
  }
  return false;
}

// scale a vector so its first entry of maximal modulus becomes exactly 1
template <typename Vec>
Vec projective_normalize(const Vec& v) {
  int best = 0;
  double bm = 0.0;
  for (int i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > bm * (1.0 + 1e-12)) {
      bm = m;
      best = i;
    }
  }
  if (bm == 0.0) return v;
  return v / v(best);
}

Vector3c cross3(const Vector3c& a, const Vector3c& b) {
  return Vector3c(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2),
                  a(0) * b(1) - a(1) * b(0));
}

// two independent vectors spanning the kernel of the linear form l . x
std::array<Vector3c, 2> kernel_of_form(const Vector3c& l) {
  std::array<Vector3c, 3> cands;
  for (int i = 0; i < 3; ++i) {
    Vector3c e = Vector3c::Zero();
    e(i) = Complex(1, 0);
    cands[i] = cross3(l, e);
  }
  std::sort(cands.begin(), cands.end(),
            [](const Vector3c& a, const Vector3c& b) { return a.norm() > b.norm(); });
  Vector3c u = cands[0].normalized();
  // pick the candidate least aligned with u for a well-conditioned pair
  Vector3c v = cands[1] - u * (u.adjoint() * cands[1])(0);
  if (v.norm() < 1e-8 * cands[1].norm() || cands[1].norm() == 0.0) {
    v = cands[2] - u * (u.adjoint() * cands[2])(0);
  }
  return {u, v.normalized()};
}

}  // namespace

Trivariate normal_form_poly(const CubicParams& params) {
  for (int i = 0; i < 4; ++i) require_finite(params[i], "cubic parameters");
  Trivariate f;
  f.at(2, 0, 0) = Complex(1, 0);
  f.at(0, 2, 0) = Complex(1, 0);
  f.at(0, 0, 2) = Complex(1, 0);
  f.at(1, 1, 1) = Complex(1, 0);
  f.at(1, 0, 0) = -params.p;
  f.at(0, 1, 0) = -params.q;
  f.at(0, 0, 1) = -params.r;
  f.at(0, 0, 0) = -params.s;
  return f;
}

std::optional<CubicParams> params_of_normal_form(const Trivariate& f, double rel_tol) {
  CubicParams params{-f.at(1, 0, 0), -f.at(0, 1, 0), -f.at(0, 0, 1), -f.at(0, 0, 0)};
  const Trivariate diff = f - normal_form_poly(params);
  if (diff.max_abs() > rel_tol * (1.0 + f.max_abs())) return std::nullopt;
  return params;
}

double on_surface(const CubicParams& params, const Vector3c& pt) {
  for (int i = 0; i < 3; ++i) require_finite(pt(i), "surface point");
  const Complex x = pt(0), y = pt(1), z = pt(2);
  const Complex lhs = x * x + y * y + z * z + x * y * z;
  const Complex rhs = params.p * x + params.q * y + params.r * z + params.s;
  const double m = std::max({std::abs(x), std::abs(y), std::abs(z)});
  return std::abs(lhs - rhs) / (1.0 + m * m * m);
}

std::array<Complex, 2> solve_for_z(const CubicParams& params, const Complex& x,
                                   const Complex& y) {
  require_finite(x, "solve_for_z x");
  require_finite(y, "solve_for_z y");
  const Complex B = x * y - params.r;
  const Complex C = x * x + y * y - params.p * x - params.q * y - params.s;
  Complex sq = std::sqrt(B * B - 4.0 * C);
  if (std::abs(B + sq) < std::abs(B - sq)) sq = -sq;
  const Complex z1 = -0.5 * (B + sq);
  Complex z2;
  if (std::abs(z1) > 0.0)
    z2 = C / z1;
  else
    z2 = -B;  // both roots coincide at -B/2 = 0 only when B = C = 0
  std::array<Complex, 2> out{z1, z2};
  if (complex_lex_less(out[1], out[0])) std::swap(out[0], out[1]);
  return out;
}

std::pair<CubicParams, Matrix3c> canonicalize_params(const CubicParams& params) {
  static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                                  {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  static const double signs[4][3] = {
      {1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};

  auto tuple_less = [](const CubicParams& A, const CubicParams& B) {
    for (int i = 0; i < 4; ++i) {
      if (A[i].real() != B[i].real()) return A[i].real() < B[i].real();
      if (A[i].imag() != B[i].imag()) return A[i].imag() < B[i].imag();
    }
    return false;
  };

  const Trivariate base = normal_form_poly(params);
  CubicParams best = params;
  Matrix3c best_E = Matrix3c::Identity();
  bool first = true;
  for (const auto& perm : perms) {
    for (const auto& sgn : signs) {
      Matrix3c E = Matrix3c::Zero();
      for (int col = 0; col < 3; ++col) E(perm[col], col) = Complex(sgn[col], 0);
      AffineChange g;
      g.linear = E;
      const Trivariate transformed = substitute(base, g);
      const auto cand = params_of_normal_form(transformed, 1e-9);
      if (!cand) throw std::logic_error("canonicalize_params: symmetry left the family");
      if (first || tuple_less(*cand, best)) {
        best = *cand;
        best_E = E;
        first = false;
      }
    }
  }
  return {best, best_E};
}

CubicFormFactors factor_cubic_form(const Trivariate& cubic_in, const Tolerance& tol,
                                   std::uint64_t seed) {
  (void)tol;
  CubicFormFactors out;
  const Trivariate T = cubic_in.degree_part(3);
  const double scale = T.max_abs();
  if (scale == 0.0) return out;

  const double divisor_tol = 1e-6;
  const double fit_tol = 1e-8;
  Rng base = Rng(seed).fork(0x66616374);  // stream tag: "fact"

  auto line_residual = [&](const Vector3c& l) {
    const auto ker = kernel_of_form(l);
    const UniPoly h = trivariate_on_line(T, ker[0], ker[1]);
    return h.max_coeff_mod() / scale;
  };

  auto try_fit = [&](const std::array<Vector3c, 3>& lines, double& res) {
    Trivariate prod = trivariate_mul(
        trivariate_mul(trivariate_linear_form(lines[0]), trivariate_linear_form(lines[1])),
        trivariate_linear_form(lines[2]));
    Complex num(0, 0), den(0, 0);
    for (int n = 0; n < Trivariate::kTerms; ++n) {
      num += std::conj(prod[n]) * T[n];
      den += std::conj(prod[n]) * prod[n];
    }
    if (std::abs(den) == 0.0) {
      res = 1.0;
      return Complex(0, 0);
    }
    const Complex c = num / den;
    double r = 0.0;
    for (int n = 0; n < Trivariate::kTerms; ++n)
      r = std::max(r, std::abs(T[n] - c * prod[n]));
    res = r / scale;
    return c;
  };

  // perfect cube c*l^3: the gradient direction is the same everywhere, and
  // exactly the line coefficients; the root-cluster search below cannot
  // reach fit accuracy on this case
  {
    const QuaternaryForm Q = homogenize(T);
    Rng rng = base.fork(0x63756265);
    Vector3c pt;
    Complex Tval(0, 0);
    for (int draw = 0; draw < 4; ++draw) {
      Vector3c cand(rng.gaussian_complex(), rng.gaussian_complex(), rng.gaussian_complex());
      if (std::abs(T.eval(cand)) > std::abs(Tval)) {
        Tval = T.eval(cand);
        pt = cand;
      }
    }
    const Vector4c P4(pt(0), pt(1), pt(2), Complex(1, 0));
    Vector3c grad;
    for (int v = 0; v < 3; ++v) grad(v) = Q.partial(v).eval(P4);
    if (grad.cwiseAbs().maxCoeff() > 0.0) {
      const Vector3c l = projective_normalize(grad);
      double res = 0.0;
      try_fit({l, l, l}, res);
      if (res <= fit_tol) {
        out.repeated_factor = true;
        out.residual = res;
        return out;
      }
    }
  }

  std::vector<Vector3c> divisors;
  auto note_divisor = [&](const Vector3c& l_raw) {
    const Vector3c l = projective_normalize(l_raw);
    if (line_residual(l) > divisor_tol) return;
    for (const auto& d : divisors) {
      if (cross3(l, d).cwiseAbs().maxCoeff() <= 1e-6) return;  // same projective line
    }
    divisors.push_back(l);
  };

  for (int attempt = 0; attempt < 8; ++attempt) {
    Rng rng = base.fork(attempt);
    // three points of {T = 0} on each of two random lines
    std::array<std::vector<Vector3c>, 2> pts;
    for (int side = 0; side < 2; ++side) {
      for (int draw = 0; draw < 6 && pts[side].empty(); ++draw) {
        Vector3c A, B;
        for (int i = 0; i < 3; ++i) {
          A(i) = rng.gaussian_complex();
          B(i) = rng.gaussian_complex();
        }
        const UniPoly g = trivariate_on_line(T, A, B);
        if (std::abs(g.coeffs[3]) <= 1e-8 * scale * std::pow(1.0 + B.cwiseAbs().maxCoeff(), 3))
          continue;
        std::vector<Complex> taus;
        try {
          taus = poly_roots(g, Tolerance{}, rng.raw());
        } catch (const DomainError&) {
          continue;
        }
        for (const auto& tau : taus) pts[side].push_back(A + tau * B);
      }
    }
    for (const auto& Pp : pts[0])
      for (const auto& Qq : pts[1]) {
        const Vector3c l = cross3(Pp, Qq);
        if (l.cwiseAbs().maxCoeff() <= 1e-10 * Pp.norm() * Qq.norm()) continue;
        note_divisor(l);
      }

    if (divisors.size() >= 3) {
      // all 3-subsets (almost always exactly one)
      const int n = static_cast<int>(divisors.size());
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
          for (int k = j + 1; k < n; ++k) {
            std::array<Vector3c, 3> lines{divisors[i], divisors[j], divisors[k]};
            double res = 0.0;
            const Complex c = try_fit(lines, res);
            if (res <= fit_tol) {
              std::sort(lines.begin(), lines.end(), vec3_lex_greater);
              out.ok = true;
              out.scale = c;
              out.lines = lines;
              out.residual = res;
              return out;
            }
          }
    }
  }

  // no clean triple: check products with repetition (repeated tangent
  // factor).  Divisor lines through root clusters of multiplicity > 1 carry
  // less accuracy, so this classification runs at a looser tolerance.
  if (!divisors.empty()) {
    const int n = static_cast<int>(divisors.size());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::array<Vector3c, 3> lines{divisors[i], divisors[i], divisors[j]};
        double res = 0.0;
        try_fit(lines, res);
        if (res <= 1e-5) {
          out.repeated_factor = true;
          out.residual = res;
          return out;
        }
      }
  }
  return out;
}

namespace {

CubicParams read_params(const Trivariate& f) {
  return {-f.at(1, 0, 0), -f.at(0, 1, 0), -f.at(0, 0, 1), -f.at(0, 0, 0)};
}

}  // namespace

std::pair<CubicParams, AffineChange> normalize(const Trivariate& f, const Tolerance& tol) {
  for (int n = 0; n < Trivariate::kTerms; ++n) require_finite(f[n], "normalize input");
  const Trivariate f3 = f.degree_part(3);
  if (f3.max_abs() <= 1e-12 * (1.0 + f.max_abs()))
    throw std::invalid_argument("normalize: input has no cubic part");

  const CubicFormFactors fac = factor_cubic_form(f3, tol, 0);
  if (!fac.ok) {
    throw DomainError("not-generic-tritangent-at-infinity",
                      fac.repeated_factor
                          ? "normalize: cubic part has a repeated linear factor"
                          : "normalize: cubic part is not a product of three lines");
  }
  Matrix3c L;
  for (int i = 0; i < 3; ++i) L.row(i) = fac.lines[i].transpose();
  {
    Eigen::JacobiSVD<Matrix3c> svd(L);
    const auto& sv = svd.singularValues();
    if (!(sv(2) > tol.eps_equal * sv(0)))
      throw DomainError("eckardt-at-infinity",
                        "normalize: the three lines at infinity are concurrent");
  }

  AffineChange g1;
  g1.linear = L.inverse();
  g1.divisor = fac.scale;
  const Trivariate f1 = substitute(f, g1);

  const Complex f11 = f1.at(2, 0, 0), f22 = f1.at(0, 2, 0), f33 = f1.at(0, 0, 2);
  const Complex f12 = f1.at(1, 1, 0), f13 = f1.at(1, 0, 1), f23 = f1.at(0, 1, 1);

  AffineChange g2;
  g2.translation = Vector3c(-f23, -f13, -f12);
  const Trivariate f2 = substitute(f1, g2);

  const double qscale = 1.0 + f2.max_abs();
  if (std::min({std::abs(f11), std::abs(f22), std::abs(f33)}) <= tol.eps_equal * qscale)
    throw DomainError("singular-at-infinity",
                      "normalize: a diagonal quadratic coefficient vanishes (surface is "
                      "singular on the plane at infinity)");

  Complex alpha = std::sqrt(f22 * f33);
  const Complex beta = std::sqrt(f11 * f33);
  const Complex gamma = std::sqrt(f11 * f22);
  const Complex want = f11 * f22 * f33;
  if (std::abs(alpha * beta * gamma - want) > std::abs(alpha * beta * gamma + want))
    alpha = -alpha;

  AffineChange g3;
  g3.linear = Matrix3c::Zero();
  g3.linear(0, 0) = alpha;
  g3.linear(1, 1) = beta;
  g3.linear(2, 2) = gamma;
  g3.divisor = alpha * beta * gamma;
  const Trivariate fd = substitute(f2, g3);

  const auto [params, E] = canonicalize_params(read_params(fd));
  AffineChange g4;
  g4.linear = E;

  const AffineChange change = compose(compose(compose(g1, g2), g3), g4);

  const Trivariate check = substitute(f, change) - normal_form_poly(params);
  if (check.max_abs() > tol.eps_equal * (1.0 + params.max_mod()))
    throw std::runtime_error("normalize: internal verification failed");
  return {params, change};
}

TritangentReport verify_tritangent(const QuaternaryForm& S, const Vector4c& P,
                                   const Tolerance& tol) {
  if (S.degree() != 3) throw std::invalid_argument("verify_tritangent: S must be a cubic form");
  for (int n = 0; n < S.terms(); ++n) require_finite(S[n], "verify_tritangent form");
  if (!(P.cwiseAbs().maxCoeff() > 0.0))
    throw std::invalid_argument("verify_tritangent: plane coefficients are all zero");
  const double Sscale = S.max_abs();
  if (Sscale == 0.0) throw std::invalid_argument("verify_tritangent: zero form");

  TritangentReport rep;

  // orthonormal basis of the plane P . X = 0
  Eigen::Matrix<Complex, 1, 4> Prow;
  Prow << P(0), P(1), P(2), P(3);
  Eigen::FullPivLU<Eigen::Matrix<Complex, 1, 4>> lu(Prow);
  Eigen::Matrix<Complex, 4, 3> K = lu.kernel();
  Eigen::HouseholderQR<Eigen::Matrix<Complex, 4, 3>> qr(K);
  Eigen::Matrix<Complex, 4, 3> U =
      qr.householderQ() * Eigen::Matrix<Complex, 4, 3>::Identity();

  const Trivariate T = restrict_to_plane(S, U);
  if (T.max_abs() <= 1e-10 * Sscale) {
    rep.kind = TritangentKind::not_tritangent;  // plane contained in the surface
    return rep;
  }

  const CubicFormFactors fac = factor_cubic_form(T, tol, 0);
  rep.factor_residual = fac.residual;
  if (!fac.ok) {
    rep.kind = TritangentKind::not_tritangent;
    return rep;
  }

  // the four partial derivatives, for the singularity scan
  std::array<QuaternaryForm, 4> partials{S.partial(0), S.partial(1), S.partial(2), S.partial(3)};

  bool touches = false;
  for (const auto& l : fac.lines) {
    const auto ker = kernel_of_form(l);
    const Vector4c p1 = U * ker[0];
    const Vector4c p2 = U * ker[1];
    rep.lines.push_back({projective_normalize(p1), projective_normalize(p2)});

    auto all_partials_small = [&](const Vector4c& X_raw) {
      const Vector4c X = projective_normalize(X_raw);
      double worst = 0.0;
      for (const auto& dS : partials) worst = std::max(worst, std::abs(dS.eval(X)));
      return worst <= tol.eps_equal * (1.0 + Sscale);
    };

    // restrict each partial to the line; common zeros sit among the roots of
    // the largest restriction (or the line is entirely singular)
    UniPoly best_g;
    double best_norm = -1.0;
    double all_norm = 0.0;
    for (const auto& dS : partials) {
      const UniPoly g = restrict_to_line(dS, p1, p2);
      const double nrm = g.max_coeff_mod();
      all_norm = std::max(all_norm, nrm);
      if (nrm > best_norm) {
        best_norm = nrm;
        best_g = g;
      }
    }
    if (all_norm <= 1e-10 * Sscale) {
      touches = true;  // the entire line lies in the singular locus
      continue;
    }
    std::vector<Vector4c> candidates{p2};  // parameter value at infinity
    const UniPoly gt = poly_trim(best_g, 1e-12);
    if (gt.degree() >= 1) {
      try {
        for (const auto& tau : poly_roots(gt, tol, 0)) candidates.push_back(p1 + tau * p2);
      } catch (const DomainError&) {
        // no usable roots; the infinity candidate still gets checked
      }
    }
    for (const auto& X : candidates)
      if (all_partials_small(X)) {
        touches = true;
        break;
      }
  }
  if (touches) {
    rep.kind = TritangentKind::touches_singularity;
    return rep;
  }

  Matrix3c Lmat;
  for (int i = 0; i < 3; ++i) Lmat.row(i) = fac.lines[i].transpose();
  Eigen::JacobiSVD<Matrix3c> svd(Lmat);
  const auto& sv = svd.singularValues();
  if (sv(2) <= tol.eps_equal * sv(0)) {
    const Vector3c w = cross3(fac.lines[0], fac.lines[1]);
    rep.eckardt_point = projective_normalize(Vector4c(U * w));
    rep.kind = TritangentKind::eckardt;
    return rep;
  }
  rep.kind = TritangentKind::generic;
  return rep;
}

std::vector<SingularPointReport> singular_points(const CubicParams& params,
                                                 const Tolerance& tol) {
  for (int i = 0; i < 4; ++i) require_finite(params[i], "cubic parameters");
  const Complex p = params.p, q = params.q, r = params.r;

  auto gradient = [&](const Vector3c& v) {
    const Complex x = v(0), y = v(1), z = v(2);
    return Vector3c(2.0 * x + y * z - p, 2.0 * y + x * z - q, 2.0 * z + x * y - r);
  };
  auto grad_residual = [&](const Vector3c& v) {
    const double m = v.cwiseAbs().maxCoeff();
    return gradient(v).cwiseAbs().maxCoeff() / (1.0 + m * m);
  };
  auto hessian = [&](const Vector3c& v) {
    Matrix3c H;
    H << Complex(2, 0), v(2), v(1), v(2), Complex(2, 0), v(0), v(1), v(0), Complex(2, 0);
    return H;
  };

  // eliminate x = (p - yz)/2 and y = (2q - pz)/(4 - z^2) from the gradient
  // system; z then satisfies this quintic (derived once, frozen here):
  UniPoly quintic;
  quintic.coeffs = {4.0 * p * q - 16.0 * r,
                    32.0 - 2.0 * p * p - 2.0 * q * q,
                    p * q + 8.0 * r,
                    Complex(-16.0, 0),
                    -r,
                    Complex(2.0, 0)};

  std::vector<Vector3c> candidates;
  std::vector<Complex> zs;
  try {
    zs = poly_roots(quintic, tol, 0);
  } catch (const DomainError&) {
    zs.clear();
  }
  for (const auto& z : zs) {
    if (std::abs(4.0 - z * z) <= 1e-6 * (1.0 + std::abs(z * z)))
      continue;  // handled by the z = ±2 branch below
    const Complex y = (2.0 * q - p * z) / (4.0 - z * z);
    const Complex x = (p - y * z) / 2.0;
    candidates.emplace_back(x, y, z);
  }
  for (const double zsgn : {2.0, -2.0}) {
    const Complex z(zsgn, 0);
    // remaining equation in y:  z y^2 - p y + (2r - 4z) = 0
    UniPoly quad;
    quad.coeffs = {2.0 * r - 4.0 * z, -p, z};
    for (const auto& y : poly_roots(quad, tol, 0)) {
      const Complex x = (p - y * z) / 2.0;
      candidates.emplace_back(x, y, z);
    }
  }

  // Newton polish on the gradient system (its Jacobian is the Hessian)
  for (auto& v : candidates) {
    double best = grad_residual(v);
    for (int it = 0; it < 15 && best > 1e-16; ++it) {
      Eigen::PartialPivLU<Matrix3c> lu(hessian(v));
      const Vector3c delta = lu.solve(gradient(v));
      if (!delta.allFinite()) break;
      bool moved = false;
      double step = 1.0;
      for (int bt = 0; bt < 4; ++bt) {
        const Vector3c cand = v - step * delta;
        if (grad_residual(cand) < best) {
          v = cand;
          best = grad_residual(cand);
          moved = true;
          break;
        }
        step *= 0.5;
      }
      if (!moved) break;
    }
  }

  // keep the most accurate representative of each cluster: dedup visits
  // candidates best-residual-first, so a sloppier duplicate never shadows a
  // sharper one (e.g. an exact branch solution vs. a polished quintic root)
  std::vector<std::pair<double, Vector3c>> survivors;
  for (const auto& v : candidates) {
    const double gres = grad_residual(v);
    const double sres = on_surface(params, v);
    if (gres >= tol.eps_residual || sres >= tol.eps_residual) continue;
    survivors.emplace_back(gres + sres, v);
  }
  std::sort(survivors.begin(), survivors.end(),
            [](const auto& A, const auto& B) { return A.first < B.first; });

  std::vector<SingularPointReport> out;
  // A point certified only to gradient residual eps is located to ~sqrt(eps):
  // the gradient vanishes linearly at the singular point, so two candidates
  // closer than that are indistinguishable and must collapse to the sharper one.
  const double locational = std::sqrt(tol.eps_residual);
  for (const auto& [quality, v] : survivors) {
    (void)quality;
    const double gres = grad_residual(v);
    const double sres = on_surface(params, v);
    const double thr =
        std::max(tol.eps_equal, locational) * (1.0 + v.cwiseAbs().maxCoeff());
    bool dup = false;
    for (const auto& kept : out)
      if ((kept.location - v).cwiseAbs().maxCoeff() <= thr) {
        dup = true;
        break;
      }
    if (dup) continue;
    SingularPointReport repn;
    repn.location = v;
    repn.gradient_residual = gres;
    repn.surface_residual = sres;
    Eigen::JacobiSVD<Matrix3c> svd(hessian(v));
    const auto& sv = svd.singularValues();
    int rank = 0;
    for (int i = 0; i < 3; ++i)
      if (sv(i) > tol.eps_equal * std::max(sv(0), 1.0)) ++rank;
    repn.hessian_rank = rank;
    out.push_back(repn);
  }
  std::sort(out.begin(), out.end(), [](const SingularPointReport& A, const SingularPointReport& B) {
    for (int i = 0; i < 3; ++i) {
      if (A.location(i).real() != B.location(i).real())
        return A.location(i).real() < B.location(i).real();
      if (A.location(i).imag() != B.location(i).imag())
        return A.location(i).imag() < B.location(i).imag();
    }
    return false;
  });
  return out;
}

}  // namespace tcv
