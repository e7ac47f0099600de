#include "tcv/trace_map.hpp"

#include <algorithm>
#include <cmath>

#include "tcv/rng.hpp"

namespace tcv {

namespace {

void require_finite4(const Traces4& t) {
  for (int i = 0; i < 4; ++i) require_finite(t[i], "trace tuple");
}
void require_finite4(const CubicParams& c) {
  for (int i = 0; i < 4; ++i) require_finite(c[i], "cubic parameters");
}

bool traces_less(const Traces4& s, const Traces4& t) {
  for (int i = 0; i < 4; ++i) {
    if (s[i].real() != t[i].real()) return s[i].real() < t[i].real();
    if (s[i].imag() != t[i].imag()) return s[i].imag() < t[i].imag();
  }
  return false;
}

double traces_dist(const Traces4& s, const Traces4& t) {
  double d = 0.0;
  for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(s[i] - t[i]));
  return d;
}

Traces4 negate(const Traces4& t) { return {-t.a, -t.b, -t.c, -t.d}; }

}  // namespace

double Traces4::max_mod() const {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs((*this)[i]));
  return m;
}

double CubicParams::max_mod() const {
  double m = 0.0;
  for (int i = 0; i < 4; ++i) m = std::max(m, std::abs((*this)[i]));
  return m;
}

CubicParams phi(const Traces4& t) {
  require_finite4(t);
  const Complex &a = t.a, &b = t.b, &c = t.c, &d = t.d;
  CubicParams out;
  out.p = a * b + c * d;
  out.q = b * c + d * a;
  out.r = c * a + b * d;
  out.s = 4.0 - a * a - b * b - c * c - d * d - a * b * c * d;
  return out;
}

Eigen::Matrix4cd phi_jacobian(const Traces4& t) {
  const Complex &a = t.a, &b = t.b, &c = t.c, &d = t.d;
  Eigen::Matrix4cd J;
  J << b, a, d, c,
       d, c, b, a,
       c, d, a, b,
       -2.0 * a - b * c * d, -2.0 * b - a * c * d, -2.0 * c - a * b * d, -2.0 * d - a * b * c;
  return J;
}

Complex det4_cofactor(const Eigen::Matrix4cd& M) {
  auto det3 = [](const Complex& a, const Complex& b, const Complex& c, const Complex& d,
                 const Complex& e, const Complex& f, const Complex& g, const Complex& h,
                 const Complex& i) {
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
  };
  Complex det(0, 0);
  double sign = 1.0;
  for (int j = 0; j < 4; ++j) {
    // minor of (0, j)
    Complex m[9];
    int n = 0;
    for (int r = 1; r < 4; ++r)
      for (int cidx = 0; cidx < 4; ++cidx)
        if (cidx != j) m[n++] = M(r, cidx);
    det += sign * M(0, j) * det3(m[0], m[1], m[2], m[3], m[4], m[5], m[6], m[7], m[8]);
    sign = -sign;
  }
  return det;
}

Complex phi_jacobian_det(const Traces4& t) { return det4_cofactor(phi_jacobian(t)); }

std::array<double, 6> factor_residuals(const Traces4& t) {
  require_finite4(t);
  const Complex &a = t.a, &b = t.b, &c = t.c, &d = t.d;
  const CubicParams f = phi(t);
  const double scale = 1.0 + t.max_mod() * t.max_mod();
  return {
      std::abs((f.p - f.q) - (a - c) * (b - d)) / scale,
      std::abs((f.q - f.r) - (b - a) * (c - d)) / scale,
      std::abs((f.p - f.r) - (a - d) * (b - c)) / scale,
      std::abs((f.p + f.q) - (a + c) * (b + d)) / scale,
      std::abs((f.q + f.r) - (a + b) * (c + d)) / scale,
      std::abs((f.r + f.p) - (a + d) * (b + c)) / scale,
  };
}

ElemSym ElemSym::of(const Traces4& t) {
  const Complex &a = t.a, &b = t.b, &c = t.c, &d = t.d;
  ElemSym e;
  e.e1 = a + b + c + d;
  e.e2 = a * b + a * c + a * d + b * c + b * d + c * d;
  e.e3 = a * b * c + a * b * d + a * c * d + b * c * d;
  e.e4 = a * b * c * d;
  return e;
}

UniPoly ElemSym::quartic() const {
  UniPoly q;
  q.coeffs = {e4, -e3, e2, -e1, Complex(1, 0)};
  return q;
}

PqrZeroFamily classify_pqr_zero(const Traces4& t, const Tolerance& tol) {
  require_finite4(t);
  const double thr = tol.eps_equal * (1.0 + t.max_mod());
  int zeros = 0;
  for (int i = 0; i < 4; ++i)
    if (std::abs(t[i]) <= thr) ++zeros;
  if (zeros >= 3) return PqrZeroFamily::all_zero_family;
  for (int l = 0; l < 4; ++l) {
    Complex m(0, 0);
    for (int i = 0; i < 4; ++i)
      if (i != l) m += t[i];
    m /= 3.0;
    bool ok = std::abs(t[l] + m) <= thr;
    for (int i = 0; i < 4 && ok; ++i)
      if (i != l) ok = std::abs(t[i] - m) <= thr;
    if (ok) return PqrZeroFamily::antidiagonal_family;
  }
  return PqrZeroFamily::none;
}

double forward_residual(const Traces4& t, const CubicParams& target) {
  const CubicParams f = phi(t);
  double r = 0.0;
  for (int i = 0; i < 4; ++i) r = std::max(r, std::abs(f[i] - target[i]));
  return r / (1.0 + target.max_mod());
}

namespace {

// Newton iteration on phi(t) = target with simple backtracking.
// Returns the improved tuple; stops when stuck (singular Jacobian, no
// improvement) or converged.
Traces4 newton_polish(Traces4 t, const CubicParams& target, int max_iters) {
  double best = forward_residual(t, target);
  for (int it = 0; it < max_iters; ++it) {
    if (best < 1e-16) break;
    const CubicParams f = phi(t);
    Eigen::Vector4cd rhs;
    for (int i = 0; i < 4; ++i) rhs(i) = f[i] - target[i];
    Eigen::PartialPivLU<Eigen::Matrix4cd> lu(phi_jacobian(t));
    Eigen::Vector4cd delta = lu.solve(rhs);
    if (!delta.allFinite()) break;
    double step = 1.0;
    bool improved = false;
    for (int bt = 0; bt < 5; ++bt) {
      Traces4 cand;
      for (int i = 0; i < 4; ++i) cand[i] = t[i] - step * delta(i);
      const double res = forward_residual(cand, target);
      if (res < best) {
        t = cand;
        best = res;
        improved = true;
        break;
      }
      step *= 0.5;
    }
    if (!improved) break;
  }
  return t;
}

void push_candidate(std::vector<Traces4>& out, const Traces4& cand, const CubicParams& target) {
  if (forward_residual(cand, target) <= 1e-3) out.push_back(cand);
}

// Exhaustive preimage candidates via the resolvent elimination:
// with e2 = p+q+r, P2 = pq+qr+rp, P3 = pqr, K = 4+2e2-s, M = P2+4K,
// u = e1^2 satisfies  u^3 - (16+K+4e2) u^2 + (8M+4e2K+P3) u - M^2 = 0,
// then e4 = K-u, e3 = (M-4u)/e1, and (a,b,c,d) is an ordering of the roots
// of t^4 - e1 t^3 + e2 t^2 - e3 t + e4.  A separate branch covers e1 = 0.
std::vector<Traces4> elimination_candidates(const CubicParams& target, const Tolerance& tol,
                                            std::uint64_t seed) {
  const Complex p = target.p, q = target.q, r = target.r, s = target.s;
  const Complex e2 = p + q + r;
  const Complex P2 = p * q + q * r + r * p;
  const Complex P3 = p * q * r;
  const Complex K = 4.0 + 2.0 * e2 - s;
  const Complex M = P2 + 4.0 * K;

  std::vector<Traces4> cands;
  std::array<int, 4> idx;

  auto expand_quartic = [&](const Complex& e1, const Complex& e3, const Complex& e4) {
    UniPoly quartic;
    quartic.coeffs = {e4, -e3, e2, -e1, Complex(1, 0)};
    std::vector<Complex> rts;
    try {
      rts = poly_roots(quartic, tol, seed);
    } catch (const DomainError&) {
      return;  // pathological quartic; the Newton oracle still backstops fiber()
    }
    idx = {0, 1, 2, 3};
    do {
      Traces4 cand{rts[idx[0]], rts[idx[1]], rts[idx[2]], rts[idx[3]]};
      push_candidate(cands, cand, target);
    } while (std::next_permutation(idx.begin(), idx.end()));
  };

  UniPoly ucubic;
  ucubic.coeffs = {-M * M, 8.0 * M + 4.0 * e2 * K + P3, -(16.0 + K + 4.0 * e2), Complex(1, 0)};
  std::vector<Complex> uroots;
  try {
    uroots = poly_roots(ucubic, tol, seed);
  } catch (const DomainError&) {
    uroots.clear();
  }
  double uscale = 1.0;
  for (const auto& u : uroots) uscale = std::max(uscale, std::abs(u));
  for (const auto& u : uroots) {
    if (std::abs(u) <= 1e-11 * uscale) continue;  // covered by the e1 = 0 branch
    const Complex e1root = std::sqrt(u);
    const Complex e4 = K - u;
    for (int sgn = 0; sgn < 2; ++sgn) {
      const Complex e1 = (sgn == 0) ? e1root : -e1root;
      const Complex e3 = (M - 4.0 * u) / e1;
      expand_quartic(e1, e3, e4);
    }
  }
  // e1 = 0 branch: e4 = K, consistency 4 e4 = -P2, e3^2 = P3 + 4 e2 e4.
  {
    const Complex e4 = K;
    const double cscale = 1.0 + std::abs(P2) + std::abs(e4);
    if (std::abs(4.0 * e4 + P2) <= 1e-3 * cscale) {
      const Complex e3root = std::sqrt(P3 + 4.0 * e2 * e4);
      expand_quartic(Complex(0, 0), e3root, e4);
      if (std::abs(e3root) > 0.0) expand_quartic(Complex(0, 0), -e3root, e4);
    }
  }
  return cands;
}

// Deduplicate (sorted order, keep-first), then close under t -> -t, re-sort.
std::vector<Traces4> tidy_point_set(std::vector<Traces4> pts, const Tolerance& tol) {
  std::sort(pts.begin(), pts.end(), traces_less);
  std::vector<Traces4> kept;
  for (const auto& t : pts) {
    bool dup = false;
    const double thr = tol.eps_equal * (1.0 + t.max_mod());
    for (const auto& k : kept)
      if (traces_dist(t, k) <= thr) {
        dup = true;
        break;
      }
    if (!dup) kept.push_back(t);
  }
  std::vector<Traces4> closed = kept;
  for (const auto& t : kept) {
    const Traces4 n = negate(t);
    const double thr = tol.eps_equal * (1.0 + n.max_mod());
    bool present = false;
    for (const auto& k : closed)
      if (traces_dist(n, k) <= thr) {
        present = true;
        break;
      }
    if (!present) closed.push_back(n);
  }
  std::sort(closed.begin(), closed.end(), traces_less);
  return closed;
}

// Newton search from one random start; returns true on convergence.
bool newton_from_start(Traces4& t, const CubicParams& target, const Tolerance& tol) {
  for (int it = 0; it < 200; ++it) {
    const double res = forward_residual(t, target);
    if (res < 1e-13) return true;
    if (t.max_mod() > 1e6) return false;
    const CubicParams f = phi(t);
    Eigen::Vector4cd rhs;
    for (int i = 0; i < 4; ++i) rhs(i) = f[i] - target[i];
    Eigen::PartialPivLU<Eigen::Matrix4cd> lu(phi_jacobian(t));
    Eigen::Vector4cd delta = lu.solve(rhs);
    if (!delta.allFinite()) return false;
    double step = 1.0;
    bool moved = false;
    for (int bt = 0; bt < 6; ++bt) {
      Traces4 cand;
      for (int i = 0; i < 4; ++i) cand[i] = t[i] - step * delta(i);
      if (forward_residual(cand, target) < res) {
        t = cand;
        moved = true;
        break;
      }
      step *= 0.5;
    }
    if (!moved) return forward_residual(t, target) < tol.eps_residual;
  }
  return forward_residual(t, target) < tol.eps_residual;
}

// Shared multistart core. `last_new` reports the start index that produced
// the final new point relative to the evolving union (for saturation checks).
void multistart_into(std::vector<Traces4>& unioned, const CubicParams& target, int starts,
                     const Tolerance& tol, std::uint64_t seed, int& last_new) {
  Rng rng = Rng(seed).fork(0x6d737461);  // stream tag: "msta"
  last_new = -1;
  for (int k = 0; k < starts; ++k) {
    Traces4 t;
    for (int i = 0; i < 4; ++i) t[i] = rng.uniform_disc(10.0);
    if (!newton_from_start(t, target, tol)) continue;
    t = newton_polish(t, target, 25);
    if (forward_residual(t, target) >= tol.eps_residual) continue;
    for (const Traces4& cand : {t, negate(t)}) {
      const double thr = tol.eps_equal * (1.0 + cand.max_mod());
      bool dup = false;
      for (const auto& u : unioned)
        if (traces_dist(cand, u) <= thr) {
          dup = true;
          break;
        }
      if (!dup) {
        unioned.push_back(cand);
        last_new = k;
      }
    }
  }
}

}  // namespace

FiberSolution fiber(const CubicParams& target, const Tolerance& tol, std::uint64_t seed) {
  require_finite4(target);
  FiberSolution sol;
  sol.seed = seed;

  std::vector<Traces4> accepted;
  for (const auto& cand : elimination_candidates(target, tol, seed)) {
    const Traces4 t = newton_polish(cand, target, 25);
    if (forward_residual(t, target) < tol.eps_residual) accepted.push_back(t);
  }
  sol.method = FiberMethod::elimination;
  if (accepted.empty()) {
    int last_new = -1;
    multistart_into(accepted, target, 500, tol, seed, last_new);
    sol.method = FiberMethod::newton_oracle;
    if (accepted.empty())
      throw DomainError("fiber-not-found", "fiber: no preimage found for the given parameters");
  }
  sol.points = tidy_point_set(std::move(accepted), tol);
  sol.residuals.reserve(sol.points.size());
  for (const auto& t : sol.points) sol.residuals.push_back(forward_residual(t, target));
  return sol;
}

std::vector<Traces4> fiber_newton_multistart(const CubicParams& target, int starts,
                                             const Tolerance& tol, std::uint64_t seed) {
  require_finite4(target);
  if (starts < 1) throw std::invalid_argument("fiber_newton_multistart: starts must be >= 1");
  std::vector<Traces4> found;
  int last_new = -1;
  multistart_into(found, target, starts, tol, seed, last_new);
  return tidy_point_set(std::move(found), tol);
}

FiberCount fiber_count(const CubicParams& target, int trials, std::uint64_t seed,
                       const Tolerance& tol) {
  require_finite4(target);
  if (trials < 1) throw std::invalid_argument("fiber_count: trials must be >= 1");
  std::vector<Traces4> unioned;
  try {
    unioned = fiber(target, tol, seed).points;
  } catch (const DomainError&) {
    // elimination found nothing; the multistart below still runs
  }
  int last_new = -1;
  multistart_into(unioned, target, trials, tol, seed ^ 0x5eedULL, last_new);

  FiberCount fc;
  fc.points = tidy_point_set(std::move(unioned), tol);
  fc.count = static_cast<int>(fc.points.size());
  fc.even = (fc.count % 2 == 0);
  fc.saturated = (last_new < trials / 2);
  for (const auto& t : fc.points) {
    const double jscale = std::pow(1.0 + t.max_mod(), 6);
    if (std::abs(phi_jacobian_det(t)) <= tol.eps_equal * jscale) {
      fc.non_generic = true;
      break;
    }
  }
  return fc;
}

double min_image_on_sphere(double R, int samples, std::uint64_t seed) {
  require_finite(R, "sphere radius");
  if (R < 0.0) throw std::invalid_argument("min_image_on_sphere: radius must be >= 0");
  if (samples < 1) throw std::invalid_argument("min_image_on_sphere: samples must be >= 1");
  if (R == 0.0) return phi(Traces4{0, 0, 0, 0}).max_mod();
  Rng rng = Rng(seed).fork(0x73706872);  // stream tag: "sphr"
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < samples; ++k) {
    Complex u[4];
    double m = 0.0;
    do {
      m = 0.0;
      for (auto& z : u) {
        z = rng.uniform_disc(1.0);
        m = std::max(m, std::abs(z));
      }
    } while (m < 1e-6);
    Traces4 t;
    for (int i = 0; i < 4; ++i) t[i] = u[i] * (R / m);
    best = std::min(best, phi(t).max_mod());
  }
  return best;
}

}  // namespace tcv
