#include "tcv/unipoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "tcv/rng.hpp"

namespace tcv {

namespace {
constexpr double kMeps = std::numeric_limits<double>::epsilon();

bool lex_less(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}
}  // namespace

double UniPoly::max_coeff_mod() const {
  double m = 0.0;
  for (const auto& c : coeffs) m = std::max(m, std::abs(c));
  return m;
}

Complex poly_eval(const UniPoly& p, const Complex& t) {
  Complex acc(0, 0);
  for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * t + *it;
  return acc;
}

UniPoly poly_derivative(const UniPoly& p) {
  UniPoly d;
  for (size_t k = 1; k < p.coeffs.size(); ++k)
    d.coeffs.push_back(static_cast<double>(k) * p.coeffs[k]);
  if (d.coeffs.empty()) d.coeffs.push_back(Complex(0, 0));
  return d;
}

UniPoly poly_mul(const UniPoly& a, const UniPoly& b) {
  UniPoly r;
  if (a.coeffs.empty() || b.coeffs.empty()) return r;
  r.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, Complex(0, 0));
  for (size_t i = 0; i < a.coeffs.size(); ++i)
    for (size_t j = 0; j < b.coeffs.size(); ++j) r.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
  return r;
}

UniPoly poly_from_roots(const std::vector<Complex>& roots, const Complex& leading) {
  UniPoly p;
  p.coeffs = {leading};
  for (const auto& r : roots) {
    UniPoly lin;
    lin.coeffs = {-r, Complex(1, 0)};
    p = poly_mul(p, lin);
  }
  return p;
}

UniPoly poly_trim(const UniPoly& p, double rel_tol) {
  double m = p.max_coeff_mod();
  UniPoly q = p;
  while (q.coeffs.size() > 1 && std::abs(q.coeffs.back()) <= rel_tol * m) q.coeffs.pop_back();
  return q;
}

namespace {

// Weighted coefficient sum used as a backward-error floor for |p(z)|.
double error_floor(const std::vector<Complex>& a, double zmod) {
  double s = 0.0, zp = 1.0;
  for (size_t j = 0; j < a.size(); ++j) {
    s += (2.0 * static_cast<double>(j) + 1.0) * std::abs(a[j]) * zp;
    zp *= zmod;
  }
  return s;
}

void eval_with_derivative(const std::vector<Complex>& a, const Complex& z, Complex& p,
                          Complex& dp) {
  p = Complex(0, 0);
  dp = Complex(0, 0);
  for (size_t k = a.size(); k-- > 0;) {
    dp = dp * z + p;
    p = p * z + a[k];
  }
}

std::vector<Complex> initial_circle(int n, double rho, Rng& rng) {
  std::vector<Complex> z(n);
  double phase0 = rng.uniform(0.0, 6.283185307179586);
  // slight eccentricity so symmetric configurations don't stall
  double ecc = rng.uniform(0.9, 1.1);
  for (int i = 0; i < n; ++i) {
    double th = phase0 + 6.283185307179586 * (i + 0.35) / n;
    double r = rho * (1.0 + 0.1 * std::sin(3.0 * th)) * ecc;
    z[i] = Complex(r * std::cos(th), r * std::sin(th));
  }
  return z;
}

// One Aberth-Ehrlich run on the monic coefficient vector `a`.
bool aberth_run(const std::vector<Complex>& a, std::vector<Complex>& z, int max_sweeps,
                Rng& rng) {
  const int n = static_cast<int>(a.size()) - 1;
  std::vector<char> frozen(n, 0);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool all_frozen = true;
    for (int i = 0; i < n; ++i) {
      if (frozen[i]) continue;
      Complex p, dp;
      eval_with_derivative(a, z[i], p, dp);
      double floor_i = 8.0 * kMeps * error_floor(a, std::abs(z[i]));
      if (std::abs(p) <= floor_i) {
        frozen[i] = 1;
        continue;
      }
      all_frozen = false;
      if (!(std::abs(dp) > 0.0)) {
        z[i] += Complex(rng.uniform(-1e-3, 1e-3), rng.uniform(-1e-3, 1e-3)) *
                (1.0 + std::abs(z[i]));
        continue;
      }
      Complex newton = p / dp;
      Complex s(0, 0);
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        Complex d = z[i] - z[j];
        if (std::abs(d) < 1e-300) {
          d = Complex(1e-12 * (1.0 + std::abs(z[i])), 0);
          z[i] += d;
        }
        s += Complex(1, 0) / d;
      }
      Complex denom = Complex(1, 0) - newton * s;
      Complex w = (std::abs(denom) > 1e-300) ? newton / denom : newton;
      z[i] -= w;
      if (!is_finite(z[i])) {
        z[i] = Complex(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)) * (1.0 + std::abs(a[0]));
        continue;
      }
      // stationarity freeze: catches roots at points where the coefficient
      // floor vanishes (e.g. multiple roots at the origin of t^n)
      if (std::abs(w) <= 4.0 * kMeps * (1.0 + std::abs(z[i]))) frozen[i] = 1;
    }
    if (all_frozen) return true;
  }
  return false;
}

// A couple of guarded Newton steps; keeps the iterate only while |p| improves.
Complex polish_root(const std::vector<Complex>& a, Complex z) {
  Complex p, dp;
  eval_with_derivative(a, z, p, dp);
  double best = std::abs(p);
  for (int it = 0; it < 3; ++it) {
    if (!(std::abs(dp) > 0.0)) break;
    Complex zn = z - p / dp;
    Complex pn, dpn;
    eval_with_derivative(a, zn, pn, dpn);
    if (std::abs(pn) >= best || !is_finite(zn)) break;
    z = zn;
    p = pn;
    dp = dpn;
    best = std::abs(p);
  }
  return z;
}

double reconstruct_error(const std::vector<Complex>& monic, const std::vector<Complex>& roots) {
  UniPoly q = poly_from_roots(roots, Complex(1, 0));
  double scale = 1.0;
  for (const auto& c : monic) scale = std::max(scale, std::abs(c));
  double err = 0.0;
  for (size_t k = 0; k < monic.size(); ++k) err = std::max(err, std::abs(q.coeffs[k] - monic[k]));
  return err / scale;
}

// Merge root clusters produced by an m-fold root (Aberth scatters such a root
// over a radius ~eps^(1/m), far beyond eps_equal).  Every tentative merge is
// validated by reconstructing the monic polynomial from the merged root list;
// a false merge of genuinely distinct roots fails validation and is rolled back.
std::vector<Complex> merge_clusters(const std::vector<Complex>& monic, std::vector<Complex> pts,
                                    double accept_tol) {
  const int n = static_cast<int>(pts.size());
  if (n < 2) return pts;
  for (int m = std::min(n, 8); m >= 2; --m) {
    double radius = std::pow(4096.0 * kMeps, 1.0 / m);
    // union-find at this link radius
    std::vector<int> parent(pts.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int i) {
      while (parent[i] != i) i = parent[i] = parent[parent[i]];
      return i;
    };
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = i + 1; j < pts.size(); ++j) {
        double link = radius * (1.0 + 0.5 * (std::abs(pts[i]) + std::abs(pts[j])));
        if (std::abs(pts[i] - pts[j]) <= link) parent[find(static_cast<int>(i))] = find(static_cast<int>(j));
      }
    std::vector<std::vector<int>> groups(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) groups[find(static_cast<int>(i))].push_back(static_cast<int>(i));
    for (const auto& g : groups) {
      if (g.size() < 2) continue;
      Complex centroid(0, 0);
      for (int idx : g) centroid += pts[idx];
      centroid /= static_cast<double>(g.size());

      // The cluster mean is biased by the asymmetric scatter (error ~eps^(1/m)
      // relative, which the validation below would reject).  An m-fold root is
      // a simple root of the (m-1)-th derivative, so Newton there recovers it
      // to full precision; a spurious group just fails validation and rolls back.
      UniPoly d;
      d.coeffs.assign(monic.begin(), monic.end());
      for (size_t k = 1; k < g.size(); ++k) d = poly_derivative(d);
      const UniPoly dd = poly_derivative(d);
      Complex refined = centroid;
      for (int it = 0; it < 60; ++it) {
        const Complex den = poly_eval(dd, refined);
        if (std::abs(den) == 0.0 || !is_finite(den)) break;
        const Complex step = poly_eval(d, refined) / den;
        refined -= step;
        if (!is_finite(refined)) break;
        if (std::abs(step) <= kMeps * (1.0 + std::abs(refined))) break;
      }

      for (const Complex& rep : {refined, centroid}) {
        if (!is_finite(rep)) continue;
        std::vector<Complex> trial = pts;
        for (int idx : g) trial[idx] = rep;
        if (reconstruct_error(monic, trial) <= accept_tol) {
          pts = trial;
          break;
        }
      }
    }
  }
  return pts;
}

}  // namespace

std::vector<Complex> poly_roots(const UniPoly& p_in, const Tolerance& tol, std::uint64_t seed) {
  for (const auto& c : p_in.coeffs) require_finite(c, "poly_roots coefficient");
  if (p_in.coeffs.empty() || p_in.max_coeff_mod() == 0.0)
    throw DomainError("indeterminate", "poly_roots: zero polynomial has indeterminate roots");
  UniPoly p = poly_trim(p_in, 0.0);
  const int n = p.degree();
  if (n < 1)
    throw std::invalid_argument("poly_roots: polynomial has degree 0 (no roots)");

  std::vector<Complex> roots;
  if (n == 1) {
    roots = {-p.coeffs[0] / p.coeffs[1]};
  } else if (n == 2) {
    // numerically stable quadratic
    const Complex a = p.coeffs[2], b = p.coeffs[1], c = p.coeffs[0];
    Complex sq = std::sqrt(b * b - 4.0 * a * c);
    if (std::abs(b + sq) < std::abs(b - sq)) sq = -sq;
    Complex qq = -0.5 * (b + sq);
    if (std::abs(qq) > 0.0) {
      roots = {qq / a, c / qq};
    } else {
      roots = {-b / (2.0 * a), -b / (2.0 * a)};
    }
  } else {
    // monic normalization
    std::vector<Complex> a(p.coeffs.begin(), p.coeffs.end());
    const Complex lead = a.back();
    for (auto& c : a) c /= lead;
    a.back() = Complex(1, 0);

    double rho = 0.0;
    for (int k = 0; k < n; ++k) rho = std::max(rho, std::abs(a[k]));
    rho = 1.0 + rho;  // Cauchy bound for monic polynomials

    Rng rng = Rng(seed).fork(0x706f6c79);  // stream tag: "poly"
    bool ok = false;
    std::vector<Complex> z;
    const int kRestarts = 10;
    for (int attempt = 0; attempt < kRestarts && !ok; ++attempt) {
      Rng arng = rng.fork(attempt);
      z = initial_circle(n, rho * (1.0 + 0.05 * attempt), arng);
      ok = aberth_run(a, z, 200, arng);
    }
    if (!ok)
      throw DomainError("no-convergence",
                        "poly_roots: Aberth iteration did not converge after restarts");
    for (auto& zi : z) zi = polish_root(a, zi);
    roots = merge_clusters(a, z, 1e-9);
  }

  // contract check: residual of every returned root, relative to the
  // magnitude of the evaluation itself (|p(z)| below eps is unattainable
  // when the terms being cancelled are of size sum |a_j||z|^j)
  for (const auto& r : roots) {
    double scale = 1.0, zp = 1.0;
    const double zm = std::abs(r);
    for (const auto& c : p_in.coeffs) {
      scale += std::abs(c) * zp;
      zp *= zm;
    }
    if (std::abs(poly_eval(p_in, r)) >= tol.eps_residual * scale)
      throw DomainError("no-convergence",
                        "poly_roots: a computed root fails the residual bound");
  }
  std::sort(roots.begin(), roots.end(), lex_less);
  return roots;
}

}  // namespace tcv
