#include "tcv/forms.hpp"

#include <algorithm>
#include <map>

namespace tcv {

namespace {

std::array<std::array<int, 3>, Trivariate::kTerms> build_tri_table() {
  std::array<std::array<int, 3>, Trivariate::kTerms> t{};
  int n = 0;
  for (int d = 0; d <= 3; ++d)
    for (int i = d; i >= 0; --i)
      for (int j = d - i; j >= 0; --j) t[n++] = {i, j, d - i - j};
  return t;
}

}  // namespace

const std::array<std::array<int, 3>, Trivariate::kTerms>& Trivariate::exponent_table() {
  static const auto table = build_tri_table();
  return table;
}

int Trivariate::index(int i, int j, int k) {
  static const auto lookup = [] {
    std::array<int, 64> m{};
    m.fill(-1);
    const auto& t = exponent_table();
    for (int n = 0; n < kTerms; ++n) m[t[n][0] * 16 + t[n][1] * 4 + t[n][2]] = n;
    return m;
  }();
  if (i < 0 || j < 0 || k < 0 || i + j + k > 3)
    throw std::invalid_argument("Trivariate::index: exponents out of range");
  return lookup[i * 16 + j * 4 + k];
}

Complex Trivariate::eval(const Vector3c& pt) const {
  // precomputed powers, then one pass over the table
  Complex xp[4], yp[4], zp[4];
  xp[0] = yp[0] = zp[0] = Complex(1, 0);
  for (int n = 1; n < 4; ++n) {
    xp[n] = xp[n - 1] * pt(0);
    yp[n] = yp[n - 1] * pt(1);
    zp[n] = zp[n - 1] * pt(2);
  }
  Complex acc(0, 0);
  const auto& t = exponent_table();
  for (int n = 0; n < kTerms; ++n)
    if (c_[n] != Complex(0, 0)) acc += c_[n] * xp[t[n][0]] * yp[t[n][1]] * zp[t[n][2]];
  return acc;
}

int Trivariate::degree() const {
  const auto& t = exponent_table();
  int d = 0;
  for (int n = 0; n < kTerms; ++n)
    if (c_[n] != Complex(0, 0)) d = std::max(d, t[n][0] + t[n][1] + t[n][2]);
  return d;
}

double Trivariate::max_abs() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

Trivariate Trivariate::degree_part(int d) const {
  Trivariate r;
  const auto& t = exponent_table();
  for (int n = 0; n < kTerms; ++n)
    if (t[n][0] + t[n][1] + t[n][2] == d) r.c_[n] = c_[n];
  return r;
}

Trivariate& Trivariate::operator+=(const Trivariate& o) {
  for (int n = 0; n < kTerms; ++n) c_[n] += o.c_[n];
  return *this;
}
Trivariate& Trivariate::operator-=(const Trivariate& o) {
  for (int n = 0; n < kTerms; ++n) c_[n] -= o.c_[n];
  return *this;
}
Trivariate& Trivariate::operator*=(const Complex& s) {
  for (auto& c : c_) c *= s;
  return *this;
}

Trivariate trivariate_mul(const Trivariate& a, const Trivariate& b) {
  if (a.degree() + b.degree() > 3)
    throw std::logic_error("trivariate_mul: product degree exceeds 3");
  Trivariate r;
  const auto& t = Trivariate::exponent_table();
  for (int m = 0; m < Trivariate::kTerms; ++m) {
    if (a[m] == Complex(0, 0)) continue;
    for (int n = 0; n < Trivariate::kTerms; ++n) {
      if (b[n] == Complex(0, 0)) continue;
      int i = t[m][0] + t[n][0], j = t[m][1] + t[n][1], k = t[m][2] + t[n][2];
      if (i + j + k > 3) continue;  // both factors' nonzero parts fit by the degree check
      r.at(i, j, k) += a[m] * b[n];
    }
  }
  return r;
}

Trivariate trivariate_linear_form(const Vector3c& l) {
  Trivariate f;
  f.at(1, 0, 0) = l(0);
  f.at(0, 1, 0) = l(1);
  f.at(0, 0, 1) = l(2);
  return f;
}

UniPoly trivariate_on_line(const Trivariate& T, const Vector3c& A, const Vector3c& B) {
  UniPoly coord[3];
  for (int m = 0; m < 3; ++m) coord[m].coeffs = {A(m), B(m)};
  UniPoly acc;
  acc.coeffs.assign(4, Complex(0, 0));
  const auto& t = Trivariate::exponent_table();
  for (int n = 0; n < Trivariate::kTerms; ++n) {
    if (T[n] == Complex(0, 0)) continue;
    UniPoly term;
    term.coeffs = {T[n]};
    for (int m = 0; m < 3; ++m)
      for (int e = 0; e < t[n][m]; ++e) term = poly_mul(term, coord[m]);
    for (size_t k = 0; k < term.coeffs.size(); ++k) acc.coeffs[k] += term.coeffs[k];
  }
  return acc;
}

Trivariate substitute(const Trivariate& f, const AffineChange& g) {
  for (int i = 0; i < 3; ++i) {
    require_finite(g.translation(i), "substitute translation");
    for (int j = 0; j < 3; ++j) require_finite(g.linear(i, j), "substitute linear part");
  }
  require_finite(g.divisor, "substitute divisor");
  if (std::abs(g.divisor) == 0.0)
    throw std::invalid_argument("substitute: divisor must be nonzero");
  Eigen::JacobiSVD<Matrix3c> svd(g.linear);
  const auto& sv = svd.singularValues();
  if (!(sv(2) > 1e-13 * sv(0)))
    throw std::invalid_argument("substitute: linear part is singular");

  // degree-1 polynomials for the substituted coordinates
  Trivariate sub[3];
  for (int m = 0; m < 3; ++m) {
    sub[m].at(0, 0, 0) = g.translation(m);
    sub[m].at(1, 0, 0) = g.linear(m, 0);
    sub[m].at(0, 1, 0) = g.linear(m, 1);
    sub[m].at(0, 0, 1) = g.linear(m, 2);
  }
  // powers up to 3
  Trivariate pw[3][4];
  for (int m = 0; m < 3; ++m) {
    pw[m][0].at(0, 0, 0) = Complex(1, 0);
    for (int e = 1; e <= 3; ++e) pw[m][e] = trivariate_mul(pw[m][e - 1], sub[m]);
  }
  Trivariate r;
  const auto& t = Trivariate::exponent_table();
  for (int n = 0; n < Trivariate::kTerms; ++n) {
    if (f[n] == Complex(0, 0)) continue;
    Trivariate term = trivariate_mul(pw[0][t[n][0]], pw[1][t[n][1]]);
    term = trivariate_mul(term, pw[2][t[n][2]]);
    r += f[n] * term;
  }
  r *= Complex(1, 0) / g.divisor;
  return r;
}

AffineChange compose(const AffineChange& g, const AffineChange& h) {
  AffineChange k;
  k.linear = g.linear * h.linear;
  k.translation = g.linear * h.translation + g.translation;
  k.divisor = g.divisor * h.divisor;
  return k;
}

namespace {

std::vector<std::array<int, 4>> build_quad_table(int degree) {
  std::vector<std::array<int, 4>> t;
  for (int e0 = degree; e0 >= 0; --e0)
    for (int e1 = degree - e0; e1 >= 0; --e1)
      for (int e2 = degree - e0 - e1; e2 >= 0; --e2) t.push_back({e0, e1, e2, degree - e0 - e1 - e2});
  return t;
}

const std::vector<std::array<int, 4>>& quad_table(int degree) {
  static const std::vector<std::array<int, 4>> tables[4] = {
      build_quad_table(0), build_quad_table(1), build_quad_table(2), build_quad_table(3)};
  return tables[degree];
}

}  // namespace

QuaternaryForm::QuaternaryForm(int degree) : degree_(degree) {
  if (degree < 0 || degree > 3)
    throw std::invalid_argument("QuaternaryForm: degree must be 0..3");
  c_.assign(quad_table(degree).size(), Complex(0, 0));
}

const std::vector<std::array<int, 4>>& QuaternaryForm::exponents() const {
  return quad_table(degree_);
}

Complex& QuaternaryForm::coeff(int e0, int e1, int e2, int e3) {
  const auto& t = quad_table(degree_);
  for (size_t n = 0; n < t.size(); ++n)
    if (t[n][0] == e0 && t[n][1] == e1 && t[n][2] == e2 && t[n][3] == e3)
      return c_[n];
  throw std::invalid_argument("QuaternaryForm::coeff: bad exponents");
}

const Complex& QuaternaryForm::coeff(int e0, int e1, int e2, int e3) const {
  return const_cast<QuaternaryForm*>(this)->coeff(e0, e1, e2, e3);
}

Complex QuaternaryForm::eval(const Vector4c& pt) const {
  Complex pw[4][4];
  for (int m = 0; m < 4; ++m) {
    pw[m][0] = Complex(1, 0);
    for (int e = 1; e < 4; ++e) pw[m][e] = pw[m][e - 1] * pt(m);
  }
  Complex acc(0, 0);
  const auto& t = quad_table(degree_);
  for (size_t n = 0; n < t.size(); ++n)
    if (c_[n] != Complex(0, 0))
      acc += c_[n] * pw[0][t[n][0]] * pw[1][t[n][1]] * pw[2][t[n][2]] * pw[3][t[n][3]];
  return acc;
}

double QuaternaryForm::max_abs() const {
  double m = 0.0;
  for (const auto& c : c_) m = std::max(m, std::abs(c));
  return m;
}

QuaternaryForm QuaternaryForm::partial(int var) const {
  if (var < 0 || var > 3) throw std::invalid_argument("QuaternaryForm::partial: bad variable");
  if (degree_ == 0) return QuaternaryForm(0);
  QuaternaryForm d(degree_ - 1);
  const auto& t = quad_table(degree_);
  for (size_t n = 0; n < t.size(); ++n) {
    if (c_[n] == Complex(0, 0) || t[n][var] == 0) continue;
    std::array<int, 4> e = t[n];
    const double mult = e[var];
    e[var] -= 1;
    d.coeff(e[0], e[1], e[2], e[3]) += mult * c_[n];
  }
  return d;
}

QuaternaryForm homogenize(const Trivariate& f) {
  QuaternaryForm S(3);
  const auto& t = Trivariate::exponent_table();
  for (int n = 0; n < Trivariate::kTerms; ++n) {
    if (f[n] == Complex(0, 0)) continue;
    int i = t[n][0], j = t[n][1], k = t[n][2];
    S.coeff(i, j, k, 3 - i - j - k) += f[n];
  }
  return S;
}

Trivariate restrict_to_plane(const QuaternaryForm& S, const Eigen::Matrix<Complex, 4, 3>& U) {
  // degree-1 trivariates for the four ambient coordinates
  Trivariate sub[4];
  for (int m = 0; m < 4; ++m) {
    sub[m].at(1, 0, 0) = U(m, 0);
    sub[m].at(0, 1, 0) = U(m, 1);
    sub[m].at(0, 0, 1) = U(m, 2);
  }
  Trivariate pw[4][4];
  for (int m = 0; m < 4; ++m) {
    pw[m][0].at(0, 0, 0) = Complex(1, 0);
    for (int e = 1; e <= 3; ++e) pw[m][e] = trivariate_mul(pw[m][e - 1], sub[m]);
  }
  Trivariate r;
  const auto& t = S.exponents();
  for (int n = 0; n < S.terms(); ++n) {
    if (S[n] == Complex(0, 0)) continue;
    Trivariate term = trivariate_mul(pw[0][t[n][0]], pw[1][t[n][1]]);
    term = trivariate_mul(term, pw[2][t[n][2]]);
    term = trivariate_mul(term, pw[3][t[n][3]]);
    r += S[n] * term;
  }
  return r;
}

UniPoly restrict_to_line(const QuaternaryForm& S, const Vector4c& P1, const Vector4c& P2) {
  UniPoly coord[4];
  for (int m = 0; m < 4; ++m) coord[m].coeffs = {P1(m), P2(m)};
  UniPoly acc;
  acc.coeffs.assign(S.degree() + 1, Complex(0, 0));
  const auto& t = S.exponents();
  for (int n = 0; n < S.terms(); ++n) {
    if (S[n] == Complex(0, 0)) continue;
    UniPoly term;
    term.coeffs = {S[n]};
    for (int m = 0; m < 4; ++m)
      for (int e = 0; e < t[n][m]; ++e) term = poly_mul(term, coord[m]);
    for (size_t k = 0; k < term.coeffs.size(); ++k) acc.coeffs[k] += term.coeffs[k];
  }
  return acc;
}

}  // namespace tcv
