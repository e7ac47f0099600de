#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "tcv/types.hpp"
#include "tcv/unipoly.hpp"

namespace tcv {

using Vector3c = Eigen::Vector3cd;
using Matrix3c = Eigen::Matrix3cd;
using Vector4c = Eigen::Vector4cd;

// Dense polynomial in (x, y, z) of total degree <= 3: 20 coefficients indexed
// by exponent triples (i, j, k), i + j + k <= 3, graded-lexicographic order.
class Trivariate {
 public:
  static constexpr int kTerms = 20;

  Trivariate() { c_.fill(Complex(0, 0)); }

  static int index(int i, int j, int k);
  static const std::array<std::array<int, 3>, kTerms>& exponent_table();

  Complex& at(int i, int j, int k) { return c_[index(i, j, k)]; }
  const Complex& at(int i, int j, int k) const { return c_[index(i, j, k)]; }
  Complex& operator[](int idx) { return c_[idx]; }
  const Complex& operator[](int idx) const { return c_[idx]; }

  Complex eval(const Vector3c& pt) const;
  int degree() const;          // max total degree with exactly nonzero coefficient
  double max_abs() const;
  Trivariate degree_part(int d) const;

  Trivariate& operator+=(const Trivariate& o);
  Trivariate& operator-=(const Trivariate& o);
  Trivariate& operator*=(const Complex& s);
  friend Trivariate operator+(Trivariate a, const Trivariate& b) { return a += b; }
  friend Trivariate operator-(Trivariate a, const Trivariate& b) { return a -= b; }
  friend Trivariate operator*(const Complex& s, Trivariate a) { return a *= s; }

 private:
  std::array<Complex, kTerms> c_;
};

// Product; throws std::logic_error if the degrees sum beyond 3.
Trivariate trivariate_mul(const Trivariate& a, const Trivariate& b);

// The linear form l0*x + l1*y + l2*z.
Trivariate trivariate_linear_form(const Vector3c& l);

// Restriction of T along the parametrized line tau -> A + tau*B.
UniPoly trivariate_on_line(const Trivariate& T, const Vector3c& A, const Vector3c& B);

// Invertible affine coordinate change: represents the map u -> L u + v
// together with a scalar divisor.  substitute(f, g) = f(L u + v) / divisor.
struct AffineChange {
  Matrix3c linear = Matrix3c::Identity();
  Vector3c translation = Vector3c::Zero();
  Complex divisor = Complex(1, 0);

  static AffineChange identity() { return {}; }
};

// f(L u + v) / divisor.  Throws std::invalid_argument if L is singular or
// the divisor vanishes.
Trivariate substitute(const Trivariate& f, const AffineChange& g);

// Affine-map composition: compose(g, h) is g after h, so that
// substitute(substitute(f, g), h) == substitute(f, compose(g, h)).
AffineChange compose(const AffineChange& g, const AffineChange& h);

// Homogeneous polynomial in (X, Y, Z, W) of degree 1, 2 or 3.
class QuaternaryForm {
 public:
  explicit QuaternaryForm(int degree);

  int degree() const { return degree_; }
  int terms() const { return static_cast<int>(c_.size()); }
  const std::vector<std::array<int, 4>>& exponents() const;

  Complex& coeff(int e0, int e1, int e2, int e3);
  const Complex& coeff(int e0, int e1, int e2, int e3) const;
  Complex& operator[](int idx) { return c_[idx]; }
  const Complex& operator[](int idx) const { return c_[idx]; }

  Complex eval(const Vector4c& pt) const;
  double max_abs() const;
  QuaternaryForm partial(int var) const;

 private:
  int degree_;
  std::vector<Complex> c_;
};

// x^i y^j z^k  ->  X^i Y^j Z^k W^(3-i-j-k).
QuaternaryForm homogenize(const Trivariate& f);

// Restriction of S to the plane spanned by the columns of U (in coordinates
// (s, t, u) on the plane): a homogeneous Trivariate of the same degree.
Trivariate restrict_to_plane(const QuaternaryForm& S, const Eigen::Matrix<Complex, 4, 3>& U);

// Restriction of S along the projective line tau -> P1 + tau*P2.
UniPoly restrict_to_line(const QuaternaryForm& S, const Vector4c& P1, const Vector4c& P2);

}  // namespace tcv
