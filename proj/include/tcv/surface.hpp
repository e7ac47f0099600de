#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "tcv/forms.hpp"
#include "tcv/trace_map.hpp"
#include "tcv/types.hpp"

namespace tcv {

// The member of the family with parameters (p, q, r, s):
//   x^2 + y^2 + z^2 + xyz - p x - q y - r z - s.
Trivariate normal_form_poly(const CubicParams& params);

// Inverse of normal_form_poly up to tolerance: recognizes cubic part xyz,
// unit diagonal quadratic, vanishing cross terms; nullopt otherwise.
std::optional<CubicParams> params_of_normal_form(const Trivariate& f, double rel_tol = 1e-7);

// Defining-equation residual at pt, relative to the cubic scale of the data.
double on_surface(const CubicParams& params, const Vector3c& pt);

// The two solutions z of the defining equation for fixed (x, y):
//   z^2 + (xy - r) z + (x^2 + y^2 - p x - q y - s) = 0.
std::array<Complex, 2> solve_for_z(const CubicParams& params, const Complex& x, const Complex& y);

// Parameter symmetry group: permutations of (p, q, r) composed with even
// sign changes (the stabilizer of the family's shape), 24 elements.
// canonicalize_params returns the lexicographically least equivalent tuple
// (ordered by (re, im) of p, q, r, s) and the linear coordinate change E
// with substitute(normal_form_poly(params), {E, 0, 1}) == normal_form_poly(least).
std::pair<CubicParams, Matrix3c> canonicalize_params(const CubicParams& params);

// Affine classification of a general trivariate cubic into the family:
// factors the cubic part into three independent linear forms, straightens
// them to xyz, kills the quadratic cross terms by translation, rescales the
// diagonal, and canonicalizes.  Returns the parameters and the full change
// with substitute(f, change) == normal_form_poly(params) within tol.
//
// Throws DomainError with kind
//   "not-generic-tritangent-at-infinity" if the cubic part is not a product
//                                        of three pairwise independent forms,
//   "eckardt-at-infinity"                if the three factor lines are concurrent,
//   "singular-at-infinity"               if a diagonal quadratic coefficient vanishes.
std::pair<CubicParams, AffineChange> normalize(const Trivariate& f, const Tolerance& tol = {});

// Factorization of a homogeneous ternary cubic into linear forms.
struct CubicFormFactors {
  bool ok = false;
  Complex scale;                  // T = scale * l1 * l2 * l3 when ok
  std::array<Vector3c, 3> lines;  // pairwise independent, largest entry normalized to 1
  bool repeated_factor = false;   // T is a product of lines but with repetition
  double residual = 0.0;          // max coefficient mismatch of the product fit
};
CubicFormFactors factor_cubic_form(const Trivariate& cubic_part, const Tolerance& tol = {},
                                   std::uint64_t seed = 0);

// Tritangent verification for a plane section of a projective cubic surface.
enum class TritangentKind { generic, eckardt, touches_singularity, not_tritangent };

struct TritangentReport {
  TritangentKind kind = TritangentKind::not_tritangent;
  // For the three-line cases: each line as a pair of points spanning it in P^3.
  std::vector<std::array<Vector4c, 2>> lines;
  std::optional<Vector4c> eckardt_point;  // concurrency point (kind == eckardt)
  double factor_residual = 0.0;
};

// S: homogeneous cubic in (X, Y, Z, W); P: plane coefficients (not all zero).
// Decides whether S ∩ P is a triangle of three distinct lines avoiding the
// singular locus of S, and whether the triangle degenerates to concurrent
// lines (an Eckardt configuration).
TritangentReport verify_tritangent(const QuaternaryForm& S, const Vector4c& P,
                                   const Tolerance& tol = {});

// Singular points of the affine surface with the given parameters: common
// zeros of the defining polynomial and its gradient.  Elimination reduces to
// a quintic in z (plus the special branches z = ±2); candidates are polished
// and filtered by gradient and membership residuals.
struct SingularPointReport {
  Vector3c location;
  double gradient_residual = 0.0;
  double surface_residual = 0.0;
  int hessian_rank = 0;
};
std::vector<SingularPointReport> singular_points(const CubicParams& params,
                                                 const Tolerance& tol = {});

}  // namespace tcv
