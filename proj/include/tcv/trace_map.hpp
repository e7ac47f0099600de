#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <vector>

#include "tcv/types.hpp"
#include "tcv/unipoly.hpp"

namespace tcv {

// Boundary traces (a, b, c, d) of the four-holed sphere.
struct Traces4 {
  Complex a, b, c, d;

  Complex& operator[](int i) { return (&a)[i]; }
  const Complex& operator[](int i) const { return (&a)[i]; }
  double max_mod() const;
};

// Coefficients (p, q, r, s) of the cubic family
//   x^2 + y^2 + z^2 + xyz = p x + q y + r z + s.
struct CubicParams {
  Complex p, q, r, s;

  Complex& operator[](int i) { return (&p)[i]; }
  const Complex& operator[](int i) const { return (&p)[i]; }
  double max_mod() const;
};

// The boundary-trace map:
//   p = ab + cd,  q = bc + da,  r = ca + bd,
//   s = 4 - a^2 - b^2 - c^2 - d^2 - abcd.
CubicParams phi(const Traces4& t);

// Jacobian of phi, rows ordered (p, q, r, s), columns (a, b, c, d).
Eigen::Matrix4cd phi_jacobian(const Traces4& t);

// Determinant of the Jacobian by exact cofactor expansion (no pivoting).
Complex phi_jacobian_det(const Traces4& t);
Complex det4_cofactor(const Eigen::Matrix4cd& M);

// Residuals of the six difference/sum factorizations of the image:
//   p - q = (a-c)(b-d)    p + q = (a+c)(b+d)
//   q - r = (b-a)(c-d)    q + r = (a+b)(c+d)
//   p - r = (a-d)(b-c)    r + p = (a+d)(b+c)
// Returned in the order listed (three differences, then three sums).
std::array<double, 6> factor_residuals(const Traces4& t);

// Elementary symmetric functions of (a, b, c, d) and their monic quartic.
struct ElemSym {
  Complex e1, e2, e3, e4;
  static ElemSym of(const Traces4& t);
  UniPoly quartic() const;  // t^4 - e1 t^3 + e2 t^2 - e3 t + e4
};

// Trace tuples whose image has p = q = r = 0 (the Markov-like locus):
//   all_zero_family:      at least three of (a,b,c,d) vanish;
//   antidiagonal_family:  three entries equal, the fourth their negative.
enum class PqrZeroFamily { all_zero_family, antidiagonal_family, none };
PqrZeroFamily classify_pqr_zero(const Traces4& t, const Tolerance& tol = {});

// max-modulus of phi(t) - target, relative to the target's scale.
double forward_residual(const Traces4& t, const CubicParams& target);

enum class FiberMethod { elimination, newton_oracle };

struct FiberSolution {
  std::vector<Traces4> points;      // canonically sorted, antipode-closed, deduplicated
  std::vector<double> residuals;    // forward residual per point
  FiberMethod method = FiberMethod::elimination;
  std::uint64_t seed = 0;
};

// All preimages of `target` under phi.  The elimination branch reduces to a
// cubic in u = e1^2 followed by quartic solves over all trace orderings; it
// is exhaustive because every preimage satisfies the derived resolvent
// relations.  Results are Newton-polished and verified against eps_residual.
// Throws DomainError("fiber-not-found") when nothing survives.
FiberSolution fiber(const CubicParams& target, const Tolerance& tol = {},
                    std::uint64_t seed = 0);

// Independent oracle: damped-free Newton from `starts` random starting points
// in the box |entries| <= 10.  Returns the deduplicated, antipode-closed set.
std::vector<Traces4> fiber_newton_multistart(const CubicParams& target, int starts,
                                             const Tolerance& tol = {}, std::uint64_t seed = 0);

struct FiberCount {
  int count = 0;
  bool even = false;
  bool saturated = false;    // multistart stopped finding new points well before the cap
  bool non_generic = false;  // some preimage has (near-)singular Jacobian
  std::vector<Traces4> points;
};

// Count of distinct preimages: union of the elimination branch and a Newton
// multistart with `trials` starts.
FiberCount fiber_count(const CubicParams& target, int trials = 500, std::uint64_t seed = 0,
                       const Tolerance& tol = {});

// Minimum of max(|p|,|q|,|r|,|s|) over `samples` random trace tuples with
// max-modulus exactly R.  (Establishes properness empirically: the image of
// a large sphere stays away from bounded sets.)
double min_image_on_sphere(double R, int samples, std::uint64_t seed = 0);

}  // namespace tcv
