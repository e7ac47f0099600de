#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tcv/rng.hpp"
#include "tcv/trace_map.hpp"
#include "tcv/types.hpp"

namespace tcv {

using Matrix2c = Eigen::Matrix2cd;

inline Complex det2(const Matrix2c& M) { return M(0, 0) * M(1, 1) - M(0, 1) * M(1, 0); }
inline Complex tr2(const Matrix2c& M) { return M(0, 0) + M(1, 1); }

// |det M - 1|; unimodular matrices must keep this below 1e-10.
double unimodular_residual(const Matrix2c& M);

// Four-holed sphere: boundary-respecting tuple with A B C D = I.
struct FourHoledSphereRep {
  Matrix2c A, B, C, D;
};

// One-holed torus: free pair (A, B); the boundary is the commutator.
struct TorusRep {
  Matrix2c A, B;
};

struct CharacterPoint {
  Complex x, y, z;

  Complex& operator[](int i) { return (&x)[i]; }
  const Complex& operator[](int i) const { return (&x)[i]; }
  double max_mod() const;
};

struct TracesAndPoint {
  Traces4 traces;       // (tr A, tr B, tr C, tr D)
  CharacterPoint point; // (tr AB, tr BC, tr CA)
};

// Trace coordinates of a representation.  Validates unimodularity (1e-10)
// and the boundary relation ABCD = I (1e-9); throws
// DomainError("invalid-representation") otherwise.
TracesAndPoint traces_of_rep(const FourHoledSphereRep& rep);

// xi with xi + 1/xi = a, choosing |xi| >= 1 (ties: nonnegative imaginary part).
Complex half_trace_root(const Complex& a);

// Explicit representation with the prescribed boundary traces and character
// point, in normal position (A upper triangular, B lower triangular).
// Throws DomainError with kind
//   "off-variety"               point fails the defining equation for phi(traces),
//   "reducible-locus"           x^2 + a^2 + b^2 - abx - 4 = 0 (A, B share an eigenvector),
//   "degenerate-configuration"  the linear system for C is singular / det C drifts.
FourHoledSphereRep build_rep_4holed(const Traces4& traces, const CharacterPoint& pt,
                                    const Tolerance& tol = {});

// Trace of the boundary commutator as a function of the character point:
//   tr(A B A^-1 B^-1) = x^2 + y^2 + z^2 - xyz - 2.
Complex torus_char(const CharacterPoint& pt);

// Representation of the one-holed torus with tr A = x, tr B = y, tr AB = z.
// The distinguished point (2,2,2) returns the identity pair; any other point
// with torus_char = 2 is rejected as "reducible-locus".
TorusRep build_rep_torus(const CharacterPoint& pt, const Tolerance& tol = {});

// Orbit of the parameters under the sign-change group acting on (p, q, r)
// by even sign patterns; s is fixed.
struct DeltaOrbit {
  bool is_invariant = false;             // iff p = q = r = 0 within tolerance
  std::vector<CubicParams> orbit;        // deduplicated, canonically sorted
};
DeltaOrbit delta_orbit(const CubicParams& params, const Tolerance& tol = {});

// The boundary trace of the torus leaf with parameter s.  The constructive
// value (verified by building representations) is s - 2; some sources state
// s + 2, which is returned alongside for comparison.
struct TorusCorrespondence {
  Complex kappa;            // s - 2
  Complex kappa_alternate;  // s + 2
};
TorusCorrespondence torus_correspondence(const Complex& s);

// Random SL2 matrix: Gaussian entries scaled by a square root of the
// determinant (determinants below 1e-3 in modulus are rejected and redrawn).
Matrix2c random_unimodular(Rng& rng);

}  // namespace tcv
