#pragma once

#include <cstdint>
#include <vector>

#include "tcv/types.hpp"

namespace tcv {

// Univariate polynomial with complex coefficients, lowest degree first:
// coeffs[k] multiplies t^k.  Trailing (highest-degree) zeros are allowed in
// the representation; degree() reports the index of the last coefficient.
struct UniPoly {
  std::vector<Complex> coeffs;

  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> c) : coeffs(std::move(c)) {}

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }
  double max_coeff_mod() const;
};

Complex poly_eval(const UniPoly& p, const Complex& t);
UniPoly poly_derivative(const UniPoly& p);
UniPoly poly_mul(const UniPoly& a, const UniPoly& b);
UniPoly poly_from_roots(const std::vector<Complex>& roots, const Complex& leading = Complex(1, 0));

// Drop negligible leading coefficients (relative to the largest modulus).
UniPoly poly_trim(const UniPoly& p, double rel_tol = 0.0);

// All complex roots, with multiplicity, of a polynomial of degree >= 1.
// Closed forms for degrees 1-2; Aberth-Ehrlich simultaneous iteration above
// that, with seeded random initialization/restarts so results are a pure
// function of (p, seed).  An m-fold root is returned as m copies of the
// cluster centroid when coefficient reconstruction confirms the merge.
// Roots are sorted by (re, im).
//
// Throws DomainError("indeterminate")  if p is (numerically) the zero polynomial,
//        DomainError("no-convergence") if iteration fails after all restarts,
//        std::invalid_argument          on non-finite coefficients or degree 0.
std::vector<Complex> poly_roots(const UniPoly& p, const Tolerance& tol = {},
                                std::uint64_t seed = 0);

}  // namespace tcv
