#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace tcv {

using Complex = std::complex<double>;

// Numerical policy shared across the library.
//   eps_residual: bound for "this value should be an exact zero" checks,
//                 always applied relative to the natural scale of the data.
//   eps_equal:    bound for deduplication / coincidence decisions.
struct Tolerance {
  double eps_residual = 1e-9;
  double eps_equal = 1e-7;
};

// Error for inputs that are structurally valid but outside an operation's
// mathematical domain.  `kind` is a stable machine-readable slug which the
// CLI forwards as "error_kind" (exit code 2).
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Singular linear system; carries the SVD rank estimate.
class SingularSystemError : public DomainError {
 public:
  SingularSystemError(int rank, const std::string& what)
      : DomainError("singular-system", what), rank_(rank) {}
  int rank() const noexcept { return rank_; }

 private:
  int rank_;
};

inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void require_finite(const Complex& z, const char* what) {
  if (!is_finite(z)) throw std::invalid_argument(std::string(what) + ": non-finite value");
}
inline void require_finite(double x, const char* what) {
  if (!is_finite(x)) throw std::invalid_argument(std::string(what) + ": non-finite value");
}

inline double mod(const Complex& z) { return std::abs(z); }

}  // namespace tcv
