#pragma once

#include <cstdint>
#include <random>

#include "tcv/types.hpp"

namespace tcv {

// Deterministic random source.  mt19937_64 output is bit-exact across
// conforming standard libraries, but the std::*_distribution adaptors are
// not, so the uniform/gaussian transforms are done by hand here.  Identical
// seeds therefore give identical streams on any platform.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : tag_(mix(seed)), gen_(tag_) {}

  // splitmix64; decorrelates nearby seeds and derived streams.
  static std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  // Independent child stream (for restarts, per-attempt draws, ...).
  Rng fork(std::uint64_t stream) const {
    return Rng(tag_ ^ (stream * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL));
  }

  // Uniform in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  // Standard normal via Box-Muller (no cached spare: keeps the stream
  // position a pure function of the number of calls).
  double gaussian() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  Complex gaussian_complex() {
    double re = gaussian();
    return Complex(re, gaussian());
  }

  // Uniform on the square [-r, r]^2 of the complex plane.
  Complex uniform_box(double r) {
    double re = uniform(-r, r);
    return Complex(re, uniform(-r, r));
  }

  // Uniform on the closed disc of radius r (rejection from the box).
  Complex uniform_disc(double r) {
    for (;;) {
      Complex z = uniform_box(r);
      if (std::abs(z) <= r) return z;
    }
  }

  std::uint64_t raw() { return gen_(); }

 private:
  std::uint64_t tag_;
  std::mt19937_64 gen_;
};

}  // namespace tcv
