#pragma once

#include <cmath>
#include <complex>
#include <limits>

#include "qdl/errors.hpp"

namespace qdl {

using cx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 2.0 * pi;
inline constexpr cx iu{0.0, 1.0};

inline bool is_finite(double v) { return std::isfinite(v); }
inline bool is_finite(cx v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }

/// e^{i a} for complex a.
inline cx expi(cx a) { return std::exp(iu * a); }

inline void require_finite(cx v, const char* what) {
  if (!is_finite(v)) throw non_finite(std::string(what) + ": non-finite value");
}

/// sinh(z)/z, stable near z = 0.
inline cx sinhc(cx z) {
  if (std::abs(z) < 1e-4) {
    cx z2 = z * z;
    return 1.0 + z2 / 6.0 * (1.0 + z2 / 20.0);
  }
  return std::sinh(z) / z;
}

/// Relative residual |lhs - rhs| / max(|lhs|, |rhs|, floor).
inline double rel_residual(cx lhs, cx rhs, double floor = 1e-30) {
  double scale = std::max({std::abs(lhs), std::abs(rhs), floor});
  return std::abs(lhs - rhs) / scale;
}

/// Euclidean remainder in [0, m).
inline double wrap_positive(double v, double m) {
  double r = std::fmod(v, m);
  if (r < 0) r += m;
  // fmod can return exactly m after the correction when v is a tiny negative
  if (r >= m) r -= m;
  return r;
}

inline long wrap_mod(long v, long m) {
  long r = v % m;
  if (r < 0) r += m;
  return r;
}

}  // namespace qdl
