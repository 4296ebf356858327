#pragma once

#include "qdl/complex_util.hpp"
#include "qdl/errors.hpp"

namespace qdl {

/// Infinite q-Pochhammer symbol (x; q)_inf = prod_{k>=0} (1 - q^k x), |q| < 1.
///
/// Truncated when the multiplicative tail bound |q^k x| / (1 - |q|) drops
/// below tol; relative error <= tol. If min_factor is given it receives the
/// smallest |1 - q^k x| seen (for zero-denominator guards in callers).
inline cx pochhammer_inf(cx x, cx q, double tol, double* min_factor = nullptr) {
  require_finite(x, "pochhammer_inf x");
  require_finite(q, "pochhammer_inf q");
  if (tol <= 0) throw domain_error("pochhammer_inf: tol must be positive");
  double aq = std::abs(q);
  if (aq >= 1.0) throw divergent_product("pochhammer_inf: |q| >= 1");

  cx prod = 1.0;
  cx p = x;  // q^k x
  double mf = std::numeric_limits<double>::infinity();
  const long k_max = 2'000'000;
  for (long k = 0; k < k_max; ++k) {
    cx factor = 1.0 - p;
    double af = std::abs(factor);
    if (af < mf) mf = af;
    prod *= factor;
    p *= q;
    // Remaining log-tail is bounded by ~2 |q^k x| / (1 - |q|) once |q^k x| < 1/2.
    double tail = std::abs(p);
    if (tail < 0.5 && 2.0 * tail / (1.0 - aq) < tol) {
      if (min_factor) *min_factor = mf;
      return prod;
    }
  }
  throw no_convergence("pochhammer_inf: tolerance not reached (|q| too close to 1)");
}

/// log (x; q)_inf as the sum of principal logs of the factors. Safe for
/// arguments whose truncated product would overflow; intended for ratios
/// exp(log_num - log_den).
inline cx pochhammer_log_inf(cx x, cx q, double tol) {
  require_finite(x, "pochhammer_log_inf x");
  require_finite(q, "pochhammer_log_inf q");
  if (tol <= 0) throw domain_error("pochhammer_log_inf: tol must be positive");
  double aq = std::abs(q);
  if (aq >= 1.0) throw divergent_product("pochhammer_log_inf: |q| >= 1");

  cx sum = 0.0;
  cx p = x;
  const long k_max = 2'000'000;
  for (long k = 0; k < k_max; ++k) {
    sum += std::log(1.0 - p);
    p *= q;
    double tail = std::abs(p);
    if (tail < 0.5 && 2.0 * tail / (1.0 - aq) < tol) return sum;
  }
  throw no_convergence("pochhammer_log_inf: tolerance not reached");
}

}  // namespace qdl
