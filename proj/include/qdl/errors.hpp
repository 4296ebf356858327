#pragma once

#include <stdexcept>
#include <string>

namespace qdl {

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// |q| >= 1 in an infinite q-product.
class divergent_product : public error {
 public:
  using error::error;
};

/// A non-finite value entered a numeric kernel.
class non_finite : public error {
 public:
  using error::error;
};

/// Argument closer to the pole/zero lattice than the configured guard.
class pole_proximity : public error {
 public:
  using error::error;
};

/// Shift recursion failed to move the argument into the evaluation strip.
class strip_exhausted : public error {
 public:
  using error::error;
};

/// Quadrature or series failed to converge within configured limits.
class no_convergence : public error {
 public:
  using error::error;
};

/// Requested contour rotation outside the integrand's declared sector.
class sector_violation : public error {
 public:
  using error::error;
};

/// Points from different groups mixed in one operation.
class group_mismatch : public error {
 public:
  using error::error;
};

/// Configuration violates a delta-function constraint surface.
class constraint_violated : public error {
 public:
  using error::error;
};

/// A q-product in a denominator vanished within the guard.
class zero_denominator : public error {
 public:
  using error::error;
};

/// Operation undefined for the given component values (e.g. halving an odd
/// discrete component).
class domain_error : public error {
 public:
  using error::error;
};

/// Spherical-triangle data outside the admissible open region.
class degenerate_triangle : public error {
 public:
  using error::error;
};

/// Invalid campaign or CLI configuration.
class config_error : public error {
 public:
  using error::error;
};

}  // namespace qdl
