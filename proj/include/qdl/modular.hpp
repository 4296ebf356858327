#pragma once

#include "qdl/complex_util.hpp"
#include "qdl/errors.hpp"

namespace qdl {

// Evaluation regime for the modular parameter b.
//   product:    Im b^2 > 0, both q-products converge
//   unimodular: b real positive or |b| = 1 with Re b > 0; the function is a
//               pure phase on the real line and only the contour-integral
//               representation applies
enum class BRegime { product, unimodular };

class ModularParam {
 public:
  explicit ModularParam(cx b) : b_(b) {
    if (!is_finite(b) || std::abs(b) == 0.0) throw domain_error("ModularParam: bad b");
    cx b2 = b * b;
    const double mod_tol = 1e-14;
    bool real_b = std::abs(b.imag()) <= mod_tol * std::abs(b);
    bool unit_b = std::abs(std::abs(b) - 1.0) <= mod_tol;
    if (real_b) {
      if (b.real() <= 0.0) throw domain_error("ModularParam: real b must be positive");
      b_ = cx(b.real(), 0.0);
      regime_ = BRegime::unimodular;
    } else if (b2.imag() > mod_tol) {
      regime_ = BRegime::product;  // includes |b| = 1 in the upper half
    } else if (unit_b && b.real() > 0.0) {
      regime_ = BRegime::unimodular;
    } else {
      throw domain_error(
          "ModularParam: need Im b^2 > 0, real b > 0, or |b| = 1 with Re b > 0 "
          "(try 1/b)");
    }
    q_ = expi(pi * b_ * b_);
    q_tilde_ = expi(-pi / (b_ * b_));
    eta_b_ = iu * (b_ + 1.0 / b_) / 2.0;
  }

  cx b() const { return b_; }
  cx b_inv() const { return 1.0 / b_; }
  cx q() const { return q_; }
  cx q_tilde() const { return q_tilde_; }
  /// eta_b = i (b + 1/b) / 2.
  cx eta_b() const { return eta_b_; }
  BRegime regime() const { return regime_; }

  /// Half-width of the strip |Im x| < Im eta_b where the contour-integral
  /// representation converges.
  double strip_halfwidth() const { return eta_b_.imag(); }

 private:
  cx b_;
  BRegime regime_;
  cx q_, q_tilde_, eta_b_;
};

}  // namespace qdl
