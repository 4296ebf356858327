#pragma once

#include <optional>
#include <string>

#include "qdl/complex_util.hpp"
#include "qdl/errors.hpp"
#include "qdl/faddeev.hpp"
#include "qdl/group.hpp"
#include "qdl/modular.hpp"
#include "qdl/pochhammer.hpp"

namespace qdl {

/// Integer power (exact for integer exponents, no branch ambiguity).
inline cx cpow_int(cx base, long e) {
  if (e < 0) return cpow_int(1.0 / base, -e);
  cx r = 1.0;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

enum class AkStrategy { automatic, phi_product, prodrep };

/// Andersen-Kashaev dilogarithm on R x Z_N as the product of N shifted
/// Faddeev factors; {.} is the positive fractional part.
inline cx ak_phi(const GroupPoint& x, const ModularParam& m, const QuadConfig& cfg,
                 AkStrategy strategy = AkStrategy::automatic) {
  if (x.kind().family() != group_family::real_by_zn)
    throw group_mismatch("ak_phi: point not in R x Z_N");
  const int N = x.kind().modulus();
  const cx xi = x.cont();
  const long n = x.disc();
  const cx eta_b = m.eta_b();
  const double sqrtN = std::sqrt(static_cast<double>(N));

  if (strategy == AkStrategy::automatic)
    strategy = (m.regime() == BRegime::product) ? AkStrategy::prodrep : AkStrategy::phi_product;

  if (strategy == AkStrategy::prodrep) {
    if (m.regime() != BRegime::product)
      throw divergent_product("ak_phi: product representation needs Im b^2 > 0");
    double tol = std::clamp(cfg.rel_tol * 0.02, 1e-14, 1e-6);
    cx b = m.b(), bi = m.b_inv();
    cx nome1 = std::exp(two_pi * iu * (1.0 + b * b) / static_cast<double>(N));
    cx nome2 = std::exp(-two_pi * iu * (1.0 + bi * bi) / static_cast<double>(N));
    cx arg1 = std::exp(two_pi * iu * static_cast<double>(n) / static_cast<double>(N) +
                       two_pi * b * (xi * sqrtN + eta_b) / static_cast<double>(N));
    cx arg2 = std::exp(-two_pi * iu * static_cast<double>(n) / static_cast<double>(N) +
                       two_pi * bi * (xi * sqrtN - eta_b) / static_cast<double>(N));
    return std::exp(pochhammer_log_inf(arg1, nome1, tol) - pochhammer_log_inf(arg2, nome2, tol));
  }

  cx prod = 1.0;
  for (long j = 0; j < N; ++j) {
    double frac = static_cast<double>((j + n) % N) / N;
    cx arg = xi / sqrtN + (1.0 - 1.0 / N) * eta_b -
             iu * m.b_inv() * (static_cast<double>(j) / N) - iu * m.b() * frac;
    prod *= faddeev_phi(arg, m, cfg);
  }
  return prod;
}

/// Woronowicz dilogarithm on T x Z:
///   phi(theta, m) = (-q^{1-m} e^{i theta}; q^2)_inf / (-q^{1-m} e^{-i theta}; q^2)_inf.
///
/// For odd m >= 1 the factor pair at 2k + 1 - m = 0 is (1 + e^{i theta}) /
/// (1 + e^{-i theta}): both members vanish at theta = pi but the pair equals
/// e^{i theta} identically, so it is replaced by that value and the ratio
/// stays regular there.
inline cx wor_phi(const GroupPoint& x, cx q, double tol) {
  if (x.kind().family() != group_family::circle_by_z)
    throw group_mismatch("wor_phi: point not in T x Z");
  if (std::abs(q) >= 1.0) throw divergent_product("wor_phi: |q| >= 1");
  if (tol <= 0) throw domain_error("wor_phi: tol must be positive");
  const long m = x.disc();
  const cx ei = expi(x.cont()), emi = expi(-x.cont());
  const cx q2 = q * q;
  const double aq2 = std::abs(q2);
  const long k_unimodular = (m >= 1 && (m % 2) != 0) ? (m - 1) / 2 : -1;

  cx ratio = 1.0;
  cx p = cpow_int(q, 1 - m);  // q^{2k + 1 - m}
  const long k_max = 2'000'000;
  for (long k = 0; k < k_max; ++k) {
    if (k == k_unimodular) {
      ratio *= ei;
    } else {
      cx den_f = 1.0 + p * emi;
      if (std::abs(den_f) < 1e-10)
        throw zero_denominator("wor_phi: denominator factor vanished within guard");
      ratio *= (1.0 + p * ei) / den_f;
    }
    p *= q2;
    double tail = std::abs(p) * std::max(std::abs(ei), std::abs(emi));
    if (tail < 0.5 && 4.0 * tail / (1.0 - aq2) < tol) return ratio;
  }
  throw no_convergence("wor_phi: tolerance not reached");
}

/// A fully parameterized quantum dilogarithm: one of the three families with
/// its modular data and derived constants gamma, phi(0)^2, eta.
class DilogSpec {
 public:
  static DilogSpec faddeev(cx b) {
    return DilogSpec(GroupKind::real_line(), ModularParam(b), cx(0.0));
  }
  static DilogSpec andersen_kashaev(int n, cx b, bool allow_test_n1 = false) {
    return DilogSpec(GroupKind::real_by_zn(n, allow_test_n1), ModularParam(b), cx(0.0));
  }
  static DilogSpec woronowicz(cx q0) {
    if (std::abs(q0) >= 1.0) throw domain_error("woronowicz: need |q0| < 1");
    return DilogSpec(GroupKind::circle_by_z(), std::nullopt, q0);
  }

  GroupKind kind() const { return kind_; }
  bool is_faddeev() const { return kind_.family() == group_family::real_line; }
  bool is_ak() const { return kind_.family() == group_family::real_by_zn; }
  bool is_woronowicz() const { return kind_.family() == group_family::circle_by_z; }

  const ModularParam& modular() const {
    if (!m_) throw domain_error("DilogSpec: no modular parameter for this family");
    return *m_;
  }
  cx q0() const {
    if (!is_woronowicz()) throw domain_error("DilogSpec: q0 only for the Woronowicz family");
    return q0_;
  }
  /// eta_0 with q0 = -e^{i eta_0}; Im eta_0 = -log|q0| > 0.
  cx eta0() const { return -iu * std::log(-q0()); }

  cx gamma() const {
    switch (kind_.family()) {
      case group_family::real_line: return expi(pi / 4.0);
      case group_family::real_by_zn: return expi(pi * kind_.modulus() / 4.0);
      case group_family::circle_by_z: return 1.0;
    }
    throw error("unreachable");
  }

  cx phi0_sq() const {
    switch (kind_.family()) {
      case group_family::real_line: {
        cx e = m_->eta_b();
        return expi(-pi * e * e / 3.0 - pi / 6.0);
      }
      case group_family::real_by_zn: {
        cx e = m_->eta_b();
        double n = kind_.modulus();
        return expi(-pi * (n + 2.0 * e * e / n) / 6.0);
      }
      case group_family::circle_by_z: return 1.0;
    }
    throw error("unreachable");
  }

  /// Crossing parameter eta (a complexified group point).
  GroupPoint eta() const {
    switch (kind_.family()) {
      case group_family::real_line: return GroupPoint::of(kind_, m_->eta_b());
      case group_family::real_by_zn:
        return GroupPoint::of(kind_, m_->eta_b() / std::sqrt(double(kind_.modulus())), 0);
      case group_family::circle_by_z: return GroupPoint::of(kind_, eta0(), 0);
    }
    throw error("unreachable");
  }

  std::string name() const {
    switch (kind_.family()) {
      case group_family::real_line: return "faddeev";
      case group_family::real_by_zn: return "andersen-kashaev(N=" + std::to_string(kind_.modulus()) + ")";
      case group_family::circle_by_z: return "woronowicz";
    }
    return "?";
  }

 private:
  DilogSpec(GroupKind k, std::optional<ModularParam> m, cx q0) : kind_(k), m_(m), q0_(q0) {}
  GroupKind kind_;
  std::optional<ModularParam> m_;
  cx q0_;
};

struct DilogConstants {
  cx gamma;
  cx phi0_sq;
  GroupPoint eta;
};

inline DilogConstants dilog_constants(const DilogSpec& spec) {
  return {spec.gamma(), spec.phi0_sq(), spec.eta()};
}

/// phi(x) for the spec's family.
inline cx phi(const DilogSpec& spec, const GroupPoint& x, const QuadConfig& cfg) {
  if (x.kind() != spec.kind()) throw group_mismatch("phi: point not in the spec's group");
  switch (spec.kind().family()) {
    case group_family::real_line: return faddeev_phi(x.cont(), spec.modular(), cfg);
    case group_family::real_by_zn: return ak_phi(x, spec.modular(), cfg);
    case group_family::circle_by_z: {
      double tol = std::clamp(cfg.rel_tol * 0.02, 1e-14, 1e-6);
      return wor_phi(x, spec.q0(), tol);
    }
  }
  throw error("unreachable");
}

/// Closed form of the Fourier transform, phi~(x) = gamma phi(0)^2 G(x)^{-1} phi(x + eta).
inline cx phi_tilde_closed(const DilogSpec& spec, const GroupPoint& x, const QuadConfig& cfg) {
  return spec.gamma() * spec.phi0_sq() * phi(spec, x + spec.eta(), cfg) / gaussian(x);
}

/// Closed form of the reciprocal transform, phibar~(x) = G(x) / (gamma phi(0)^2 phi(x - eta)).
inline cx phi_bar_tilde_closed(const DilogSpec& spec, const GroupPoint& x, const QuadConfig& cfg) {
  return gaussian(x) / (spec.gamma() * spec.phi0_sq() * phi(spec, x - spec.eta(), cfg));
}

}  // namespace qdl
