#pragma once

#include <array>

#include "qdl/identities.hpp"

namespace qdl {

/// The three spectral parameters attached to an R-matrix / IRC weight.
struct SpectralTriple {
  GroupPoint l1, l2, l3;
};

/// Six edge spins around a vertex. The kernels carry the distributional
/// factor delta(x2 + x3 - x2' - x3'); reduced weights treat x3' as dependent.
struct EdgeConfig {
  GroupPoint x1, x2, x3, x1p, x2p, x3p;

  bool constraint_satisfied(double tol = 1e-12) const {
    GroupPoint lhs = x2 + x3, rhs = x2p + x3p;
    return lhs.disc() == rhs.disc() && std::abs(lhs.cont() - rhs.cont()) <= tol;
  }

  /// Configuration with x3' solved from the constraint surface.
  static EdgeConfig reduced(GroupPoint x1, GroupPoint x2, GroupPoint x3, GroupPoint x1p,
                            GroupPoint x2p) {
    return EdgeConfig{x1, x2, x3, x1p, x2p, x2 + x3 - x2p};
  }
};

/// Value of a delta-stripped vertex weight.
struct ReducedVertexWeight {
  cx value{0.0};
};

/// Eight corner spins around an elementary cube, W(a|e,f,g|b,c,d|h).
struct CornerConfig {
  GroupPoint a, b, c, d, e, f, g, h;

  CornerConfig shifted_all(const GroupPoint& s) const {
    return {a + s, b + s, c + s, d + s, e + s, f + s, g + s, h + s};
  }
};

struct FieldTriple {
  GroupPoint f1, f2, f3;
};

/// Bilateral hypergeometric integral
///   2F2(a1, a2; b1, b2 | c) =
///     int_S dx f(x, c - eta) phi(x+a1) phi(x+a2) / (phi(x+b1-eta) phi(x+b2-eta)).
inline cx hyper2F2(const GroupPoint& a1, const GroupPoint& a2, const GroupPoint& b1,
                   const GroupPoint& b2, const GroupPoint& c, const DilogSpec& spec,
                   const QuadConfig& cfg) {
  const GroupPoint eta = spec.eta();
  const GroupPoint c_shift = c - eta;
  QuadConfig qc = cfg;
  qc.integrand_noise = phi_eval_noise(cfg);
  Integrand f{[&](const GroupPoint& x) {
                return fourier_kernel(x, c_shift) * phi(spec, x + a1, cfg) *
                       phi(spec, x + a2, cfg) /
                       (phi(spec, x + b1 - eta, cfg) * phi(spec, x + b2 - eta, cfg));
              },
              0, 0};
  return integrate(f, spec.kind(), qc).value;
}

/// Normalization of the self-dual vertex weight,
/// rho_1 = [ f(eta - l3, eta + l1 - l2) / f(l1, l2) ]^{1/2}, principal branch.
inline cx rho1_selfdual(const SpectralTriple& t, const DilogSpec& spec) {
  GroupPoint eta = spec.eta();
  return std::sqrt(fourier_kernel(eta - t.l3, eta + t.l1 - t.l2) /
                   fourier_kernel(t.l1, t.l2));
}

/// The rho of the general form that matches rho1_selfdual through the printed
/// proportionality rho_1 = rho G(eta) f(eta, l1-l2) f(l2, l3-l1) / G(l3).
inline cx rho_general_matching(const SpectralTriple& t, const DilogSpec& spec) {
  GroupPoint eta = spec.eta();
  return rho1_selfdual(t, spec) * gaussian(t.l3) /
         (gaussian(eta) * fourier_kernel(eta, t.l1 - t.l2) *
          fourier_kernel(t.l2, t.l3 - t.l1));
}

/// Self-dual vertex weight (delta stripped, x3' dependent):
///   rho_1 f(x3'-l1, x1-x1') f(l3-eta, x2-x1')
///     phi(-l1-x1+x2) phi(l2-x1'+x2')
///     / [ phi(-eta-x1+x2') phi(-eta-l1+l2-x1'+x2) ].
inline ReducedVertexWeight vertex_weight_selfdual(const EdgeConfig& e, const SpectralTriple& t,
                                                  const DilogSpec& spec, const QuadConfig& cfg) {
  if (!e.constraint_satisfied())
    throw constraint_violated("vertex_weight_selfdual: x2+x3 != x2'+x3'");
  GroupPoint eta = spec.eta();
  cx value = rho1_selfdual(t, spec) *
             fourier_kernel(e.x3p - t.l1, e.x1 - e.x1p) *
             fourier_kernel(t.l3 - eta, e.x2 - e.x1p) *
             phi(spec, -t.l1 - e.x1 + e.x2, cfg) * phi(spec, t.l2 - e.x1p + e.x2p, cfg) /
             (phi(spec, -eta - e.x1 + e.x2p, cfg) *
              phi(spec, -eta - t.l1 + t.l2 - e.x1p + e.x2, cfg));
  return {value};
}

enum class TildeMode { quadrature, closed_form };

/// General vertex weight (delta stripped), with the angle brackets read as the
/// Gaussian exponent and the transforms phi~, phibar~ evaluated by quadrature
/// (or by their self-duality closed forms):
///   rho <l1><x2>/(<l3><x2'>) f(x1,x3)/f(x1',x3')
///     f(x1'-x2-l2, l1-l3) phi(l2-x1'+x2')/phi(l1+x1-x2)
///     phi~(l1-l2+x1'-x2) phibar~(x2'-x1).
inline ReducedVertexWeight vertex_weight_general(const EdgeConfig& e, const SpectralTriple& t,
                                                 cx rho, const DilogSpec& spec,
                                                 const QuadConfig& cfg,
                                                 TildeMode mode = TildeMode::quadrature) {
  if (!e.constraint_satisfied())
    throw constraint_violated("vertex_weight_general: x2+x3 != x2'+x3'");
  GroupPoint u = t.l1 - t.l2 + e.x1p - e.x2;
  GroupPoint v = e.x2p - e.x1;
  cx tilde, bar_tilde;
  if (mode == TildeMode::quadrature) {
    tilde = fourier_phi(spec, u, cfg);
    bar_tilde = fourier_phi_bar(spec, v, cfg);
  } else {
    tilde = phi_tilde_closed(spec, u, cfg);
    bar_tilde = phi_bar_tilde_closed(spec, v, cfg);
  }
  cx value = rho * gaussian(t.l1) * gaussian(e.x2) / (gaussian(t.l3) * gaussian(e.x2p)) *
             fourier_kernel(e.x1, e.x3) / fourier_kernel(e.x1p, e.x3p) *
             fourier_kernel(e.x1p - e.x2 - t.l2, t.l1 - t.l3) *
             phi(spec, t.l2 - e.x1p + e.x2p, cfg) / phi(spec, t.l1 + e.x1 - e.x2, cfg) *
             tilde * bar_tilde;
  return {value};
}

/// IRC Boltzmann weight W(a|e,f,g|b,c,d|h; l1,l2,l3):
///   rho_W f(eta+l1, c-h) f(l1-l2, b-g)
///     2F2(d-e, b-g-l1+l3; h-c-l1, f-a+l3 | e+g-a-c-l2),
/// rho_W = [ f(l1,l3) f(eta+l2, eta+l1-l3) ]^{1/2}.
inline cx irc_weight(const CornerConfig& k, const SpectralTriple& t, const DilogSpec& spec,
                     const QuadConfig& cfg) {
  GroupPoint eta = spec.eta();
  cx rho_w = std::sqrt(fourier_kernel(t.l1, t.l3) *
                       fourier_kernel(eta + t.l2, eta + t.l1 - t.l3));
  return rho_w * fourier_kernel(eta + t.l1, k.c - k.h) *
         fourier_kernel(t.l1 - t.l2, k.b - k.g) *
         hyper2F2(k.d - k.e, k.b - k.g - t.l1 + t.l3, k.h - k.c - t.l1, k.f - k.a + t.l3,
                  k.e + k.g - k.a - k.c - t.l2, spec, cfg);
}

/// Edge spins from corner spins; the two delta constraints of the vertex-type
/// R-matrix hold by construction.
struct SigmaSpins {
  GroupPoint s1, s2, s3, s1p, s2p, s3p;
};

inline SigmaSpins sigma_map(const CornerConfig& k, const SpectralTriple& t) {
  return {k.c + k.d - k.e - k.h + t.l1, k.f + k.h - k.b - k.d + t.l2,
          k.b + k.c - k.g - k.h + t.l3, k.f + k.g - k.a - k.b + t.l1,
          k.a + k.c - k.e - k.g + t.l2, k.e + k.f - k.a - k.d + t.l3};
}

/// Vertex-type R-matrix of the IRC model (deltas stripped):
///   sqrt[ phi(s1')phi(s2')phi(s3') / (phi(s1)phi(s2)phi(s3)) ]
///   f(s1,s3)^{1/2} / f(eta, s2-s2')^{1/4}
///   2F2( (eta+s1-s3)/2, (eta-s1+s3)/2; (eta-s1-s3)/2, (eta+s1'+s3')/2 | -s2' ).
inline cx r_from_irc(const SigmaSpins& s, const DilogSpec& spec, const QuadConfig& cfg) {
  auto same = [](const GroupPoint& a, const GroupPoint& b) {
    return a.disc() == b.disc() && std::abs(a.cont() - b.cont()) <= 1e-12;
  };
  if (!same(s.s1 + s.s2, s.s1p + s.s2p) || !same(s.s2 + s.s3, s.s2p + s.s3p))
    throw constraint_violated("r_from_irc: sigma deltas unsatisfied");
  GroupPoint eta = spec.eta();
  cx ratio = phi(spec, s.s1p, cfg) * phi(spec, s.s2p, cfg) * phi(spec, s.s3p, cfg) /
             (phi(spec, s.s1, cfg) * phi(spec, s.s2, cfg) * phi(spec, s.s3, cfg));
  cx kernels = std::sqrt(fourier_kernel(s.s1, s.s3)) /
               std::pow(fourier_kernel(eta, s.s2 - s.s2p), 0.25);
  return std::sqrt(ratio) * kernels *
         hyper2F2((eta + s.s1 - s.s3).half(), (eta - s.s1 + s.s3).half(),
                  (eta - s.s1 - s.s3).half(), (eta + s.s1p + s.s3p).half(), -s.s2p, spec, cfg);
}

/// Field-dressed vertex weight:
///   f(eta/4 - f1, s1+s1') f(eta/4 - f2, -s2-s2') f(eta/4 - f3, s3+s3') R.
inline cx field_r(const SigmaSpins& s, const FieldTriple& fields, const DilogSpec& spec,
                  const QuadConfig& cfg) {
  GroupPoint quarter = spec.eta().quarter();
  return fourier_kernel(quarter - fields.f1, s.s1 + s.s1p) *
         fourier_kernel(quarter - fields.f2, -(s.s2 + s.s2p)) *
         fourier_kernel(quarter - fields.f3, s.s3 + s.s3p) * r_from_irc(s, spec, cfg);
}

}  // namespace qdl
