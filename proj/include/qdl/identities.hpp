#pragma once

#include <string>
#include <vector>

#include "qdl/dilog.hpp"
#include "qdl/quad.hpp"
#include "qdl/sampling.hpp"

namespace qdl {

enum class IdentityKind {
  inversion,
  five_term_five1,
  five_term_fterm3a,
  five_term_fterm3b,
  self_duality_fourgen,
  self_duality_fourgen2,
  constant_constraint,
};

inline const char* identity_name(IdentityKind k) {
  switch (k) {
    case IdentityKind::inversion: return "inversion";
    case IdentityKind::five_term_five1: return "five-term(five1)";
    case IdentityKind::five_term_fterm3a: return "five-term(fterm3a)";
    case IdentityKind::five_term_fterm3b: return "five-term(fterm3b)";
    case IdentityKind::self_duality_fourgen: return "self-duality(four-gen)";
    case IdentityKind::self_duality_fourgen2: return "self-duality(four-gen2)";
    case IdentityKind::constant_constraint: return "constant-constraint";
  }
  return "?";
}

struct IdentityCheck {
  IdentityKind identity;
  std::string spec_name;
  std::vector<GroupPoint> inputs;
  cx lhs{0.0};
  cx rhs{0.0};
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
};

inline IdentityCheck make_check(IdentityKind k, const DilogSpec& spec,
                                std::vector<GroupPoint> inputs, cx lhs, cx rhs, double tol) {
  IdentityCheck c;
  c.identity = k;
  c.spec_name = spec.name();
  c.inputs = std::move(inputs);
  c.lhs = lhs;
  c.rhs = rhs;
  c.residual = rel_residual(lhs, rhs);
  c.tol = tol;
  c.pass = c.residual <= tol;
  return c;
}

namespace detail {

/// Rotation angle for the Fourier quadrature of phi: the Gaussian growth of
/// phi at +infinity is damped along the rotated ray while the kernel keeps
/// decaying at -infinity as long as the rotation stays short of -arg(x).
inline double auto_rotation(cx x, double sign) {
  double a = sign > 0 ? -std::arg(x) : std::arg(x);
  if (a <= 0.0) return 0.0;
  return sign * std::min(pi / 4.0, 0.6 * a);
}

}  // namespace detail

/// Fourier transform by quadrature: phi~(x) = int_S f(x,y) phi(y) dy.
/// The caller supplies any imaginary offset of x required for convergence.
inline double phi_eval_noise(const QuadConfig& cfg) {
  return std::max(2e-14, 4.0 * std::clamp(cfg.rel_tol * 0.02, 1e-14, 1e-6));
}

inline cx fourier_phi(const DilogSpec& spec, const GroupPoint& x, const QuadConfig& cfg) {
  if (x.kind() != spec.kind()) throw group_mismatch("fourier_phi: wrong group");
  QuadConfig c = cfg;
  c.integrand_noise = phi_eval_noise(cfg);
  if (spec.kind().family() != group_family::circle_by_z && c.contour_rotation == 0.0)
    c.contour_rotation = detail::auto_rotation(x.cont(), +1.0);
  Integrand f{[&](const GroupPoint& y) { return fourier_kernel(x, y) * phi(spec, y, cfg); },
              0.0, pi / 2};
  return integrate(f, spec.kind(), c).value;
}

/// Reciprocal transform by quadrature: phibar~(x) = int_S dy / (f(x,y) phi(y)).
inline cx fourier_phi_bar(const DilogSpec& spec, const GroupPoint& x, const QuadConfig& cfg) {
  if (x.kind() != spec.kind()) throw group_mismatch("fourier_phi_bar: wrong group");
  QuadConfig c = cfg;
  c.integrand_noise = phi_eval_noise(cfg);
  if (spec.kind().family() != group_family::circle_by_z && c.contour_rotation == 0.0)
    c.contour_rotation = detail::auto_rotation(x.cont(), -1.0);
  Integrand f{[&](const GroupPoint& y) {
                return 1.0 / (fourier_kernel(x, y) * phi(spec, y, cfg));
              },
              -pi / 2, 0.0};
  return integrate(f, spec.kind(), c).value;
}

/// phi(x) phi(-x) = phi(0)^2 G(x).
inline IdentityCheck check_inversion(const DilogSpec& spec, const GroupPoint& x,
                                     const QuadConfig& cfg, double tol = 1e-9) {
  cx lhs = phi(spec, x, cfg) * phi(spec, -x, cfg);
  cx rhs = spec.phi0_sq() * gaussian(x);
  return make_check(IdentityKind::inversion, spec, {x}, lhs, rhs, tol);
}

enum class FiveTermForm { five1, fterm3a, fterm3b };

/// The quantum five-term identity in its three printed forms. Arguments are
/// expected to carry the imaginary offsets that make the w-quadrature
/// convergent; the integration variable w runs over S.
inline IdentityCheck check_five_term(const DilogSpec& spec, const GroupPoint& x,
                                     const GroupPoint& y, const GroupPoint& z, FiveTermForm form,
                                     const QuadConfig& cfg, double tol = 1e-6) {
  const GroupPoint eta = spec.eta();
  const cx gamma = spec.gamma();
  const cx phi0sq = spec.phi0_sq();

  QuadConfig qc = cfg;
  qc.integrand_noise = phi_eval_noise(cfg);

  if (form == FiveTermForm::five1) {
    cx lhs = phi(spec, z - x, cfg) * phi_tilde_closed(spec, x - y, cfg) *
             phi(spec, y - z, cfg);
    Integrand f{[&](const GroupPoint& w) {
                  return phi_tilde_closed(spec, x - w, cfg) * gaussian(w - z) *
                         phi_tilde_closed(spec, w - y, cfg);
                },
                0, 0};
    cx rhs = phi0sq * integrate(f, spec.kind(), qc).value;
    return make_check(IdentityKind::five_term_five1, spec, {x, y, z}, lhs, rhs, tol);
  }

  Integrand f{[&](const GroupPoint& w) {
                return phi(spec, w + x, cfg) / phi(spec, w + y, cfg) * fourier_kernel(z, w);
              },
              0, 0};
  cx lhs = integrate(f, spec.kind(), qc).value;
  cx rhs;
  if (form == FiveTermForm::fterm3a) {
    rhs = gamma * phi0sq / fourier_kernel(z, y + eta) * phi(spec, x - y - eta, cfg) *
          phi(spec, z + eta, cfg) / phi(spec, x - y + z - eta, cfg);
  } else {
    rhs = fourier_kernel(z, eta - x) / (gamma * phi0sq) * phi(spec, y - x - z + eta, cfg) /
          (phi(spec, y - x + eta, cfg) * phi(spec, -z - eta, cfg));
  }
  IdentityKind k = form == FiveTermForm::fterm3a ? IdentityKind::five_term_fterm3a
                                                 : IdentityKind::five_term_fterm3b;
  return make_check(k, spec, {x, y, z}, lhs, rhs, tol);
}

/// Fourier self-duality, Eq. form phi~(x) = gamma phi(0)^2 G(x)^{-1} phi(x + eta).
inline IdentityCheck check_self_duality(const DilogSpec& spec, const GroupPoint& x,
                                        const QuadConfig& cfg, double tol = 1e-6) {
  cx lhs = fourier_phi(spec, x, cfg);
  cx rhs = phi_tilde_closed(spec, x, cfg);
  return make_check(IdentityKind::self_duality_fourgen, spec, {x}, lhs, rhs, tol);
}

/// Consistency of the reciprocal transform:
/// 1 / phi(x - eta) = gamma phi(0)^2 G(x)^{-1} phibar~(x).
inline IdentityCheck check_self_duality2(const DilogSpec& spec, const GroupPoint& x,
                                         const QuadConfig& cfg, double tol = 1e-6) {
  cx lhs = 1.0 / phi(spec, x - spec.eta(), cfg);
  cx rhs = spec.gamma() * spec.phi0_sq() / gaussian(x) * fourier_phi_bar(spec, x, cfg);
  return make_check(IdentityKind::self_duality_fourgen2, spec, {x}, lhs, rhs, tol);
}

/// gamma^2 phi(0)^6 G(eta) = 1.
inline IdentityCheck check_constant_constraint(const DilogSpec& spec, double tol = 1e-12) {
  cx g = spec.gamma(), p = spec.phi0_sq();
  cx lhs = g * g * p * p * p * gaussian(spec.eta());
  return make_check(IdentityKind::constant_constraint, spec, {}, lhs, 1.0, tol);
}

/// Imaginary offsets per identity family, in units of Im(eta_cont) of the
/// active spec. The paper never states convergence strips; these values were
/// found admissible during bring-up and live in configuration.
struct OffsetConfig {
  double self_duality_lo = 0.29, self_duality_hi = 0.54;  // Im x < 0, magnitudes
  double fterm_x = 0.39;                                  // Im x > 0
  double fterm_y = -0.39;
  double fterm_z = -0.34;
  double five1_x = -0.30;
  double five1_y = 0.30;
  double range = 1.2;  // real parts uniform in [-range, range]
};

inline double eta_unit(const DilogSpec& spec) { return spec.eta().cont().imag(); }

/// Admissible sample draws per identity family.
struct IdentitySampler {
  DilogSpec spec;
  OffsetConfig off;
  SampleRng rng;

  IdentitySampler(const DilogSpec& s, std::uint64_t seed, OffsetConfig o = {})
      : spec(s), off(o), rng(seed) {}

  GroupPoint inversion_point() {
    return rng.point_complex(spec.kind(), 1.5, -0.2 * eta_unit(spec), 0.2 * eta_unit(spec));
  }

  GroupPoint self_duality_point(double sign = -1.0) {
    double u = eta_unit(spec);
    GroupPoint p = rng.point(spec.kind(), off.range);
    return p.shifted(cx(0.0, sign * rng.uniform(off.self_duality_lo * u, off.self_duality_hi * u)));
  }

  std::array<GroupPoint, 3> five_term_points(FiveTermForm form) {
    double u = eta_unit(spec);
    GroupPoint x = rng.point(spec.kind(), off.range);
    GroupPoint y = rng.point(spec.kind(), off.range);
    GroupPoint z = rng.point(spec.kind(), off.range);
    if (form == FiveTermForm::five1) {
      x = x.shifted(cx(0.0, off.five1_x * u));
      y = y.shifted(cx(0.0, off.five1_y * u));
      // z stays real; z = 0 is admissible and exercised explicitly in tests
    } else {
      x = x.shifted(cx(0.0, off.fterm_x * u));
      y = y.shifted(cx(0.0, off.fterm_y * u));
      z = z.shifted(cx(0.0, off.fterm_z * u));
    }
    return {x, y, z};
  }
};

}  // namespace qdl
