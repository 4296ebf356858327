#pragma once

#include <array>
#include <cmath>

#include "qdl/complex_util.hpp"
#include "qdl/errors.hpp"
#include "qdl/modular.hpp"
#include "qdl/pochhammer.hpp"
#include "qdl/quad.hpp"

namespace qdl {

enum class PhiStrategy { automatic, product, integral };

/// Euclidean distance from x to the nearest pole or zero of Phi_b.
/// Poles sit at eta_b + i(m b + n/b), zeros at -(eta_b + i(m b + n/b)),
/// m, n >= 0.
inline double pole_distance(cx x, const ModularParam& mp) {
  const cx u1 = iu * mp.b();
  const cx u2 = iu * mp.b_inv();

  auto dist_to_cone = [&](cx w) {
    // min over integer m, n >= 0 of |w - (m u1 + n u2)|
    double best = std::abs(w);
    double det = u1.real() * u2.imag() - u1.imag() * u2.real();
    if (std::abs(det) > 1e-9) {
      // interior stationary point plus projections onto the two edges
      double mh = (w.real() * u2.imag() - w.imag() * u2.real()) / det;
      double nh = (-w.real() * u1.imag() + w.imag() * u1.real()) / det;
      double m_edge = (w.real() * u1.real() + w.imag() * u1.imag()) / std::norm(u1);
      double n_edge = (w.real() * u2.real() + w.imag() * u2.imag()) / std::norm(u2);
      const std::pair<double, double> cands[] = {{mh, nh}, {m_edge, 0.0}, {0.0, n_edge}};
      for (auto [mc, nc] : cands) {
        for (int dm = -1; dm <= 1; ++dm) {
          for (int dn = -1; dn <= 1; ++dn) {
            double mm = std::max(0.0, std::floor(mc) + dm);
            double nn = std::max(0.0, std::floor(nc) + dn);
            best = std::min(best, std::abs(w - mm * u1 - nn * u2));
          }
        }
      }
    } else {
      // Real b: the lattice is one-dimensional along the imaginary axis.
      double bb = u1.imag(), bi = u2.imag();
      double v = w.imag();
      long m_hi = static_cast<long>(std::max(0.0, v / bb)) + 1;
      for (long m = 0; m <= m_hi; ++m) {
        double rem = v - m * bb;
        double n = std::max(0.0, std::round(rem / bi));
        for (double nn : {n, std::max(0.0, n - 1), n + 1}) {
          double d = std::hypot(w.real(), v - m * bb - nn * bi);
          best = std::min(best, d);
        }
      }
    }
    return best;
  };

  cx eta = mp.eta_b();
  return std::min(dist_to_cone(x - eta), dist_to_cone(-x - eta));
}

namespace detail {

/// Integrand of the strip evaluation of log Phi_b. With
///   D(t) = sinh(bt) sinh(t/b) / t^2,
/// the even part of the contour integrand, with its 1/t^2 singularity
/// cancelled against a Gaussian with known contour integral, is
///   Geven(t) = -i [sin(2xt) - 2x t e^{-t^2} D(t)] / (t^3 D(t)).
/// Then
///   log Phi_b(x) = 1/2 int_0^inf Geven dt + i x sqrt(pi)
///                  + i pi (2x^2 + (b^2 + b^-2)/6) / 4,
/// valid for |Im x| < Im eta_b.
struct PhiStripIntegrand {
  static constexpr int kSeries = 14;

  cx b, binv, x;
  double t_switch;
  std::array<cx, kSeries> num_coef;  // N(t) = sum_{s>=1} n_s t^{2s+1}

  PhiStripIntegrand(cx b_, cx binv_, cx x_) : b(b_), binv(binv_), x(x_) {
    t_switch = std::min(0.05, 1.5 / (1.0 + 2.0 * std::abs(x)));
    // D(t) = sinh(bt) sinh(t/b) / t^2 = sum_d d_d t^{2d}
    std::array<cx, kSeries + 1> dd{};
    for (int p = 0; p <= kSeries; ++p) {
      for (int q = 0; p + q <= kSeries; ++q) {
        double fact = std::tgamma(2.0 * p + 2.0) * std::tgamma(2.0 * q + 2.0);
        dd[p + q] += cpow_series(b, 2 * p) * cpow_series(binv, 2 * q) / fact;
      }
    }
    // c_s: coefficients of e^{-t^2} D(t); n_s: of sin(2xt) - 2xt e^{-t^2} D(t)
    std::array<cx, kSeries + 1> cc{};
    for (int s = 0; s <= kSeries; ++s) {
      cc[s] = 0.0;
      double sign = 1.0;
      double fi = 1.0;
      for (int i = 0; i <= s; ++i) {
        cc[s] += sign / fi * dd[s - i];
        sign = -sign;
        fi *= (i + 1);
      }
    }
    cx tx = 2.0 * x;
    cx txp = tx;  // (2x)^{2s+1}
    double sfact = 1.0;  // (2s+1)!
    double ssign = 1.0;
    for (int s = 0; s < kSeries; ++s) {
      if (s > 0) {
        txp *= tx * tx;
        sfact *= (2.0 * s) * (2.0 * s + 1.0);
        ssign = -ssign;
      }
      num_coef[s] = ssign * txp / sfact - tx * cc[s];
    }
  }

  static cx cpow_series(cx v, int e) {
    cx r = 1.0;
    for (int i = 0; i < e; ++i) r *= v;
    return r;
  }

  cx operator()(double t) const {
    cx d = sinhc(b * t) * sinhc(binv * t);
    if (t < t_switch) {
      // N(t)/t^3 by series; the s = 0 coefficient vanishes identically
      double t2 = t * t;
      cx acc = 0.0;
      double tp = 1.0;
      for (int s = 1; s < kSeries; ++s) {
        acc += num_coef[s] * tp;
        tp *= t2;
      }
      return -iu * acc / d;
    }
    cx num = std::sin(2.0 * x * t) - 2.0 * x * t * std::exp(-t * t) * d;
    return -iu * num / (t * t * t * d);
  }
};

inline cx log_phi_strip(cx x, const ModularParam& m, double tol, long* evals_out) {
  cx b = m.b(), binv = m.b_inv();
  cx b2 = b * b, bi2 = binv * binv;
  PhiStripIntegrand g(b, binv, x);

  double rate = (b + binv).real() - 2.0 * std::abs(x.imag());
  rate = std::max(rate, 0.05);
  double t_max = std::min(std::max(12.0, -std::log(tol * 0.01) / rate + 4.0), 250.0);

  double err = 0.0;
  long evals = 0;
  int depth_seen = 0;
  cx integral =
      detail::integrate_interval(g, 0.0, t_max, tol * 0.5, 48, err, evals, depth_seen);
  if (evals_out) *evals_out += evals;
  return 0.5 * integral + iu * x * std::sqrt(pi) +
         iu * pi * (2.0 * x * x + (b2 + bi2) / 6.0) / 4.0;
}

}  // namespace detail

/// Faddeev quantum dilogarithm Phi_b(x).
///
/// Product regime (Im b^2 > 0): ratio of two q-Pochhammer products.
/// Unimodular regime (real b or |b| = 1): contour integral over R + i0,
/// evaluated inside the strip |Im x| < Im eta_b; outside, the argument is
/// moved into the strip with the functional equations
///   Phi_b(x) = (1 + q e^{2 pi b x}) Phi_b(x + i b),
///   Phi_b(x) = Phi_b(x - i b) / (1 + q^{-1} e^{2 pi b x}),
/// and their b <-> 1/b partners (factors with q~ in place of q).
inline cx faddeev_phi(cx x, const ModularParam& m, const QuadConfig& cfg,
                      PhiStrategy strategy = PhiStrategy::automatic) {
  require_finite(x, "faddeev_phi");
  double guard = cfg.pole_guard * std::abs(m.eta_b());
  if (pole_distance(x, m) < guard)
    throw pole_proximity("faddeev_phi: argument within pole guard");

  if (strategy == PhiStrategy::automatic)
    strategy = (m.regime() == BRegime::product) ? PhiStrategy::product : PhiStrategy::integral;

  double tol = std::clamp(cfg.rel_tol * 0.02, 1e-14, 1e-6);

  if (strategy == PhiStrategy::product) {
    if (m.regime() != BRegime::product)
      throw divergent_product("faddeev_phi: product formula needs Im b^2 > 0");
    // log-space ratio: either product alone can overflow at large |Re x|
    cx lnum = pochhammer_log_inf(-m.q() * std::exp(two_pi * x * m.b()), m.q() * m.q(), tol);
    cx lden = pochhammer_log_inf(-m.q_tilde() * std::exp(two_pi * x * m.b_inv()),
                                 m.q_tilde() * m.q_tilde(), tol);
    return std::exp(lnum - lden);
  }

  // Shift into the strip. The wide shift (larger imaginary step) is used while
  // far out; the narrow one, which cannot overshoot the target band, finishes.
  const double frac = 0.6;
  double strip = m.strip_halfwidth();
  cx step_b = iu * m.b(), step_bi = iu * m.b_inv();
  bool b_wide = step_b.imag() >= step_bi.imag();
  cx step_wide = b_wide ? step_b : step_bi;
  cx step_narrow = b_wide ? step_bi : step_b;
  cx coef_wide = b_wide ? m.b() : m.b_inv();
  cx coef_narrow = b_wide ? m.b_inv() : m.b();
  cx qfac_wide = b_wide ? m.q() : 1.0 / m.q_tilde();
  cx qfac_narrow = b_wide ? 1.0 / m.q_tilde() : m.q();

  cx log_prefactor = 0.0;
  cx z = x;
  int depth = 0;
  const int max_shift_depth = 512;
  while (std::abs(z.imag()) > frac * strip) {
    if (++depth > max_shift_depth)
      throw strip_exhausted("faddeev_phi: shift recursion exceeded depth limit");
    bool wide = std::abs(z.imag()) - frac * strip >= step_wide.imag();
    cx step = wide ? step_wide : step_narrow;
    cx coef = wide ? coef_wide : coef_narrow;
    cx qfac = wide ? qfac_wide : qfac_narrow;
    if (z.imag() < 0) {
      // Phi(z) = (1 + qfac e^{2 pi coef z}) Phi(z + step)
      log_prefactor += std::log(1.0 + qfac * std::exp(two_pi * coef * z));
      z += step;
    } else {
      // Phi(z) = Phi(z - step) / (1 + qfac^{-1} e^{2 pi coef z})
      cx denom = 1.0 + std::exp(two_pi * coef * z) / qfac;
      if (std::abs(denom) < 1e-12)
        throw pole_proximity("faddeev_phi: shift factor vanished");
      log_prefactor -= std::log(denom);
      z -= step;
    }
  }
  return std::exp(log_prefactor + detail::log_phi_strip(z, m, tol, nullptr));
}

}  // namespace qdl
