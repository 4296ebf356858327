#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <deque>
#include <functional>
#include <utility>
#include <vector>

#include "qdl/complex_util.hpp"
#include "qdl/errors.hpp"
#include "qdl/group.hpp"

namespace qdl {

/// Quadrature / summation policy for every integral over a group.
struct QuadConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  int max_panel_depth = 30;
  double initial_radius = 1.0;   // truncation of R starts at [-R0, R0]
  double radius_growth = 1.6;    // > 1
  double max_radius = 64.0;
  double contour_rotation = 0.0; // radians, |.| < pi/2
  int discrete_cutoff = 256;     // truncation of Z sums
  double pole_guard = 1e-6;      // in units of |eta_b|
  double integrand_noise = 2e-14;  // relative noise floor of integrand values
  std::uint64_t seed = 1;

  void validate() const {
    if (!(rel_tol > 0) || !(abs_tol > 0)) throw config_error("QuadConfig: tolerances must be positive");
    if (!(initial_radius > 0)) throw config_error("QuadConfig: initial_radius must be positive");
    if (!(radius_growth > 1)) throw config_error("QuadConfig: radius_growth must exceed 1");
    if (!(std::abs(contour_rotation) < pi / 2)) throw config_error("QuadConfig: |contour_rotation| must be < pi/2");
    if (max_panel_depth < 1 || discrete_cutoff < 1) throw config_error("QuadConfig: bad depth/cutoff");
  }

  QuadConfig tightened(double factor) const {
    QuadConfig c = *this;
    c.rel_tol /= factor;
    c.abs_tol /= factor;
    return c;
  }
};

struct IntegResult {
  cx value{0.0};
  double err_estimate = 0.0;
  long evals = 0;
  int max_depth = 0;
};

/// Evaluation rule plus the sector of contour rotations the integrand is
/// declared analytic in (for the continuous variable of the group).
struct Integrand {
  std::function<cx(const GroupPoint&)> eval;
  double sector_min = 0.0;
  double sector_max = 0.0;
};

namespace detail {

struct GL15Node {
  double x, w;
};

inline constexpr std::array<GL15Node, 15> gl15_nodes = {{
    {-9.87992518020485377e-01, 3.07532419961186465e-02},
    {-9.37273392400705951e-01, 7.03660474881080689e-02},
    {-8.48206583410427206e-01, 1.07159220467171773e-01},
    {-7.24417731360170070e-01, 1.39570677926153908e-01},
    {-5.70972172608538830e-01, 1.66269205816993781e-01},
    {-3.94151347077563385e-01, 1.86161000015561878e-01},
    {-2.01194093997434514e-01, 1.98431485327111246e-01},
    {+0.00000000000000000e+00, 2.02578241925560898e-01},
    {+2.01194093997434514e-01, 1.98431485327111246e-01},
    {+3.94151347077563385e-01, 1.86161000015561878e-01},
    {+5.70972172608538830e-01, 1.66269205816993781e-01},
    {+7.24417731360170070e-01, 1.39570677926153908e-01},
    {+8.48206583410427206e-01, 1.07159220467171773e-01},
    {+9.37273392400705951e-01, 7.03660474881080689e-02},
    {+9.87992518020485377e-01, 3.07532419961186465e-02},
}};

struct PanelEstimate {
  cx integral;
  double magnitude;  // h * sum w |f|, the roundoff scale of the panel
};

template <class F>
PanelEstimate gl15(const F& f, double a, double b, long& evals) {
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cx s = 0.0;
  double mag = 0.0;
  for (const auto& n : gl15_nodes) {
    cx v = f(c + h * n.x);
    s += n.w * v;
    mag += n.w * std::abs(v);
  }
  evals += 15;
  return {h * s, std::abs(h) * mag};
}

/// One panel with nested doubling: accept when the whole-panel estimate and
/// the two-half refinement agree within tol (floored at the roundoff scale of
/// the panel, so peaked integrands cannot split forever).
template <class F>
cx adapt_panel(const F& f, double a, double b, PanelEstimate whole, double tol, double noise,
               int depth, int max_depth, double& err, long& evals, int& depth_seen) {
  double m = 0.5 * (a + b);
  PanelEstimate left = gl15(f, a, m, evals);
  PanelEstimate right = gl15(f, m, b, evals);
  cx refined = left.integral + right.integral;
  double diff = std::abs(whole.integral - refined);
  depth_seen = std::max(depth_seen, depth);
  double floor_tol = noise * (left.magnitude + right.magnitude);
  if (diff <= std::max(tol, floor_tol) || !is_finite(refined)) {
    if (!is_finite(refined)) throw non_finite("quadrature: integrand not finite");
    err += diff;
    return refined;
  }
  if (depth >= max_depth)
    throw no_convergence("quadrature: max_panel_depth exceeded");
  return adapt_panel(f, a, m, left, 0.5 * tol, noise, depth + 1, max_depth, err, evals,
                     depth_seen) +
         adapt_panel(f, m, b, right, 0.5 * tol, noise, depth + 1, max_depth, err, evals,
                     depth_seen);
}

template <class F>
cx integrate_interval(const F& f, double a, double b, double tol, int max_depth, double& err,
                      long& evals, int& depth_seen, double noise = 2e-14) {
  if (a == b) return 0.0;
  PanelEstimate whole = gl15(f, a, b, evals);
  return adapt_panel(f, a, b, whole, tol, noise, 0, max_depth, err, evals, depth_seen);
}

/// Integral over a line through the origin rotated by `rot`:
/// int_R f(t e^{i rot}) e^{i rot} dt, truncated adaptively with geometrically
/// grown annuli; Cesaro averaging of partial sums as the oscillatory fallback.
template <class F>
IntegResult integrate_rotated_line(const F& fpoint, const QuadConfig& cfg, double rot) {
  const cx phase = expi(cx(rot, 0.0));
  auto g = [&](double t) { return fpoint(phase * t); };

  IntegResult res;
  double tol_seg = cfg.abs_tol;
  cx sum = integrate_interval(g, -cfg.initial_radius, cfg.initial_radius, tol_seg,
                              cfg.max_panel_depth, res.err_estimate, res.evals, res.max_depth,
                              cfg.integrand_noise);
  std::deque<cx> partials{sum};
  double r = cfg.initial_radius;
  int quiet = 0;
  bool converged = false;
  double last_mag = std::abs(sum);
  while (r < cfg.max_radius) {
    double r2 = std::min(r * cfg.radius_growth, cfg.max_radius);
    tol_seg = 0.25 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(sum));
    cx a_pos = integrate_interval(g, r, r2, tol_seg, cfg.max_panel_depth, res.err_estimate,
                                  res.evals, res.max_depth, cfg.integrand_noise);
    cx a_neg = integrate_interval(g, -r2, -r, tol_seg, cfg.max_panel_depth, res.err_estimate,
                                  res.evals, res.max_depth, cfg.integrand_noise);
    sum += a_pos + a_neg;
    partials.push_back(sum);
    if (partials.size() > 4) partials.pop_front();
    last_mag = std::abs(a_pos) + std::abs(a_neg);
    if (last_mag <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(sum))) {
      if (++quiet >= 2) {
        converged = true;
        break;
      }
    } else {
      quiet = 0;
    }
    r = r2;
  }
  // One quiet annulus at the radius cap still means a decaying tail; the
  // plain sum with the last annulus as tail bound beats any averaging.
  if (converged || quiet >= 1) {
    res.value = phase * sum;
    res.err_estimate += last_mag;
    return res;
  }
  // Truncation radius exhausted. If the partial sums oscillate around a limit
  // (Fresnel-type tails), their Cesaro mean still converges; accept it when
  // the sums contract around the mean, otherwise report failure.
  cx mean = 0.0;
  for (cx p : partials) mean += p;
  mean /= static_cast<double>(partials.size());
  double spread = 0.0;
  for (cx p : partials) spread = std::max(spread, std::abs(p - mean));
  if (partials.size() >= 4 && spread <= 0.08 * std::abs(mean)) {
    res.value = phase * mean;
    res.err_estimate += spread;
    return res;
  }
  throw no_convergence("quadrature: max_radius reached without tail decay");
}

/// Trapezoid with doubling on [0, 2pi); geometric convergence for smooth
/// periodic integrands. Returns the plain integral (no 1/2pi factor).
template <class F>
cx integrate_circle_period(const F& f, double tol, long& evals, int max_doublings = 14) {
  int n = 16;
  cx t_prev = 0.0;
  for (int j = 0; j < n; ++j) t_prev += f(two_pi * j / n);
  evals += n;
  t_prev *= two_pi / n;
  int quiet = 0;
  for (int d = 0; d < max_doublings; ++d) {
    cx odd = 0.0;
    for (int j = 0; j < n; ++j) odd += f(two_pi * (2 * j + 1) / (2 * n));
    evals += n;
    cx t_next = 0.5 * t_prev + (two_pi / (2 * n)) * odd;
    n *= 2;
    if (std::abs(t_next - t_prev) <= tol) {
      if (++quiet >= 2) return t_next;
    } else {
      quiet = 0;
    }
    t_prev = t_next;
  }
  if (quiet >= 1) return t_prev;
  throw no_convergence("quadrature: circle trapezoid did not stabilize");
}

}  // namespace detail

/// Integral over the group S with its normalized measure:
///   R:        int dx            (optionally along the ray rotated by cfg.contour_rotation)
///   R x Z_N:  (1/sqrt N) sum_n int dxi
///   T x Z:    (1/2pi) sum_m int_0^{2pi} dtheta, |m| grown under a geometric
///             tail bound
template <class F>
IntegResult integrate_t(GroupKind kind, const QuadConfig& cfg, double sector_min,
                        double sector_max, const F& eval) {
  cfg.validate();
  double rot = cfg.contour_rotation;
  if (rot != 0.0 && (rot < sector_min || rot > sector_max))
    throw sector_violation("integrate: rotation outside declared sector");

  switch (kind.family()) {
    case group_family::real_line: {
      auto fpoint = [&](cx z) { return eval(GroupPoint::of(kind, z)); };
      return detail::integrate_rotated_line(fpoint, cfg, rot);
    }
    case group_family::real_by_zn: {
      IntegResult total;
      int n_mod = kind.modulus();
      for (int n = 0; n < n_mod; ++n) {
        auto fpoint = [&](cx z) { return eval(GroupPoint::of(kind, z, n)); };
        IntegResult one = detail::integrate_rotated_line(fpoint, cfg, rot);
        total.value += one.value;
        total.err_estimate += one.err_estimate;
        total.evals += one.evals;
        total.max_depth = std::max(total.max_depth, one.max_depth);
      }
      double norm = 1.0 / std::sqrt(static_cast<double>(n_mod));
      total.value *= norm;
      total.err_estimate *= norm;
      return total;
    }
    case group_family::circle_by_z: {
      if (rot != 0.0) throw sector_violation("integrate: rotation undefined on T x Z");
      IntegResult res;
      auto term = [&](long m) {
        auto f = [&](double th) { return eval(GroupPoint::of(kind, th, m)); };
        double tol = 0.1 * std::max(cfg.abs_tol, cfg.rel_tol * std::abs(res.value));
        return detail::integrate_circle_period(f, std::max(tol, 1e-16), res.evals) / two_pi;
      };
      res.value = term(0);
      double prev_shell = -1.0;
      int quiet = 0;
      for (int m = 1; m <= cfg.discrete_cutoff; ++m) {
        cx shell = term(m) + term(-m);
        res.value += shell;
        double mag = std::abs(shell);
        double target = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(res.value));
        bool tail_ok = false;
        if (prev_shell > 0.0 && mag > 0.0 && mag < prev_shell) {
          double ratio = mag / prev_shell;
          if (mag * ratio / (1.0 - ratio) < target) tail_ok = true;
        }
        if (mag < target || tail_ok) {
          if (++quiet >= 2) {
            res.err_estimate += mag;
            return res;
          }
        } else {
          quiet = 0;
        }
        prev_shell = mag;
      }
      throw no_convergence("integrate: discrete_cutoff reached on T x Z");
    }
  }
  throw error("unreachable");
}

inline IntegResult integrate(const Integrand& f, GroupKind kind, const QuadConfig& cfg) {
  return integrate_t(kind, cfg, f.sector_min, f.sector_max, f.eval);
}

/// Two-variable integrand with per-variable rotation sectors.
struct Integrand2 {
  std::function<cx(const GroupPoint&, const GroupPoint&)> eval;
  double sector_min_outer = 0.0, sector_max_outer = 0.0;
  double sector_min_inner = 0.0, sector_max_inner = 0.0;
};

/// Nested integral over kinds.first x kinds.second; the inner tolerance is
/// tightened by a factor of 10 relative to the outer.
inline IntegResult integrate_2d(const Integrand2& f, std::pair<GroupKind, GroupKind> kinds,
                                const QuadConfig& cfg) {
  QuadConfig inner_cfg = cfg.tightened(10.0);
  long inner_evals = 0;
  int inner_depth = 0;
  double inner_err = 0.0;
  auto outer_eval = [&](const GroupPoint& x) {
    IntegResult r = integrate_t(kinds.second, inner_cfg, f.sector_min_inner, f.sector_max_inner,
                                [&](const GroupPoint& y) { return f.eval(x, y); });
    inner_evals += r.evals;
    inner_depth = std::max(inner_depth, r.max_depth);
    inner_err = std::max(inner_err, r.err_estimate);
    return r.value;
  };
  QuadConfig outer_cfg = cfg;
  outer_cfg.contour_rotation = cfg.contour_rotation;
  IntegResult res =
      integrate_t(kinds.first, outer_cfg, f.sector_min_outer, f.sector_max_outer, outer_eval);
  res.evals += inner_evals;
  res.max_depth = std::max(res.max_depth, inner_depth);
  res.err_estimate += inner_err * (2.0 * cfg.max_radius);
  return res;
}

}  // namespace qdl
