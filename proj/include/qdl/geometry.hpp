#pragma once

#include <array>

#include "qdl/complex_util.hpp"
#include "qdl/errors.hpp"
#include "qdl/modular.hpp"

namespace qdl {

/// Spherical triangle carrying angles theta_i, sides a_i and the derived
/// linear angles beta_0..beta_3 with beta_0 + beta_1 + beta_2 + beta_3 = pi.
struct SphericalTriangle {
  std::array<double, 3> theta{};
  std::array<double, 3> sides{};
  std::array<double, 4> betas{};
};

namespace detail {

inline constexpr double beta_degeneracy_tol = 1e-9;

inline void fill_betas(SphericalTriangle& t) {
  double b0 = pi - (t.sides[0] + t.sides[1] + t.sides[2]) / 2.0;
  t.betas[0] = b0;
  for (int j = 0; j < 3; ++j) t.betas[j + 1] = pi - b0 - t.sides[j];
  for (double b : t.betas)
    if (b < beta_degeneracy_tol || b > pi - beta_degeneracy_tol)
      throw degenerate_triangle("triangle: beta outside (0, pi)");
}

}  // namespace detail

/// Sides from angles by the spherical cosine theorem
/// cos a_i = (cos th_i + cos th_j cos th_k) / (sin th_j sin th_k).
inline SphericalTriangle triangle_from_thetas(double th1, double th2, double th3) {
  SphericalTriangle t;
  t.theta = {th1, th2, th3};
  for (double th : t.theta)
    if (!(th > 0.0 && th < pi)) throw degenerate_triangle("triangle: theta outside (0, pi)");
  for (int i = 0; i < 3; ++i) {
    double ti = t.theta[i], tj = t.theta[(i + 1) % 3], tk = t.theta[(i + 2) % 3];
    double c = (std::cos(ti) + std::cos(tj) * std::cos(tk)) / (std::sin(tj) * std::sin(tk));
    if (!(c > -1.0 && c < 1.0))
      throw degenerate_triangle("triangle: cosine-rule value outside (-1, 1)");
    t.sides[i] = std::acos(c);
  }
  detail::fill_betas(t);
  return t;
}

/// Angles from sides by the dual cosine rule
/// cos th_i = (cos a_i - cos a_j cos a_k) / (sin a_j sin a_k).
inline SphericalTriangle triangle_from_sides(double a1, double a2, double a3) {
  SphericalTriangle t;
  t.sides = {a1, a2, a3};
  for (double a : t.sides)
    if (!(a > 0.0 && a < pi)) throw degenerate_triangle("triangle: side outside (0, pi)");
  for (int i = 0; i < 3; ++i) {
    double ai = t.sides[i], aj = t.sides[(i + 1) % 3], ak = t.sides[(i + 2) % 3];
    double c = (std::cos(ai) - std::cos(aj) * std::cos(ak)) / (std::sin(aj) * std::sin(ak));
    if (!(c > -1.0 && c < 1.0))
      throw degenerate_triangle("triangle: dual cosine-rule value outside (-1, 1)");
    t.theta[i] = std::acos(c);
  }
  detail::fill_betas(t);
  return t;
}

/// Angle parameterization of the spectral parameters,
///   e^{i pi lambda_1 / eta} = tan^2(th_1 / 2),
///   e^{i pi lambda_2 / eta} = cot^2(th_2 / 2),
///   e^{i pi lambda_3 / eta} = tan^2(th_3 / 2),
/// with the principal logarithm.
inline std::array<cx, 3> lambdas_from_triangle(const SphericalTriangle& t, cx eta) {
  if (std::abs(eta) == 0.0) throw domain_error("lambdas_from_triangle: eta must be nonzero");
  cx pref = eta / (iu * pi);
  double t1 = std::tan(t.theta[0] / 2.0), t2 = std::tan(t.theta[1] / 2.0),
         t3 = std::tan(t.theta[2] / 2.0);
  return {pref * std::log(cx(t1 * t1)), -pref * std::log(cx(t2 * t2)),
          pref * std::log(cx(t3 * t3))};
}

/// The equivalent sine-ratio form (dual-formula oracle for the above).
inline std::array<cx, 3> lambdas_from_triangle_sines(const SphericalTriangle& t, cx eta) {
  cx pref = eta / (iu * pi);
  auto s = [&](int j) { return std::sin(t.betas[j]); };
  return {pref * std::log(cx(s(2) * s(3) / (s(0) * s(1)))),
          pref * std::log(cx(s(0) * s(2) / (s(1) * s(3)))),
          pref * std::log(cx(s(1) * s(2) / (s(0) * s(3))))};
}

/// Lobachevsky function L(beta) = -int_0^beta log(2 sin x) dx, computed from
/// the Fourier series L = 1/2 sum_{k>=1} sin(2 k beta) / k^2 with a
/// twice-summed-by-parts tail, to absolute error <= tol.
inline double lobachevsky(double beta, double tol = 1e-12) {
  if (!std::isfinite(beta)) throw domain_error("lobachevsky: non-finite argument");
  if (tol <= 0) throw domain_error("lobachevsky: tol must be positive");
  // pi-periodic and odd
  double r = wrap_positive(beta, pi);
  double sign = 1.0;
  if (r > pi / 2.0) {
    r = pi - r;
    sign = -1.0;
  }
  if (r < 1e-3) {
    // endpoint expansion; the series' acceleration degenerates as z -> 1
    double v = r - r * std::log(2.0 * r) + r * r * r / 18.0 + std::pow(r, 5) / 900.0;
    return sign * (r == 0.0 ? 0.0 : v);
  }
  const int head_k = 64;
  cx z = expi(2.0 * r);
  cx zk = 1.0;
  cx head = 0.0;
  for (int k = 1; k < head_k; ++k) {
    zk *= z;
    head += zk / static_cast<double>(k * k);
  }
  cx w = 1.0 / (1.0 - z);
  auto a = [](long k) { return 1.0 / (static_cast<double>(k) * k); };
  auto da = [&](long k) { return a(k) - a(k - 1); };
  auto d2a = [&](long k) { return a(k) - 2.0 * a(k - 1) + a(k - 2); };
  cx z_head = zk * z;  // z^{head_k}
  long k2 = static_cast<long>(std::cbrt(4.0 * std::norm(w) / tol)) + head_k + 4;
  cx tail2 = 0.0;
  cx zkk = z_head * z * z;
  for (long k = head_k + 2; k < k2; ++k) {
    tail2 += d2a(k) * zkk;
    zkk *= z;
  }
  cx total = head + w * (a(head_k) * z_head) + w * w * (da(head_k + 1) * z_head * z) + w * w * tail2;
  return sign * 0.5 * total.imag();
}

enum class FreeEnergyFormula { vertex_irc, field, zbb };

/// Exact partition function per site of one of the three closed forms.
struct FreeEnergyResult {
  cx log_z{0.0};
  cx z{1.0};
  std::array<double, 4> betas{};
  cx b{0.0};
  FreeEnergyFormula formula = FreeEnergyFormula::vertex_irc;
};

/// Infinite-lattice vertex/IRC partition function per site:
///   log z = (4 eta^2 / pi) sum_j [ L(beta_j) + (beta_j - pi/4) log(2 sin beta_j) ].
inline FreeEnergyResult z_vert_inf(const SphericalTriangle& t, const ModularParam& m,
                                   double tol = 1e-13) {
  cx eta = m.eta_b();
  cx s = 0.0;
  for (double b : t.betas)
    s += lobachevsky(b, tol) + (b - pi / 4.0) * std::log(2.0 * std::sin(b));
  FreeEnergyResult r;
  r.log_z = 4.0 * eta * eta / pi * s;
  r.z = std::exp(r.log_z);
  r.betas = t.betas;
  r.b = m.b();
  r.formula = FreeEnergyFormula::vertex_irc;
  return r;
}

/// Field-model partition function per site: the linear angles are
/// a_i = 2 pi phi_i / eta (required real), and
///   log z = (4 eta^2 / pi) sum_j L(beta_j).
inline FreeEnergyResult z_field_inf(const std::array<cx, 3>& fields, const ModularParam& m,
                                    double tol = 1e-13) {
  cx eta = m.eta_b();
  std::array<double, 3> a{};
  for (int i = 0; i < 3; ++i) {
    cx ai = two_pi * fields[i] / eta;
    if (std::abs(ai.imag()) > 1e-9 * std::max(1.0, std::abs(ai)))
      throw domain_error("z_field_inf: field does not produce a real linear angle");
    a[i] = ai.real();
  }
  SphericalTriangle t;
  t.sides = a;
  detail::fill_betas(t);
  cx s = 0.0;
  for (double b : t.betas) s += lobachevsky(b, tol);
  FreeEnergyResult r;
  r.log_z = 4.0 * eta * eta / pi * s;
  r.z = std::exp(r.log_z);
  r.betas = t.betas;
  r.b = m.b();
  r.formula = FreeEnergyFormula::field;
  return r;
}

/// Partition function per site of the N-state discrete-spin model:
///   log kappa_N = (2 (N-1) / (N pi)) sum_j [ L(beta_j)
///       + (beta_j/2) log(2 sin beta_j) - (pi/2) log(sqrt 2 cos(beta_j/2)) ].
inline FreeEnergyResult kappa_zbb(int n, const SphericalTriangle& t, double tol = 1e-13) {
  if (n < 1) throw domain_error("kappa_zbb: need N >= 1");
  cx s = 0.0;
  for (double b : t.betas)
    s += lobachevsky(b, tol) + (b / 2.0) * std::log(2.0 * std::sin(b)) -
         (pi / 2.0) * std::log(std::sqrt(2.0) * std::cos(b / 2.0));
  FreeEnergyResult r;
  r.log_z = 2.0 * (n - 1.0) / (n * pi) * s;
  r.z = std::exp(r.log_z);
  r.betas = t.betas;
  r.formula = FreeEnergyFormula::zbb;
  return r;
}

}  // namespace qdl
