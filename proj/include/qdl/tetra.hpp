#pragma once

#include <functional>
#include <string>

#include "qdl/weights.hpp"

namespace qdl {

struct TetraReport {
  cx lhs{0.0};
  cx rhs{0.0};
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  long evals = 0;
  int max_depth = 0;
  std::string constraints;  // residual external-constraint set, as derived
};

/// One tetrahedron-equation instance: six spectral parameters plus externals
/// for the IRC form (14 corner spins) and the vertex form (12 edge spins).
struct TetraInstance {
  std::array<GroupPoint, 6> lambda;
  std::array<GroupPoint, 4> ca;  // a1..a4
  std::array<GroupPoint, 4> cb;  // b1..b4
  std::array<GroupPoint, 6> cc;  // c1..c6
  std::array<GroupPoint, 6> vin;   // vertex-form inputs x1..x6
  std::array<GroupPoint, 6> vout;  // vertex-form outputs x1'..x6'
  cx outer_shift{0.0};             // imaginary contour shift of reduced integrals
  double grid_radius = 4.0;        // truncation of the 3d reduced integrals
  int grid_panels = 9;             // Gauss panels per dimension
};

namespace detail {

inline SpectralTriple triple(const TetraInstance& in, int i, int j, int k) {
  return {in.lambda[i - 1], in.lambda[j - 1], in.lambda[k - 1]};
}

}  // namespace detail

/// Interaction-round-a-cube tetrahedron equation: the outer z-integral of the
/// product of four W weights on each side, with the printed corner-spin
/// assignments and the spectral table W(l1,l2,l3), W'(l1,l4,l5), W''(l2,l4,l6),
/// W'''(l3,l5,l6).
inline TetraReport verify_irc_tetra(const TetraInstance& in, const DilogSpec& spec,
                                    const QuadConfig& cfg, double tol = 1e-4) {
  const auto& A = in.ca;
  const auto& B = in.cb;
  const auto& C = in.cc;
  QuadConfig inner = cfg.tightened(10.0);
  QuadConfig outer = cfg;
  outer.integrand_noise = std::max(outer.integrand_noise, inner.rel_tol);

  auto W = [&](const CornerConfig& k, const SpectralTriple& t) {
    return irc_weight(k, t, spec, inner);
  };
  auto t123 = detail::triple(in, 1, 2, 3);
  auto t145 = detail::triple(in, 1, 4, 5);
  auto t246 = detail::triple(in, 2, 4, 6);
  auto t356 = detail::triple(in, 3, 5, 6);

  long evals = 0;
  int depth = 0;
  auto run_side = [&](bool left) {
    Integrand f{[&](const GroupPoint& z0) {
                  GroupPoint z = z0.shifted(in.outer_shift);
                  if (left) {
                    return W({z, C[4], C[5], C[3], A[2], A[1], A[0], B[3]}, t123) *
                           W({A[3], B[2], A[0], A[1], z, C[2], C[1], C[4]}, t145) *
                           W({C[0], C[1], C[5], z, A[2], A[3], B[1], A[0]}, t246) *
                           W({B[0], A[3], A[2], A[1], C[3], C[2], C[0], z}, t356);
                  }
                  return W({z, C[1], C[5], C[4], B[3], B[2], B[1], A[0]}, t356) *
                         W({B[0], B[2], B[3], A[1], C[3], C[2], z, C[4]}, t246) *
                         W({C[0], z, C[5], C[3], A[2], B[0], B[1], B[3]}, t145) *
                         W({A[3], B[2], B[1], B[0], C[0], C[2], C[1], z}, t123);
                },
                0, 0};
    IntegResult r = integrate(f, spec.kind(), outer);
    evals += r.evals;
    depth = std::max(depth, r.max_depth);
    return r.value;
  };

  TetraReport rep;
  rep.lhs = run_side(true);
  rep.rhs = run_side(false);
  rep.residual = rel_residual(rep.lhs, rep.rhs);
  rep.tol = tol;
  rep.pass = rep.residual <= tol;
  rep.evals = evals;
  rep.max_depth = depth;
  rep.constraints = "none";
  return rep;
}

enum class ZteKernel { selfdual, irc_vertex };

namespace detail {

/// Check that a signed combination of externals vanishes on the constraint
/// surface (discrete part exactly, continuous within tol).
inline void require_constraint(const GroupPoint& v, const char* name) {
  if (v.disc() != 0 || std::abs(v.cont()) > 1e-9)
    throw constraint_violated(std::string("vertex ZTE externals violate ") + name);
}

struct ZteSide {
  // Factors in application order; each evaluates the delta-stripped kernel at
  // resolved slot values given the free integration variables.
  std::function<cx(const std::array<GroupPoint, 3>&)> integrand;
  int n_free;
};

}  // namespace detail

/// Vertex-type Zamolodchikov tetrahedron equation after symbolic resolution of
/// the delta constraints (affine elimination with unit pivots; order selects
/// the pivot sequence for the elimination-order independence check).
///
/// selfdual kernel: one delta per factor; three free variables per side and
///   the residual external constraint x4+x5+x6 = x4'+x5'+x6'.
/// irc_vertex kernel: two deltas per factor; one free variable per side and
///   the residual constraints
///   x4+x5+x6 = x4'+x5'+x6', x1+x2+x4 = x1'+x2'+x4', x2+x3-x6 = x2'+x3'-x6'.
inline TetraReport verify_vertex_zte(const TetraInstance& in, const DilogSpec& spec,
                                     const QuadConfig& cfg, ZteKernel kern = ZteKernel::selfdual,
                                     int order = 0, double tol = 1e-3) {
  const auto& x = in.vin;
  const auto& xp = in.vout;
  auto t123 = detail::triple(in, 1, 2, 3);
  auto t145 = detail::triple(in, 1, 4, 5);
  auto t246 = detail::triple(in, 2, 4, 6);
  auto t356 = detail::triple(in, 3, 5, 6);

  std::string cnote = "x4+x5+x6=x4'+x5'+x6'";
  detail::require_constraint(x[3] + x[4] + x[5] - xp[3] - xp[4] - xp[5], "C1");
  if (kern == ZteKernel::irc_vertex) {
    detail::require_constraint(x[0] + x[1] + x[3] - xp[0] - xp[1] - xp[3], "C2");
    detail::require_constraint(x[1] + x[2] - x[5] - (xp[1] + xp[2] - xp[5]), "C3");
    cnote += "; x1+x2+x4=x1'+x2'+x4'; x2+x3-x6=x2'+x3'-x6'";
  }

  QuadConfig level = cfg;
  level.integrand_noise = std::max(level.integrand_noise, phi_eval_noise(cfg));

  // Delta-stripped kernel of one factor: inputs u, outputs v, spaces (i,j,k).
  auto K = [&](const std::array<GroupPoint, 3>& u, const std::array<GroupPoint, 3>& v,
               const SpectralTriple& t) -> cx {
    if (kern == ZteKernel::selfdual) {
      EdgeConfig e{u[0], u[1], u[2], v[0], v[1], v[2]};
      return vertex_weight_selfdual(e, t, spec, cfg).value;
    }
    SigmaSpins s{u[0], u[1], u[2], v[0], v[1], v[2]};
    return r_from_irc(s, spec, cfg.tightened(10.0));
  };

  long evals = 0;
  int depth = 0;

  // For one free variable (irc_vertex kernel) the reduced integral is cheap
  // enough for the adaptive driver. The three-dimensional selfdual reduction
  // uses a fixed tensor-product Gauss grid sized to the strong exponential
  // decay the admissible offsets induce (the lhs/rhs residual itself reports
  // the quadrature quality).
  auto integrate_free = [&](int n_free, auto&& integrand) -> cx {
    std::array<GroupPoint, 3> frees{};
    if (n_free == 1) {
      Integrand fi{[&](const GroupPoint& w) {
                     frees[0] = w.shifted(in.outer_shift);
                     return integrand(frees);
                   },
                   0, 0};
      IntegResult r = integrate(fi, spec.kind(), level);
      evals += r.evals;
      depth = std::max(depth, r.max_depth);
      return r.value;
    }
    if (spec.kind().family() != group_family::real_line)
      throw domain_error("vertex ZTE: multi-dimensional reduction implemented for R only");
    const double radius = in.grid_radius;
    const int panels = in.grid_panels;
    const double w = 2.0 * radius / panels;
    std::vector<std::pair<double, double>> nodes;  // (t, weight) per dimension
    nodes.reserve(panels * detail::gl15_nodes.size());
    for (int p = 0; p < panels; ++p) {
      double a = -radius + p * w, c = a + 0.5 * w, h = 0.5 * w;
      for (const auto& n : detail::gl15_nodes) nodes.push_back({c + h * n.x, h * n.w});
    }
    cx sum = 0.0;
    for (const auto& [ta, wa] : nodes) {
      frees[0] = GroupPoint::real(cx(ta, 0.0)).shifted(in.outer_shift);
      for (const auto& [tb, wb] : nodes) {
        frees[1] = GroupPoint::real(cx(tb, 0.0)).shifted(in.outer_shift);
        cx inner = 0.0;
        for (const auto& [tc, wc] : nodes) {
          frees[2] = GroupPoint::real(cx(tc, 0.0)).shifted(in.outer_shift);
          inner += wc * integrand(frees);
          ++evals;
        }
        sum += wa * wb * inner;
      }
    }
    return sum;
  };

  cx lhs, rhs;
  if (kern == ZteKernel::selfdual) {
    // LHS apply order R356, R246, R145, R123; intermediates t1..t6; deltas
    //   t5+t6 = x5+x6, t4 = x4+t6-x6', t4+t5 = x4'+x5' (-> C1), t2+t3 = x2'+x3'
    lhs = integrate_free(3, [&](const std::array<GroupPoint, 3>& fr) {
      GroupPoint t1 = fr[0], t2 = fr[1], t6 = fr[2];
      GroupPoint t5 = order == 0 ? x[4] + x[5] - t6 : xp[3] + xp[4] - (x[3] + t6 - xp[5]);
      GroupPoint t4 = x[3] + t6 - xp[5];
      GroupPoint t3 = xp[1] + xp[2] - t2;
      return K({x[2], x[4], x[5]}, {t3, t5, t6}, t356) *
             K({x[1], x[3], t6}, {t2, t4, xp[5]}, t246) *
             K({x[0], t4, t5}, {t1, xp[3], xp[4]}, t145) *
             K({t1, t2, t3}, {xp[0], xp[1], xp[2]}, t123);
    });
    // RHS apply order R123, R145, R246, R356; intermediates s1..s6; deltas
    //   s2+s3 = x2+x3, s4+s5 = x4+x5, s6 = s4+x6-x4' (-> C1), s5+s6 = x5'+x6'
    rhs = integrate_free(3, [&](const std::array<GroupPoint, 3>& fr) {
      GroupPoint s1 = fr[0], s2 = fr[1], s5 = fr[2];
      GroupPoint s4 = order == 0 ? x[3] + x[4] - s5 : xp[3] + (xp[4] + xp[5] - s5) - x[5];
      GroupPoint s3 = x[1] + x[2] - s2;
      GroupPoint s6 = s4 + x[5] - xp[3];
      return K({x[0], x[1], x[2]}, {s1, s2, s3}, t123) *
             K({s1, x[3], x[4]}, {xp[0], s4, s5}, t145) *
             K({s2, s4, x[5]}, {xp[1], xp[3], s6}, t246) *
             K({s3, s5, s6}, {xp[2], xp[4], xp[5]}, t356);
    });
  } else {
    // irc_vertex kernel: two deltas per factor leave one free variable.
    lhs = integrate_free(1, [&](const std::array<GroupPoint, 3>& fr) {
      GroupPoint t5, t4;
      if (order == 0) {
        t5 = fr[0];
        t4 = x[3] + (x[4] + x[5] - t5) - xp[5];
      } else {
        t4 = fr[0];
        t5 = xp[3] + xp[4] - t4;
      }
      GroupPoint t6 = x[4] + x[5] - t5;
      GroupPoint t3 = x[2] + x[4] - t5;
      GroupPoint t2 = x[1] + x[3] - t4;
      GroupPoint t1 = x[0] + t4 - xp[3];
      return K({x[2], x[4], x[5]}, {t3, t5, t6}, t356) *
             K({x[1], x[3], t6}, {t2, t4, xp[5]}, t246) *
             K({x[0], t4, t5}, {t1, xp[3], xp[4]}, t145) *
             K({t1, t2, t3}, {xp[0], xp[1], xp[2]}, t123);
    });
    rhs = integrate_free(1, [&](const std::array<GroupPoint, 3>& fr) {
      GroupPoint s5, s4;
      if (order == 0) {
        s5 = fr[0];
        s4 = x[3] + x[4] - s5;
      } else {
        s4 = fr[0];
        s5 = x[3] + x[4] - s4;
      }
      GroupPoint s1 = xp[0] + x[4] - s5;
      GroupPoint s2 = x[0] + x[1] - s1;
      GroupPoint s3 = x[1] + x[2] - s2;
      GroupPoint s6 = s4 + x[5] - xp[3];
      return K({x[0], x[1], x[2]}, {s1, s2, s3}, t123) *
             K({s1, x[3], x[4]}, {xp[0], s4, s5}, t145) *
             K({s2, s4, x[5]}, {xp[1], xp[3], s6}, t246) *
             K({s3, s5, s6}, {xp[2], xp[4], xp[5]}, t356);
    });
  }

  TetraReport rep;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.residual = rel_residual(lhs, rhs);
  rep.tol = tol;
  rep.pass = rep.residual <= tol;
  rep.evals = evals;
  rep.max_depth = depth;
  rep.constraints = cnote;
  return rep;
}

/// Effective per-factor field triples of the field-dressed tetrahedron
/// equation. The printed family has eight free parameters (phi, phi',
/// phi''_1, phi''_2); the factors carry
///   (phi), (phi'), (phi''_1, phi''_2, phi'_3 - phi_3),
///   (phi''_1 - phi'_1, phi''_2 - phi_1, phi'_2 - phi_2).
struct TetraFields {
  FieldTriple f123, f145, f246, f356;

  static TetraFields from_family(const FieldTriple& phi, const FieldTriple& phip,
                                 const GroupPoint& phipp1, const GroupPoint& phipp2) {
    TetraFields t;
    t.f123 = phi;
    t.f145 = phip;
    t.f246 = {phipp1, phipp2, phip.f3 - phi.f3};
    t.f356 = {phipp1 - phip.f1, phipp2 - phi.f1, phip.f2 - phi.f2};
    return t;
  }

  /// All four effective triples set to one value (u = eta/4 makes every
  /// dressing kernel equal 1).
  static TetraFields uniform(const GroupPoint& u) { return {{u, u, u}, {u, u, u}, {u, u, u}, {u, u, u}}; }
};

/// Field-dependent ZTE on the irc_vertex kernels, with the dressing
/// f(eta/4 - f1, s1+s1') f(eta/4 - f2, -s2-s2') f(eta/4 - f3, s3+s3')
/// attached to every factor.
inline TetraReport verify_field_zte(const TetraInstance& in, const TetraFields& fields,
                                    const DilogSpec& spec, const QuadConfig& cfg,
                                    double tol = 1e-3) {
  const auto& x = in.vin;
  const auto& xp = in.vout;
  auto t123 = detail::triple(in, 1, 2, 3);
  auto t145 = detail::triple(in, 1, 4, 5);
  auto t246 = detail::triple(in, 2, 4, 6);
  auto t356 = detail::triple(in, 3, 5, 6);

  detail::require_constraint(x[3] + x[4] + x[5] - xp[3] - xp[4] - xp[5], "C1");
  detail::require_constraint(x[0] + x[1] + x[3] - xp[0] - xp[1] - xp[3], "C2");
  detail::require_constraint(x[1] + x[2] - x[5] - (xp[1] + xp[2] - xp[5]), "C3");

  QuadConfig level = cfg;
  level.integrand_noise = std::max(level.integrand_noise, phi_eval_noise(cfg));

  auto K = [&](const std::array<GroupPoint, 3>& u, const std::array<GroupPoint, 3>& v,
               const SpectralTriple& t, const FieldTriple& f) -> cx {
    SigmaSpins s{u[0], u[1], u[2], v[0], v[1], v[2]};
    return field_r(s, f, spec, cfg.tightened(10.0));
  };

  long evals = 0;
  int depth = 0;
  auto integrate_one = [&](auto&& integrand) -> cx {
    Integrand fi{[&](const GroupPoint& w) { return integrand(w.shifted(in.outer_shift)); }, 0, 0};
    IntegResult r = integrate(fi, spec.kind(), level);
    evals += r.evals;
    depth = std::max(depth, r.max_depth);
    return r.value;
  };

  cx lhs = integrate_one([&](const GroupPoint& t5) {
    GroupPoint t6 = x[4] + x[5] - t5;
    GroupPoint t4 = x[3] + t6 - xp[5];
    GroupPoint t3 = x[2] + x[4] - t5;
    GroupPoint t2 = x[1] + x[3] - t4;
    GroupPoint t1 = x[0] + t4 - xp[3];
    return K({x[2], x[4], x[5]}, {t3, t5, t6}, t356, fields.f356) *
           K({x[1], x[3], t6}, {t2, t4, xp[5]}, t246, fields.f246) *
           K({x[0], t4, t5}, {t1, xp[3], xp[4]}, t145, fields.f145) *
           K({t1, t2, t3}, {xp[0], xp[1], xp[2]}, t123, fields.f123);
  });
  cx rhs = integrate_one([&](const GroupPoint& s5) {
    GroupPoint s4 = x[3] + x[4] - s5;
    GroupPoint s1 = xp[0] + x[4] - s5;
    GroupPoint s2 = x[0] + x[1] - s1;
    GroupPoint s3 = x[1] + x[2] - s2;
    GroupPoint s6 = s4 + x[5] - xp[3];
    return K({x[0], x[1], x[2]}, {s1, s2, s3}, t123, fields.f123) *
           K({s1, x[3], x[4]}, {xp[0], s4, s5}, t145, fields.f145) *
           K({s2, s4, x[5]}, {xp[1], xp[3], s6}, t246, fields.f246) *
           K({s3, s5, s6}, {xp[2], xp[4], xp[5]}, t356, fields.f356);
  });

  TetraReport rep;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.residual = rel_residual(lhs, rhs);
  rep.tol = tol;
  rep.pass = rep.residual <= tol;
  rep.evals = evals;
  rep.max_depth = depth;
  rep.constraints = "C1; C2; C3";
  return rep;
}

}  // namespace qdl
