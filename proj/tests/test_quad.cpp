#include <catch2/catch_amalgamated.hpp>
#include <cstring>

#include "qdl/group.hpp"
#include "qdl/quad.hpp"
#include "qdl/sampling.hpp"

using namespace qdl;

namespace {
QuadConfig tight() {
  QuadConfig c;
  c.rel_tol = 1e-11;
  c.abs_tol = 1e-13;
  return c;
}
}  // namespace

TEST_CASE("normalized gaussian on R") {
  Integrand f{[](const GroupPoint& x) { return std::exp(-pi * x.cont() * x.cont()); }, 0, 0};
  auto r = integrate(f, GroupKind::real_line(), tight());
  CHECK(std::abs(r.value - 1.0) < 1e-12);
  CHECK(r.err_estimate < 1e-9);
}

TEST_CASE("fresnel integral via contour rotation") {
  // int_R e^{i pi x^2} dx = e^{i pi/4}
  Integrand f{[](const GroupPoint& x) { return expi(pi * x.cont() * x.cont()); }, 0.0, pi / 4};
  QuadConfig cfg = tight();
  cfg.rel_tol = 1e-10;
  cfg.contour_rotation = pi / 4;
  auto r = integrate(f, GroupKind::real_line(), cfg);
  CHECK(std::abs(r.value - expi(pi / 4)) < 1e-8);
}

TEST_CASE("rotation outside the declared sector") {
  Integrand f{[](const GroupPoint& x) { return std::exp(-pi * x.cont() * x.cont()); }, 0.0, 0.1};
  QuadConfig cfg;
  cfg.contour_rotation = 0.5;
  CHECK_THROWS_AS(integrate(f, GroupKind::real_line(), cfg), sector_violation);
  cfg.contour_rotation = 1.7;  // >= pi/2
  CHECK_THROWS_AS(integrate(f, GroupKind::real_line(), cfg), config_error);
}

TEST_CASE("gaussian exponent integrates to gamma on T x Z") {
  Integrand f{[](const GroupPoint& x) { return gaussian(x); }, 0, 0};
  QuadConfig cfg;
  cfg.rel_tol = 1e-10;
  auto r = integrate(f, GroupKind::circle_by_z(), cfg);
  CHECK(std::abs(r.value - 1.0) < 1e-10);
}

TEST_CASE("gaussian exponent integrates to gamma on R x Z_N") {
  // (1/sqrt N) sum_n int e^{i pi xi^2} e^{-i pi n(n+N)/N} dxi = e^{i pi N / 4}
  for (int n : {2, 3, 4}) {
    auto kind = GroupKind::real_by_zn(n);
    Integrand f{[](const GroupPoint& x) { return gaussian(x); }, 0.0, pi / 4};
    QuadConfig cfg;
    cfg.rel_tol = 1e-10;
    cfg.contour_rotation = pi / 4;
    auto r = integrate(f, kind, cfg);
    CHECK(std::abs(r.value - expi(pi * n / 4.0)) < 1e-8);
  }
}

TEST_CASE("linearity") {
  auto kind = GroupKind::real_line();
  Integrand f{[](const GroupPoint& x) { return std::exp(-pi * x.cont() * x.cont()); }, 0, 0};
  Integrand g{[](const GroupPoint& x) {
                cx u = x.cont();
                return u * u * std::exp(-u * u);
              },
              0, 0};
  cx a(1.3, -0.4), b(0.2, 2.0);
  Integrand comb{[&](const GroupPoint& x) { return a * f.eval(x) + b * g.eval(x); }, 0, 0};
  QuadConfig cfg = tight();
  auto rf = integrate(f, kind, cfg);
  auto rg = integrate(g, kind, cfg);
  auto rc = integrate(comb, kind, cfg);
  CHECK(std::abs(rc.value - (a * rf.value + b * rg.value)) <
        rc.err_estimate + std::abs(a) * rf.err_estimate + std::abs(b) * rg.err_estimate + 1e-12);
}

TEST_CASE("determinism") {
  Integrand f{[](const GroupPoint& x) { return std::exp(-x.cont() * x.cont()) * std::cos(3.0 * x.cont().real()); },
              0, 0};
  auto r1 = integrate(f, GroupKind::real_line(), QuadConfig{});
  auto r2 = integrate(f, GroupKind::real_line(), QuadConfig{});
  CHECK(std::memcmp(&r1.value, &r2.value, sizeof(cx)) == 0);
  CHECK(r1.evals == r2.evals);
}

TEST_CASE("2d gaussian and gaussian with kernel") {
  auto kinds = std::make_pair(GroupKind::real_line(), GroupKind::real_line());
  QuadConfig cfg;
  cfg.rel_tol = 1e-10;
  Integrand2 f{[](const GroupPoint& x, const GroupPoint& y) {
                 return std::exp(-pi * (x.cont() * x.cont() + y.cont() * y.cont()));
               },
               0, 0, 0, 0};
  auto r = integrate_2d(f, kinds, cfg);
  CHECK(std::abs(r.value - 1.0) < 1e-10);

  Integrand2 g{[](const GroupPoint& x, const GroupPoint& y) {
                 return std::exp(-pi * (x.cont() * x.cont() + y.cont() * y.cont())) *
                        expi(two_pi * x.cont() * y.cont());
               },
               0, 0, 0, 0};
  auto rg = integrate_2d(g, kinds, cfg);
  CHECK(std::abs(rg.value - 1.0 / std::sqrt(2.0)) < 1e-8);

  // separable integrand equals the product of the two 1d integrals
  Integrand fx{[](const GroupPoint& x) { return std::exp(-pi * x.cont() * x.cont()); }, 0, 0};
  Integrand fy{[](const GroupPoint& y) {
                 return 1.0 / (1.0 + y.cont() * y.cont()) * std::exp(-0.5 * y.cont() * y.cont());
               },
               0, 0};
  Integrand2 sep{[&](const GroupPoint& x, const GroupPoint& y) { return fx.eval(x) * fy.eval(y); },
                 0, 0, 0, 0};
  auto rs = integrate_2d(sep, kinds, cfg);
  auto r1 = integrate(fx, kinds.first, cfg);
  auto r2 = integrate(fy, kinds.second, cfg);
  CHECK(std::abs(rs.value - r1.value * r2.value) < 1e-9);
}

TEST_CASE("double fourier transform reflects a probe") {
  // int f(x,y) [int f(y,z) g(z) dz] dy = g(-x), gaussian probe of width 0.5
  QuadConfig cfg;
  cfg.rel_tol = 1e-9;
  auto kind = GroupKind::real_line();
  auto probe = [](cx z) { return std::exp(-z * z / (2.0 * 0.25)) * (1.0 + 0.3 * z); };
  auto inner = [&](const GroupPoint& y) {
    Integrand fi{[&](const GroupPoint& z) {
                   return fourier_kernel(y, z) * probe(z.cont());
                 },
                 0, 0};
    return integrate(fi, kind, cfg).value;
  };
  for (double x0 : {-0.7, 0.2}) {
    Integrand fo{[&](const GroupPoint& y) {
                   return fourier_kernel(GroupPoint::real(x0), y) * inner(y);
                 },
                 0, 0};
    auto r = integrate(fo, kind, cfg);
    CHECK(std::abs(r.value - probe(-x0)) < 1e-6);
  }
}

TEST_CASE("cesaro fallback for an undamped fresnel tail") {
  Integrand f{[](const GroupPoint& x) { return expi(pi * x.cont() * x.cont()); }, 0, 0};
  QuadConfig cfg;
  cfg.rel_tol = 1e-6;
  cfg.max_radius = 32.0;
  auto r = integrate(f, GroupKind::real_line(), cfg);
  CHECK(std::abs(r.value - expi(pi / 4)) < 3.0 * r.err_estimate);
}

TEST_CASE("failure modes") {
  // constant integrand: no decay, spread never settles
  Integrand one{[](const GroupPoint&) { return cx(1.0); }, 0, 0};
  QuadConfig cfg;
  cfg.max_radius = 16.0;
  CHECK_THROWS_AS(integrate(one, GroupKind::real_line(), cfg), no_convergence);

  // non-decaying discrete sum on T x Z
  Integrand flat{[](const GroupPoint&) { return cx(1.0); }, 0, 0};
  QuadConfig cfg2;
  cfg2.discrete_cutoff = 32;
  CHECK_THROWS_AS(integrate(flat, GroupKind::circle_by_z(), cfg2), no_convergence);
}
