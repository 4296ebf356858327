#include <catch2/catch_amalgamated.hpp>

#include "qdl/geometry.hpp"
#include "qdl/quad.hpp"
#include "qdl/sampling.hpp"

using namespace qdl;

namespace {
// independent oracle: adaptive quadrature of -int_0^beta log(2 sin x) dx with
// the log endpoint split off in closed form
double lob_quadrature(double beta) {
  double err = 0;
  long evals = 0;
  int depth = 0;
  auto smooth = [](double x) {
    if (std::abs(x) < 1e-8) return 0.0;
    return std::log(std::sin(x) / x);
  };
  cx s = detail::integrate_interval(smooth, 0.0, beta, 1e-14, 40, err, evals, depth);
  return -(beta * std::log(2.0 * beta) - beta + s.real());
}

SphericalTriangle random_triangle(SampleRng& rng) {
  for (;;) {
    try {
      return triangle_from_thetas(rng.uniform(0.3, pi - 0.3), rng.uniform(0.3, pi - 0.3),
                                  rng.uniform(0.3, pi - 0.3));
    } catch (const degenerate_triangle&) {
    }
  }
}
}  // namespace

TEST_CASE("symmetric point") {
  auto t = triangle_from_thetas(pi / 2, pi / 2, pi / 2);
  for (double a : t.sides) CHECK(a == Catch::Approx(pi / 2));
  for (double b : t.betas) CHECK(b == Catch::Approx(pi / 4));
}

TEST_CASE("beta sum and cosine-rule residuals") {
  SampleRng rng(41);
  for (int i = 0; i < 20; ++i) {
    auto t = random_triangle(rng);
    double sum = t.betas[0] + t.betas[1] + t.betas[2] + t.betas[3];
    CHECK(std::abs(sum - pi) < 1e-14);
    for (int j = 0; j < 3; ++j) {
      double tj = t.theta[(j + 1) % 3], tk = t.theta[(j + 2) % 3];
      double lhs = std::cos(t.sides[j]) * std::sin(tj) * std::sin(tk);
      double rhs = std::cos(t.theta[j]) + std::cos(tj) * std::cos(tk);
      CHECK(std::abs(lhs - rhs) < 1e-12);
    }
  }
}

TEST_CASE("round trip through the dual cosine rule") {
  SampleRng rng(43);
  for (int i = 0; i < 20; ++i) {
    auto t = random_triangle(rng);
    auto back = triangle_from_sides(t.sides[0], t.sides[1], t.sides[2]);
    for (int j = 0; j < 3; ++j) CHECK(std::abs(back.theta[j] - t.theta[j]) < 1e-10);
  }
}

TEST_CASE("degenerate triangles rejected") {
  CHECK_THROWS_AS(triangle_from_thetas(0.0, 1.0, 1.0), degenerate_triangle);
  CHECK_THROWS_AS(triangle_from_thetas(0.3, 0.3, 0.3), degenerate_triangle);
  CHECK_THROWS_AS(triangle_from_thetas(0.1, 0.2, 2.0), degenerate_triangle);
}

TEST_CASE("lambda parameterization") {
  auto sym = triangle_from_thetas(pi / 2, pi / 2, pi / 2);
  ModularParam m(0.8);
  auto l = lambdas_from_triangle(sym, m.eta_b());
  for (auto v : l) CHECK(std::abs(v) < 1e-14);

  SampleRng rng(47);
  for (int i = 0; i < 10; ++i) {
    auto t = random_triangle(rng);
    auto a = lambdas_from_triangle(t, m.eta_b());
    auto b = lambdas_from_triangle_sines(t, m.eta_b());
    for (int j = 0; j < 3; ++j) CHECK(std::abs(a[j] - b[j]) < 1e-10);
    // imaginary eta and real angles give real lambdas
    for (int j = 0; j < 3; ++j) CHECK(std::abs(a[j].imag()) < 1e-13);
  }
}

TEST_CASE("lobachevsky values") {
  CHECK(lobachevsky(0.0) == 0.0);
  // Lambda(pi/4) = G/2 with G the Catalan constant
  CHECK(std::abs(lobachevsky(pi / 4) - 0.45798279708860951) < 1e-13);
  CHECK(std::abs(lobachevsky(pi)) < 1e-12);
  // series vs quadrature oracle across (0, pi)
  for (int j = 1; j < 20; ++j) {
    double beta = j * pi / 20.0;
    CHECK(std::abs(lobachevsky(beta) - lob_quadrature(beta)) < 1e-10);
  }
  // odd about 0 and pi-periodic
  SampleRng rng(53);
  for (int i = 0; i < 12; ++i) {
    double beta = rng.uniform(-5.0, 5.0);
    CHECK(std::abs(lobachevsky(-beta) + lobachevsky(beta)) < 1e-12);
    CHECK(std::abs(lobachevsky(beta + pi) - lobachevsky(beta)) < 1e-12);
  }
}

TEST_CASE("vertex free energy") {
  ModularParam m(0.8);
  auto sym = triangle_from_thetas(pi / 2, pi / 2, pi / 2);
  auto r = z_vert_inf(sym, m);
  cx eta = m.eta_b();
  const double catalan = 0.91596559417721901;
  cx expected = std::exp(8.0 * eta * eta * catalan / pi);
  CHECK(std::abs(r.z - expected) < 1e-12);

  // b-dependence factors out of the free energy
  ModularParam m2(expi(pi / 5.0));
  SampleRng rng(59);
  auto t = random_triangle(rng);
  auto r1 = z_vert_inf(t, m);
  auto r2 = z_vert_inf(t, m2);
  cx e1 = m.eta_b() * m.eta_b(), e2 = m2.eta_b() * m2.eta_b();
  CHECK(std::abs(r1.log_z / r2.log_z - e1 / e2) < 1e-12);

  // permutation invariance of the sides
  auto ta = triangle_from_sides(t.sides[0], t.sides[1], t.sides[2]);
  auto tb = triangle_from_sides(t.sides[2], t.sides[0], t.sides[1]);
  CHECK(std::abs(z_vert_inf(ta, m).log_z - z_vert_inf(tb, m).log_z) < 1e-13);
}

TEST_CASE("field free energy") {
  ModularParam m(0.8);
  cx eta = m.eta_b();
  // a_i = pi/2 corresponds to phi_i = eta/4
  std::array<cx, 3> fields = {eta / 4.0, eta / 4.0, eta / 4.0};
  auto r = z_field_inf(fields, m);
  const double catalan = 0.91596559417721901;
  CHECK(std::abs(r.z - std::exp(8.0 * eta * eta * catalan / pi)) < 1e-12);

  // z_field differs from z_vert by the explicit log-sin term
  auto t = triangle_from_thetas(1.1, 1.3, 1.7);
  std::array<cx, 3> f2;
  for (int i = 0; i < 3; ++i) f2[i] = t.sides[i] * eta / two_pi;
  auto rf = z_field_inf(f2, m);
  auto rv = z_vert_inf(t, m);
  cx delta = 0.0;
  for (double b : t.betas) delta += (b - pi / 4.0) * std::log(2.0 * std::sin(b));
  CHECK(std::abs(rf.log_z - (rv.log_z - 4.0 * eta * eta / pi * delta)) < 1e-12);

  // degenerate configuration
  std::array<cx, 3> bad = {eta * 0.5, eta * 0.49, eta * 0.015};
  CHECK_THROWS_AS(z_field_inf(bad, m), degenerate_triangle);
  // non-real linear angle
  std::array<cx, 3> imag_f = {cx(0.3, 0.0), eta / 4.0, eta / 4.0};
  CHECK_THROWS_AS(z_field_inf(imag_f, m), domain_error);
}

TEST_CASE("zbb free energy") {
  SampleRng rng(61);
  auto t = random_triangle(rng);
  CHECK(std::abs(kappa_zbb(1, t).z - 1.0) < 1e-15);
  auto k2 = kappa_zbb(2, t), k3 = kappa_zbb(3, t), k5 = kappa_zbb(5, t);
  // N enters only through the overall (1 - 1/N) factor
  CHECK(std::abs(k2.log_z / k3.log_z - (1.0 - 1.0 / 2) / (1.0 - 1.0 / 3)) < 1e-12);
  CHECK(std::abs(k2.log_z / k5.log_z - (1.0 - 1.0 / 2) / (1.0 - 1.0 / 5)) < 1e-12);

  // symmetric point, N = 2: independent quadrature of the bracket at beta = pi/4
  auto sym = triangle_from_thetas(pi / 2, pi / 2, pi / 2);
  double beta = pi / 4;
  double bracket = lob_quadrature(beta) + beta / 2.0 * std::log(2.0 * std::sin(beta)) -
                   pi / 2.0 * std::log(std::sqrt(2.0) * std::cos(beta / 2.0));
  cx expected = std::exp(cx(2.0 * (2 - 1) / (2 * pi) * 4.0 * bracket));
  CHECK(std::abs(kappa_zbb(2, sym).z - expected) < 1e-10);
}
