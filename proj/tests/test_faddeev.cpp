#include <catch2/catch_amalgamated.hpp>

#include "qdl/faddeev.hpp"
#include "qdl/sampling.hpp"

using namespace qdl;

namespace {
const QuadConfig cfg;  // defaults
const cx b_unit = expi(pi / 5.0);
}  // namespace

TEST_CASE("regime classification") {
  CHECK(ModularParam(0.8).regime() == BRegime::unimodular);
  CHECK(ModularParam(b_unit).regime() == BRegime::product);
  CHECK(ModularParam(cx(0.6, 0.3)).regime() == BRegime::product);
  CHECK(ModularParam(expi(-pi / 5.0)).regime() == BRegime::unimodular);
  CHECK_THROWS_AS(ModularParam(cx(0.6, -0.3)), domain_error);
  CHECK_THROWS_AS(ModularParam(-0.8), domain_error);
}

TEST_CASE("pole distance") {
  ModularParam m1(1.0);
  CHECK(pole_distance(m1.eta_b(), m1) == Catch::Approx(0.0).margin(1e-14));
  CHECK(pole_distance(0.0, m1) == Catch::Approx(1.0));

  ModularParam m08(0.8);
  double eta = std::abs(m08.eta_b());
  CHECK(pole_distance(0.5 * m08.eta_b(), m08) == Catch::Approx(0.5 * eta));
  // brute force over the small sublattice
  auto brute = [&](cx x) {
    double best = 1e300;
    for (int s : {+1, -1})
      for (int mm = 0; mm <= 10; ++mm)
        for (int nn = 0; nn <= 10; ++nn) {
          cx p = double(s) * (m08.eta_b() + iu * (double(mm) * m08.b() + double(nn) * m08.b_inv()));
          best = std::min(best, std::abs(x - p));
        }
    return best;
  };
  SampleRng rng(5);
  for (int i = 0; i < 25; ++i) {
    cx x(rng.uniform(-3, 3), rng.uniform(-3, 3));
    CHECK(pole_distance(x, m08) == Catch::Approx(brute(x)).margin(1e-12));
  }
  ModularParam mu(b_unit);
  for (int i = 0; i < 25; ++i) {
    cx x(rng.uniform(-3, 3), rng.uniform(-3, 3));
    auto brute_u = [&](cx w) {
      double best = 1e300;
      for (int s : {+1, -1})
        for (int mm = 0; mm <= 12; ++mm)
          for (int nn = 0; nn <= 12; ++nn)
            best = std::min(best, std::abs(w - double(s) * (mu.eta_b() +
                                                            iu * (double(mm) * mu.b() + double(nn) * mu.b_inv()))));
      return best;
    };
    CHECK(pole_distance(x, mu) == Catch::Approx(brute_u(x)).margin(1e-12));
  }
}

TEST_CASE("phi(0)^2 matches the closed form") {
  for (cx b : {cx(0.8, 0.0), b_unit, cx(0.6, 0.4)}) {
    ModularParam m(b);
    cx eta = m.eta_b();
    cx closed = expi(-pi * eta * eta / 3.0 - pi / 6.0);
    cx v = faddeev_phi(0.0, m, cfg);
    CHECK(std::abs(v * v - closed) < 1e-10);
  }
}

TEST_CASE("product and integral representations agree") {
  ModularParam m(b_unit);
  for (cx x : {cx(-1.0, 0.0), cx(0.3, 0.2), cx(1.1, 0.0), cx(-0.4, -0.35), cx(0.05, 0.6)}) {
    cx p = faddeev_phi(x, m, cfg, PhiStrategy::product);
    cx i = faddeev_phi(x, m, cfg, PhiStrategy::integral);
    CHECK(rel_residual(p, i) < 1e-10);
  }
}

TEST_CASE("unimodular on the real line") {
  ModularParam m(0.8);
  for (double x = -3.0; x <= 3.0; x += 0.5) {
    cx v = faddeev_phi(x, m, cfg);
    CHECK(std::abs(std::abs(v) - 1.0) < 1e-12);
  }
}

TEST_CASE("asymptotics at Re x -> -inf") {
  ModularParam m(0.8);
  CHECK(std::abs(faddeev_phi(-8.0, m, cfg) - 1.0) < 1e-6);
}

TEST_CASE("shift recursion leaves the value consistent") {
  ModularParam m(0.8);
  // deep arguments agree with the shift relations applied to interior points
  cx x(0.35, -2.6);
  cx direct = faddeev_phi(x, m, cfg);
  // Phi(x) = (1 + q e^{2 pi b x}) Phi(x + i b)
  cx up = faddeev_phi(x + iu * m.b(), m, cfg);
  cx rel = (1.0 + m.q() * std::exp(two_pi * m.b() * x)) * up;
  CHECK(rel_residual(direct, rel) < 1e-10);

  cx y(-0.2, 2.9);
  cx direct2 = faddeev_phi(y, m, cfg);
  cx down = faddeev_phi(y - iu * m.b_inv(), m, cfg);
  cx rel2 = down / (1.0 + std::exp(two_pi * m.b_inv() * y) * m.q_tilde());
  CHECK(rel_residual(direct2, rel2) < 1e-10);
}

TEST_CASE("pole guard raises") {
  ModularParam m(0.8);
  CHECK_THROWS_AS(faddeev_phi(m.eta_b(), m, cfg), pole_proximity);
  CHECK_THROWS_AS(faddeev_phi(-m.eta_b() + cx(1e-9, 0), m, cfg), pole_proximity);
  CHECK_THROWS_AS(faddeev_phi(cx(std::nan(""), 0.0), m, cfg), non_finite);
  // product formula unavailable for real b
  CHECK_THROWS_AS(faddeev_phi(0.3, m, cfg, PhiStrategy::product), divergent_product);
}

TEST_CASE("inversion relation for the Faddeev function") {
  SampleRng rng(31);
  for (cx b : {cx(0.8, 0.0), b_unit}) {
    ModularParam m(b);
    cx phi0sq = faddeev_phi(0.0, m, cfg);
    phi0sq *= phi0sq;
    for (int i = 0; i < 8; ++i) {
      cx x(rng.uniform(-1.5, 1.5), rng.uniform(-0.4, 0.4));
      cx lhs = faddeev_phi(x, m, cfg) * faddeev_phi(-x, m, cfg);
      cx rhs = phi0sq * expi(pi * x * x);
      CHECK(rel_residual(lhs, rhs) < 1e-10);
    }
  }
}
