#include <catch2/catch_amalgamated.hpp>

#include "qdl/pochhammer.hpp"

using namespace qdl;

namespace {
// Brute-force truncated product oracle.
cx poch_oracle(cx x, cx q, int terms) {
  cx p = 1.0, qk = 1.0;
  for (int k = 0; k < terms; ++k) {
    p *= 1.0 - qk * x;
    qk *= q;
  }
  return p;
}
}  // namespace

TEST_CASE("pochhammer trivial values") {
  CHECK(std::abs(pochhammer_inf(0.0, 0.5, 1e-14) - 1.0) < 1e-15);
  CHECK(std::abs(pochhammer_inf(0.3, 0.0, 1e-14) - 0.7) < 1e-15);
}

TEST_CASE("pochhammer against 200-term oracle") {
  // frozen from the oracle: (0.5; 0.5)_inf
  const double frozen = 0.28878809508660242;
  cx v = pochhammer_inf(0.5, 0.5, 1e-14);
  CHECK(std::abs(v - frozen) < 1e-12);
  CHECK(std::abs(v - poch_oracle(0.5, 0.5, 200)) < 1e-12);

  cx x(0.4, -0.8), q(0.3, 0.55);
  CHECK(std::abs(pochhammer_inf(x, q, 1e-13) - poch_oracle(x, q, 200)) < 1e-12);
}

TEST_CASE("pochhammer errors") {
  CHECK_THROWS_AS(pochhammer_inf(0.5, 1.0, 1e-10), divergent_product);
  CHECK_THROWS_AS(pochhammer_inf(0.5, cx(0.8, 0.7), 1e-10), divergent_product);
  CHECK_THROWS_AS(pochhammer_inf(cx(std::nan(""), 0.0), 0.5, 1e-10), non_finite);
  CHECK_THROWS_AS(pochhammer_inf(0.5, 0.5, -1.0), domain_error);
}

TEST_CASE("pochhammer tolerance scaling") {
  // tightening the tolerance only appends factors closer to 1
  cx loose = pochhammer_inf(0.5, 0.9, 1e-6);
  cx tight = pochhammer_inf(0.5, 0.9, 1e-13);
  CHECK(std::abs(loose - tight) / std::abs(tight) < 1e-5);
}
