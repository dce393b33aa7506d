#include <doctest.h>

#include <cmath>

#include "signflux/arithmetic.hpp"
#include "signflux/oracles.hpp"
#include "signflux/primes.hpp"

using namespace signflux;

TEST_SUITE("arithmetic") {

TEST_CASE("r2 agrees with lattice enumeration") {
  const auto t = sieve_arithmetic(3000);
  for (std::uint64_t n = 1; n <= 3000; ++n) CHECK(t.r2[n] == oracle::r2_by_lattice(n));
  CHECK(t.r2[1] == 4);
  CHECK(t.r2[5] == 8);
  CHECK(t.r2[25] == 12);
  CHECK(t.r2[3] == 0);
}

TEST_CASE("divisor counts, Moebius and chi_{-4}") {
  const auto t = sieve_arithmetic(2000);
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    CHECK(t.divisors[n] == oracle::divisor_count(n));
    CHECK(t.chi4[n] == chi4(n));
  }
  CHECK(t.mu[1] == 1);
  CHECK(t.mu[6] == 1);
  CHECK(t.mu[30] == -1);
  CHECK(t.mu[12] == 0);
  // sum_{d | n} mu(d) = [n = 1]
  for (std::uint64_t n = 1; n <= 2000; ++n) {
    int s = 0;
    for (std::uint64_t d = 1; d <= n; ++d)
      if (n % d == 0) s += t.mu[d];
    CHECK(s == (n == 1 ? 1 : 0));
  }
}

TEST_CASE("b(9) = 4 A(9) + 4") {
  const auto eig = build_delta_table(100);
  const auto arith = sieve_arithmetic(100);
  const auto b = b_coefficients(eig, arith);
  // d = 1: A(9) r2(9) = 4 A(9); d = 3: A(1) r2(1) = 4.
  CHECK(b[9] == doctest::Approx(4 * eig.A(9) + 4));
  // d = 2 is excluded, so b(4) = A(4) r2(4).
  CHECK(b[4] == doctest::Approx(eig.A(4) * 4));
}

TEST_CASE("inversion of an indicator") {
  const auto arith = sieve_arithmetic(100);
  std::vector<double> b(101, 0.0);
  b[9] = 1.0;
  const auto c = invert_b(b, arith);
  CHECK(c[9] == 1.0);
  CHECK(c[81] == -1.0);
  for (std::uint64_t n = 1; n <= 100; ++n)
    if (n != 9 && n != 81) CHECK(c[n] == 0.0);
}

TEST_CASE("floating and exact round trips") {
  const auto eig = build_delta_table(20000);
  const auto arith = sieve_arithmetic(20000);
  const auto back = invert_b(b_coefficients(eig, arith), arith);
  for (std::uint64_t n = 1; n <= 20000; ++n) CHECK(back[n] == doctest::Approx(eig.A(n) * arith.r2[n]).epsilon(1e-9));
  const auto exact = invert_b_exact(b_coefficients_exact(eig, arith), arith, 12);
  for (std::uint64_t n = 1; n <= 20000; ++n) CHECK(exact[n] == eig.exact[n] * static_cast<i128>(arith.r2[n]));
}

TEST_CASE("representable count and the Landau-Ramanujan constant") {
  const auto arith = sieve_arithmetic(100);
  // 1 2 4 5 8 9 10 13 16 17 18 20 25
  CHECK(representable_count(arith, 25) == 13);
  CHECK(landau_ramanujan_constant() == doctest::Approx(0.764223653589).epsilon(1e-8));
}

}
