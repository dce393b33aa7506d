#pragma once

// Sieved arithmetic functions attached to sums of two squares:
//   r2(n) = #{(c, d) in Z^2 : c^2 + d^2 = n},  r2(n)/4 = sum_{d|n} chi_{-4}(d),
// together with the twisted coefficients
//   b(n) = sum_{d^2 | n} chi_{-4}(d^2) A(n/d^2) r2(n/d^2)
// and their inversion A(n) r2(n) = sum_{d^2 | n} mu(d) chi_{-4}(d^2) b(n/d^2).
//
// chi_{-4}(d^2) is 1 for odd d and 0 for even d. Note this differs from the
// coefficients of L(2s, chi_{-4}) * sum A(n) r2(n) n^{-s}, which carry chi_{-4}(d);
// see dirichlet.hpp for the series themselves.

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "signflux/eigenform.hpp"
#include "signflux/int128.hpp"

namespace signflux {

struct ArithmeticTables {
  std::uint64_t limit = 0;
  std::vector<std::uint32_t> r2;      // r2[n], index 0 unused (0)
  std::vector<std::int8_t> chi4;      // chi_{-4}(n)
  std::vector<std::int8_t> mu;        // Moebius
  std::vector<std::uint32_t> divisors;  // d(n)
};

ArithmeticTables sieve_arithmetic(std::uint64_t limit);

// Direct summation over odd d with d^2 | n.
std::vector<double> b_coefficients(const EigenformTable& eig, const ArithmeticTables& arith);

// Twisted Moebius inversion of an arbitrary array indexed 1..limit.
std::vector<double> invert_b(std::span<const double> b, const ArithmeticTables& arith);

// Exact mode: everything scaled by n^{(k-1)/2}, which keeps it integral:
//   bhat(n) = sum_{d odd, d^2|n} a(n/d^2) d^{k-1} r2(n/d^2) = n^{(k-1)/2} b(n),
// and invert_b_exact(bhat) = a(n) r2(n) exactly.
std::vector<i128> b_coefficients_exact(const EigenformTable& eig, const ArithmeticTables& arith);
std::vector<i128> invert_b_exact(std::span<const i128> bhat, const ArithmeticTables& arith, int weight);

// Count of n <= x with r2(n) > 0.
std::uint64_t representable_count(const ArithmeticTables& arith, std::uint64_t x);

// Landau-Ramanujan constant (1/sqrt 2) prod_{p = 3 mod 4} (1 - p^{-2})^{-1/2},
// with the product taken over p <= prime_bound.
double landau_ramanujan_constant(std::uint64_t prime_bound = 10'000'000);

// CSV with columns n,r2,chi4,mu,b.
void write_arith_csv(std::ostream& os, const ArithmeticTables& arith, std::span<const double> b);

}  // namespace signflux
