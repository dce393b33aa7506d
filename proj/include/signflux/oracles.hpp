#pragma once

// Deliberately naive reference computations. They share no code with the
// production path and exist so tests and `signflux verify` can check it.

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "signflux/arithmetic.hpp"
#include "signflux/eigenform.hpp"

namespace signflux::oracle {

using BigInt = boost::multiprecision::cpp_int;

// tau(1..limit) by multiplying out q * prod_{m < limit} (1 - q^m), one factor
// at a time, 24 times over, in arbitrary precision. O(24 N^2).
std::vector<BigInt> delta_by_expansion(std::uint64_t limit);

// #{(c, d) : c^2 + d^2 = n} by enumeration over |c|, |d| <= sqrt(n).
std::uint32_t r2_by_lattice(std::uint64_t n);

// Count of sign changes of a(n) r2(n) over [begin, end], from big-integer
// products, without the sign-sequence machinery.
std::uint64_t sign_changes_by_rescan(const EigenformTable& eig, const ArithmeticTables& arith,
                                     std::uint64_t begin, std::uint64_t end);

// Number of divisors by trial division.
std::uint32_t divisor_count(std::uint64_t n);

}  // namespace signflux::oracle
