#pragma once

// Exact integer power-series products through number-theoretic transforms
// modulo five ~31-bit primes, reconstructed to signed 128-bit integers by a
// balanced Garner step. The product of the primes exceeds 2^151, so any
// coefficient of magnitude below 2^127 is recovered exactly.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "signflux/int128.hpp"

namespace signflux::ntt {

inline constexpr std::size_t kPrimeCount = 5;
inline constexpr std::array<std::uint32_t, kPrimeCount> kPrimes = {
    2013265921u,  // 15 * 2^27 + 1
    1811939329u,  // 27 * 2^26 + 1
    2113929217u,  // 63 * 2^25 + 1
    469762049u,   //  7 * 2^26 + 1
    998244353u,   // 119 * 2^23 + 1
};
// Largest power-of-two transform length supported by every prime.
inline constexpr std::size_t kMaxTransform = std::size_t{1} << 23;

using Residues = std::array<std::vector<std::uint32_t>, kPrimeCount>;

Residues to_residues(std::span<const std::int64_t> coeffs);

// Coefficients [0, len) of a*b (or a*a), computed independently per prime.
// The prime loop runs as an OpenMP parallel-for when `parallel` is set.
Residues multiply_truncated(const Residues& a, const Residues& b, std::size_t len, bool parallel);
Residues square_truncated(const Residues& a, std::size_t len, bool parallel);

// Symmetric CRT lift of every coefficient. Exact whenever |value| < 2^127.
std::vector<i128> reconstruct(const Residues& r, bool parallel);

// Coefficients [0, len) of prod_{m>=1} (1 - q^m)^24. eta^6 is formed exactly
// from the sparse Jacobi series for eta^3, then squared twice modularly.
Residues eta24_residues(std::size_t len, bool parallel);

// Dense exact coefficients [0, len) of prod (1 - q^m)^6 from the sparse
// series sum_j (-1)^j (2j+1) q^{j(j+1)/2} for prod (1 - q^m)^3.
std::vector<std::int64_t> eta6_coefficients(std::size_t len);

// Sparse (exponent, coefficient) list for prod (1 - q^m)^3 below len.
std::vector<std::pair<std::size_t, std::int64_t>> eta3_terms(std::size_t len);

std::uint32_t primitive_root(std::uint32_t p);

}  // namespace signflux::ntt
