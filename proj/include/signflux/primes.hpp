#pragma once

#include <cstdint>
#include <vector>

namespace signflux {

// All primes p <= limit, ascending.
std::vector<std::uint32_t> primes_up_to(std::uint64_t limit);

// spf[n] = smallest prime factor of n for 2 <= n <= limit; spf[0] = spf[1] = 0.
std::vector<std::uint32_t> smallest_prime_factors(std::uint64_t limit);

// Moebius function on [0, limit] by linear sieve; mu[0] = 0.
std::vector<std::int8_t> mobius(std::uint64_t limit);

// Trial division; for validating small user inputs.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline int chi4(std::uint64_t n) {
  switch (n & 3u) {
    case 1: return 1;
    case 3: return -1;
    default: return 0;
  }
}

}  // namespace signflux
