#pragma once

// Fourier coefficients of level-one Hecke eigenforms,
//   f = sum_n a(n) q^n,   a(n) = A(n) n^{(k-1)/2},  A(1) = 1.
// The default instance is the discriminant form Delta (k = 12, a = tau).

#include <cstdint>
#include <filesystem>
#include <map>
#include <vector>

#include "signflux/int128.hpp"

namespace signflux {

struct EigenformTable {
  int weight = 12;
  std::uint64_t limit = 0;
  std::vector<i128> exact;        // exact[n] = a(n), index 0 unused
  std::vector<double> normalized; // normalized[n] = A(n), index 0 unused

  i128 a(std::uint64_t n) const { return exact[n]; }
  double A(std::uint64_t n) const { return normalized[n]; }
};

// Largest N for which every |a(n)|, n <= N, provably fits in a signed 128-bit
// integer. Uses |a(n)| <= d(n) n^{(k-1)/2} together with d(n) <= 2 sqrt(n),
// i.e. |a(n)| <= 2 n^{k/2} < 2^127.
std::uint64_t certified_limit(int weight);

// Delta up to N via q * prod (1 - q^m)^24.
// Throws InvalidLimit for N = 0 and OverflowRisk for N > certified_limit(12).
EigenformTable build_delta_table(std::uint64_t limit);

// Serial reference construction of the same table (checked sparse products).
// Quadratic-ish cost; intended for tests and benchmarks at modest N.
EigenformTable build_delta_table_reference(std::uint64_t limit);

// The weight-16 cusp form E_4 * Delta.
EigenformTable build_weight16_table(std::uint64_t limit);

// Extends prime seeds a(p) to all n <= N through the Hecke relation
//   a(p^{j+1}) = a(p) a(p^j) - p^{k-1} a(p^{j-1})
// and multiplicativity. Throws MissingPrime if a seed for some p <= N is absent.
EigenformTable build_by_hecke_extension(const std::map<std::uint64_t, i128>& prime_values, int weight,
                                        std::uint64_t limit);

// exact[n] / n^{(k-1)/2} in double precision (at most a few ulps off).
double normalized_value(const EigenformTable& table, std::uint64_t n);

// Fill table.normalized from table.exact.
void normalize(EigenformTable& table);

// Binary cache: 20-byte header ("SGNF", u32 version, u32 weight, u64 limit)
// then `limit` little-endian signed 128-bit coefficients a(1..limit).
inline constexpr std::uint32_t kCacheVersion = 1;
void write_cache(const EigenformTable& table, const std::filesystem::path& path);
EigenformTable read_cache(const std::filesystem::path& path);

}  // namespace signflux
