#include "signflux/eigenform.hpp"

#include <array>
#include <cmath>
#include <fstream>

#include "ntt.hpp"
#include "signflux/error.hpp"
#include "signflux/kernels.hpp"
#include "signflux/primes.hpp"

namespace signflux {
namespace {

constexpr i128 kI128Max = static_cast<i128>(~u128(0) >> 1);

void check_limit(std::uint64_t limit, int weight) {
  if (limit == 0) throw Error(ErrorCode::InvalidLimit, "limit must be at least 1");
  const std::uint64_t bound = certified_limit(weight);
  if (limit > bound)
    throw Error(ErrorCode::OverflowRisk, "limit " + std::to_string(limit) + " exceeds certified 128-bit bound " +
                                             std::to_string(bound) + " for weight " + std::to_string(weight));
}

EigenformTable make_table(int weight, std::uint64_t limit, std::vector<i128> exact) {
  EigenformTable t;
  t.weight = weight;
  t.limit = limit;
  t.exact = std::move(exact);
  normalize(t);
  return t;
}

void put_u32(std::ostream& os, std::uint32_t v) {
  std::array<char, 4> b{};
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  os.write(b.data(), b.size());
}

void put_u64(std::ostream& os, std::uint64_t v) {
  std::array<char, 8> b{};
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
  os.write(b.data(), b.size());
}

template <typename T, std::size_t Bytes>
T get_le(std::istream& is) {
  std::array<unsigned char, Bytes> b{};
  is.read(reinterpret_cast<char*>(b.data()), Bytes);
  if (!is) throw Error(ErrorCode::CacheFormat, "truncated cache file");
  T v = 0;
  for (std::size_t i = 0; i < Bytes; ++i) v |= static_cast<T>(b[i]) << (8 * i);
  return v;
}

}  // namespace

std::uint64_t certified_limit(int weight) {
  if (weight < 2 || weight % 2 != 0) throw Error(ErrorCode::InvalidLimit, "weight must be even and >= 2");
  const unsigned half = static_cast<unsigned>(weight / 2);
  auto fits = [&](std::uint64_t n) {
    i128 p;
    return checked_pow(static_cast<i128>(n), half, &p) && p <= kI128Max / 2;
  };
  std::uint64_t lo = 1, hi = std::uint64_t{1} << 40;
  while (lo < hi) {
    const std::uint64_t mid = lo + (hi - lo + 1) / 2;
    if (fits(mid)) lo = mid;
    else hi = mid - 1;
  }
  // The transform length 2^23 also caps the series length.
  return std::min<std::uint64_t>(lo, ntt::kMaxTransform / 2);
}

EigenformTable build_delta_table(std::uint64_t limit) {
  check_limit(limit, 12);
  return make_table(12, limit, kernels::parallel::delta_coefficients(limit));
}

EigenformTable build_delta_table_reference(std::uint64_t limit) {
  check_limit(limit, 12);
  return make_table(12, limit, kernels::serial::delta_coefficients(limit));
}

EigenformTable build_weight16_table(std::uint64_t limit) {
  check_limit(limit, 16);
  std::vector<std::int64_t> sigma3(limit, 0);
  for (std::uint64_t d = 1; d < limit; ++d) {
    const std::int64_t cube = static_cast<std::int64_t>(d * d * d);
    for (std::uint64_t m = d; m < limit; m += d) sigma3[m] += cube;
  }
  std::vector<std::int64_t> e4(limit);
  e4[0] = 1;
  for (std::uint64_t i = 1; i < limit; ++i) e4[i] = 240 * sigma3[i];
  const ntt::Residues eta24 = ntt::eta24_residues(limit, true);
  const ntt::Residues prod = ntt::multiply_truncated(eta24, ntt::to_residues(e4), limit, true);
  const std::vector<i128> p = ntt::reconstruct(prod, true);
  std::vector<i128> exact(limit + 1, 0);
  std::copy(p.begin(), p.end(), exact.begin() + 1);
  return make_table(16, limit, std::move(exact));
}

EigenformTable build_by_hecke_extension(const std::map<std::uint64_t, i128>& prime_values, int weight,
                                        std::uint64_t limit) {
  check_limit(limit, weight);
  const std::vector<std::uint32_t> spf = smallest_prime_factors(limit);
  std::vector<i128> a(limit + 1, 0);
  a[1] = 1;
  auto overflow = [](std::uint64_t n) {
    return Error(ErrorCode::OverflowRisk, "Hecke extension overflow at n = " + std::to_string(n));
  };
  for (std::uint64_t n = 2; n <= limit; ++n) {
    const std::uint64_t p = spf[n];
    std::uint64_t m = n;
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (m != 1) {
      if (!checked_mul(a[n / m], a[m], &a[n])) throw overflow(n);
      continue;
    }
    if (e == 1) {
      const auto it = prime_values.find(p);
      if (it == prime_values.end())
        throw Error(ErrorCode::MissingPrime, "no seed value for prime " + std::to_string(p));
      a[n] = it->second;
      continue;
    }
    const std::uint64_t prev = n / p;
    const std::uint64_t prev2 = prev / p;
    i128 pk, lhs, rhs;
    if (!checked_pow(static_cast<i128>(p), static_cast<unsigned>(weight - 1), &pk) ||
        !checked_mul(a[p], a[prev], &lhs) || !checked_mul(pk, a[prev2], &rhs) ||
        !checked_sub(lhs, rhs, &a[n]))
      throw overflow(n);
  }
  return make_table(weight, limit, std::move(a));
}

double normalized_value(const EigenformTable& table, std::uint64_t n) {
  if (n == 0 || n > table.limit)
    throw Error(ErrorCode::OutOfRange, "index " + std::to_string(n) + " outside [1, " +
                                           std::to_string(table.limit) + "]");
  // n^{(k-1)/2} = n^{k/2 - 1} * sqrt(n), formed in extended precision so the
  // only double rounding is the final one.
  const int whole = table.weight / 2 - 1;
  long double scale = std::sqrt(static_cast<long double>(n));
  for (int i = 0; i < whole; ++i) scale *= static_cast<long double>(n);
  return static_cast<double>(static_cast<long double>(table.exact[n]) / scale);
}

void normalize(EigenformTable& table) {
  table.normalized.assign(table.limit + 1, 0.0);
#pragma omp parallel for schedule(static)
  for (std::uint64_t n = 1; n <= table.limit; ++n) table.normalized[n] = normalized_value(table, n);
}

void write_cache(const EigenformTable& table, const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(ErrorCode::CacheFormat, "cannot open " + path.string() + " for writing");
  os.write("SGNF", 4);
  put_u32(os, kCacheVersion);
  put_u32(os, static_cast<std::uint32_t>(table.weight));
  put_u64(os, table.limit);
  for (std::uint64_t n = 1; n <= table.limit; ++n) {
    const u128 v = static_cast<u128>(table.exact[n]);
    put_u64(os, static_cast<std::uint64_t>(v));
    put_u64(os, static_cast<std::uint64_t>(v >> 64));
  }
  if (!os) throw Error(ErrorCode::CacheFormat, "write failed for " + path.string());
}

EigenformTable read_cache(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::CacheFormat, "cannot open " + path.string());
  std::array<char, 4> magic{};
  is.read(magic.data(), 4);
  if (!is || std::string(magic.data(), 4) != "SGNF") throw Error(ErrorCode::CacheFormat, "bad magic");
  const auto version = get_le<std::uint32_t, 4>(is);
  if (version != kCacheVersion)
    throw Error(ErrorCode::CacheFormat, "unsupported cache version " + std::to_string(version));
  const auto weight = static_cast<int>(get_le<std::uint32_t, 4>(is));
  const auto limit = get_le<std::uint64_t, 8>(is);
  if (weight < 2 || weight % 2 != 0 || limit == 0 || limit > certified_limit(weight))
    throw Error(ErrorCode::CacheFormat, "implausible cache header");
  std::vector<i128> exact(limit + 1, 0);
  for (std::uint64_t n = 1; n <= limit; ++n) {
    const auto lo = get_le<std::uint64_t, 8>(is);
    const auto hi = get_le<std::uint64_t, 8>(is);
    exact[n] = static_cast<i128>((static_cast<u128>(hi) << 64) | lo);
  }
  if (is.peek() != std::char_traits<char>::eof()) throw Error(ErrorCode::CacheFormat, "trailing bytes");
  return make_table(weight, limit, std::move(exact));
}

}  // namespace signflux
