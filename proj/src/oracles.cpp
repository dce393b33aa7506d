#include "signflux/oracles.hpp"

namespace signflux::oracle {

std::vector<BigInt> delta_by_expansion(std::uint64_t limit) {
  std::vector<BigInt> c(limit, 0);
  if (limit == 0) return {BigInt(0)};
  c[0] = 1;
  for (std::uint64_t m = 1; m < limit; ++m)
    for (int rep = 0; rep < 24; ++rep)
      for (std::uint64_t i = limit - 1; i >= m; --i) c[i] -= c[i - m];
  std::vector<BigInt> tau(limit + 1, 0);
  for (std::uint64_t n = 1; n <= limit; ++n) tau[n] = c[n - 1];
  return tau;
}

std::uint32_t r2_by_lattice(std::uint64_t n) {
  std::uint32_t count = 0;
  std::int64_t r = 0;
  while (static_cast<std::uint64_t>((r + 1) * (r + 1)) <= n) ++r;
  for (std::int64_t c = -r; c <= r; ++c)
    for (std::int64_t d = -r; d <= r; ++d)
      if (static_cast<std::uint64_t>(c * c + d * d) == n) ++count;
  return count;
}

std::uint64_t sign_changes_by_rescan(const EigenformTable& eig, const ArithmeticTables& arith,
                                     std::uint64_t begin, std::uint64_t end) {
  std::uint64_t changes = 0;
  int last = 0;
  for (std::uint64_t n = begin; n <= end; ++n) {
    const BigInt product = BigInt(to_string(eig.exact[n])) * arith.r2[n];
    const int s = product.sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::uint32_t divisor_count(std::uint64_t n) {
  std::uint32_t count = 0;
  for (std::uint64_t d = 1; d * d <= n; ++d)
    if (n % d == 0) count += (d * d == n) ? 1 : 2;
  return count;
}

}  // namespace signflux::oracle
