#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ntt.hpp"
#include "signflux/error.hpp"
#include "signflux/kernels.hpp"
#include "signflux/primes.hpp"
#include "signflux/summation.hpp"

namespace signflux::kernels::serial {

void r2_quarter(std::span<std::int32_t> out) {
  std::fill(out.begin(), out.end(), 0);
  for (std::size_t d = 1; d < out.size(); d += 2) {
    const std::int32_t c = chi4(d);
    for (std::size_t m = d; m < out.size(); m += d) out[m] += c;
  }
}

void divisor_count(std::span<std::uint32_t> out) {
  std::fill(out.begin(), out.end(), 0u);
  for (std::size_t d = 1; d < out.size(); ++d)
    for (std::size_t m = d; m < out.size(); m += d) ++out[m];
}

std::vector<i128> delta_coefficients(std::size_t limit) {
  const auto eta3 = ntt::eta3_terms(limit);
  const auto eta6 = ntt::eta6_coefficients(limit);
  std::vector<i128> cur(eta6.begin(), eta6.end());
  std::vector<i128> next(limit);
  // eta^6 -> eta^9 -> ... -> eta^24
  for (int step = 0; step < 6; ++step) {
    for (std::size_t n = 0; n < limit; ++n) {
      i128 acc = 0;
      for (const auto& [t, c] : eta3) {
        if (t > n) break;
        i128 term;
        if (!checked_mul(cur[n - t], c, &term) || !checked_add(acc, term, &acc))
          throw Error(ErrorCode::OverflowRisk, "eta-power coefficient overflow at index " + std::to_string(n));
      }
      next[n] = acc;
    }
    cur.swap(next);
  }
  std::vector<i128> tau(limit + 1, 0);
  for (std::size_t n = 1; n <= limit; ++n) tau[n] = cur[n - 1];
  return tau;
}

PrefixScan prefix_scan(std::span<const double> terms, std::span<const std::uint64_t> probes,
                       std::span<const std::uint64_t> bounds, double drift) {
  PrefixScan out;
  out.at.assign(probes.size(), 0.0);
  out.segment_max.assign(bounds.empty() ? 0 : bounds.size() - 1, 0.0);
  CompensatedSum sum;
  std::size_t pi = 0;
  std::size_t seg = 0;
  for (std::size_t y = 1; y < terms.size(); ++y) {
    sum.add(terms[y]);
    const double s = sum.value();
    while (pi < probes.size() && probes[pi] == y) out.at[pi++] = s;
    while (seg + 1 < bounds.size() && bounds[seg + 1] <= y) ++seg;
    if (seg + 1 < bounds.size() && bounds[seg] <= y) {
      const double dev = std::fabs(s - drift * static_cast<double>(y));
      out.segment_max[seg] = std::max(out.segment_max[seg], dev);
    }
  }
  return out;
}

SignChangeRun sign_changes(std::span<const std::int8_t> signs, std::uint64_t begin,
                           std::uint64_t end) {
  SignChangeRun run;
  std::int8_t last_sign = 0;
  for (std::uint64_t n = begin; n <= end; ++n) {
    const std::int8_t s = signs[n];
    if (s == 0) continue;
    if (run.first_index == 0) run.first_index = n;
    if (last_sign != 0 && s != last_sign) run.changes.emplace_back(run.last_index, n);
    last_sign = s;
    run.last_index = n;
  }
  return run;
}

}  // namespace signflux::kernels::serial
