#include <omp.h>

#include <algorithm>
#include <cmath>

#include "ntt.hpp"
#include "signflux/kernels.hpp"
#include "signflux/primes.hpp"
#include "signflux/summation.hpp"

namespace signflux::kernels {

void set_thread_count(int n) {
  if (n > 0) omp_set_num_threads(n);
  else omp_set_num_threads(omp_get_num_procs());
}

int thread_count() { return omp_get_max_threads(); }

namespace parallel {
namespace {

constexpr std::size_t kSieveBlock = 1u << 16;

std::size_t block_count(std::size_t n, std::size_t block) { return (n + block - 1) / block; }

}  // namespace

// Each block owns its slice of the output, so no two threads write the same slot.
void r2_quarter(std::span<std::int32_t> out) {
  const std::size_t size = out.size();
  const std::size_t blocks = block_count(size, kSieveBlock);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * kSieveBlock;
    const std::size_t hi = std::min(size, lo + kSieveBlock);
    std::fill(out.begin() + lo, out.begin() + hi, 0);
    for (std::size_t d = 1; d < hi; d += 2) {
      const std::int32_t c = chi4(d);
      const std::size_t start = std::max(d, (lo + d - 1) / d * d);
      for (std::size_t m = start; m < hi; m += d) out[m] += c;
    }
  }
}

void divisor_count(std::span<std::uint32_t> out) {
  const std::size_t size = out.size();
  const std::size_t blocks = block_count(size, kSieveBlock);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = b * kSieveBlock;
    const std::size_t hi = std::min(size, lo + kSieveBlock);
    std::fill(out.begin() + lo, out.begin() + hi, 0u);
    for (std::size_t d = 1; d < hi; ++d) {
      const std::size_t start = std::max(d, (lo + d - 1) / d * d);
      for (std::size_t m = start; m < hi; m += d) ++out[m];
    }
  }
}

std::vector<i128> delta_coefficients(std::size_t limit) {
  const ntt::Residues r = ntt::eta24_residues(limit, true);
  const std::vector<i128> p = ntt::reconstruct(r, true);
  std::vector<i128> tau(limit + 1, 0);
  std::copy(p.begin(), p.end(), tau.begin() + 1);
  return tau;
}

// Three phases over fixed-width blocks: block totals, a serial exclusive scan
// of those totals, then a rescan of each block from its offset.
PrefixScan prefix_scan(std::span<const double> terms, std::span<const std::uint64_t> probes,
                       std::span<const std::uint64_t> bounds, double drift) {
  PrefixScan out;
  out.at.assign(probes.size(), 0.0);
  const std::size_t segments = bounds.empty() ? 0 : bounds.size() - 1;
  out.segment_max.assign(segments, 0.0);
  if (terms.size() <= 1) return out;

  const std::size_t count = terms.size() - 1;  // indices 1..count
  const std::size_t blocks = block_count(count, kReductionBlock);
  std::vector<double> totals(blocks);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = 1 + b * kReductionBlock;
    const std::size_t hi = std::min(terms.size(), lo + kReductionBlock);
    CompensatedSum s;
    for (std::size_t y = lo; y < hi; ++y) s.add(terms[y]);
    totals[b] = s.value();
  }
  std::vector<double> offsets(blocks);
  {
    CompensatedSum s;
    for (std::size_t b = 0; b < blocks; ++b) {
      offsets[b] = s.value();
      s.add(totals[b]);
    }
  }

  std::vector<std::vector<std::pair<std::size_t, double>>> local_max(blocks);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t lo = 1 + b * kReductionBlock;
    const std::size_t hi = std::min(terms.size(), lo + kReductionBlock);
    CompensatedSum s(offsets[b]);
    std::size_t pi = std::lower_bound(probes.begin(), probes.end(), lo) - probes.begin();
    std::size_t seg = segments == 0
                          ? 0
                          : std::upper_bound(bounds.begin(), bounds.end(), lo) - bounds.begin();
    seg = seg == 0 ? 0 : seg - 1;
    auto& mine = local_max[b];
    for (std::size_t y = lo; y < hi; ++y) {
      s.add(terms[y]);
      const double v = s.value();
      while (pi < probes.size() && probes[pi] == y) out.at[pi++] = v;
      while (seg + 1 < bounds.size() && bounds[seg + 1] <= y) ++seg;
      if (seg + 1 < bounds.size() && bounds[seg] <= y) {
        const double dev = std::fabs(v - drift * static_cast<double>(y));
        if (mine.empty() || mine.back().first != seg) mine.emplace_back(seg, dev);
        else mine.back().second = std::max(mine.back().second, dev);
      }
    }
  }
  for (const auto& mine : local_max)
    for (const auto& [seg, dev] : mine) out.segment_max[seg] = std::max(out.segment_max[seg], dev);
  return out;
}

SignChangeRun sign_changes(std::span<const std::int8_t> signs, std::uint64_t begin,
                           std::uint64_t end) {
  if (end < begin) return {};
  const std::uint64_t count = end - begin + 1;
  const std::size_t blocks = block_count(count, kSieveBlock);
  std::vector<SignChangeRun> runs(blocks);
#pragma omp parallel for schedule(static)
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::uint64_t lo = begin + b * kSieveBlock;
    const std::uint64_t hi = std::min<std::uint64_t>(end, lo + kSieveBlock - 1);
    runs[b] = serial::sign_changes(signs, lo, hi);
  }
  SignChangeRun merged;
  for (auto& run : runs) {
    if (run.first_index == 0) continue;
    if (merged.first_index == 0) {
      merged.first_index = run.first_index;
    } else if (signs[merged.last_index] != signs[run.first_index]) {
      merged.changes.emplace_back(merged.last_index, run.first_index);
    }
    merged.changes.insert(merged.changes.end(), run.changes.begin(), run.changes.end());
    merged.last_index = run.last_index;
  }
  return merged;
}

}  // namespace parallel
}  // namespace signflux::kernels
