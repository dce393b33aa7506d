#pragma once

// Data-parallel inner loops. Every kernel exists twice: a plain serial
// reference that the tests treat as ground truth, and an OpenMP version used
// by the library. Integer kernels agree bit-for-bit. The float prefix scan
// restarts its compensated sum at fixed block boundaries, so it is identical
// for every thread count and matches the serial pass to rounding.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "signflux/int128.hpp"

namespace signflux::kernels {

// Block width for deterministic float reductions. Independent of thread count.
inline constexpr std::size_t kReductionBlock = 1u << 16;

// Per-segment extrema of a running prefix sum minus a linear drift.
// Segments are [bounds[i], bounds[i+1]) over indices; samples are taken at
// every index of the running sum S(Y) = sum_{n<=Y} terms[n].
struct PrefixScan {
  std::vector<double> at;          // S(Y) for each requested Y in `probes`
  std::vector<double> segment_max; // max |S(Y) - drift*Y| over each segment
};

// Sign changes inside a contiguous index range [begin, end].
struct SignChangeRun {
  std::uint64_t first_index = 0;  // first index with a nonzero sign (0 if none)
  std::uint64_t last_index = 0;   // last index with a nonzero sign (0 if none)
  std::vector<std::pair<std::uint64_t, std::uint64_t>> changes;
};

namespace serial {

// out[n] = sum_{d | n} chi_{-4}(d) for 1 <= n < out.size(); out[0] = 0.
void r2_quarter(std::span<std::int32_t> out);
// out[n] = number of divisors of n; out[0] = 0.
void divisor_count(std::span<std::uint32_t> out);
// Delta coefficients tau(1..limit) by repeated sparse multiplication with
// eta^3, checking every multiply-accumulate for overflow. Index 0 unused.
std::vector<i128> delta_coefficients(std::size_t limit);
PrefixScan prefix_scan(std::span<const double> terms, std::span<const std::uint64_t> probes,
                       std::span<const std::uint64_t> bounds, double drift);
SignChangeRun sign_changes(std::span<const std::int8_t> signs, std::uint64_t begin,
                           std::uint64_t end);

}  // namespace serial

namespace parallel {

void r2_quarter(std::span<std::int32_t> out);
void divisor_count(std::span<std::uint32_t> out);
// Same values as serial::delta_coefficients, via multi-modular NTT squaring.
std::vector<i128> delta_coefficients(std::size_t limit);
PrefixScan prefix_scan(std::span<const double> terms, std::span<const std::uint64_t> probes,
                       std::span<const std::uint64_t> bounds, double drift);
SignChangeRun sign_changes(std::span<const std::int8_t> signs, std::uint64_t begin,
                           std::uint64_t end);

}  // namespace parallel

// Sets the OpenMP team size; n <= 0 restores the runtime default.
void set_thread_count(int n);
int thread_count();

}  // namespace signflux::kernels
