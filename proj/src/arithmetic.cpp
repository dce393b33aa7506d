#include "signflux/arithmetic.hpp"

#include <cmath>
#include <ostream>

#include "signflux/error.hpp"
#include "signflux/kernels.hpp"
#include "signflux/primes.hpp"

namespace signflux {
namespace {

void require_same_limit(std::uint64_t a, std::uint64_t b) {
  if (a != b)
    throw Error(ErrorCode::LimitMismatch, "table limits differ: " + std::to_string(a) + " vs " + std::to_string(b));
}

}  // namespace

ArithmeticTables sieve_arithmetic(std::uint64_t limit) {
  if (limit == 0) throw Error(ErrorCode::InvalidLimit, "limit must be at least 1");
  ArithmeticTables t;
  t.limit = limit;
  std::vector<std::int32_t> quarter(limit + 1);
  kernels::parallel::r2_quarter(quarter);
  t.r2.resize(limit + 1);
  for (std::uint64_t n = 0; n <= limit; ++n) t.r2[n] = static_cast<std::uint32_t>(4 * quarter[n]);
  t.chi4.resize(limit + 1);
  for (std::uint64_t n = 0; n <= limit; ++n) t.chi4[n] = static_cast<std::int8_t>(chi4(n));
  t.mu = mobius(limit);
  t.divisors.resize(limit + 1);
  kernels::parallel::divisor_count(t.divisors);
  return t;
}

std::vector<double> b_coefficients(const EigenformTable& eig, const ArithmeticTables& arith) {
  require_same_limit(eig.limit, arith.limit);
  const std::uint64_t limit = arith.limit;
  std::vector<double> b(limit + 1, 0.0);
#pragma omp parallel for schedule(static)
  for (std::uint64_t n = 1; n <= limit; ++n) {
    double acc = 0.0;
    for (std::uint64_t d = 1; d * d <= n; d += 2) {
      if (n % (d * d) != 0) continue;
      const std::uint64_t m = n / (d * d);
      acc += eig.A(m) * arith.r2[m];
    }
    b[n] = acc;
  }
  return b;
}

std::vector<double> invert_b(std::span<const double> b, const ArithmeticTables& arith) {
  require_same_limit(b.size() - 1, arith.limit);
  const std::uint64_t limit = arith.limit;
  std::vector<double> c(limit + 1, 0.0);
#pragma omp parallel for schedule(static)
  for (std::uint64_t n = 1; n <= limit; ++n) {
    double acc = 0.0;
    for (std::uint64_t d = 1; d * d <= n; d += 2) {
      if (arith.mu[d] == 0 || n % (d * d) != 0) continue;
      acc += arith.mu[d] * b[n / (d * d)];
    }
    c[n] = acc;
  }
  return c;
}

std::vector<i128> b_coefficients_exact(const EigenformTable& eig, const ArithmeticTables& arith) {
  require_same_limit(eig.limit, arith.limit);
  const std::uint64_t limit = arith.limit;
  const unsigned power = static_cast<unsigned>(eig.weight - 1);
  std::vector<i128> b(limit + 1, 0);
  bool overflow = false;
#pragma omp parallel for schedule(static) reduction(|| : overflow)
  for (std::uint64_t n = 1; n <= limit; ++n) {
    i128 acc = 0;
    for (std::uint64_t d = 1; d * d <= n; d += 2) {
      if (n % (d * d) != 0) continue;
      const std::uint64_t m = n / (d * d);
      i128 scale, term;
      if (!checked_pow(static_cast<i128>(d), power, &scale) || !checked_mul(eig.a(m), scale, &term) ||
          !checked_mul(term, static_cast<i128>(arith.r2[m]), &term) || !checked_add(acc, term, &acc)) {
        overflow = true;
        break;
      }
    }
    b[n] = acc;
  }
  if (overflow) throw Error(ErrorCode::OverflowRisk, "scaled b(n) exceeds 128 bits; lower the limit");
  return b;
}

std::vector<i128> invert_b_exact(std::span<const i128> bhat, const ArithmeticTables& arith, int weight) {
  require_same_limit(bhat.size() - 1, arith.limit);
  const std::uint64_t limit = arith.limit;
  const unsigned power = static_cast<unsigned>(weight - 1);
  std::vector<i128> c(limit + 1, 0);
  bool overflow = false;
#pragma omp parallel for schedule(static) reduction(|| : overflow)
  for (std::uint64_t n = 1; n <= limit; ++n) {
    i128 acc = 0;
    for (std::uint64_t d = 1; d * d <= n; d += 2) {
      if (arith.mu[d] == 0 || n % (d * d) != 0) continue;
      i128 scale, term;
      if (!checked_pow(static_cast<i128>(d), power, &scale) ||
          !checked_mul(bhat[n / (d * d)], scale * arith.mu[d], &term) || !checked_add(acc, term, &acc)) {
        overflow = true;
        break;
      }
    }
    c[n] = acc;
  }
  if (overflow) throw Error(ErrorCode::OverflowRisk, "scaled inversion exceeds 128 bits; lower the limit");
  return c;
}

std::uint64_t representable_count(const ArithmeticTables& arith, std::uint64_t x) {
  if (x > arith.limit) throw Error(ErrorCode::OutOfRange, "x beyond table limit");
  std::uint64_t count = 0;
  for (std::uint64_t n = 1; n <= x; ++n) count += arith.r2[n] > 0;
  return count;
}

double landau_ramanujan_constant(std::uint64_t prime_bound) {
  long double log_prod = 0.0L;
  for (std::uint32_t p : primes_up_to(prime_bound)) {
    if (p % 4 != 3) continue;
    const long double pp = static_cast<long double>(p) * p;
    log_prod += -0.5L * std::log1p(-1.0L / pp);
  }
  return static_cast<double>(std::exp(log_prod) / std::sqrt(2.0L));
}

void write_arith_csv(std::ostream& os, const ArithmeticTables& arith, std::span<const double> b) {
  os << "n,r2,chi4,mu,b\n";
  os.precision(17);
  for (std::uint64_t n = 1; n <= arith.limit; ++n) {
    os << n << ',' << arith.r2[n] << ',' << int(arith.chi4[n]) << ',' << int(arith.mu[n]) << ',';
    if (n < b.size()) os << b[n];
    os << '\n';
  }
}

}  // namespace signflux
