#include "signflux/signscan.hpp"

#include <algorithm>
#include <cmath>

#include "signflux/error.hpp"
#include "signflux/kernels.hpp"

namespace signflux {

SignSequence::SignSequence(const EigenformTable& eig, const ArithmeticTables& arith) {
  if (eig.limit != arith.limit) throw Error(ErrorCode::LimitMismatch, "eigenform and arithmetic limits differ");
  signs_.assign(eig.limit + 1, 0);
#pragma omp parallel for schedule(static)
  for (std::uint64_t n = 1; n <= eig.limit; ++n)
    signs_[n] = arith.r2[n] == 0 ? std::int8_t{0} : static_cast<std::int8_t>(sign_of(eig.a(n)));
}

SignSequence::SignSequence(std::vector<std::int8_t> signs) : signs_(std::move(signs)) {
  if (signs_.empty()) signs_.push_back(0);
}

SignChangeReport SignSequence::scan(std::uint64_t begin, std::uint64_t end) const {
  if (begin == 0 || end < begin || end > limit())
    throw Error(ErrorCode::OutOfRange, "scan range [" + std::to_string(begin) + ", " + std::to_string(end) +
                                           "] outside [1, " + std::to_string(limit()) + "]");
  kernels::SignChangeRun run = kernels::parallel::sign_changes(signs_, begin, end);
  SignChangeReport r;
  r.x_begin = begin;
  r.x_end = end;
  r.changes = std::move(run.changes);
  r.count = r.changes.size();
  return r;
}

std::uint64_t window_length(std::uint64_t x, const Rational& r) {
  const double len = std::ceil(std::pow(static_cast<double>(x), to_double(r)) - 1e-9);
  return static_cast<std::uint64_t>(std::max(len, 1.0));
}

SignChangeReport scan_window(const SignSequence& seq, std::uint64_t x, const Rational& r) {
  if (x < 2) throw Error(ErrorCode::OutOfRange, "window start must be at least 2");
  if (r <= Rational(0)) throw Error(ErrorCode::OutOfRange, "window exponent must be positive");
  return seq.scan(x, x + window_length(x, r));
}

SignChangeReport scan_window(const EigenformTable& eig, const ArithmeticTables& arith, std::uint64_t x,
                             const Rational& r) {
  return scan_window(SignSequence(eig, arith), x, r);
}

SignChangeReport count_dyadic(const SignSequence& seq, std::uint64_t x) {
  if (x < 1) throw Error(ErrorCode::OutOfRange, "X must be positive");
  return seq.scan(x, 2 * x);
}

SignChangeReport count_dyadic(const EigenformTable& eig, const ArithmeticTables& arith, std::uint64_t x) {
  return count_dyadic(SignSequence(eig, arith), x);
}

std::optional<AdmissibleInterval> admissible_r(const CriteriaParams& p) {
  const Rational r_min = std::max(p.alpha + p.beta, p.eta) - (p.gamma - Rational(1));
  if (r_min >= Rational(1)) return std::nullopt;
  return AdmissibleInterval{r_min};
}

TransferredBounds transfer_exponents(const Rational& beta_prime, const Rational& eta_prime,
                                     const Rational& eta_double_prime) {
  const Rational one(1), two(2);
  const Rational eta_input = std::max(eta_prime, two * eta_double_prime - one);
  return {one - one / (two * (one + beta_prime)), one - one / (two * (one + eta_input))};
}

}  // namespace signflux
