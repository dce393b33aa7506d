#pragma once

// Sign changes of the sequence A(n) r2(n), and the exponent bookkeeping that
// says how long a window must be to be guaranteed one.

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "signflux/arithmetic.hpp"
#include "signflux/eigenform.hpp"
#include "signflux/rational.hpp"

namespace signflux {

struct SignChangeReport {
  std::uint64_t x_begin = 0;
  std::uint64_t x_end = 0;  // inclusive
  // (n1, n2): opposite strict signs, every index strictly between is zero.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> changes;
  std::size_t count = 0;
};

// sign(a(n) r2(n)) in {-1, 0, +1} for 0 <= n <= limit, taken from the exact
// integers. Zero means "no sign": n is not a sum of two squares or a(n) = 0.
class SignSequence {
 public:
  SignSequence(const EigenformTable& eig, const ArithmeticTables& arith);
  explicit SignSequence(std::vector<std::int8_t> signs);

  std::uint64_t limit() const { return signs_.size() - 1; }
  std::span<const std::int8_t> signs() const { return signs_; }

  // Every change with both endpoints in [begin, end].
  SignChangeReport scan(std::uint64_t begin, std::uint64_t end) const;

 private:
  std::vector<std::int8_t> signs_;
};

// Window [X, X + ceil(X^r)]. OutOfRange unless X >= 2 and the window fits.
SignChangeReport scan_window(const SignSequence& seq, std::uint64_t x, const Rational& r);
SignChangeReport scan_window(const EigenformTable& eig, const ArithmeticTables& arith, std::uint64_t x,
                             const Rational& r);

// Dyadic interval [X, 2X].
SignChangeReport count_dyadic(const SignSequence& seq, std::uint64_t x);
SignChangeReport count_dyadic(const EigenformTable& eig, const ArithmeticTables& arith, std::uint64_t x);

std::uint64_t window_length(std::uint64_t x, const Rational& r);

// Growth hypotheses: |A(n)| << n^alpha, S1 << X^beta, S2 = c X^gamma + O(X^eta),
// plus optional moment/subconvexity inputs beta', eta', eta''.
struct CriteriaParams {
  Rational alpha{0};
  Rational beta{0};
  Rational gamma{1};
  Rational eta{0};
  std::optional<Rational> beta_prime;
  std::optional<Rational> eta_prime;
  std::optional<Rational> eta_double_prime;
};

// Admissible window exponents r lie in the open interval (r_min, 1).
struct AdmissibleInterval {
  Rational r_min;
};

// r_min = max(alpha + beta, eta) - (gamma - 1); nullopt when r_min >= 1.
std::optional<AdmissibleInterval> admissible_r(const CriteriaParams& params);

struct TransferredBounds {
  Rational beta_bound;  // 1 - 1 / (2 (1 + beta'))
  Rational eta_bound;   // 1 - 1 / (2 (1 + max(eta', 2 eta'' - 1)))
};

TransferredBounds transfer_exponents(const Rational& beta_prime, const Rational& eta_prime,
                                     const Rational& eta_double_prime);

}  // namespace signflux
