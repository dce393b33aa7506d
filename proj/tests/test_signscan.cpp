#include <doctest.h>

#include "signflux/error.hpp"
#include "signflux/oracles.hpp"
#include "signflux/signscan.hpp"

using namespace signflux;

TEST_SUITE("signscan") {

TEST_CASE("synthetic +, 0, 0, - has one change") {
  const SignSequence seq({0, 1, 0, 0, -1});
  const auto r = seq.scan(1, 4);
  CHECK(r.count == 1);
  REQUIRE(r.changes.size() == 1);
  CHECK(r.changes[0].first == 1);
  CHECK(r.changes[0].second == 4);
  CHECK(seq.scan(2, 4).count == 0);
}

TEST_CASE("zeros never count as a sign") {
  const SignSequence seq({0, 0, 0, 0, 0, 0});
  CHECK(seq.scan(1, 5).count == 0);
}

TEST_CASE("counts agree with the big-integer rescan") {
  const auto eig = build_delta_table(20000);
  const auto arith = sieve_arithmetic(20000);
  const SignSequence seq(eig, arith);
  for (std::uint64_t x : {10ull, 100ull, 1000ull, 9999ull})
    CHECK(count_dyadic(seq, x).count == oracle::sign_changes_by_rescan(eig, arith, x, 2 * x));
  const Rational r(19, 25);
  const auto w = scan_window(seq, 5000, r);
  CHECK(w.x_end == 5000 + window_length(5000, r));
  CHECK(w.count == oracle::sign_changes_by_rescan(eig, arith, w.x_begin, w.x_end));
}

TEST_CASE("window bounds are validated") {
  const SignSequence seq({0, 1, -1, 1});
  CHECK_THROWS_AS(scan_window(seq, 1, Rational(1, 2)), Error);
  CHECK_THROWS_AS(scan_window(seq, 2, Rational(1)), Error);
  CHECK(window_length(1000, Rational(1, 2)) == 32);
}

TEST_CASE("exponent bookkeeping rows") {
  const Rational half(1, 2);
  auto t = transfer_exponents(1, 2, 1);
  CHECK(t.beta_bound == Rational(3, 4));
  CHECK(t.eta_bound == Rational(5, 6));
  t = transfer_exponents(0, 0, 0);
  CHECK(t.beta_bound == half);
  CHECK(t.eta_bound == half);
  t = transfer_exponents(1, 1, Rational(15, 16));
  CHECK(t.eta_bound == Rational(3, 4));

  CriteriaParams p;
  p.beta = Rational(3, 4);
  p.eta = Rational(5, 6);
  CHECK(admissible_r(p)->r_min == Rational(5, 6));
  p.beta = Rational(3, 5);
  p.eta = Rational(3, 4);
  CHECK(admissible_r(p)->r_min == Rational(3, 4));
  p.alpha = Rational(1, 2);
  p.eta = Rational(1, 2);
  CHECK_FALSE(admissible_r(p).has_value());
}

TEST_CASE("rational parsing") {
  CHECK(parse_rational("0.76") == Rational(19, 25));
  CHECK(parse_rational("5/6") == Rational(5, 6));
  CHECK(parse_rational("-2") == Rational(-2));
  CHECK(to_string(Rational(3, 4)) == "3/4");
  CHECK_THROWS(parse_rational("x"));
}

}
