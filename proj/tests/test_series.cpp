#include <doctest.h>

#include <cmath>

#include "signflux/error.hpp"
#include "signflux/series.hpp"

using namespace signflux;

TEST_SUITE("series") {

TEST_CASE("checkpoint plan") {
  const auto plan = make_checkpoint_plan(1, 1000);
  CHECK(plan.xs.front() == 1);
  CHECK(plan.xs.back() == 1000);
  for (std::size_t i = 1; i < plan.xs.size(); ++i) CHECK(plan.xs[i] > plan.xs[i - 1]);
  CHECK_THROWS_AS(make_checkpoint_plan(0, 10), Error);
  CHECK_THROWS_AS(make_checkpoint_plan(1, 10, 1.0), Error);
}

TEST_CASE("S1(5) = 4A(1) + 4A(2) + 4A(4) + 8A(5)") {
  const auto eig = build_delta_table(5);
  const auto arith = sieve_arithmetic(5);
  const double expect = 4 * eig.A(1) + 4 * eig.A(2) + 4 * eig.A(4) + 8 * eig.A(5);
  CHECK(direct_partial_sum(eig, arith, SumKind::S1, 5) == doctest::Approx(expect));
  const auto sums = stream_sums(eig, arith, make_checkpoint_plan(1, 5));
  CHECK(sums.s1.checkpoints.back().x == 5);
  CHECK(sums.s1.checkpoints.back().value == doctest::Approx(expect));
}

TEST_CASE("streamed checkpoints equal direct sums") {
  const auto eig = build_delta_table(50000);
  const auto arith = sieve_arithmetic(50000);
  const auto sums = stream_sums(eig, arith, make_checkpoint_plan(1, 50000));
  for (const auto& c : sums.s1.checkpoints)
    CHECK(c.value == doctest::Approx(direct_partial_sum(eig, arith, SumKind::S1, c.x)).epsilon(1e-10));
  for (const auto& c : sums.s2.checkpoints)
    CHECK(c.value == doctest::Approx(direct_partial_sum(eig, arith, SumKind::S2, c.x)).epsilon(1e-10));
  CHECK(sums.s2.drift > 0.0);
}

TEST_CASE("c_f recovers a synthetic linear drift") {
  const auto plan = make_checkpoint_plan(1, 100000);
  const auto s = series_from_function(SumKind::S2, [](double y) { return 1.5 * y + 3.0 * std::sqrt(y); }, plan, 0.0);
  const auto fit = estimate_cf(s);
  CHECK(fit.c_f == doctest::Approx(1.5).epsilon(0.01));
  const auto short_plan = make_checkpoint_plan(1, 50);
  CHECK_THROWS_AS(estimate_cf(series_from_function(SumKind::S2, [](double y) { return y; }, short_plan, 0.0)), Error);
}

TEST_CASE("power-law exponents are recovered") {
  const auto plan = make_checkpoint_plan(1, 200000);
  for (double e : {0.25, 0.5, 0.75}) {
    const auto s = series_from_function(SumKind::S1, [e](double y) { return 2.0 * std::pow(y, e); }, plan, 0.0);
    const auto sup = fit_exponent(s, FitMode::sup_dyadic_abs, 100);
    CHECK(sup.slope == doctest::Approx(e).epsilon(1e-3));
    CHECK(sup.r_squared > 0.999);
    const auto res = fit_exponent(s, FitMode::residual_abs, 100);
    CHECK(res.slope == doctest::Approx(e).epsilon(1e-3));
  }
}

TEST_CASE("zero magnitudes are dropped; too few points is an error") {
  const auto plan = make_checkpoint_plan(1, 1000);
  const auto zero = series_from_function(SumKind::S1, [](double) { return 0.0; }, plan, 0.0);
  try {
    fit_exponent(zero, FitMode::residual_abs);
    FAIL("expected DegenerateData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DegenerateData);
  }
  const auto tiny = series_from_function(SumKind::S1, [](double y) { return y; }, make_checkpoint_plan(1, 3), 0.0);
  try {
    fit_exponent(tiny, FitMode::residual_abs);
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientData);
  }
}

}
