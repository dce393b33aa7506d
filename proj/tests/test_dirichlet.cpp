#include <doctest.h>

#include <cmath>
#include <complex>
#include <vector>

#include "signflux/dirichlet.hpp"
#include "signflux/error.hpp"
#include "signflux/primes.hpp"

using namespace signflux;

namespace {

struct Fixture {
  EigenformTable eig = build_delta_table(20000);
  ArithmeticTables arith = sieve_arithmetic(20000);
  DirichletData data{eig, arith};
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

}  // namespace

TEST_SUITE("dirichlet") {

TEST_CASE("tail bounds are honest and shrink as M grows") {
  const auto& d = fixture().data;
  for (SeriesKind kind : {SeriesKind::f_theta2, SeriesKind::f_f, SeriesKind::f_f_chi, SeriesKind::ltilde}) {
    const std::complex<double> s(2.0, 3.0);
    const auto coarse = eval_series(d, {kind, 1000}, s);
    const auto fine = eval_series(d, {kind, 20000}, s);
    CHECK(fine.tail_bound < coarse.tail_bound);
    CHECK(std::abs(coarse.value - fine.value) <= coarse.tail_bound + fine.tail_bound);
  }
}

TEST_CASE("conjugate symmetry and positivity on the real axis") {
  const auto& d = fixture().data;
  const std::complex<double> s(1.7, 11.0);
  for (SeriesKind kind : {SeriesKind::f_theta2, SeriesKind::f_f, SeriesKind::ltilde}) {
    const auto a = eval_series(d, {kind, 5000}, s);
    const auto b = eval_series(d, {kind, 5000}, std::conj(s));
    CHECK(std::abs(a.value - std::conj(b.value)) < 1e-12);
  }
  const auto real = eval_series(d, {SeriesKind::ltilde, 20000}, 2.0);
  CHECK(real.value.real() > 1.0);
  CHECK(real.value.imag() == 0.0);
}

TEST_CASE("abscissa and truncation guards") {
  const auto& d = fixture().data;
  try {
    eval_series(d, {SeriesKind::ltilde, 100}, 1.005);
    FAIL("expected AbscissaViolation");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::AbscissaViolation);
  }
  try {
    eval_series(d, {SeriesKind::ltilde, 10}, 2.0, 1e-12);
    FAIL("expected TruncationTooShort");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TruncationTooShort);
  }
  CHECK_THROWS_AS(eval_series(d, {SeriesKind::ltilde, 20001}, 2.0), Error);
}

TEST_CASE("local factor at 2 is exactly F_2") {
  const auto& d = fixture().data;
  const auto fc = solve_local_factor(d, 2, 2.0, 10);
  // r2(2^j) / 4 = 1 and chi(2^j) = 0 for j >= 1, so Ltilde_2 = F_2 and U_2 = 1.
  CHECK(std::abs(fc.ltilde - fc.ff) < 1e-15);
  CHECK(fc.u_deviation() < 1e-15);
  CHECK(fc.residual <= fc.residual_bound);
}

TEST_CASE("U_p decays and residuals respect their bounds") {
  const auto& d = fixture().data;
  for (std::uint32_t p : primes_up_to(100)) {
    const auto fc = solve_local_factor(d, p, 2.0, max_depth(d, p));
    CHECK(fc.u_deviation() <= 10.0 / (double(p) * p));
    CHECK(fc.residual <= fc.residual_bound + 1e-15);
    CHECK(fc.u_coefficients.at(0) == doctest::Approx(1.0));
  }
  try {
    solve_local_factor(d, 3, 2.0, 20);
    FAIL("expected DepthUnavailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::DepthUnavailable);
  }
}

TEST_CASE("Euler product brackets the Dirichlet sum") {
  const auto chk = euler_product_check(fixture().data, 100, 2.0);
  CHECK(chk.consistent());
  CHECK(chk.product <= chk.product_upper);
}

TEST_CASE("Perron for the unit series") {
  std::vector<double> unit(2, 0.0);
  unit[1] = 1.0;
  const auto r = perron_integral(unit, 10.5, 2000.0, 1.5);
  CHECK(r.direct == 1.0);
  CHECK(r.contour == doctest::Approx(1.0).epsilon(2e-3));
}

TEST_CASE("Perron error halves the last term at integer X") {
  std::vector<double> c(11, 1.0);
  const auto r = perron_integral(c, 10.0, 500.0, 1.5);
  CHECK(r.direct == doctest::Approx(9.5));
  CHECK(r.discrepancy < 0.05);
}

TEST_CASE("Perron discrepancy falls along a dyadic T ladder, up to one inversion") {
  const auto& d = fixture().data;
  for (SumKind kind : {SumKind::S1, SumKind::S2}) {
    std::vector<double> errs;
    for (double t : {100.0, 200.0, 400.0, 800.0}) errs.push_back(perron_check(d, kind, 50.5, t, 1.25).discrepancy);
    int inversions = 0;
    for (std::size_t i = 1; i < errs.size(); ++i) inversions += errs[i] > errs[i - 1];
    CHECK(inversions <= 1);
    CHECK(errs.back() < errs.front());
  }
}

}
