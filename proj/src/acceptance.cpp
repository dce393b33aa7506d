#include "signflux/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <ostream>
#include <sstream>

#include "signflux/dirichlet.hpp"
#include "signflux/error.hpp"
#include "signflux/oracles.hpp"
#include "signflux/primes.hpp"
#include "signflux/series.hpp"
#include "signflux/signscan.hpp"

namespace signflux {
namespace {

using Clock = std::chrono::steady_clock;

struct Verdict {
  Outcome outcome;
  std::string detail;
};

Verdict pass(std::string d) { return {Outcome::Pass, std::move(d)}; }
Verdict fail(std::string d) { return {Outcome::Fail, std::move(d)}; }
Verdict skip(std::string d) { return {Outcome::Skip, std::move(d)}; }

std::string fmt(double v, int prec = 4) {
  std::ostringstream os;
  os.precision(prec);
  os << v;
  return os.str();
}

// ---------------------------------------------------------------------------

Verdict coefficient_oracle() {
  const EigenformTable t = build_delta_table(10);
  const auto oracle = oracle::delta_by_expansion(10);
  for (std::uint64_t n = 1; n <= 10; ++n)
    if (oracle::BigInt(to_string(t.exact[n])) != oracle[n])
      return fail("a(" + std::to_string(n) + ") = " + to_string(t.exact[n]) + ", oracle " + oracle[n].str());
  return pass("a(1..10) match naive expansion; a(2)=" + to_string(t.exact[2]) + " a(3)=" +
              to_string(t.exact[3]) + " a(5)=" + to_string(t.exact[5]));
}

Verdict multiplicativity(const AcceptanceContext& ctx) {
  const std::uint64_t bound = std::min<std::uint64_t>(100'000, ctx.limit);
  const auto& a = ctx.eig.exact;
  std::uint64_t pairs = 0;
  for (std::uint64_t m = 2; m * m <= bound; ++m)
    for (std::uint64_t n = m + 1; m * n <= bound; ++n) {
      if (std::gcd(m, n) != 1) continue;
      ++pairs;
      i128 prod;
      if (!checked_mul(a[m], a[n], &prod) || prod != a[m * n])
        return fail("a(" + std::to_string(m * n) + ") != a(" + std::to_string(m) + ") a(" + std::to_string(n) + ")");
    }
  std::uint64_t powers = 0;
  for (std::uint32_t p : primes_up_to(bound)) {
    if (std::uint64_t(p) * p > bound) break;
    i128 pk;
    if (!checked_pow(p, static_cast<unsigned>(ctx.eig.weight - 1), &pk))
      return fail("p^(k-1) overflow at p=" + std::to_string(p));
    for (std::uint64_t q = p; q * p <= bound; q *= p) {
      ++powers;
      i128 lhs, rhs;
      const i128 prev = q == p ? i128(1) : a[q / p];
      if (!checked_mul(a[p], a[q], &lhs) || !checked_mul(pk, prev, &rhs) || lhs - rhs != a[q * p])
        return fail("Hecke relation fails at " + std::to_string(p) + "-power " + std::to_string(q * p));
    }
  }
  return pass(std::to_string(pairs) + " coprime pairs and " + std::to_string(powers) +
              " prime-power relations exact up to " + std::to_string(bound));
}

Verdict deligne(const AcceptanceContext& ctx) {
  const std::uint64_t bound = std::min<std::uint64_t>(1'000'000, ctx.limit);
  std::uint64_t violations = 0, exact_checks = 0;
  double worst = 0.0;
  for (std::uint64_t n = 1; n <= bound; ++n) {
    const double ratio = std::fabs(ctx.eig.A(n)) / ctx.arith.divisors[n];
    worst = std::max(worst, ratio);
    if (ratio < 1.0 - 1e-9) continue;
    // Too close to call in floating point: a(n)^2 <= d(n)^2 n^{k-1} exactly.
    ++exact_checks;
    using oracle::BigInt;
    const BigInt lhs = BigInt(to_string(ctx.eig.exact[n])) * BigInt(to_string(ctx.eig.exact[n]));
    const BigInt rhs = BigInt(ctx.arith.divisors[n]) * ctx.arith.divisors[n] *
                       boost::multiprecision::pow(BigInt(n), ctx.eig.weight - 1);
    if (lhs > rhs) ++violations;
  }
  const std::string d = std::to_string(violations) + " violations for n <= " + std::to_string(bound) +
                        "; max |A(n)|/d(n) = " + fmt(worst, 6) + " (" + std::to_string(exact_checks) +
                        " exact checks)";
  return violations == 0 ? pass(d) : fail(d);
}

Verdict mobius_round_trip(const AcceptanceContext& ctx) {
  const std::uint64_t bound = std::min<std::uint64_t>(100'000, ctx.limit);
  const EigenformTable eig = truncated(ctx.eig, bound);
  const ArithmeticTables arith = truncated(ctx.arith, bound);
  const std::vector<i128> b = b_coefficients_exact(eig, arith);
  const std::vector<i128> back = invert_b_exact(b, arith, eig.weight);
  for (std::uint64_t n = 1; n <= bound; ++n)
    if (back[n] != eig.exact[n] * static_cast<i128>(arith.r2[n]))
      return fail("round trip differs at n = " + std::to_string(n));
  return pass("exact (n^{(k-1)/2}-scaled) round trip for all n <= " + std::to_string(bound));
}

Verdict dyadic_density(const AcceptanceContext& ctx, const SignSequence& seq) {
  std::string detail;
  bool any = false, ok = true;
  for (std::uint64_t x : {1'000ull, 10'000ull, 100'000ull, 500'000ull}) {
    if (2 * x > ctx.limit) {
      detail += " X=" + std::to_string(x) + ":skip";
      continue;
    }
    any = true;
    const auto report = count_dyadic(seq, x);
    const double floor_quarter = std::pow(static_cast<double>(x), 0.25);
    const bool good = static_cast<double>(report.count) >= floor_quarter;
    ok = ok && good;
    detail += " X=" + std::to_string(x) + ":" + std::to_string(report.count) + (good ? "" : "(<X^1/4)") +
              " count/X^1/2=" + fmt(report.count / std::sqrt(static_cast<double>(x)), 3);
  }
  if (!any) return skip("limit too small for any dyadic interval [X, 2X]");
  return ok ? pass(detail.substr(1)) : fail(detail.substr(1));
}

Verdict window_guarantee(const AcceptanceContext& ctx, const SignSequence& seq) {
  const Rational r(19, 25);
  double x_hi = 500'000.0;
  while (x_hi >= 1000.0 && x_hi + window_length(static_cast<std::uint64_t>(x_hi), r) > ctx.limit) x_hi *= 0.99;
  if (x_hi < 2000.0) return skip("limit too small for windows starting at 10^3");
  constexpr int kWindows = 200;
  int failures = 0;
  std::uint64_t first_failure = 0;
  for (int i = 0; i < kWindows; ++i) {
    const double frac = static_cast<double>(i) / (kWindows - 1);
    const auto x = static_cast<std::uint64_t>(std::llround(1000.0 * std::pow(x_hi / 1000.0, frac)));
    if (scan_window(seq, x, r).count == 0) {
      if (failures++ == 0) first_failure = x;
    }
  }
  const std::string d = std::to_string(kWindows) + " windows [X, X+X^0.76], X in [1000, " +
                        std::to_string(static_cast<std::uint64_t>(x_hi)) + "]: " + std::to_string(failures) +
                        " without a change";
  return failures == 0 ? pass(d) : fail(d + " (first at X=" + std::to_string(first_failure) + ")");
}

struct SumsData {
  bool ok = false;
  std::string why;
  StreamedSums sums;
};

SumsData streamed(const AcceptanceContext& ctx) {
  SumsData out;
  try {
    out.sums = stream_sums(ctx.eig, ctx.arith, make_checkpoint_plan(1, ctx.limit));
    out.ok = true;
  } catch (const Error& e) {
    out.why = e.what();
  }
  return out;
}

Verdict s1_cancellation(const AcceptanceContext& ctx, const SumsData& data) {
  if (!data.ok) return skip(data.why);
  try {
    const auto e = fit_exponent(data.sums.s1, FitMode::sup_dyadic_abs, 1000, std::min<std::uint64_t>(1'000'000, ctx.limit));
    const std::string d = "sup-dyadic exponent " + fmt(e.slope) + " (R^2 " + fmt(e.r_squared, 3) + ", " +
                          std::to_string(e.points) + " windows, X in [" + std::to_string(e.x_min) + ", " +
                          std::to_string(e.x_max) + "]); threshold 0.65";
    return e.slope <= 0.65 ? pass(d) : fail(d);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InsufficientData || e.code() == ErrorCode::DegenerateData) return skip(e.what());
    throw;
  }
}

Verdict s2_linearity(const AcceptanceContext& ctx, const SumsData& data) {
  if (!data.ok) return skip(data.why);
  try {
    const DriftFit fit = estimate_cf(data.sums.s2);
    const auto e = fit_exponent(data.sums.s2, FitMode::sup_dyadic_abs, 1000, std::min<std::uint64_t>(1'000'000, ctx.limit));
    const double threshold = 5.0 / 6.0 + 0.05;
    const std::string d = "c_f = " + fmt(fit.c_f, 6) + ", residual exponent " + fmt(e.slope) + " (R^2 " +
                          fmt(e.r_squared, 3) + "); threshold " + fmt(threshold) + ", GLH value 0.5";
    return fit.c_f > 0.0 && e.slope <= threshold ? pass(d) : fail(d);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InsufficientData || e.code() == ErrorCode::DegenerateData) return skip(e.what());
    throw;
  }
}

Verdict exponent_calculators() {
  const Rational half(1, 2), three4(3, 4), five6(5, 6), three5(3, 5);
  struct Row {
    Rational bp, ep, epp, beta, eta;
  };
  std::vector<std::string> bad;
  auto check_transfer = [&](const Row& row) {
    const auto t = transfer_exponents(row.bp, row.ep, row.epp);
    if (t.beta_bound != row.beta || t.eta_bound != row.eta)
      bad.push_back("transfer(" + to_string(row.bp) + "," + to_string(row.ep) + "," + to_string(row.epp) +
                    ") = (" + to_string(t.beta_bound) + "," + to_string(t.eta_bound) + ")");
  };
  auto check_r = [&](Rational beta, Rational eta, Rational expect) {
    CriteriaParams p;
    p.beta = beta;
    p.eta = eta;
    const auto r = admissible_r(p);
    if (!r || r->r_min != expect)
      bad.push_back("admissible_r(beta=" + to_string(beta) + ", eta=" + to_string(eta) + ")");
  };
  check_transfer({1, 2, 1, three4, five6});
  check_r(three4, five6, five6);
  check_transfer({1, 1, 1, three4, three4});
  check_r(three5, three4, three4);
  check_transfer({0, 0, 0, half, half});
  check_r(half, half, half);
  check_transfer({1, 1, Rational(15, 16), three4, three4});
  if (!bad.empty()) {
    std::string d;
    for (const auto& s : bad) d += s + "; ";
    return fail(d);
  }
  return pass("(1,2,1)->(3/4,5/6), r>5/6; beta=3/5,eta=3/4 -> r>3/4; (0,0,0)->(1/2,1/2), r>1/2; "
              "eta''=15/16 keeps eta=3/4");
}

Verdict euler_factors(const AcceptanceContext& ctx) {
  if (ctx.limit < 100) return skip("limit below 100");
  const DirichletData data(ctx.eig, ctx.arith);
  const std::complex<double> s(2.0, 0.0);
  double worst = 0.0;
  std::uint32_t worst_p = 0;
  for (std::uint32_t p : primes_up_to(100)) {
    const auto fc = solve_local_factor(data, p, s, max_depth(data, p));
    const double scaled = fc.u_deviation() * p * p;
    if (scaled > worst) {
      worst = scaled;
      worst_p = p;
    }
  }
  const auto prod = euler_product_check(data, 100, 2.0);
  const std::string d = "max p^2 |U_p(2)-1| = " + fmt(worst, 4) + " at p=" + std::to_string(worst_p) +
                        " (limit 10); Euler product " + fmt(prod.product, 10) + ".." + fmt(prod.product_upper, 10) +
                        " vs series " + fmt(prod.series, 10) + " +- " + fmt(prod.series_tail, 3);
  return worst <= 10.0 && prod.consistent() ? pass(d) : fail(d);
}

Verdict perron(const AcceptanceContext& ctx) {
  if (ctx.limit < 51) return skip("limit does not cover X = 50.5");
  const DirichletData data(ctx.eig, ctx.arith);
  std::vector<std::string> parts;
  bool ok = true;
  for (SumKind kind : {SumKind::S1, SumKind::S2}) {
    const auto lo = perron_check(data, kind, 50.5, 200.0, 1.25);
    const auto hi = perron_check(data, kind, 50.5, 800.0, 1.25);
    const double cap = 0.5 * std::fabs(lo.direct);
    const bool good = hi.discrepancy < lo.discrepancy && lo.discrepancy <= cap && hi.discrepancy <= cap;
    ok = ok && good;
    parts.push_back(std::string(kind == SumKind::S1 ? "S1" : "S2") + ": direct " + fmt(lo.direct, 6) +
                    ", |err| T=200 " + fmt(lo.discrepancy, 3) + ", T=800 " + fmt(hi.discrepancy, 3) +
                    (good ? "" : " (not met)"));
  }
  const std::string detail = parts[0] + "; " + parts[1];
  return ok ? pass(detail) : fail(detail);
}

Verdict landau(const AcceptanceContext& ctx) {
  const std::uint64_t x = std::min<std::uint64_t>(1'000'000, ctx.limit);
  if (x < 10'000) return skip("X below 10^4; asymptotic density not yet meaningful");
  const double k = landau_ramanujan_constant();
  const double ratio = static_cast<double>(representable_count(ctx.arith, x)) *
                       std::sqrt(std::log(static_cast<double>(x))) / static_cast<double>(x);
  const double rel = std::fabs(ratio - k) / k;
  const std::string d = "count*sqrt(log X)/X = " + fmt(ratio, 6) + " at X=" + std::to_string(x) + " vs K = " +
                        fmt(k, 9) + " (" + fmt(100 * rel, 3) + "% off, limit 10%)";
  return rel <= 0.10 ? pass(d) : fail(d);
}

}  // namespace

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "PASS";
    case Outcome::Fail: return "FAIL";
    case Outcome::Skip: return "SKIP";
  }
  return "?";
}

AcceptanceContext make_acceptance_context(std::uint64_t limit) {
  return {limit, build_delta_table(limit), sieve_arithmetic(limit)};
}

EigenformTable truncated(const EigenformTable& t, std::uint64_t limit) {
  if (limit > t.limit) throw Error(ErrorCode::OutOfRange, "cannot extend a table by truncation");
  EigenformTable out;
  out.weight = t.weight;
  out.limit = limit;
  out.exact.assign(t.exact.begin(), t.exact.begin() + limit + 1);
  out.normalized.assign(t.normalized.begin(), t.normalized.begin() + limit + 1);
  return out;
}

ArithmeticTables truncated(const ArithmeticTables& t, std::uint64_t limit) {
  if (limit > t.limit) throw Error(ErrorCode::OutOfRange, "cannot extend a table by truncation");
  ArithmeticTables out;
  out.limit = limit;
  out.r2.assign(t.r2.begin(), t.r2.begin() + limit + 1);
  out.chi4.assign(t.chi4.begin(), t.chi4.begin() + limit + 1);
  out.mu.assign(t.mu.begin(), t.mu.begin() + limit + 1);
  out.divisors.assign(t.divisors.begin(), t.divisors.begin() + limit + 1);
  return out;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceContext& ctx) {
  std::vector<CriterionResult> results;
  auto run = [&](int id, std::string name, double budget_seconds, const std::function<Verdict()>& body) {
    CriterionResult r;
    r.id = id;
    r.name = std::move(name);
    const auto start = Clock::now();
    Verdict v;
    try {
      v = body();
    } catch (const std::exception& e) {
      v = fail(std::string("exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (v.outcome == Outcome::Pass && budget_seconds > 0 && r.seconds > budget_seconds) {
      v.outcome = Outcome::Fail;
      v.detail += " [runtime " + fmt(r.seconds, 3) + " s exceeds " + fmt(budget_seconds) + " s]";
    }
    r.outcome = v.outcome;
    r.detail = std::move(v.detail);
    results.push_back(std::move(r));
  };

  const SignSequence seq(ctx.eig, ctx.arith);
  const SumsData sums = streamed(ctx);

  run(1, "coefficient oracle", 1.0, coefficient_oracle);
  run(2, "multiplicativity and Hecke relations", 30.0, [&] { return multiplicativity(ctx); });
  run(3, "Deligne envelope", 0.0, [&] { return deligne(ctx); });
  run(4, "twisted Moebius round trip", 0.0, [&] { return mobius_round_trip(ctx); });
  run(5, "sign-change density on [X, 2X]", 60.0, [&] { return dyadic_density(ctx, seq); });
  run(6, "window guarantee r = 0.76", 0.0, [&] { return window_guarantee(ctx, seq); });
  run(7, "S1 cancellation exponent", 0.0, [&] { return s1_cancellation(ctx, sums); });
  run(8, "S2 linearity", 0.0, [&] { return s2_linearity(ctx, sums); });
  run(9, "exponent calculators", 0.0, exponent_calculators);
  run(10, "Euler-factor decomposition", 60.0, [&] { return euler_factors(ctx); });
  run(11, "truncated Perron cross-check", 120.0, [&] { return perron(ctx); });
  run(12, "Landau density", 0.0, [&] { return landau(ctx); });
  return results;
}

bool print_results(std::ostream& os, const std::vector<CriterionResult>& results) {
  bool ok = true;
  for (const auto& r : results) {
    os << '[' << to_string(r.outcome) << "] " << r.id << ". " << r.name << ": " << r.detail << " ("
       << fmt(r.seconds, 3) << " s)\n";
    ok = ok && r.outcome != Outcome::Fail;
  }
  return ok;
}

}  // namespace signflux
