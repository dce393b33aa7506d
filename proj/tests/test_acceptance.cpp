#include <doctest.h>

#include <sstream>

#include "signflux/acceptance.hpp"

using namespace signflux;

namespace {

Outcome outcome_of(const std::vector<CriterionResult>& results, int id) {
  for (const auto& r : results)
    if (r.id == id) return r.outcome;
  FAIL("missing criterion");
  return Outcome::Fail;
}

}  // namespace

TEST_SUITE("acceptance") {

TEST_CASE("tiny limit: regression criteria skip rather than fail") {
  const auto results = run_acceptance(make_acceptance_context(10));
  CHECK(results.size() == 12);
  for (int id : {5, 6, 7, 8, 10, 11, 12}) CHECK(outcome_of(results, id) == Outcome::Skip);
  for (int id : {1, 2, 3, 4, 9}) CHECK(outcome_of(results, id) == Outcome::Pass);
  std::ostringstream os;
  CHECK(print_results(os, results));
  CHECK(os.str().find("[SKIP] 7.") != std::string::npos);
}

TEST_CASE("a sign-flipped coefficient breaks multiplicativity") {
  auto ctx = make_acceptance_context(2000);
  ctx.eig.exact[6] = -ctx.eig.exact[6];
  ctx.eig.normalized[6] = -ctx.eig.normalized[6];
  const auto results = run_acceptance(ctx);
  CHECK(outcome_of(results, 2) == Outcome::Fail);
  std::ostringstream os;
  CHECK_FALSE(print_results(os, results));
}

TEST_CASE("truncation keeps a prefix") {
  const auto ctx = make_acceptance_context(500);
  const auto e = truncated(ctx.eig, 100);
  const auto a = truncated(ctx.arith, 100);
  CHECK(e.limit == 100);
  CHECK(e.exact.size() == 101);
  CHECK(a.r2.size() == 101);
  CHECK(e.exact[97] == ctx.eig.exact[97]);
}

}
