#pragma once

// Finite-X acceptance criteria, shared by `signflux verify` and the
// acceptance test binary. Each criterion scales its ranges down to the table
// limit and reports SKIP when the limit is too small to say anything.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "signflux/arithmetic.hpp"
#include "signflux/eigenform.hpp"

namespace signflux {

enum class Outcome { Pass, Fail, Skip };

const char* to_string(Outcome o);

struct CriterionResult {
  int id = 0;
  std::string name;
  Outcome outcome = Outcome::Skip;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceContext {
  std::uint64_t limit = 0;
  EigenformTable eig;
  ArithmeticTables arith;
};

AcceptanceContext make_acceptance_context(std::uint64_t limit);

// Copies restricted to n <= limit.
EigenformTable truncated(const EigenformTable& t, std::uint64_t limit);
ArithmeticTables truncated(const ArithmeticTables& t, std::uint64_t limit);

std::vector<CriterionResult> run_acceptance(const AcceptanceContext& ctx);

// One "[PASS] 7 ..." line per criterion; returns true iff nothing failed.
bool print_results(std::ostream& os, const std::vector<CriterionResult>& results);

}  // namespace signflux
