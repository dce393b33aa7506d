// Acceptance run at a fixed table size; one line per criterion.
#include <cstdlib>
#include <iostream>
#include <string>

#include "signflux/acceptance.hpp"

int main(int argc, char** argv) {
  std::uint64_t limit = 1'000'000;
  if (argc > 1) limit = std::stoull(argv[1]);
  const auto ctx = signflux::make_acceptance_context(limit);
  const auto results = signflux::run_acceptance(ctx);
  return signflux::print_results(std::cout, results) ? EXIT_SUCCESS : EXIT_FAILURE;
}
