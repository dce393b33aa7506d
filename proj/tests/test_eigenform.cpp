#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <iterator>
#include <numeric>

#include "signflux/eigenform.hpp"
#include "signflux/error.hpp"
#include "signflux/oracles.hpp"
#include "signflux/primes.hpp"

using namespace signflux;

TEST_SUITE("eigenform") {

TEST_CASE("Delta matches the naive product expansion") {
  const auto oracle = oracle::delta_by_expansion(300);
  const auto t = build_delta_table(300);
  for (std::uint64_t n = 1; n <= 300; ++n) CHECK(oracle::BigInt(to_string(t.exact[n])) == oracle[n]);
}

TEST_CASE("first coefficients of Delta") {
  const auto t = build_delta_table(10);
  CHECK(t.exact[1] == 1);
  CHECK(t.exact[2] == -24);
  CHECK(t.exact[3] == 252);
  CHECK(t.exact[4] == -1472);
  CHECK(t.exact[5] == 4830);
  CHECK(t.exact[10] == -115920);
  CHECK(t.A(1) == 1.0);
}

TEST_CASE("multi-modular build agrees with the checked serial reference") {
  for (std::uint64_t n : {1ull, 2ull, 17ull, 1000ull, 20000ull}) {
    const auto fast = build_delta_table(n);
    const auto ref = build_delta_table_reference(n);
    CHECK(fast.exact == ref.exact);
  }
}

TEST_CASE("Hecke recursion at prime powers") {
  const auto t = build_delta_table(5000);
  for (std::uint32_t p : primes_up_to(70)) {
    i128 pk = 1;
    for (int i = 0; i < 11; ++i) pk *= p;
    i128 prev = 1, cur = t.exact[p];
    for (std::uint64_t q = p; q * p <= 5000; q *= p) {
      CHECK(t.exact[q * p] == t.exact[p] * cur - pk * prev);
      prev = cur;
      cur = t.exact[q * p];
    }
  }
}

TEST_CASE("Hecke extension from prime seeds reproduces Delta") {
  const auto t = build_delta_table(2000);
  std::map<std::uint64_t, i128> seeds;
  for (std::uint32_t p : primes_up_to(2000)) seeds[p] = t.exact[p];
  const auto ext = build_by_hecke_extension(seeds, 12, 2000);
  CHECK(ext.exact == t.exact);
  seeds.erase(1999);
  CHECK_THROWS_AS(build_by_hecke_extension(seeds, 12, 2000), Error);
}

TEST_CASE("weight 16 form is a normalized Hecke eigenform") {
  const auto t = build_weight16_table(500);
  CHECK(t.weight == 16);
  CHECK(t.exact[1] == 1);
  CHECK(t.exact[2] == 216);  // E4 * Delta: 240 - 24
  for (std::uint64_t m = 2; m < 23; ++m)
    for (std::uint64_t n = m + 1; m * n <= 500; ++n)
      if (std::gcd(m, n) == 1) CHECK(t.exact[m * n] == t.exact[m] * t.exact[n]);
}

TEST_CASE("limit validation") {
  CHECK(certified_limit(12) == (1u << 21) - 1);
  try {
    build_delta_table(0);
    FAIL("expected InvalidLimit");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidLimit);
  }
  try {
    build_delta_table(1'000'000'000'000ull);
    FAIL("expected OverflowRisk");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OverflowRisk);
  }
}

TEST_CASE("normalized values are consistent with the exact integers") {
  const auto t = build_delta_table(1000);
  for (std::uint64_t n : {1ull, 2ull, 97ull, 1000ull}) {
    const double expect = static_cast<double>(t.exact[n]) / std::pow(static_cast<double>(n), 5.5);
    CHECK(t.A(n) == doctest::Approx(expect).epsilon(1e-13));
  }
}

TEST_CASE("cache round trip and byte-identical rebuild") {
  const auto dir = std::filesystem::temp_directory_path();
  const auto p1 = dir / "signflux_test_a.cache";
  const auto p2 = dir / "signflux_test_b.cache";
  write_cache(build_delta_table(4096), p1);
  write_cache(build_delta_table(4096), p2);
  CHECK(std::filesystem::file_size(p1) == 20 + 16 * 4096);
  std::ifstream a(p1, std::ios::binary), b(p2, std::ios::binary);
  const std::string sa{std::istreambuf_iterator<char>(a), {}}, sb{std::istreambuf_iterator<char>(b), {}};
  CHECK(sa == sb);
  const auto back = read_cache(p1);
  CHECK(back.limit == 4096);
  CHECK(back.weight == 12);
  CHECK(back.exact == build_delta_table(4096).exact);
  CHECK(back.A(7) == build_delta_table(7).A(7));

  std::ofstream(p2, std::ios::binary) << sa.substr(0, sa.size() - 3);
  CHECK_THROWS_AS(read_cache(p2), Error);
  std::filesystem::remove(p1);
  std::filesystem::remove(p2);
}

}
