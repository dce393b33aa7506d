#include <doctest.h>

#include <random>
#include <vector>

#include "signflux/kernels.hpp"

using namespace signflux;

TEST_SUITE("kernels") {

TEST_CASE("sieves: parallel equals serial for several sizes and team sizes") {
  for (int threads : {1, 2, 3}) {
    kernels::set_thread_count(threads);
    for (std::size_t n : {1u, 2u, 100u, (1u << 16) + 7, 300001u}) {
      std::vector<std::int32_t> r_s(n), r_p(n);
      kernels::serial::r2_quarter(r_s);
      kernels::parallel::r2_quarter(r_p);
      CHECK(r_s == r_p);
      std::vector<std::uint32_t> d_s(n), d_p(n);
      kernels::serial::divisor_count(d_s);
      kernels::parallel::divisor_count(d_p);
      CHECK(d_s == d_p);
    }
  }
  kernels::set_thread_count(0);
}

TEST_CASE("delta coefficients: NTT route equals checked serial route") {
  for (std::size_t n : {1u, 5u, 64u, 4097u, 30000u}) CHECK(kernels::serial::delta_coefficients(n) == kernels::parallel::delta_coefficients(n));
}

TEST_CASE("prefix scan: bit-identical across thread counts, serial to rounding") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  std::vector<double> terms(200001);
  for (std::size_t i = 1; i < terms.size(); ++i) terms[i] = g(rng) + 0.3;
  const std::vector<std::uint64_t> probes{1, 10, 1000, 65536, 65537, 200000};
  const std::vector<std::uint64_t> bounds{1, 500, 70000, 150000, 200001};
  const auto ref = kernels::serial::prefix_scan(terms, probes, bounds, 0.3);
  kernels::set_thread_count(1);
  const auto one = kernels::parallel::prefix_scan(terms, probes, bounds, 0.3);
  for (std::size_t i = 0; i < ref.at.size(); ++i) CHECK(one.at[i] == doctest::Approx(ref.at[i]).epsilon(1e-12));
  for (std::size_t i = 0; i < ref.segment_max.size(); ++i)
    CHECK(one.segment_max[i] == doctest::Approx(ref.segment_max[i]).epsilon(1e-12));
  for (int threads : {2, 4}) {
    kernels::set_thread_count(threads);
    const auto par = kernels::parallel::prefix_scan(terms, probes, bounds, 0.3);
    CHECK(par.at == one.at);
    CHECK(par.segment_max == one.segment_max);
  }
  kernels::set_thread_count(0);
}

TEST_CASE("sign changes: zeros are skipped and chunk seams are handled") {
  std::vector<std::int8_t> s{0, 1, 0, 0, -1, -1, 0, 1, 1, 0};
  const auto run = kernels::serial::sign_changes(s, 1, 9);
  REQUIRE(run.changes.size() == 2);
  CHECK(run.changes[0] == std::pair<std::uint64_t, std::uint64_t>{1, 4});
  CHECK(run.changes[1] == std::pair<std::uint64_t, std::uint64_t>{5, 7});
  CHECK(run.first_index == 1);
  CHECK(run.last_index == 8);

  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> pick(-1, 1);
  std::vector<std::int8_t> big(500000);
  for (auto& v : big) v = static_cast<std::int8_t>(pick(rng));
  const auto a = kernels::serial::sign_changes(big, 3, 499999);
  for (int threads : {1, 3}) {
    kernels::set_thread_count(threads);
    const auto b = kernels::parallel::sign_changes(big, 3, 499999);
    CHECK(a.changes == b.changes);
    CHECK(a.first_index == b.first_index);
    CHECK(a.last_index == b.last_index);
  }
  kernels::set_thread_count(0);
}

}
