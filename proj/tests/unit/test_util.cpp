#include "gedt/util.hpp"

#include <doctest.h>

#include <atomic>
#include <set>
#include <stdexcept>

using namespace gedt;

TEST_CASE("derived seeds are distinct along the hierarchy")
{
  std::set<std::uint64_t> seen;
  for (std::uint64_t g = 0; g < 50; ++g) {
    for (std::uint64_t s = 0; s < 50; ++s) {
      seen.insert(derive_seed(1, {kTagEvaluation, g, s}));
    }
  }
  CHECK(seen.size() == 2500);
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {2}) == derive_seed(1, 2));
  CHECK(derive_seed(7, {kTagRun, 0}) == derive_seed(7, {kTagRun, 0}));
}

TEST_CASE("format_double is shortest round-trip")
{
  CHECK(format_double(0.9) == "0.9");
  CHECK(format_double(0.0) == "0.0");
  CHECK(format_double(17.8) == "17.8");
  CHECK(format_double(-3.0) == "-3.0");
  CHECK(std::stod(format_double(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("parallel_for covers every index once and rethrows")
{
  std::vector<std::atomic<int>> hits(1000);
  parallel_for(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) {
    CHECK(h.load() == 1);
  }
  CHECK_THROWS_AS(parallel_for(100, 3,
                               [](std::size_t i) {
                                 if (i == 42) {
                                   throw std::runtime_error("x");
                                 }
                               }),
                  std::runtime_error);
  parallel_for(0, 4, [](std::size_t) { FAIL("no work expected"); });
}
