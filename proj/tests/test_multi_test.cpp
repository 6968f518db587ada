#include <doctest.h>

#include <cmath>

#include "tprobe/error.hpp"
#include "tprobe/multi_test.hpp"

using namespace tprobe;

TEST_CASE("grid constants use exact integer roots") {
  const MultiTestGrid g8(8);
  CHECK(g8.dropped == 4);
  CHECK(g8.max_type == 16);
  CHECK(g8.search_cost == 5);
  CHECK(g8.tested() == 4);

  const MultiTestGrid g(1000);
  CHECK(g.dropped == 100);
  CHECK(g.max_type == 10000);
  CHECK(g.search_cost == 14);
  CHECK(g.base_quantile == doctest::Approx(0.01));

  const MultiTestGrid g4(10000);
  CHECK(g4.dropped == 465);     // 464^3 < 10^8 <= 465^3
  CHECK(g4.max_type == 215443);  // 215443^3 <= 10^16 < 215444^3
  CHECK(g4.search_cost == 18);
  CHECK_THROWS_AS(MultiTestGrid(7), BadParameter);
}

TEST_CASE("thresholds are clamped at the top") {
  const MultiTestGrid g(1000);
  const ContinuousDistribution u = uniform01();
  CHECK(g.threshold(u, 0) == doctest::Approx(0.99));
  CHECK(g.threshold(u, 5000) == doctest::Approx(0.995));
  CHECK(g.threshold(u, g.max_type) == doctest::Approx(1.0));
}

TEST_CASE("budget") {
  Budget b(2);
  b.spend();
  b.spend();
  CHECK(b.remaining() == 0);
  CHECK_THROWS_AS(b.spend(), BadParameter);
  CHECK(b.used() == 2);
}

TEST_CASE("binary search agrees with the scan oracle") {
  const ContinuousDistribution u = uniform01();
  for (long long n : {8LL, 100LL, 1000LL}) {
    const MultiTestGrid g(n);
    Rng rng(static_cast<std::uint64_t>(n));
    for (int i = 0; i < 1000; ++i) {
      const double x = g.threshold(u, 0) + rng.uniform() * (1.0 - g.threshold(u, 0));
      std::uint64_t probes = 0;
      CHECK(search_type(x, u, g, &probes) == type_of(x, u, n));
      CHECK(probes <= g.search_cost);
    }
    // Exact grid points and the extremes.
    for (std::uint64_t j : {std::uint64_t{0}, std::uint64_t{1}, g.max_type / 2, g.max_type}) {
      const double x = g.threshold(u, j);
      CHECK(search_type(x, u, g) == type_of(x, u, n));
    }
    CHECK_THROWS_AS((void)type_of(0.0, u, n), BelowThreshold);
  }
}

TEST_CASE("runs stay within budget and pick sensibly") {
  const ContinuousDistribution u = uniform01();
  for (long long n : {8LL, 64LL, 500LL}) {
    for (std::uint64_t s = 0; s < 300; ++s) {
      Rng rng(s);
      const MultiTestResult r = run_multi_test(u, n, rng);
      CHECK(r.budget.used() <= r.budget.total());
      CHECK(r.budget.total() == static_cast<std::uint64_t>(n));
      CHECK(r.chosen < static_cast<std::size_t>(n));
      CHECK(r.chosen_value <= r.max_value);
      const MultiTestGrid g(n);
      for (const TypedBox& b : r.positives) {
        CHECK(b.index < g.tested());
        if (b.type) CHECK(b.search_tests <= g.search_cost);
      }
      // Without an abort, a maximum inside P with a unique top type is found.
      if (!r.aborted && r.argmax < g.tested() && r.max_value >= g.threshold(u, 0)) {
        std::size_t top = 0;
        std::uint64_t best = 0;
        for (const TypedBox& b : r.positives) {
          if (*b.type > best) {
            best = *b.type;
            top = 1;
          } else if (*b.type == best) {
            ++top;
          }
        }
        if (top == 1) CHECK(r.chosen == r.argmax);
      }
    }
  }
}

TEST_CASE("runs are reproducible") {
  const ContinuousDistribution u = uniform01();
  Rng a(9), b(9);
  const MultiTestResult x = run_multi_test(u, 1000, a);
  const MultiTestResult y = run_multi_test(u, 1000, b);
  CHECK(x.chosen == y.chosen);
  CHECK(x.budget.used() == y.budget.used());
}

TEST_CASE("type endpoints") {
  const ContinuousDistribution u = uniform01();
  const MultiTestGrid g(1000);
  CHECK(type_of(u.quantile(1.0 - 0.01), u, 1000) == 0);
  CHECK(type_of(1.0, u, 1000) == g.max_type);
  CHECK(type_of(5.0, u, 1000) == g.max_type);
}

TEST_CASE("empty and singleton candidate sets") {
  const ContinuousDistribution u = uniform01();
  int empty = 0, single = 0;
  for (std::uint64_t s = 0; s < 3000; ++s) {
    Rng rng(s);
    const MultiTestResult r = run_multi_test(u, 100, rng);
    if (r.positives.empty()) {
      ++empty;
      CHECK(r.chosen == 0);
    } else if (r.positives.size() == 1 && !r.aborted) {
      ++single;
      CHECK(r.chosen == r.positives.front().index);
    }
  }
  CHECK(empty > 0);
  CHECK(single > 0);
}
