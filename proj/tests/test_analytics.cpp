#include <doctest.h>

#include <cmath>
#include <vector>

#include "tprobe/analytics.hpp"
#include "tprobe/error.hpp"

using namespace tprobe;

namespace {

QuantilePolicy random_policy(Rng& rng, std::size_t k, double top) {
  std::vector<double> a(k);
  double hi = top;
  for (std::size_t j = 0; j < k; ++j) {
    hi *= 0.05 + 0.9 * rng.uniform();
    a[j] = hi;
  }
  return QuantilePolicy(a);
}

}  // namespace

TEST_CASE("horizon survival and slopes") {
  const Horizon lim = Horizon::limit();
  const Horizon fin = Horizon::finite(100);
  CHECK(lim.is_limit());
  CHECK_THROWS_AS((void)lim.n(), BadParameter);
  CHECK_THROWS_AS(Horizon::finite(0), BadParameter);
  CHECK(fin.n() == 100);
  CHECK(lim.survival(1.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-15));
  CHECK(fin.survival(1.0) == doctest::Approx(std::pow(0.99, 100)).epsilon(1e-14));
  CHECK(fin.max_ccdf(100.0) == 1.0);
  CHECK(lim.max_ccdf(1e-12) == doctest::Approx(1e-12).epsilon(1e-6));

  for (const Horizon& h : {lim, fin}) {
    CHECK(h.slope(0.5, 2.0) == doctest::Approx((h.survival(2.0) - h.survival(0.5)) / 1.5).epsilon(1e-13));
    CHECK(h.slope(2.0, 0.5) == h.slope(0.5, 2.0));
    // Confluent limit equals the derivative.
    const double d = (h.survival(0.7 + 1e-6) - h.survival(0.7 - 1e-6)) / 2e-6;
    CHECK(h.slope(0.7, 0.7) == doctest::Approx(d).epsilon(1e-8));
    CHECK(h.slope(0.7, 0.7 + 1e-13) == doctest::Approx(h.slope(0.7, 0.7)).epsilon(1e-10));
  }
  const double confluent[] = {1.0, 1.0, 0.5};
  CHECK(lim.divided_difference(confluent) == doctest::Approx((lim.slope(1.0, 1.0) - lim.slope(1.0, 0.5)) / 0.5));
  const double triple[] = {1.0, 1.0, 1.0};
  CHECK_THROWS_AS((void)lim.divided_difference(triple), DegenerateParameters);
}

TEST_CASE("closed-form positive counts match 40-digit references") {
  const PositiveCountDist c2 = positive_counts(reference_policy(2), Horizon::finite(100));
  CHECK(c2.probs[0] == doctest::Approx(0.15723917502883094).epsilon(1e-13));
  CHECK(c2.probs[1] == doctest::Approx(0.67223956472266605).epsilon(1e-13));
  CHECK(c2.probs[2] == doctest::Approx(0.17052126024850301).epsilon(1e-13));
  const PositiveCountDist c3 = positive_counts(reference_policy(3), Horizon::finite(1000));
  CHECK(c3.probs[0] == doctest::Approx(0.13039216688166438).epsilon(1e-12));
  CHECK(c3.probs[1] == doctest::Approx(0.62864648933294841).epsilon(1e-12));
  CHECK(c3.probs[2] == doctest::Approx(0.23553063223009503).epsilon(1e-12));
  CHECK(c3.probs[3] == doctest::Approx(0.0054307115552921706).epsilon(1e-10));
}

TEST_CASE("named event probabilities") {
  const Horizon h = Horizon::finite(100);
  const PositiveCountDist c2 = positive_counts(reference_policy(2), h);
  CHECK(prob_e10(1.83298, 0.35932, h) == doctest::Approx(c2.probs[1]).epsilon(1e-14));
  // With alpha2 = 0 the first positive is absorbing: Pr = 1 - survival(alpha1).
  CHECK(prob_e10(1.83298, 0.0, Horizon::limit()) == doctest::Approx(1 - std::exp(-1.83298)).epsilon(1e-14));
  const PositiveCountDist c3 = positive_counts(reference_policy(3), Horizon::finite(1000));
  CHECK(prob_e110(2.035135, 0.5063, 0.05701, Horizon::finite(1000)) == doctest::Approx(c3.probs[2]).epsilon(1e-12));
  CHECK_THROWS_AS((void)prob_e110(1.0, 1.0 - 1e-12, 0.5, h), DegenerateParameters);
  CHECK_THROWS_AS((void)prob_e10(0.5, 1.0, h), BadParameter);
  CHECK_THROWS_AS((void)prob_e10(200.0, 1.0, h), BadParameter);
}

TEST_CASE("closed form agrees with the per-box recursion on random policies") {
  Rng rng(314);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 1 + static_cast<std::size_t>(rng.uniform() * 4);
    const long long n = 10 + static_cast<long long>(rng.uniform() * 20000);
    const QuantilePolicy p = random_policy(rng, k, std::min(6.0, n * 0.5));
    const PositiveCountDist a = positive_counts(p, Horizon::finite(n));
    const PositiveCountDist b = positive_counts_exact(p, n);
    double total = 0.0;
    for (std::size_t i = 0; i <= k; ++i) {
      CHECK(a.probs[i] == doctest::Approx(b.probs[i]).epsilon(1e-9).scale(1.0));
      CHECK(a.probs[i] >= -1e-12);
      total += a.probs[i];
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("finite horizon converges to the limit") {
  const QuantilePolicy p = reference_policy(3);
  const PositiveCountDist lim = positive_counts(p, Horizon::limit());
  double prev_gap = 1.0;
  for (long long n : {100LL, 1000LL, 10000LL, 100000LL}) {
    const PositiveCountDist fin = positive_counts(p, Horizon::finite(n));
    double gap = 0.0;
    for (std::size_t i = 0; i <= 3; ++i) gap = std::max(gap, std::abs(fin.probs[i] - lim.probs[i]));
    CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(prev_gap < 1e-4);
}

TEST_CASE("ratio curve shape") {
  for (std::size_t k = 1; k <= 4; ++k) {
    const RatioCurve curve(reference_policy(k), Horizon::limit());
    CHECK(curve.piece_count() == k + 1);
    CHECK(curve.piece(1e-9) == k);
    CHECK(curve.piece(100.0) == 0);
    CHECK(curve.piece(curve.policy().alpha(0)) == 1);
    double prev = 0.0;
    for (int i = 1; i <= 4000; ++i) {
      const double a = 6.0 * i / 4000.0;
      const double v = curve.ccdf(a);
      CHECK(v >= prev - 1e-15);
      CHECK(v <= curve.max_ccdf(a) + 1e-15);
      prev = v;
    }
    CHECK(curve(1e-9) == doctest::Approx(curve(0.0)).epsilon(1e-7));
    // Continuity across each breakpoint.
    for (double a : curve.policy().alphas())
      CHECK(curve(a * (1 + 1e-12)) == doctest::Approx(curve(a * (1 - 1e-12))).epsilon(1e-9));
  }
}

TEST_CASE("algo_ccdf on the top piece") {
  const QuantilePolicy p = reference_policy(2);
  const Horizon h = Horizon::finite(50);
  const PositiveCountDist c = positive_counts(p, h);
  CHECK(algo_ccdf(p, h, 50.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(algo_ccdf(p, h, 10.0) == doctest::Approx(c.at_least_one() + c.probs[0] * (10.0 - 1.83298) / (50.0 - 1.83298)));
  CHECK(algo_ccdf(p, Horizon::limit(), 10.0) == doctest::Approx(c.at_least_one()).epsilon(0.01));
  CHECK(algo_ccdf(p, h, 0.0) == 0.0);
  CHECK_THROWS_AS(RatioCurve(p, Horizon::finite(1)), BadParameter);
}

TEST_CASE("minimum ratios for the published parameters") {
  const MinRatio k1 = min_ratio(reference_policy(1), Horizon::limit());
  CHECK(k1.c_star == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-9));

  const MinRatio k2 = min_ratio(reference_policy(2), Horizon::limit());
  REQUIRE(k2.pieces.size() == 3);
  CHECK(k2.pieces[0].piece == 2);
  CHECK(k2.pieces[0].value == doctest::Approx((1 - std::exp(-0.35932)) / 0.35932).epsilon(1e-12));
  CHECK(k2.pieces[1].value == doctest::Approx(0.8400569).epsilon(1e-7));
  CHECK(k2.pieces[1].argmin == doctest::Approx(0.832961).epsilon(1e-5));
  CHECK(k2.pieces[2].value == doctest::Approx(1 - std::exp(-1.83298)).epsilon(1e-12));
  CHECK(std::isinf(k2.pieces[2].argmin));

  const MinRatio k3 = min_ratio(reference_policy(3), Horizon::limit());
  REQUIRE(k3.pieces.size() == 4);
  CHECK(k3.pieces[0].value == doctest::Approx(0.8693380).epsilon(1e-6));
  CHECK(k3.pieces[1].value == doctest::Approx(0.8693454).epsilon(1e-6));
  CHECK(k3.pieces[1].argmin == doctest::Approx(0.1162634).epsilon(1e-4));
  CHECK(k3.pieces[2].value == doctest::Approx(0.8693365).epsilon(1e-6));
  CHECK(k3.pieces[2].argmin == doctest::Approx(1.0351330).epsilon(1e-4));
  CHECK(k3.pieces[3].value == doctest::Approx(0.8693371).epsilon(1e-6));
  CHECK(k3.c_star == doctest::Approx(0.8693365).epsilon(1e-6));
}

TEST_CASE("finite-n minimum is found on the bounded top piece") {
  const MinRatio fin = min_ratio(reference_policy(2), Horizon::finite(1000));
  REQUIRE(fin.pieces.size() == 3);
  CHECK(std::isfinite(fin.pieces[2].argmin));
  CHECK(fin.pieces[2].argmin <= 1000.0);
  CHECK(fin.c_star > 0.83);
  CHECK(fin.c_star < 0.85);
}

TEST_CASE("dominance check") {
  const DominanceReport ok = check_dominance(reference_policy(2), 100000, 0.84, 2000);
  CHECK(ok.holds);
  CHECK_FALSE(ok.first_violation.has_value());
  CHECK(ok.worst_ratio >= 0.84);
  const DominanceReport bad = check_dominance(reference_policy(2), 100000, 0.85, 2000);
  CHECK_FALSE(bad.holds);
  REQUIRE(bad.first_violation.has_value());
  CHECK_THROWS_AS(check_dominance(reference_policy(2), 1000, 0.8, 10), BadParameter);
}

TEST_CASE("exact policy value matches 40-digit references") {
  const QuantilePolicy p = reference_policy(3);
  CHECK(exact_policy_value(p, golden_nugget(0.5, 1000), 1000) == doctest::Approx(0.39247893630355978).epsilon(1e-13));
  CHECK(exact_policy_value(p, golden_nugget(1.0, 100), 100) == doctest::Approx(0.55111940199450384).epsilon(1e-13));
  CHECK(exact_policy_value(p, golden_nugget(0.05, 100), 100) == doctest::Approx(0.043475586598717745).epsilon(1e-13));
}

TEST_CASE("optimizer recovers the published parameters") {
  const OptimizeResult k1 = optimize_alphas(1);
  CHECK(k1.ratio.c_star == doctest::Approx(1 - std::exp(-1.0)).epsilon(1e-6));
  CHECK(k1.policy.alpha(0) == doctest::Approx(1.0).epsilon(1e-3));

  const OptimizeResult k2 = optimize_alphas(2);
  CHECK(k2.ratio.c_star >= 0.84005);
  CHECK(std::abs(k2.policy.alpha(0) - 1.83298) < 0.05);
  CHECK(std::abs(k2.policy.alpha(1) - 0.35932) < 0.05);
  CHECK(k2.start_values.size() == 20);

  const OptimizeResult k4 = optimize_alphas(4);
  CHECK(k4.ratio.c_star >= 0.8695);

  CHECK_THROWS_AS(optimize_alphas(0), BadParameter);
  CHECK_THROWS_AS(optimize_alphas(6), BadParameter);
}

TEST_CASE("a fourth threshold improves on three by less than 3e-4") {
  const double k3 = optimize_alphas(3).ratio.c_star;
  const double k4 = optimize_alphas(4).ratio.c_star;
  CHECK(k3 >= 0.86933);
  CHECK(k4 - k3 < 3e-4);
}

TEST_CASE("optimizer is deterministic for a seed") {
  OptimizeOptions o;
  o.starts = 4;
  o.seed = 17;
  const OptimizeResult a = optimize_alphas(2, o);
  const OptimizeResult b = optimize_alphas(2, o);
  CHECK(a.ratio.c_star == b.ratio.c_star);
  CHECK(a.start_values == b.start_values);
}

TEST_CASE("hand-enumerable positive counts") {
  // n = 2, alpha = (1, 0.5): quantiles 0.5 then 0.25 after a positive.
  const QuantilePolicy p({1.0, 0.5});
  const double expected[] = {0.25, 0.625, 0.125};
  const PositiveCountDist a = positive_counts(p, Horizon::finite(2));
  const PositiveCountDist b = positive_counts_exact(p, 2);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(a.probs[i] == doctest::Approx(expected[i]).epsilon(1e-15));
    CHECK(b.probs[i] == doctest::Approx(expected[i]).epsilon(1e-15));
  }
  for (long long n : {2LL, 10LL, 1000LL}) {
    const PositiveCountDist c = positive_counts(QuantilePolicy({1.0}), Horizon::finite(n));
    const double miss = std::pow(1.0 - 1.0 / n, static_cast<double>(n));
    CHECK(c.probs[0] == doctest::Approx(miss).epsilon(1e-14));
    CHECK(c.probs[1] == doctest::Approx(1 - miss).epsilon(1e-14));
  }
}

TEST_CASE("event probabilities at large n and in degenerate corners") {
  const long long n = 1000000;
  const Horizon h = Horizon::finite(n);
  CHECK(std::abs(prob_e10(1.83298, 0.35932, h) - positive_counts_exact(reference_policy(2), n).probs[1]) <= 1e-9);
  CHECK(std::abs(prob_e110(2.035135, 0.5063, 0.05701, h) - positive_counts_exact(reference_policy(3), n).probs[2]) <=
        1e-9);

  // Equal quantiles: n q (1 - q)^{n - 1}.
  const Horizon h100 = Horizon::finite(100);
  const double q = 0.01;
  CHECK(prob_e10(1.0, 1.0, h100) == doctest::Approx(100 * q * std::pow(1 - q, 99)).epsilon(1e-12));
  CHECK(prob_e10(1.0 + 1e-8, 1.0, h100) == doctest::Approx(prob_e10(1.0, 1.0, h100)).epsilon(1e-7));

  // A zero third parameter leaves the k = 2 policy's two-positive event.
  const PositiveCountDist c2 = positive_counts(reference_policy(2), h100);
  CHECK(prob_e110(1.83298, 0.35932, 0.0, h100) == doctest::Approx(c2.probs[2]).epsilon(1e-12));
  CHECK(prob_e110(1.83298, 0.35932, 0.0, h100) ==
        doctest::Approx(c2.at_least_one() - prob_e10(1.83298, 0.35932, h100)).epsilon(1e-12));
}

TEST_CASE("curve anchors") {
  const RatioCurve lim(reference_policy(2), Horizon::limit());
  CHECK(lim(0.35932) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(algo_ccdf(reference_policy(3), Horizon::finite(50), 50.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(check_dominance(reference_policy(1), 1000, 0.0, 100).holds);
}

TEST_CASE("exact policy value by hand") {
  // {1 w.p. 0.6, 3 w.p. 0.4}, n = 2, alpha = 1: positive mean 2.6, negative mean 1.
  const DiscreteDistribution d({1.0, 3.0}, {0.6, 0.4});
  CHECK(exact_policy_value(QuantilePolicy({1.0}), d, 2) == doctest::Approx(2.2).epsilon(1e-14));
  const DiscreteDistribution atom({6.0}, {1.0});
  CHECK(exact_policy_value(reference_policy(3), atom, 40) == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("nugget value equals the policy ccdf at the nugget quantile") {
  const QuantilePolicy p = reference_policy(3);
  for (double a : {0.01, 0.05701, 0.3, 1.0, 2.5, 40.0}) {
    const Horizon h = Horizon::finite(100);
    CHECK(exact_policy_value(p, golden_nugget(a, 100), 100) == doctest::Approx(algo_ccdf(p, h, a)).epsilon(1e-12));
  }
}
