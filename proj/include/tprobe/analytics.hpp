#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "tprobe/distributions.hpp"
#include "tprobe/policies.hpp"

namespace tprobe {

/// Number of boxes, or the n -> infinity limit. In the limit every
/// (1 - a/n)^n becomes e^{-a} and the top interval I_0 is unbounded.
class Horizon {
 public:
  static Horizon finite(long long n);
  static Horizon limit() noexcept { return Horizon{}; }

  bool is_limit() const noexcept { return !n_.has_value(); }
  /// Box count; throws for the limit horizon.
  long long n() const;
  /// Upper end of the alpha domain: n, or +infinity.
  double alpha_max() const noexcept;

  /// (1 - a/n)^n, or e^{-a}.
  double survival(double a) const noexcept;
  /// G_m(a) = 1 - survival(a), computed without cancellation.
  double max_ccdf(double a) const noexcept;
  /// Divided difference (survival(b) - survival(a)) / (b - a), exact at a == b.
  double slope(double a, double b) const noexcept;
  /// Divided difference of survival over the given nodes (strictly
  /// decreasing, or with adjacent repeats handled by `slope`).
  double divided_difference(std::span<const double> nodes) const;

 private:
  Horizon() = default;
  explicit Horizon(long long n) : n_(n) {}
  std::optional<long long> n_;
};

/// Pr[exactly i positive tests], i = 0..k.
struct PositiveCountDist {
  std::vector<double> probs;
  double at_least_one() const noexcept;
};

/// Exactly one positive under the k = 2 policy (alpha1, alpha2); alpha2 may be 0.
double prob_e10(double alpha1, double alpha2, const Horizon& h);
/// Exactly two positives under the k = 3 policy; alpha3 may be 0.
/// Throws DegenerateParameters when any two parameters are within 1e-10.
double prob_e110(double alpha1, double alpha2, double alpha3, const Horizon& h);

/// Closed form for every i: (prod_{j<=i} alpha_j) * (-1)^i * survival[alpha_1..alpha_{i+1}],
/// with a trailing node 0 for the absorbing count k.
PositiveCountDist positive_counts(const QuantilePolicy& policy, const Horizon& h);

/// Forward recursion over boxes on the positive-count chain, O(n k).
PositiveCountDist positive_counts_exact(const QuantilePolicy& policy, long long n);

/// Piecewise ratio c(alpha) = A(alpha) / G_m(alpha) for a quantile policy.
///
/// Pieces follow I_j = [alpha_{j+1}, alpha_j] with alpha_0 = n (or infinity)
/// and alpha_{k+1} = 0; a breakpoint belongs to the piece below it.
class RatioCurve {
 public:
  RatioCurve(QuantilePolicy policy, Horizon horizon);

  const QuantilePolicy& policy() const noexcept { return policy_; }
  const Horizon& horizon() const noexcept { return horizon_; }
  const PositiveCountDist& counts() const noexcept { return counts_; }

  /// A(alpha) = Pr[X_sigma >= t] for the threshold t at quantile alpha/n.
  double ccdf(double alpha) const;
  double max_ccdf(double alpha) const { return horizon_.max_ccdf(alpha); }
  /// c(alpha); alpha == 0 returns the right limit.
  double operator()(double alpha) const;

  std::size_t piece(double alpha) const noexcept;
  /// [lo, hi] of piece j (hi may be +infinity).
  std::pair<double, double> piece_bounds(std::size_t j) const;
  std::size_t piece_count() const noexcept { return policy_.k() + 1; }

 private:
  QuantilePolicy policy_;
  Horizon horizon_;
  PositiveCountDist counts_;
  double slope_at_zero_;  // sum_i p_i / alpha_i
};

/// Equivalent to RatioCurve(...).ccdf(alpha).
double algo_ccdf(const QuantilePolicy& policy, const Horizon& h, double alpha);

struct PieceMin {
  std::size_t piece;
  double lo;
  double hi;
  double value;
  double argmin;  // +infinity for the limit tail infimum
};

struct MinRatio {
  double c_star;
  double alpha_star;
  std::vector<PieceMin> pieces;  // ordered I_k, ..., I_0
};

/// Minimum of the ratio curve: grid of 1000 points per piece refined by
/// golden-section search to 1e-8. In the limit, I_0 reports the infimum
/// 1 - e^{-alpha_1}; for finite n I_0 is searched on a log grid up to n.
MinRatio min_ratio(const QuantilePolicy& policy, const Horizon& h);

struct OptimizeOptions {
  std::size_t starts = 20;
  std::uint64_t seed = 1;
  double initial_step = 0.5;
  double min_step = 1e-6;
};

struct OptimizeResult {
  QuantilePolicy policy;
  MinRatio ratio;
  std::vector<double> start_values;  // best c_star reached from each start
};

/// Maximin parameter search in the n -> infinity limit by multi-start
/// pattern search on log(alpha). Requires 1 <= k <= 5.
OptimizeResult optimize_alphas(std::size_t k, const OptimizeOptions& options = {});

struct DominanceReport {
  bool holds;
  double worst_alpha;
  double worst_ratio;
  std::optional<double> first_violation;
};

/// Checks A(alpha) >= c G_m(alpha) on a log-spaced grid over (0, n].
DominanceReport check_dominance(const QuantilePolicy& policy, long long n, double c, std::size_t grid_size);

/// Exact E[X_sigma] of the quantile policy under probability testing.
double exact_policy_value(const QuantilePolicy& policy, const DiscreteDistribution& dist, long long n);

}  // namespace tprobe
