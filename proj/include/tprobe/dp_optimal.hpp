#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <json.hpp>

#include "tprobe/distributions.hpp"
#include "tprobe/policies.hpp"
#include "tprobe/rng.hpp"

namespace tprobe {

/// Best carried option after some boxes: nothing yet, or the box tested at
/// support index k with the given sign. Its value is E[X | X >= v_k] or
/// E[X | X < v_k]. Encoded as a dense index: 0 = initial, 1 + 2k = positive,
/// 2 + 2k = negative.
struct DPState {
  enum class Kind : std::uint8_t { initial, positive, negative };
  Kind kind = Kind::initial;
  std::size_t test = 0;

  static DPState initial() noexcept { return {}; }
  static DPState positive(std::size_t k) noexcept { return {Kind::positive, k}; }
  static DPState negative(std::size_t k) noexcept { return {Kind::negative, k}; }
  static DPState from_index(std::size_t index) noexcept;
  std::size_t index() const noexcept;
  bool operator==(const DPState&) const = default;
};

/// Optimal single-test policy for a discrete distribution and n boxes.
class DPTable {
 public:
  DPTable(DiscreteDistribution dist, long long n);

  const DiscreteDistribution& distribution() const noexcept { return dist_; }
  long long boxes() const noexcept { return n_; }
  std::size_t state_count() const noexcept { return 2 * dist_.size() + 1; }

  /// Conditional expectation carried by a state (NaN for impossible ones).
  double state_value(DPState s) const { return state_values_.at(s.index()); }
  bool reachable(DPState s) const;

  /// Support index to test box i (0-based) in state s.
  std::size_t best_test(std::size_t box, DPState s) const;
  /// Expected final reward of playing optimally on boxes box..n-1 from s;
  /// box == n gives the terminal value.
  double cont_value(std::size_t box, DPState s) const;

  /// Optimal E[X_sigma].
  double value() const { return cont_value(0, DPState::initial()); }

  /// The state kept after a test outcome: the better of the carried state
  /// and the candidate, keeping the carried state on ties.
  DPState merge(DPState carried, DPState candidate) const;

 private:
  friend DPTable solve(const DiscreteDistribution& dist, long long n);

  DiscreteDistribution dist_;
  long long n_;
  std::vector<double> state_values_;
  std::vector<std::int32_t> best_test_;  // n x states, -1 where unreachable
  std::vector<double> cont_;             // (n + 1) x states
};

/// Backward induction over (box, state), O(n m^2).
DPTable solve(const DiscreteDistribution& dist, long long n);

/// Optimal value divided by E[max].
double ratio(const DiscreteDistribution& dist, long long n);

/// Exhaustive search over deterministic adaptive test trees with leaf
/// values from enumeration of all m^n realizations. Throws TooLarge when
/// (2m)^n > 1e6.
double brute_force_optimal(const DiscreteDistribution& dist, long long n);

/// Plays the tabulated policy; the pick is the box that set the final state.
PlayResult simulate_dp_policy(const DPTable& table, Rng& rng, bool record_history = true);

struct DominanceMargin {
  double policy_value;
  double margin;  // solve value - policy value
};

struct RandomizedDominanceReport {
  double optimal_value;
  std::vector<DominanceMargin> margins;
  double min_margin;
  bool dominated;  // every margin >= -1e-12
};

/// A probability-testing policy: one quantile q per node of the outcome
/// tree (heap order, root 1, child 2v + outcome).
struct ProbabilityTestingPolicy {
  std::vector<double> quantiles;  // size 2^n, index 0 unused
};

/// Exact E[X_sigma] of a probability-testing policy by enumeration of the
/// outcome tree. Requires n <= 6.
double probability_policy_value(const ProbabilityTestingPolicy& policy, const DiscreteDistribution& dist, long long n);

/// Random probability-testing policy; about a quarter of the nodes use a
/// quantile on an atom boundary (a deterministic threshold test).
ProbabilityTestingPolicy random_probability_policy(const DiscreteDistribution& dist, long long n, Rng& rng);

/// Compares `samples` random probability-testing policies against the
/// optimal deterministic policy. Requires n <= 6.
RandomizedDominanceReport dominance_vs_randomized(const DiscreteDistribution& dist, long long n, std::size_t samples,
                                                  Rng& rng);

void to_json(nlohmann::json& j, const DPTable& table);

}  // namespace tprobe
