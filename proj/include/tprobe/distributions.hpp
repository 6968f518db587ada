#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "tprobe/rng.hpp"

namespace tprobe {

class ContinuousDistribution;

/// Finite discrete distribution on non-negative values v_0 < ... < v_{m-1}.
///
/// Atoms of probability zero are dropped at construction. Support indices
/// are 0-based throughout the library. Tail and head masses are summed
/// directly from the probabilities (top-down and bottom-up respectively) so
/// that `tail(j)` is never re-derived as `1 - below(j)`.
class DiscreteDistribution {
 public:
  DiscreteDistribution(std::vector<double> values, std::vector<double> probs);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> values() const noexcept { return values_; }
  std::span<const double> probs() const noexcept { return probs_; }
  double value(std::size_t j) const { return values_.at(j); }
  double prob(std::size_t j) const { return probs_.at(j); }

  /// Pr[X >= v_j]; tail(size()) == 0.
  double tail(std::size_t j) const { return tail_.at(j); }
  /// Pr[X < v_j]; below(0) == 0.
  double below(std::size_t j) const { return below_.at(j); }

  /// Pr[X >= x].
  double ccdf(double x) const;
  double mean() const noexcept { return mean_; }

  /// E[X | X >= v_k]. Throws EmptyCondition when the event is null.
  double cond_exp_above(std::size_t k) const;
  /// E[X | X < v_k]. Throws EmptyCondition for k == 0.
  double cond_exp_below(std::size_t k) const;

  /// E[max of n i.i.d. draws], telescoped over the support with
  /// compensated summation.
  double expected_max(long long n) const;

  /// Index j with v_j == x, or size() when x is not an atom.
  std::size_t index_of(double x) const noexcept;

  std::size_t sample_index(Rng& rng) const noexcept;
  double sample(Rng& rng) const noexcept { return values_[sample_index(rng)]; }

  /// Continuous approximation: each atom v_j is spread uniformly over
  /// [v_j, v_j + width].
  ContinuousDistribution smoothed(double width = 1e-9) const;

  std::string describe() const;

 private:
  std::vector<double> values_;
  std::vector<double> probs_;
  std::vector<double> tail_;       // size m + 1
  std::vector<double> below_;      // size m + 1
  std::vector<double> tail_mass_;  // sum_{i >= j} p_i v_i, size m + 1
  std::vector<double> head_mass_;  // sum_{i < j} p_i v_i, size m + 1
  double mean_ = 0.0;
};

/// Distribution given by its quantile function Q(p) = F^{-1}(p).
class ContinuousDistribution {
 public:
  using Quantile = std::function<double(double)>;

  ContinuousDistribution(Quantile quantile, std::string descriptor);

  /// Q(p) with p clamped to [0, 1].
  double quantile(double p) const;
  /// Pr[X >= x] = 1 - sup{p : Q(p) < x}, located by bisection to 1e-12.
  double ccdf(double x) const;
  double sample(Rng& rng) const { return quantile_(rng.uniform()); }
  const std::string& describe() const noexcept { return descriptor_; }

 private:
  Quantile quantile_;
  std::string descriptor_;
};

using Distribution = std::variant<DiscreteDistribution, ContinuousDistribution>;

double ccdf(const Distribution& dist, double x);
double sample(const Distribution& dist, Rng& rng);
std::string describe(const Distribution& dist);

/// Value 1 with probability alpha / n, else 0. Requires 0 < alpha < n.
DiscreteDistribution golden_nugget(double alpha, long long n);
/// Values 3, 2, 1 with probability 1/n each, else 0. Requires n >= 3.
DiscreteDistribution counterexample3(long long n);
/// With probability 1/sqrt(n) uniform on [1 - eps, 1 + eps], else 0.
ContinuousDistribution f_a(long long n, double eps);
/// Value 1 with probability 1/n^2, else 0.
DiscreteDistribution f_b(long long n);
ContinuousDistribution uniform01();

void to_json(nlohmann::json& j, const DiscreteDistribution& d);
DiscreteDistribution discrete_from_json(const nlohmann::json& j);

}  // namespace tprobe
