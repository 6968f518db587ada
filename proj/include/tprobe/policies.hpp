#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <json.hpp>

#include "tprobe/distributions.hpp"
#include "tprobe/rng.hpp"

namespace tprobe {

/// Adaptive k-threshold quantile policy: after j positive tests the next box
/// is tested at quantile alphas[j] / n. Parameters strictly decrease.
class QuantilePolicy {
 public:
  explicit QuantilePolicy(std::vector<double> alphas);

  std::size_t k() const noexcept { return alphas_.size(); }
  std::span<const double> alphas() const noexcept { return alphas_; }
  /// 0-based: alpha(0) is the first (largest) parameter.
  double alpha(std::size_t j) const { return alphas_.at(j); }

  /// Throws BadParameter unless alpha(0) < n.
  void require_fits(long long n) const;

  /// Quantile for the next test after `positives_so_far` positives; 0 once
  /// all k thresholds have tested positive.
  double next_quantile(std::size_t positives_so_far, long long n) const noexcept;

 private:
  std::vector<double> alphas_;
};

/// Published parameters for k = 1..4.
QuantilePolicy reference_policy(std::size_t k);

void to_json(nlohmann::json& j, const QuantilePolicy& p);
QuantilePolicy policy_from_json(const nlohmann::json& j);

struct TestRecord {
  std::size_t box;
  double quantile;   // NaN for plain threshold tests
  double threshold;  // NaN for probability tests
  bool positive;
};

/// One record per box, in box order.
class TestHistory {
 public:
  void record(const TestRecord& r);
  std::span<const TestRecord> records() const noexcept { return records_; }
  std::size_t positives() const noexcept { return positives_; }
  void reserve(std::size_t n) { records_.reserve(n); }

 private:
  std::vector<TestRecord> records_;
  std::size_t positives_ = 0;
};

/// Box indices are 0-based; box 0 is the fallback choice.
struct PlayResult {
  std::size_t chosen = 0;
  double chosen_value = 0.0;
  double max_value = 0.0;  // realized max over all boxes
  TestHistory history;
};

/// Location of a probability test with mass q on a discrete support: atoms
/// above `atom` test positive, atoms below negative, and `atom` itself
/// positive with probability `boundary_prob`.
struct ProbabilityCut {
  std::size_t atom;
  double boundary_prob;

  double positive_prob(std::size_t j) const noexcept {
    if (j > atom) return 1.0;
    if (j < atom) return 0.0;
    return boundary_prob;
  }
};

ProbabilityCut locate_cut(const DiscreteDistribution& dist, double q);

/// E[X | probability test at q positive]; requires q > 0.
double positive_mean(const DiscreteDistribution& dist, double q);
/// E[X | probability test at q negative]; requires q < 1.
double negative_mean(const DiscreteDistribution& dist, double q);

/// Whether the top-q mass test on realization x comes out positive. Draws
/// from `rng` only when x sits on the boundary atom.
bool probability_test(const DiscreteDistribution& dist, double q, double x, Rng& rng);

/// Threshold tests at Q(1 - q). Box i draws from rng.split(i).
PlayResult play_continuous(const QuantilePolicy& policy, const ContinuousDistribution& dist, long long n, Rng& rng,
                           bool record_history = true);

/// Same state machine with probability tests on a discrete distribution.
PlayResult play_discrete(const QuantilePolicy& policy, const DiscreteDistribution& dist, long long n, Rng& rng,
                         bool record_history = true);

/// Gambler backward induction: t_i is the optimal online value of boxes
/// i+1..n. Returned in box order (non-increasing, last entry 0).
std::vector<double> gambler_thresholds(const DiscreteDistribution& dist, long long n);
/// Optimal gambler value with n boxes.
double gambler_value(const DiscreteDistribution& dist, long long n);

/// Non-adaptive play: picks the earliest positive box, else box 0.
PlayResult play_nonadaptive(std::span<const double> thresholds, const Distribution& dist, Rng& rng,
                            bool record_history = true);

}  // namespace tprobe
