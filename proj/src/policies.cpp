#include "tprobe/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tprobe/error.hpp"

namespace tprobe {

QuantilePolicy::QuantilePolicy(std::vector<double> alphas) : alphas_(std::move(alphas)) {
  if (alphas_.empty()) throw BadParameter("policy needs at least one parameter");
  for (std::size_t j = 0; j < alphas_.size(); ++j) {
    if (!std::isfinite(alphas_[j]) || !(alphas_[j] > 0.0)) throw BadParameter("policy parameters must be positive");
    if (j > 0 && !(alphas_[j] < alphas_[j - 1])) throw BadParameter("policy parameters must strictly decrease");
  }
}

void QuantilePolicy::require_fits(long long n) const {
  if (!(alphas_.front() < static_cast<double>(n))) throw BadParameter("policy requires alpha_1 < n");
}

double QuantilePolicy::next_quantile(std::size_t positives_so_far, long long n) const noexcept {
  if (positives_so_far >= alphas_.size()) return 0.0;
  return alphas_[positives_so_far] / static_cast<double>(n);
}

QuantilePolicy reference_policy(std::size_t k) {
  switch (k) {
    case 1:
      return QuantilePolicy({1.0});
    case 2:
      return QuantilePolicy({1.83298, 0.35932});
    case 3:
      return QuantilePolicy({2.035135, 0.5063, 0.05701});
    case 4:
      return QuantilePolicy({2.038, 0.508, 0.058, 0.0002});
    default:
      throw BadParameter("reference parameters exist for k = 1..4");
  }
}

void to_json(nlohmann::json& j, const QuantilePolicy& p) {
  j = nlohmann::json{{"alphas", std::vector<double>(p.alphas().begin(), p.alphas().end())}};
}

QuantilePolicy policy_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("alphas")) throw BadParameter("policy JSON needs \"alphas\"");
  return QuantilePolicy(j.at("alphas").get<std::vector<double>>());
}

void TestHistory::record(const TestRecord& r) {
  if (r.box != records_.size()) throw BadParameter("boxes must be tested once each, in order");
  records_.push_back(r);
  if (r.positive) ++positives_;
}

ProbabilityCut locate_cut(const DiscreteDistribution& dist, double q) {
  const std::size_t m = dist.size();
  if (q <= 0.0) return {m, 0.0};
  if (q >= dist.tail(0)) return {0, 1.0};
  // Largest k with tail(k) >= q, so that tail(k + 1) < q <= tail(k).
  std::size_t k = 0;
  while (k + 1 < m && dist.tail(k + 1) >= q) ++k;
  return {k, std::clamp((q - dist.tail(k + 1)) / dist.prob(k), 0.0, 1.0)};
}

double positive_mean(const DiscreteDistribution& dist, double q) {
  if (!(q > 0.0)) throw EmptyCondition("probability test at q = 0 is never positive");
  const ProbabilityCut cut = locate_cut(dist, q);
  double mass = 0.0;
  double weighted = 0.0;
  for (std::size_t j = cut.atom; j < dist.size(); ++j) {
    const double w = dist.prob(j) * cut.positive_prob(j);
    mass += w;
    weighted += w * dist.value(j);
  }
  if (!(mass > 0.0)) throw EmptyCondition("positive outcome has zero probability");
  return weighted / mass;
}

double negative_mean(const DiscreteDistribution& dist, double q) {
  const ProbabilityCut cut = locate_cut(dist, q);
  double mass = 0.0;
  double weighted = 0.0;
  for (std::size_t j = 0; j < dist.size() && j <= cut.atom; ++j) {
    const double w = dist.prob(j) * (1.0 - cut.positive_prob(j));
    mass += w;
    weighted += w * dist.value(j);
  }
  if (!(mass > 0.0)) throw EmptyCondition("negative outcome has zero probability");
  return weighted / mass;
}

bool probability_test(const DiscreteDistribution& dist, double q, double x, Rng& rng) {
  const ProbabilityCut cut = locate_cut(dist, q);
  if (cut.atom >= dist.size()) return false;
  const double boundary = dist.value(cut.atom);
  if (x > boundary) return true;
  if (x < boundary) return false;
  return rng.uniform() < cut.boundary_prob;
}

namespace {

void finish(PlayResult& result, std::size_t chosen, double chosen_value, double max_value) {
  result.chosen = chosen;
  result.chosen_value = chosen_value;
  result.max_value = max_value;
}

}  // namespace

PlayResult play_continuous(const QuantilePolicy& policy, const ContinuousDistribution& dist, long long n, Rng& rng,
                           bool record_history) {
  policy.require_fits(n);
  const std::size_t k = policy.k();
  std::vector<double> thresholds(k + 1, std::numeric_limits<double>::infinity());
  for (std::size_t j = 0; j < k; ++j) thresholds[j] = dist.quantile(1.0 - policy.next_quantile(j, n));

  PlayResult result;
  if (record_history) result.history.reserve(static_cast<std::size_t>(n));
  std::size_t positives = 0;
  std::size_t chosen = 0;
  double chosen_value = 0.0;
  double max_value = 0.0;
  for (long long i = 0; i < n; ++i) {
    Rng box_rng = rng.split(static_cast<std::uint64_t>(i));
    const double x = dist.sample(box_rng);
    const double tau = thresholds[positives];
    const bool positive = x >= tau;
    if (record_history)
      result.history.record({static_cast<std::size_t>(i), policy.next_quantile(positives, n), tau, positive});
    if (i == 0) chosen_value = x;
    if (positive) {
      // Later positives always use a smaller quantile, so the latest wins.
      ++positives;
      chosen = static_cast<std::size_t>(i);
      chosen_value = x;
    }
    max_value = std::max(max_value, x);
  }
  finish(result, chosen, chosen_value, max_value);
  return result;
}

PlayResult play_discrete(const QuantilePolicy& policy, const DiscreteDistribution& dist, long long n, Rng& rng,
                         bool record_history) {
  policy.require_fits(n);
  const std::size_t k = policy.k();
  std::vector<ProbabilityCut> cuts;
  cuts.reserve(k + 1);
  for (std::size_t j = 0; j <= k; ++j) cuts.push_back(locate_cut(dist, policy.next_quantile(j, n)));

  PlayResult result;
  if (record_history) result.history.reserve(static_cast<std::size_t>(n));
  std::size_t positives = 0;
  std::size_t chosen = 0;
  double chosen_value = 0.0;
  double max_value = 0.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (long long i = 0; i < n; ++i) {
    Rng box_rng = rng.split(static_cast<std::uint64_t>(i));
    const std::size_t atom = dist.sample_index(box_rng);
    const double x = dist.value(atom);
    const ProbabilityCut& cut = cuts[positives];
    bool positive = atom > cut.atom;
    if (atom == cut.atom) positive = box_rng.uniform() < cut.boundary_prob;
    if (record_history)
      result.history.record({static_cast<std::size_t>(i), policy.next_quantile(positives, n), nan, positive});
    if (i == 0) chosen_value = x;
    if (positive) {
      ++positives;
      chosen = static_cast<std::size_t>(i);
      chosen_value = x;
    }
    max_value = std::max(max_value, x);
  }
  finish(result, chosen, chosen_value, max_value);
  return result;
}

std::vector<double> gambler_thresholds(const DiscreteDistribution& dist, long long n) {
  if (n < 1) throw BadParameter("gambler_thresholds needs n >= 1");
  // remaining[r] = optimal online value with r boxes left.
  std::vector<double> thresholds(static_cast<std::size_t>(n));
  double continuation = 0.0;
  for (long long r = 0; r < n; ++r) {
    thresholds[static_cast<std::size_t>(n - 1 - r)] = continuation;
    double next = 0.0;
    for (std::size_t j = 0; j < dist.size(); ++j) next += dist.prob(j) * std::max(dist.value(j), continuation);
    continuation = next;
  }
  return thresholds;
}

double gambler_value(const DiscreteDistribution& dist, long long n) {
  const auto t = gambler_thresholds(dist, n);
  double value = 0.0;
  for (std::size_t j = 0; j < dist.size(); ++j) value += dist.prob(j) * std::max(dist.value(j), t.front());
  return value;
}

PlayResult play_nonadaptive(std::span<const double> thresholds, const Distribution& dist, Rng& rng,
                            bool record_history) {
  if (thresholds.empty()) throw BadParameter("need at least one threshold");
  for (std::size_t i = 1; i < thresholds.size(); ++i)
    if (thresholds[i] > thresholds[i - 1]) throw BadParameter("thresholds must be non-increasing");

  PlayResult result;
  if (record_history) result.history.reserve(thresholds.size());
  bool found = false;
  std::size_t chosen = 0;
  double chosen_value = 0.0;
  double max_value = 0.0;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    Rng box_rng = rng.split(i);
    const double x = sample(dist, box_rng);
    const bool positive = x >= thresholds[i];
    if (record_history) result.history.record({i, nan, thresholds[i], positive});
    if (i == 0) chosen_value = x;
    if (positive && !found) {
      found = true;
      chosen = i;
      chosen_value = x;
    }
    max_value = std::max(max_value, x);
  }
  finish(result, chosen, chosen_value, max_value);
  return result;
}

}  // namespace tprobe
