#include "tprobe/dp_optimal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tprobe/error.hpp"

namespace tprobe {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

const char* kind_name(DPState::Kind kind) {
  switch (kind) {
    case DPState::Kind::initial:
      return "initial";
    case DPState::Kind::positive:
      return "positive";
    case DPState::Kind::negative:
      return "negative";
  }
  return "?";
}

}  // namespace

DPState DPState::from_index(std::size_t index) noexcept {
  if (index == 0) return initial();
  const std::size_t k = (index - 1) / 2;
  return (index % 2 == 1) ? positive(k) : negative(k);
}

std::size_t DPState::index() const noexcept {
  switch (kind) {
    case Kind::initial:
      return 0;
    case Kind::positive:
      return 1 + 2 * test;
    case Kind::negative:
      return 2 + 2 * test;
  }
  return 0;
}

DPTable::DPTable(DiscreteDistribution dist, long long n) : dist_(std::move(dist)), n_(n) {
  if (n < 1) throw BadParameter("DP needs n >= 1");
  state_values_.assign(state_count(), kNaN);
  state_values_[0] = dist_.mean();
  for (std::size_t k = 0; k < dist_.size(); ++k) {
    state_values_[DPState::positive(k).index()] = dist_.cond_exp_above(k);
    if (k > 0) state_values_[DPState::negative(k).index()] = dist_.cond_exp_below(k);
  }
  best_test_.assign(static_cast<std::size_t>(n) * state_count(), -1);
  cont_.assign(static_cast<std::size_t>(n + 1) * state_count(), kNaN);
}

bool DPTable::reachable(DPState s) const {
  const std::size_t i = s.index();
  return i < state_count() && !std::isnan(state_values_[i]);
}

std::size_t DPTable::best_test(std::size_t box, DPState s) const {
  const auto t = best_test_.at(box * state_count() + s.index());
  if (t < 0) throw BadParameter("no decision recorded for this state");
  return static_cast<std::size_t>(t);
}

double DPTable::cont_value(std::size_t box, DPState s) const { return cont_.at(box * state_count() + s.index()); }

DPState DPTable::merge(DPState carried, DPState candidate) const {
  if (carried.kind == DPState::Kind::initial) return candidate;
  return state_value(candidate) > state_value(carried) ? candidate : carried;
}

DPTable solve(const DiscreteDistribution& dist, long long n) {
  DPTable table(dist, n);
  const std::size_t states = table.state_count();
  const std::size_t m = dist.size();
  const auto boxes = static_cast<std::size_t>(n);

  // Terminal: the carried box is picked. The initial state never survives
  // past box 0, so it has no terminal value.
  for (std::size_t s = 1; s < states; ++s) table.cont_[boxes * states + s] = table.state_values_[s];

  for (std::size_t box = boxes; box-- > 0;) {
    const double* next = &table.cont_[(box + 1) * states];
    for (std::size_t s = 0; s < states; ++s) {
      const DPState carried = DPState::from_index(s);
      if (!table.reachable(carried)) continue;
      if (box > 0 && carried.kind == DPState::Kind::initial) continue;
      double best = -std::numeric_limits<double>::infinity();
      std::int32_t best_k = -1;
      for (std::size_t k = 0; k < m; ++k) {
        double v = dist.tail(k) * next[table.merge(carried, DPState::positive(k)).index()];
        if (k > 0) v += dist.below(k) * next[table.merge(carried, DPState::negative(k)).index()];
        if (v > best) {
          best = v;
          best_k = static_cast<std::int32_t>(k);
        }
      }
      table.cont_[box * states + s] = best;
      table.best_test_[box * states + s] = best_k;
    }
  }
  return table;
}

double ratio(const DiscreteDistribution& dist, long long n) { return solve(dist, n).value() / dist.expected_max(n); }

namespace {

struct BruteForce {
  const DiscreteDistribution& dist;
  std::size_t boxes;
  std::vector<std::vector<std::size_t>> realizations;
  std::vector<double> masses;
  std::vector<std::size_t> tests;
  std::vector<bool> outcomes;

  void enumerate() {
    const std::size_t m = dist.size();
    std::vector<std::size_t> atoms(boxes, 0);
    while (true) {
      double mass = 1.0;
      for (std::size_t a : atoms) mass *= dist.prob(a);
      realizations.push_back(atoms);
      masses.push_back(mass);
      std::size_t pos = 0;
      while (pos < boxes && ++atoms[pos] == m) atoms[pos++] = 0;
      if (pos == boxes) break;
    }
  }

  // Pr[history] * max_b E[X_b | history], summed directly over realizations.
  double leaf() const {
    std::vector<double> weighted(boxes, 0.0);
    for (std::size_t r = 0; r < realizations.size(); ++r) {
      const auto& atoms = realizations[r];
      bool consistent = true;
      for (std::size_t b = 0; b < boxes && consistent; ++b) consistent = (atoms[b] >= tests[b]) == outcomes[b];
      if (!consistent) continue;
      for (std::size_t b = 0; b < boxes; ++b) weighted[b] += masses[r] * dist.value(atoms[b]);
    }
    return *std::max_element(weighted.begin(), weighted.end());
  }

  double node(std::size_t box) {
    if (box == boxes) return leaf();
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < dist.size(); ++k) {
      tests[box] = k;
      double v = 0.0;
      for (bool outcome : {true, false}) {
        outcomes[box] = outcome;
        v += node(box + 1);
      }
      best = std::max(best, v);
    }
    return best;
  }
};

}  // namespace

double brute_force_optimal(const DiscreteDistribution& dist, long long n) {
  if (n < 1) throw BadParameter("brute force needs n >= 1");
  const auto m = static_cast<double>(dist.size());
  const double leaves = std::pow(2.0 * m, static_cast<double>(n));
  if (leaves > 1e6) throw TooLarge("(2m)^n exceeds 1e6 decision-tree leaves");
  if (leaves * std::pow(m, static_cast<double>(n)) * static_cast<double>(n) > 2e9)
    throw TooLarge("realization enumeration too large");
  const auto boxes = static_cast<std::size_t>(n);
  BruteForce bf{dist, boxes, {}, {}, std::vector<std::size_t>(boxes, 0), std::vector<bool>(boxes, false)};
  bf.enumerate();
  return bf.node(0);
}

PlayResult simulate_dp_policy(const DPTable& table, Rng& rng, bool record_history) {
  const DiscreteDistribution& dist = table.distribution();
  const auto boxes = static_cast<std::size_t>(table.boxes());
  const double nan = std::numeric_limits<double>::quiet_NaN();

  PlayResult result;
  if (record_history) result.history.reserve(boxes);
  DPState state = DPState::initial();
  std::size_t holder = 0;
  double holder_value = 0.0;
  double max_value = 0.0;
  for (std::size_t box = 0; box < boxes; ++box) {
    const std::size_t k = table.best_test(box, state);
    Rng box_rng = rng.split(box);
    const std::size_t atom = dist.sample_index(box_rng);
    const double x = dist.value(atom);
    const bool positive = atom >= k;
    if (record_history) result.history.record({box, nan, dist.value(k), positive});
    const DPState next = table.merge(state, positive ? DPState::positive(k) : DPState::negative(k));
    if (!(next == state)) {
      state = next;
      holder = box;
      holder_value = x;
    }
    max_value = std::max(max_value, x);
  }
  result.chosen = holder;
  result.chosen_value = holder_value;
  result.max_value = max_value;
  return result;
}

namespace {

struct OutcomeTree {
  const ProbabilityTestingPolicy& policy;
  const DiscreteDistribution& dist;
  std::size_t boxes;
  std::vector<double> carried;

  double node(std::size_t v, std::size_t depth) {
    if (depth == boxes) return *std::max_element(carried.begin(), carried.end());
    const ProbabilityCut cut = locate_cut(dist, policy.quantiles.at(v));
    double mass[2] = {0.0, 0.0};
    double weighted[2] = {0.0, 0.0};
    for (std::size_t j = 0; j < dist.size(); ++j) {
      const double pos = dist.prob(j) * cut.positive_prob(j);
      const double neg = dist.prob(j) - pos;
      mass[1] += pos;
      weighted[1] += pos * dist.value(j);
      mass[0] += neg;
      weighted[0] += neg * dist.value(j);
    }
    double total = 0.0;
    for (std::size_t outcome = 0; outcome < 2; ++outcome) {
      if (!(mass[outcome] > 0.0)) continue;
      carried.push_back(weighted[outcome] / mass[outcome]);
      total += mass[outcome] * node(2 * v + outcome, depth + 1);
      carried.pop_back();
    }
    return total;
  }
};

}  // namespace

double probability_policy_value(const ProbabilityTestingPolicy& policy, const DiscreteDistribution& dist, long long n) {
  if (n < 1 || n > 6) throw TooLarge("probability-policy enumeration supports 1 <= n <= 6");
  const auto boxes = static_cast<std::size_t>(n);
  if (policy.quantiles.size() != (std::size_t{1} << boxes)) throw BadParameter("policy tree has the wrong size");
  OutcomeTree tree{policy, dist, boxes, {}};
  return tree.node(1, 0);
}

ProbabilityTestingPolicy random_probability_policy(const DiscreteDistribution& dist, long long n, Rng& rng) {
  if (n < 1 || n > 6) throw TooLarge("probability-policy enumeration supports 1 <= n <= 6");
  ProbabilityTestingPolicy policy;
  policy.quantiles.assign(std::size_t{1} << n, 0.0);
  for (std::size_t v = 1; v < policy.quantiles.size(); ++v) {
    if (rng.uniform() < 0.25) {
      const auto k = static_cast<std::size_t>(rng.uniform() * static_cast<double>(dist.size() + 1));
      policy.quantiles[v] = dist.tail(std::min(k, dist.size()));
    } else {
      policy.quantiles[v] = rng.uniform();
    }
  }
  return policy;
}

RandomizedDominanceReport dominance_vs_randomized(const DiscreteDistribution& dist, long long n, std::size_t samples,
                                                  Rng& rng) {
  if (n < 1 || n > 6) throw TooLarge("randomized dominance check supports 1 <= n <= 6");
  RandomizedDominanceReport report{solve(dist, n).value(), {}, std::numeric_limits<double>::infinity(), true};
  for (std::size_t s = 0; s < samples; ++s) {
    Rng policy_rng = rng.split(s);
    const double value = probability_policy_value(random_probability_policy(dist, n, policy_rng), dist, n);
    const double margin = report.optimal_value - value;
    report.margins.push_back({value, margin});
    report.min_margin = std::min(report.min_margin, margin);
    if (margin < -1e-12) report.dominated = false;
  }
  return report;
}

void to_json(nlohmann::json& j, const DPTable& table) {
  const std::size_t states = table.state_count();
  nlohmann::json state_list = nlohmann::json::array();
  for (std::size_t s = 0; s < states; ++s) {
    const DPState st = DPState::from_index(s);
    if (!table.reachable(st)) continue;
    state_list.push_back(
        {{"index", s}, {"kind", kind_name(st.kind)}, {"test", st.test}, {"value", table.state_value(st)}});
  }
  nlohmann::json decisions = nlohmann::json::array();
  for (std::size_t box = 0; box < static_cast<std::size_t>(table.boxes()); ++box) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t s = 0; s < states; ++s) {
      const DPState st = DPState::from_index(s);
      const double v = table.reachable(st) ? table.cont_value(box, st) : kNaN;
      if (std::isnan(v)) {
        row.push_back(nullptr);
      } else {
        row.push_back({{"test", table.best_test(box, st)}, {"cont_value", v}});
      }
    }
    decisions.push_back(std::move(row));
  }
  j = nlohmann::json{{"boxes", table.boxes()},
                     {"distribution", table.distribution()},
                     {"value", table.value()},
                     {"states", std::move(state_list)},
                     {"decisions", std::move(decisions)}};
}

}  // namespace tprobe
