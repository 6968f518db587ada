#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include <json.hpp>

#include "tprobe/distributions.hpp"
#include "tprobe/rng.hpp"

namespace tprobe {

struct SimConfig {
  std::uint64_t replicates = 10000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool keep_samples = false;
};

/// One replicate: the obtained value and the realized maximum.
struct Draw {
  double value;
  double max;
};

/// Plays one replicate with the given stream.
using Runner = std::function<Draw(Rng&)>;

struct SimResult {
  std::uint64_t replicates = 0;
  double mean = 0.0;
  double std_error = 0.0;
  double ci95_lo = 0.0;
  double ci95_hi = 0.0;
  /// E[max] used as the ratio denominator: exact for discrete
  /// distributions, else the paired sample mean of the realized maxima.
  double expected_max = 0.0;
  bool exact_max = false;
  double ratio = 0.0;
  double ratio_std_error = 0.0;
  /// mean(value) / mean(max) over the same replicates.
  double paired_ratio = 0.0;
  double paired_ratio_std_error = 0.0;
  double mean_max = 0.0;
  std::vector<Draw> samples;  // filled when keep_samples is set
};

/// Replicate r runs on Rng(seed).split(r). Replicates are processed in
/// fixed blocks whose partial sums are reduced in block order, so the result
/// does not depend on the number of workers.
SimResult estimate(const Runner& runner, std::optional<double> exact_expected_max, const SimConfig& cfg);

/// Uses the exact E[max] for discrete distributions and the paired estimate
/// otherwise.
SimResult estimate(const Runner& runner, const Distribution& dist, long long n, const SimConfig& cfg);

void to_json(nlohmann::json& j, const SimResult& r);
void from_json(const nlohmann::json& j, SimResult& r);
void to_json(nlohmann::json& j, const SimConfig& c);

}  // namespace tprobe
