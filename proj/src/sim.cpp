#include "tprobe/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "tprobe/error.hpp"

namespace tprobe {

namespace {

constexpr std::uint64_t kBlock = 4096;
constexpr double kZ95 = 1.959963984540054;

struct Moments {
  double sum_v = 0.0;
  double sum_vv = 0.0;
  double sum_m = 0.0;
  double sum_mm = 0.0;
  double sum_vm = 0.0;

  void add(const Draw& d) noexcept {
    sum_v += d.value;
    sum_vv += d.value * d.value;
    sum_m += d.max;
    sum_mm += d.max * d.max;
    sum_vm += d.value * d.max;
  }
  void merge(const Moments& o) noexcept {
    sum_v += o.sum_v;
    sum_vv += o.sum_vv;
    sum_m += o.sum_m;
    sum_mm += o.sum_mm;
    sum_vm += o.sum_vm;
  }
};

}  // namespace

SimResult estimate(const Runner& runner, std::optional<double> exact_expected_max, const SimConfig& cfg) {
  if (cfg.replicates < 1) throw BadParameter("need at least one replicate");
  const std::uint64_t blocks = (cfg.replicates + kBlock - 1) / kBlock;
  std::vector<Moments> partial(blocks);
  SimResult out;
  if (cfg.keep_samples) out.samples.resize(cfg.replicates);

  const Rng master(cfg.seed);
  std::atomic<std::uint64_t> next_block{0};
  auto work = [&] {
    for (std::uint64_t b = next_block++; b < blocks; b = next_block++) {
      const std::uint64_t end = std::min(cfg.replicates, (b + 1) * kBlock);
      Moments m;
      for (std::uint64_t r = b * kBlock; r < end; ++r) {
        Rng rng = master.split(r);
        const Draw d = runner(rng);
        m.add(d);
        if (cfg.keep_samples) out.samples[r] = d;
      }
      partial[b] = m;
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, static_cast<unsigned>(blocks)));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  Moments total;
  for (const Moments& m : partial) total.merge(m);

  const auto r = static_cast<double>(cfg.replicates);
  out.replicates = cfg.replicates;
  out.mean = total.sum_v / r;
  out.mean_max = total.sum_m / r;
  const double denom = r > 1 ? r - 1 : 1;
  const double var_v = std::max(0.0, (total.sum_vv - r * out.mean * out.mean) / denom);
  const double var_m = std::max(0.0, (total.sum_mm - r * out.mean_max * out.mean_max) / denom);
  const double cov_vm = (total.sum_vm - r * out.mean * out.mean_max) / denom;
  out.std_error = std::sqrt(var_v / r);
  out.ci95_lo = out.mean - kZ95 * out.std_error;
  out.ci95_hi = out.mean + kZ95 * out.std_error;

  if (out.mean_max > 0.0) {
    out.paired_ratio = out.mean / out.mean_max;
    // Delta method for a ratio of paired means.
    const double rho = out.paired_ratio;
    const double var_ratio = std::max(0.0, var_v - 2.0 * rho * cov_vm + rho * rho * var_m);
    out.paired_ratio_std_error = std::sqrt(var_ratio / r) / out.mean_max;
  }

  out.exact_max = exact_expected_max.has_value();
  out.expected_max = exact_expected_max.value_or(out.mean_max);
  if (out.exact_max) {
    if (out.expected_max > 0.0) {
      out.ratio = out.mean / out.expected_max;
      out.ratio_std_error = out.std_error / out.expected_max;
    }
  } else {
    out.ratio = out.paired_ratio;
    out.ratio_std_error = out.paired_ratio_std_error;
  }
  return out;
}

SimResult estimate(const Runner& runner, const Distribution& dist, long long n, const SimConfig& cfg) {
  std::optional<double> exact;
  if (const auto* d = std::get_if<DiscreteDistribution>(&dist)) exact = d->expected_max(n);
  return estimate(runner, exact, cfg);
}

void to_json(nlohmann::json& j, const SimResult& r) {
  j = nlohmann::json{{"replicates", r.replicates},
                     {"mean", r.mean},
                     {"stderr", r.std_error},
                     {"ci95", {r.ci95_lo, r.ci95_hi}},
                     {"expected_max", r.expected_max},
                     {"exact_max", r.exact_max},
                     {"ratio", r.ratio},
                     {"ratio_stderr", r.ratio_std_error},
                     {"paired_ratio", r.paired_ratio},
                     {"paired_ratio_stderr", r.paired_ratio_std_error},
                     {"mean_max", r.mean_max}};
}

void from_json(const nlohmann::json& j, SimResult& r) {
  r.replicates = j.at("replicates").get<std::uint64_t>();
  r.mean = j.at("mean").get<double>();
  r.std_error = j.at("stderr").get<double>();
  r.ci95_lo = j.at("ci95").at(0).get<double>();
  r.ci95_hi = j.at("ci95").at(1).get<double>();
  r.expected_max = j.at("expected_max").get<double>();
  r.exact_max = j.at("exact_max").get<bool>();
  r.ratio = j.at("ratio").get<double>();
  r.ratio_std_error = j.at("ratio_stderr").get<double>();
  r.paired_ratio = j.at("paired_ratio").get<double>();
  r.paired_ratio_std_error = j.at("paired_ratio_stderr").get<double>();
  r.mean_max = j.at("mean_max").get<double>();
}

void to_json(nlohmann::json& j, const SimConfig& c) {
  j = nlohmann::json{{"replicates", c.replicates}, {"seed", c.seed}, {"workers", c.workers}};
}

}  // namespace tprobe
