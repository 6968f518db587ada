#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

#include "tprobe/analytics.hpp"
#include "tprobe/error.hpp"

namespace tprobe {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Policies outside this box are treated as infeasible; the optimum sits
// well inside it.
constexpr double kMinAlpha = 1e-7;
constexpr double kMaxAlpha = 50.0;

double objective(std::span<const double> log_alphas) {
  std::vector<double> alphas(log_alphas.size());
  for (std::size_t j = 0; j < alphas.size(); ++j) {
    alphas[j] = std::exp(log_alphas[j]);
    if (alphas[j] < kMinAlpha || alphas[j] > kMaxAlpha) return kNegInf;
    if (j > 0 && !(alphas[j] < alphas[j - 1] * (1.0 - 1e-9))) return kNegInf;
  }
  return min_ratio(QuantilePolicy(std::move(alphas)), Horizon::limit()).c_star;
}

/// Poll set: +-e_i, plus +-e_i +- e_j so that the search can slide along
/// the ridges where two pieces of the maximin objective meet.
std::vector<std::vector<double>> poll_directions(std::size_t k) {
  std::vector<std::vector<double>> dirs;
  for (std::size_t i = 0; i < k; ++i) {
    for (double s : {1.0, -1.0}) {
      std::vector<double> d(k, 0.0);
      d[i] = s;
      dirs.push_back(d);
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j) {
      for (double si : {1.0, -1.0}) {
        for (double sj : {1.0, -1.0}) {
          std::vector<double> d(k, 0.0);
          d[i] = si;
          d[j] = sj;
          dirs.push_back(d);
        }
      }
    }
  }
  return dirs;
}

struct SearchResult {
  std::vector<double> x;
  double value;
};

SearchResult pattern_search(std::vector<double> x, const OptimizeOptions& options,
                            const std::vector<std::vector<double>>& dirs) {
  double fx = objective(x);
  double step = options.initial_step;
  std::vector<double> y(x.size());
  while (step >= options.min_step) {
    bool improved = false;
    for (const auto& d : dirs) {
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = x[i] + step * d[i];
      const double fy = objective(y);
      if (fy > fx) {
        x = y;
        fx = fy;
        improved = true;
        break;
      }
    }
    if (!improved) step *= 0.5;
  }
  return {std::move(x), fx};
}

}  // namespace

OptimizeResult optimize_alphas(std::size_t k, const OptimizeOptions& options) {
  if (k < 1 || k > 5) throw BadParameter("optimize_alphas supports 1 <= k <= 5");
  if (options.starts < 1) throw BadParameter("need at least one start");

  const auto dirs = poll_directions(k);
  const Rng master(options.seed);
  const double log_lo = std::log(1e-4);
  const double log_hi = std::log(4.0);

  std::vector<double> start_values;
  SearchResult best{{}, kNegInf};
  for (std::size_t s = 0; s < options.starts; ++s) {
    Rng rng = master.split(s);
    std::vector<double> x(k);
    for (auto& v : x) v = log_lo + (log_hi - log_lo) * rng.uniform();
    std::sort(x.begin(), x.end(), std::greater<>());
    for (std::size_t j = 1; j < k; ++j) x[j] = std::min(x[j], x[j - 1] - 1e-3);

    SearchResult r = pattern_search(std::move(x), options, dirs);
    start_values.push_back(r.value);
    if (r.value > best.value) best = std::move(r);
  }
  if (!(best.value > kNegInf)) throw BadParameter("no feasible start found");

  std::vector<double> alphas(k);
  for (std::size_t j = 0; j < k; ++j) alphas[j] = std::exp(best.x[j]);
  QuantilePolicy policy(alphas);
  MinRatio ratio = min_ratio(policy, Horizon::limit());
  return OptimizeResult{std::move(policy), std::move(ratio), std::move(start_values)};
}

}  // namespace tprobe
