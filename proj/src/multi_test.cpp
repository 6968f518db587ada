#include "tprobe/multi_test.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "tprobe/error.hpp"

namespace tprobe {

namespace {

__extension__ typedef unsigned __int128 u128;

u128 ipow(u128 base, unsigned e) {
  u128 r = 1;
  while (e-- > 0) r *= base;
  return r;
}

/// Smallest d with d^3 >= target.
std::uint64_t ceil_cbrt(u128 target) {
  auto d = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(target)));
  while (d > 0 && ipow(d, 3) >= target) --d;
  while (ipow(d, 3) < target) ++d;
  return d;
}

/// Largest d with d^3 <= target.
std::uint64_t floor_cbrt(u128 target) {
  auto d = static_cast<std::uint64_t>(std::cbrt(static_cast<double>(target)));
  while (ipow(d, 3) > target) --d;
  while (ipow(d + 1, 3) <= target) ++d;
  return d;
}

}  // namespace

void Budget::spend() {
  if (used_ >= total_) throw BadParameter("test budget exhausted");
  ++used_;
}

MultiTestGrid::MultiTestGrid(long long boxes) : n(boxes) {
  if (n < 8) throw BadParameter("multi-test needs n >= 8");
  const auto nn = static_cast<u128>(n);
  dropped = ceil_cbrt(nn * nn);
  max_type = floor_cbrt(nn * nn * nn * nn);
  base_quantile = std::pow(static_cast<double>(n), -2.0 / 3.0);
  // Probes needed to shrink [0, max_type + 1) to a single point.
  search_cost = static_cast<std::uint64_t>(std::bit_width(max_type));
}

double MultiTestGrid::threshold(const ContinuousDistribution& dist, std::uint64_t j) const {
  const double nn = static_cast<double>(n);
  const double p = 1.0 - base_quantile + static_cast<double>(j) / (nn * nn);
  return dist.quantile(std::min(p, 1.0));
}

std::uint64_t search_type(double x, const ContinuousDistribution& dist, const MultiTestGrid& grid,
                          std::uint64_t* probes) {
  // Invariant lo <= j* < hi. Membership in P already certifies j* >= 0.
  std::uint64_t lo = 0;
  std::uint64_t hi = grid.max_type + 1;
  std::uint64_t used = 0;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    ++used;
    if (x >= grid.threshold(dist, mid))
      lo = mid;
    else
      hi = mid;
  }
  if (probes) *probes = used;
  return lo;
}

std::uint64_t type_of(double x, const ContinuousDistribution& dist, long long n) {
  const MultiTestGrid grid(n);
  if (x < grid.threshold(dist, 0)) throw BelowThreshold("value below the membership threshold");
  std::uint64_t j = 0;
  while (j < grid.max_type && x >= grid.threshold(dist, j + 1)) ++j;
  return j;
}

MultiTestResult run_multi_test(const ContinuousDistribution& dist, long long n, Rng& rng) {
  const MultiTestGrid grid(n);
  MultiTestResult result;
  result.budget = Budget(static_cast<std::uint64_t>(n));

  std::vector<double> x(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < x.size(); ++i) {
    Rng box_rng = rng.split(i);
    x[i] = dist.sample(box_rng);
    if (x[i] > result.max_value || i == 0) {
      result.max_value = x[i];
      result.argmax = i;
    }
  }

  const double membership = grid.threshold(dist, 0);
  for (std::size_t i = 0; i < grid.tested(); ++i) {
    result.budget.spend();
    if (x[i] >= membership) result.positives.push_back({i, true, std::nullopt, 0});
  }

  for (TypedBox& box : result.positives) {
    if (result.budget.remaining() < grid.search_cost) {
      result.aborted = true;
      break;
    }
    std::uint64_t probes = 0;
    box.type = search_type(x[box.index], dist, grid, &probes);
    box.search_tests = probes;
    for (std::uint64_t t = 0; t < probes; ++t) result.budget.spend();
  }

  // Unique highest type among the typed boxes, else box 0.
  std::optional<std::size_t> best;
  bool unique = false;
  std::uint64_t best_type = 0;
  for (const TypedBox& box : result.positives) {
    if (!box.type) continue;
    if (!best || *box.type > best_type) {
      best = box.index;
      best_type = *box.type;
      unique = true;
    } else if (*box.type == best_type) {
      unique = false;
    }
  }
  result.chosen = (best && unique) ? *best : 0;
  result.chosen_value = x[result.chosen];
  return result;
}

}  // namespace tprobe
