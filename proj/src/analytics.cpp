#include "tprobe/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tprobe/error.hpp"
#include "tprobe/numeric.hpp"

namespace tprobe {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kGridPoints = 1000;
constexpr double kGoldenTol = 1e-8;

struct Minimum {
  double x;
  double value;
};

template <class F>
Minimum golden_section(const F& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
}

/// Grid scan then golden-section refinement around the best grid point.
template <class F>
Minimum grid_then_golden(const F& f, std::span<const double> grid) {
  std::size_t best = 0;
  double best_value = f(grid[0]);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    const double v = f(grid[i]);
    if (v < best_value) {
      best_value = v;
      best = i;
    }
  }
  const double lo = grid[best == 0 ? 0 : best - 1];
  const double hi = grid[std::min(best + 1, grid.size() - 1)];
  Minimum refined = golden_section(f, lo, hi, kGoldenTol * std::max(1.0, lo));
  if (refined.value < best_value) return refined;
  return {grid[best], best_value};
}

std::vector<double> linear_grid(double lo, double hi, std::size_t points) {
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(points - 1);
  grid.back() = hi;
  return grid;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  std::vector<double> grid(points);
  const double ratio = std::log(hi / lo);
  for (std::size_t i = 0; i < points; ++i)
    grid[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(points - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

}  // namespace

Horizon Horizon::finite(long long n) {
  if (n < 1) throw BadParameter("horizon needs n >= 1");
  return Horizon(n);
}

long long Horizon::n() const {
  if (!n_) throw BadParameter("limit horizon has no box count");
  return *n_;
}

double Horizon::alpha_max() const noexcept { return n_ ? static_cast<double>(*n_) : kInf; }

double Horizon::survival(double a) const noexcept {
  if (!n_) return std::exp(-a);
  const auto n = static_cast<double>(*n_);
  return pow_one_minus(a / n, n);
}

double Horizon::max_ccdf(double a) const noexcept {
  if (!n_) return -std::expm1(-a);
  const auto n = static_cast<double>(*n_);
  if (a >= n) return 1.0;
  return -std::expm1(n * std::log1p(-a / n));
}

double Horizon::slope(double a, double b) const noexcept {
  const double lo = std::min(a, b);
  const double hi = std::max(a, b);
  const double base = survival(lo);
  if (!n_) {
    if (hi == lo) return -base;
    return base * std::expm1(lo - hi) / (hi - lo);
  }
  const auto n = static_cast<double>(*n_);
  if (hi == lo) return -base * n / (n - lo);
  // survival(hi) / survival(lo) = ((n - hi) / (n - lo))^n.
  return base * std::expm1(n * std::log1p((lo - hi) / (n - lo))) / (hi - lo);
}

double Horizon::divided_difference(std::span<const double> nodes) const {
  if (nodes.empty()) throw BadParameter("divided difference needs nodes");
  if (nodes.size() == 1) return survival(nodes[0]);
  std::vector<double> table(nodes.size() - 1);
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) table[i] = slope(nodes[i], nodes[i + 1]);
  for (std::size_t order = 2; order < nodes.size(); ++order) {
    for (std::size_t i = 0; i + order < nodes.size(); ++i) {
      const double gap = nodes[i] - nodes[i + order];
      if (gap == 0.0) throw DegenerateParameters("repeated nodes in higher-order divided difference");
      table[i] = (table[i] - table[i + 1]) / gap;
    }
  }
  return table[0];
}

double PositiveCountDist::at_least_one() const noexcept {
  double total = 0.0;
  for (std::size_t i = 1; i < probs.size(); ++i) total += probs[i];
  return total;
}

double prob_e10(double alpha1, double alpha2, const Horizon& h) {
  if (!(alpha2 >= 0.0) || !(alpha1 >= alpha2) || !(alpha1 > 0.0) || !(alpha1 < h.alpha_max()))
    throw BadParameter("prob_e10 requires 0 <= alpha2 <= alpha1 < n");
  return -alpha1 * h.slope(alpha1, alpha2);
}

double prob_e110(double alpha1, double alpha2, double alpha3, const Horizon& h) {
  if (!(alpha3 >= 0.0) || !(alpha2 >= alpha3) || !(alpha1 >= alpha2) || !(alpha1 < h.alpha_max()))
    throw BadParameter("prob_e110 requires 0 <= alpha3 < alpha2 < alpha1 < n");
  if (alpha1 - alpha2 < 1e-10 || alpha2 - alpha3 < 1e-10)
    throw DegenerateParameters("prob_e110 parameters coincide");
  const double nodes[] = {alpha1, alpha2, alpha3};
  return alpha1 * alpha2 * h.divided_difference(nodes);
}

PositiveCountDist positive_counts(const QuantilePolicy& policy, const Horizon& h) {
  if (!h.is_limit()) policy.require_fits(h.n());
  const std::size_t k = policy.k();
  std::vector<double> nodes(policy.alphas().begin(), policy.alphas().end());
  nodes.push_back(0.0);

  PositiveCountDist out;
  out.probs.resize(k + 1);
  double prefactor = 1.0;
  for (std::size_t i = 0; i <= k; ++i) {
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    const std::span<const double> used(nodes.data(), i + 1);
    out.probs[i] = sign * prefactor * h.divided_difference(used);
    if (i < k) prefactor *= policy.alpha(i);
  }
  return out;
}

PositiveCountDist positive_counts_exact(const QuantilePolicy& policy, long long n) {
  policy.require_fits(n);
  const std::size_t k = policy.k();
  std::vector<double> q(k + 1, 0.0);
  for (std::size_t j = 0; j < k; ++j) q[j] = policy.next_quantile(j, n);

  std::vector<double> state(k + 1, 0.0);
  state[0] = 1.0;
  for (long long box = 0; box < n; ++box) {
    for (std::size_t j = k; j-- > 0;) {
      const double moved = state[j] * q[j];
      state[j + 1] += moved;
      state[j] -= moved;
    }
  }
  return PositiveCountDist{std::move(state)};
}

RatioCurve::RatioCurve(QuantilePolicy policy, Horizon horizon)
    : policy_(std::move(policy)), horizon_(horizon), counts_(positive_counts(policy_, horizon_)) {
  slope_at_zero_ = 0.0;
  for (std::size_t i = 1; i <= policy_.k(); ++i) slope_at_zero_ += counts_.probs[i] / policy_.alpha(i - 1);
}

double RatioCurve::ccdf(double alpha) const {
  if (alpha <= 0.0) return 0.0;
  const double top = policy_.alpha(0);
  if (alpha >= top) {
    // Positive runs always pick a box at or above tau_1; the all-negative
    // fallback box is uniform on the quantile range below tau_1.
    double a = counts_.at_least_one();
    if (!horizon_.is_limit()) {
      const double n = static_cast<double>(horizon_.n());
      a += counts_.probs[0] * (std::min(alpha, n) - top) / (n - top);
    }
    return a;
  }
  double a = 0.0;
  for (std::size_t i = 1; i <= policy_.k(); ++i) a += counts_.probs[i] * std::min(1.0, alpha / policy_.alpha(i - 1));
  return a;
}

double RatioCurve::operator()(double alpha) const {
  if (alpha <= 0.0) return slope_at_zero_;
  return ccdf(alpha) / horizon_.max_ccdf(alpha);
}

std::size_t RatioCurve::piece(double alpha) const noexcept {
  std::size_t j = 0;
  for (double a : policy_.alphas())
    if (alpha <= a) ++j;
  return j;
}

std::pair<double, double> RatioCurve::piece_bounds(std::size_t j) const {
  const std::size_t k = policy_.k();
  if (j > k) throw BadParameter("piece index out of range");
  if (j == 0) return {policy_.alpha(0), horizon_.alpha_max()};
  return {j == k ? 0.0 : policy_.alpha(j), policy_.alpha(j - 1)};
}

double algo_ccdf(const QuantilePolicy& policy, const Horizon& h, double alpha) {
  return RatioCurve(policy, h).ccdf(alpha);
}

MinRatio min_ratio(const QuantilePolicy& policy, const Horizon& h) {
  const RatioCurve curve(policy, h);
  MinRatio out{kInf, 0.0, {}};
  for (std::size_t j = policy.k() + 1; j-- > 0;) {
    const auto [lo, hi] = curve.piece_bounds(j);
    PieceMin piece{j, lo, hi, 0.0, 0.0};
    if (j == 0 && h.is_limit()) {
      // c_0 = (1 - e^{-alpha_1}) / (1 - e^{-alpha}) decreases towards its infimum.
      piece.value = curve.counts().at_least_one();
      piece.argmin = kInf;
    } else {
      const auto grid = (j == 0) ? log_grid(lo, hi, kGridPoints) : linear_grid(lo, hi, kGridPoints);
      const Minimum m = grid_then_golden(curve, grid);
      piece.value = m.value;
      piece.argmin = m.x;
    }
    if (piece.value < out.c_star) {
      out.c_star = piece.value;
      out.alpha_star = piece.argmin;
    }
    out.pieces.push_back(piece);
  }
  return out;
}

DominanceReport check_dominance(const QuantilePolicy& policy, long long n, double c, std::size_t grid_size) {
  if (grid_size < 100) throw BadParameter("dominance grid needs at least 100 points");
  const RatioCurve curve(policy, Horizon::finite(n));
  const double lo = std::min(1e-6, policy.alpha(policy.k() - 1) * 1e-3);
  const auto grid = log_grid(lo, static_cast<double>(n), grid_size);

  DominanceReport report{true, grid[0], kInf, std::nullopt};
  for (double alpha : grid) {
    const double a = curve.ccdf(alpha);
    const double g = curve.max_ccdf(alpha);
    const double r = a / g;
    if (r < report.worst_ratio) {
      report.worst_ratio = r;
      report.worst_alpha = alpha;
    }
    if (a < c * g - 1e-15 && !report.first_violation) {
      report.holds = false;
      report.first_violation = alpha;
    }
  }
  return report;
}

double exact_policy_value(const QuantilePolicy& policy, const DiscreteDistribution& dist, long long n) {
  const PositiveCountDist counts = positive_counts_exact(policy, n);
  // The selected box is the one positive at quantile alpha_j / n when the
  // run ends with j positives, or the first (negative at alpha_1 / n) box.
  // Its value depends on that test alone, independent of the other boxes.
  CompensatedSum value;
  if (counts.probs[0] > 0.0) value.add(counts.probs[0] * negative_mean(dist, policy.next_quantile(0, n)));
  for (std::size_t j = 1; j <= policy.k(); ++j) {
    if (counts.probs[j] > 0.0) value.add(counts.probs[j] * positive_mean(dist, policy.next_quantile(j - 1, n)));
  }
  return value.value();
}

}  // namespace tprobe
