#include "tprobe/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tprobe/error.hpp"
#include "tprobe/numeric.hpp"

namespace tprobe {

DiscreteDistribution::DiscreteDistribution(std::vector<double> values, std::vector<double> probs) {
  if (values.size() != probs.size()) throw BadParameter("values and probs differ in length");
  if (values.empty()) throw BadParameter("empty support");
  double total = 0.0;
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j]) || values[j] < 0.0) throw BadParameter("values must be finite and non-negative");
    if (j > 0 && !(values[j] > values[j - 1])) throw BadParameter("values must be strictly increasing");
    if (!std::isfinite(probs[j]) || probs[j] < 0.0) throw BadParameter("probabilities must be non-negative");
    total += probs[j];
  }
  if (std::abs(total - 1.0) > 1e-12) throw BadParameter("probabilities must sum to 1");

  for (std::size_t j = 0; j < values.size(); ++j) {
    if (probs[j] > 0.0) {
      values_.push_back(values[j]);
      probs_.push_back(probs[j]);
    }
  }

  const std::size_t m = values_.size();
  tail_.assign(m + 1, 0.0);
  tail_mass_.assign(m + 1, 0.0);
  for (std::size_t j = m; j-- > 0;) {
    tail_[j] = tail_[j + 1] + probs_[j];
    tail_mass_[j] = tail_mass_[j + 1] + probs_[j] * values_[j];
  }
  below_.assign(m + 1, 0.0);
  head_mass_.assign(m + 1, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    below_[j + 1] = below_[j] + probs_[j];
    head_mass_[j + 1] = head_mass_[j] + probs_[j] * values_[j];
  }
  mean_ = tail_mass_[0];
}

double DiscreteDistribution::ccdf(double x) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), x);
  return tail_[static_cast<std::size_t>(it - values_.begin())];
}

double DiscreteDistribution::cond_exp_above(std::size_t k) const {
  if (k >= size()) throw EmptyCondition("support index out of range");
  return tail_mass_[k] / tail_[k];
}

double DiscreteDistribution::cond_exp_below(std::size_t k) const {
  if (k >= size()) throw EmptyCondition("support index out of range");
  if (k == 0 || below_[k] <= 0.0) throw EmptyCondition("Pr[X < v_k] is zero");
  return head_mass_[k] / below_[k];
}

double DiscreteDistribution::expected_max(long long n) const {
  if (n < 1) throw BadParameter("expected_max needs n >= 1");
  const auto nn = static_cast<double>(n);
  CompensatedSum sum;
  for (std::size_t j = 0; j < size(); ++j) {
    // Pr[max <= v_j] - Pr[max < v_j], each written as (1 - tail)^n.
    const double at_most = pow_one_minus(tail_[j + 1], nn);
    const double strictly_below = pow_one_minus(tail_[j], nn);
    sum.add(values_[j] * (at_most - strictly_below));
  }
  return sum.value();
}

std::size_t DiscreteDistribution::index_of(double x) const noexcept {
  auto it = std::lower_bound(values_.begin(), values_.end(), x);
  if (it != values_.end() && *it == x) return static_cast<std::size_t>(it - values_.begin());
  return size();
}

std::size_t DiscreteDistribution::sample_index(Rng& rng) const noexcept {
  // Inverse transform from the top: atom j covers u in [below_j, below_{j+1}).
  const double u = rng.uniform();
  const std::size_t m = size();
  if (m <= 8) {
    for (std::size_t j = m - 1; j > 0; --j)
      if (u >= below_[j]) return j;
    return 0;
  }
  auto it = std::upper_bound(below_.begin() + 1, below_.begin() + static_cast<std::ptrdiff_t>(m), u);
  return static_cast<std::size_t>(it - below_.begin()) - 1;
}

ContinuousDistribution DiscreteDistribution::smoothed(double width) const {
  if (!(width > 0.0)) throw BadParameter("smoothing width must be positive");
  auto values = values_;
  auto probs = probs_;
  auto below = below_;
  auto quantile = [values, probs, below, width](double p) {
    const std::size_t m = values.size();
    auto it = std::upper_bound(below.begin() + 1, below.begin() + static_cast<std::ptrdiff_t>(m), p);
    const auto j = static_cast<std::size_t>(it - below.begin()) - 1;
    const double frac = std::clamp((p - below[j]) / probs[j], 0.0, 1.0);
    return values[j] + width * frac;
  };
  std::ostringstream name;
  name << "smoothed(" << describe() << ", width=" << width << ")";
  return ContinuousDistribution(quantile, name.str());
}

std::string DiscreteDistribution::describe() const {
  std::ostringstream out;
  out << "discrete{";
  for (std::size_t j = 0; j < size(); ++j) out << (j ? ", " : "") << values_[j] << ":" << probs_[j];
  out << "}";
  return out.str();
}

ContinuousDistribution::ContinuousDistribution(Quantile quantile, std::string descriptor)
    : quantile_(std::move(quantile)), descriptor_(std::move(descriptor)) {
  if (!quantile_) throw BadParameter("missing quantile function");
}

double ContinuousDistribution::quantile(double p) const { return quantile_(std::clamp(p, 0.0, 1.0)); }

double ContinuousDistribution::ccdf(double x) const {
  if (quantile_(0.0) >= x) return 1.0;
  if (quantile_(1.0) < x) return 0.0;
  double lo = 0.0;  // Q(lo) < x
  double hi = 1.0;  // Q(hi) >= x
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (quantile_(mid) < x)
      lo = mid;
    else
      hi = mid;
  }
  return 1.0 - 0.5 * (lo + hi);
}

double ccdf(const Distribution& dist, double x) {
  return std::visit([x](const auto& d) { return d.ccdf(x); }, dist);
}

double sample(const Distribution& dist, Rng& rng) {
  return std::visit([&rng](const auto& d) { return d.sample(rng); }, dist);
}

std::string describe(const Distribution& dist) {
  return std::visit([](const auto& d) { return std::string(d.describe()); }, dist);
}

DiscreteDistribution golden_nugget(double alpha, long long n) {
  const auto nn = static_cast<double>(n);
  if (!(alpha > 0.0) || !(alpha < nn)) throw BadParameter("golden_nugget requires 0 < alpha < n");
  const double p = alpha / nn;
  return DiscreteDistribution({0.0, 1.0}, {1.0 - p, p});
}

DiscreteDistribution counterexample3(long long n) {
  if (n < 3) throw BadParameter("counterexample3 requires n >= 3");
  const double p = 1.0 / static_cast<double>(n);
  return DiscreteDistribution({0.0, 1.0, 2.0, 3.0}, {std::max(0.0, 1.0 - 3.0 * p), p, p, p});
}

ContinuousDistribution f_a(long long n, double eps) {
  if (n < 1) throw BadParameter("f_a requires n >= 1");
  if (!(eps > 0.0) || !(eps < 1.0)) throw BadParameter("f_a requires 0 < eps < 1");
  const double mass = 1.0 / std::sqrt(static_cast<double>(n));
  auto quantile = [mass, eps](double p) {
    const double start = 1.0 - mass;
    if (p < start) return 0.0;
    return 1.0 - eps + 2.0 * eps * std::min(1.0, (p - start) / mass);
  };
  std::ostringstream name;
  name << "f_a(n=" << n << ", eps=" << eps << ")";
  return ContinuousDistribution(quantile, name.str());
}

DiscreteDistribution f_b(long long n) {
  if (n < 1) throw BadParameter("f_b requires n >= 1");
  const double nn = static_cast<double>(n);
  const double p = 1.0 / (nn * nn);
  return DiscreteDistribution({0.0, 1.0}, {1.0 - p, p});
}

ContinuousDistribution uniform01() {
  return ContinuousDistribution([](double p) { return p; }, "uniform01");
}

void to_json(nlohmann::json& j, const DiscreteDistribution& d) {
  j = nlohmann::json{{"values", std::vector<double>(d.values().begin(), d.values().end())},
                     {"probs", std::vector<double>(d.probs().begin(), d.probs().end())}};
}

DiscreteDistribution discrete_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("values") || !j.contains("probs"))
    throw BadParameter("distribution JSON needs \"values\" and \"probs\"");
  return DiscreteDistribution(j.at("values").get<std::vector<double>>(), j.at("probs").get<std::vector<double>>());
}

}  // namespace tprobe
