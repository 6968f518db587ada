#pragma once

#include <cmath>

namespace tprobe {

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// (1 - q)^n evaluated as exp(n * log1p(-q)).
inline double pow_one_minus(double q, double n) noexcept {
  if (q >= 1.0) return 0.0;
  return std::exp(n * std::log1p(-q));
}

}  // namespace tprobe
