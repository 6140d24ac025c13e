#ifndef WLSTATS_SUMMATION_HPP
#define WLSTATS_SUMMATION_HPP

#include <cmath>
#include <cstddef>
#include <span>

namespace wlstats {

// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      compensation_ += (sum_ - t) + x;
    } else {
      compensation_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

  double value() const noexcept { return sum_ + compensation_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept {
  CompensatedSum s;
  for (double x : xs) s.add(x);
  return s.value();
}

// Arithmetic mean in index order. Returns 0 for an empty span.
inline double compensated_mean(std::span<const double> xs) noexcept {
  if (xs.empty()) return 0.0;
  return compensated_sum(xs) / static_cast<double>(xs.size());
}

}  // namespace wlstats

#endif  // WLSTATS_SUMMATION_HPP
