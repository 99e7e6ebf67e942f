#pragma once

#include <cstddef>
#include <vector>

namespace aisel {

enum class ScheduleKind { Power };

/// Monotone temperature ladder a_0 = 0 < a_1 < ... < a_T = 1.
class AnnealingSchedule {
 public:
  /// Validates endpoints, monotonicity and length >= 2.
  explicit AnnealingSchedule(std::vector<double> points);

  /// a_t = (t/T)^exponent, t = 0..T.
  static AnnealingSchedule power(std::size_t T, double exponent);

  const std::vector<double>& points() const { return points_; }
  /// Number of steps T (points are a_0..a_T).
  std::size_t steps() const { return points_.size() - 1; }
  double operator[](std::size_t t) const { return points_[t]; }

 private:
  std::vector<double> points_;
};

AnnealingSchedule make_schedule(ScheduleKind kind, std::size_t T,
                                double exponent);

/// Schedule constant tau = sum_t (a_t - a_{t-1})(2 a_t - 1); always > 0,
/// and equal to sum_t (a_t - a_{t-1})^2. Governs how fast likelihood-noise
/// degrades the effective sample size: ESS ratio = exp(-tau * sigma^2).
double tau(const AnnealingSchedule& schedule);

}  // namespace aisel
