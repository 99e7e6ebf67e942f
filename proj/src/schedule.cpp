#include "aisel/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace aisel {

AnnealingSchedule::AnnealingSchedule(std::vector<double> points)
    : points_(std::move(points)) {
  if (points_.size() < 2)
    throw std::invalid_argument("annealing schedule needs at least 2 points");
  if (points_.front() != 0.0 || points_.back() != 1.0)
    throw std::invalid_argument("annealing schedule must start at 0 and end at 1");
  for (std::size_t t = 1; t < points_.size(); ++t)
    if (!(points_[t] > points_[t - 1]))
      throw std::invalid_argument("annealing schedule must be strictly increasing");
}

AnnealingSchedule AnnealingSchedule::power(std::size_t T, double exponent) {
  if (T < 1) throw std::invalid_argument("schedule: T must be >= 1");
  if (!(exponent > 0.0)) throw std::invalid_argument("schedule: exponent must be > 0");
  std::vector<double> pts(T + 1);
  for (std::size_t t = 0; t <= T; ++t)
    pts[t] = std::pow(static_cast<double>(t) / static_cast<double>(T), exponent);
  pts[0] = 0.0;
  pts[T] = 1.0;
  return AnnealingSchedule(std::move(pts));
}

AnnealingSchedule make_schedule(ScheduleKind kind, std::size_t T,
                                double exponent) {
  switch (kind) {
    case ScheduleKind::Power:
      return AnnealingSchedule::power(T, exponent);
  }
  throw std::invalid_argument("unknown schedule kind");
}

double tau(const AnnealingSchedule& schedule) {
  const auto& a = schedule.points();
  double sum = 0.0;
  for (std::size_t t = 1; t < a.size(); ++t)
    sum += (a[t] - a[t - 1]) * (2.0 * a[t] - 1.0);
  return sum;
}

}  // namespace aisel
