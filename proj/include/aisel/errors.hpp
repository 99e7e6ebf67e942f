#pragma once

#include <stdexcept>
#include <string>

namespace aisel {

/// All particle weights collapsed to zero (every log weight is -inf).
/// Carries the temperature index when raised inside an annealing sweep,
/// or -1 when raised outside one.
class DegeneracyError : public std::runtime_error {
 public:
  explicit DegeneracyError(const std::string& what, int temperature_index = -1)
      : std::runtime_error(what), temperature_index_(temperature_index) {}

  int temperature_index() const noexcept { return temperature_index_; }

 private:
  int temperature_index_;
};

}  // namespace aisel
