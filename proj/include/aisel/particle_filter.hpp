#pragma once

#include <functional>
#include <vector>

#include "aisel/rng.hpp"

namespace aisel {

/// Generic univariate state-space model for the bootstrap filter.
/// transition_sampler receives the previous observation so that leverage
/// models can condition on the realized measurement shock; models without
/// leverage ignore it. y_prev is NaN when propagating the initial state.
struct StateSpaceModel {
  std::function<double(RngStream&)> init_state_sampler;
  std::function<double(double h, double y_prev, RngStream&)> transition_sampler;
  std::function<double(double y, double h)> measurement_logdensity;
};

struct PFResult {
  double log_lhat = 0.0;
  std::vector<double> per_step_log_means;
  bool degenerate = false;
};

/// Gordon-Salmond-Smith bootstrap particle filter with multinomial
/// resampling after every step. exp(log_lhat) is unbiased for p(y | theta).
/// If every measurement weight hits zero at some step the result is marked
/// degenerate with log_lhat = -inf.
PFResult bootstrap_pf(const StateSpaceModel& model,
                      const std::vector<double>& y, int n_particles,
                      RngStream& rng);

}  // namespace aisel
