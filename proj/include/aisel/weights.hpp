#pragma once

#include <limits>
#include <span>
#include <vector>

#include "aisel/param.hpp"
#include "aisel/rng.hpp"

namespace aisel {

/// One weighted sample of the annealed sampler: a parameter point together
/// with its stored log-likelihood estimate. The stored estimate is the
/// auxiliary variable that makes the sweep a valid sampler on the extended
/// space; it is only refreshed when a Metropolis-Hastings proposal is
/// accepted, never recomputed in the weighting step.
struct Particle {
  ParamVector theta;
  /// stored log p_hat(y | theta); -inf = estimator returned 0, NaN = not
  /// yet initialized (reweight treats that as a contract violation)
  double log_lhat = std::numeric_limits<double>::quiet_NaN();
  double log_weight = 0.0;  ///< log of the normalized weight when the ensemble is normalized
  double log_prior = 0.0;   ///< cached log prior density (unconstrained scale)
  double log_pi0 = 0.0;     ///< cached log initial density (unconstrained scale)
  double cum_log_inc = 0.0; ///< accumulated log weight increments since init (diagnostic)
};

struct Ensemble {
  std::vector<Particle> particles;
  bool normalized = false;
  bool resampled_ever = false;

  std::size_t size() const { return particles.size(); }
};

struct NormalizeResult {
  std::vector<double> weights;  ///< natural-domain, sums to 1
  double log_sum;               ///< log sum exp of the inputs
};

/// Stable log-sum-exp; -inf entries contribute zero mass.
double log_sum_exp(std::span<const double> log_values);

/// Normalizes log weights by max subtraction. Throws DegeneracyError when
/// every entry is -inf (the estimator collapsed for all particles).
NormalizeResult normalize(std::span<const double> log_weights);

/// Renormalizes the ensemble's log weights in place; returns log sum of the
/// unnormalized weights.
double normalize_ensemble(Ensemble& ensemble);

/// ESS = 1 / sum W_i^2 for normalized weights; in [1, M].
double ess(const Ensemble& ensemble);
double ess(std::span<const double> normalized_weights);

enum class ResampleMethod { Systematic, Multinomial };

/// Draws M ancestor indices with expected replication count M * W_i.
std::vector<std::size_t> resample_indices(std::span<const double> weights,
                                          std::size_t count,
                                          ResampleMethod method,
                                          RngStream& rng);

/// Resamples a normalized ensemble to uniform weights 1/M. Stored
/// likelihood estimates travel with their parameter points.
Ensemble resample(const Ensemble& ensemble, ResampleMethod method,
                  RngStream& rng);

}  // namespace aisel
