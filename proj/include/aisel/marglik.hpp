#pragma once

#include <span>
#include <vector>

#include "aisel/weights.hpp"

namespace aisel {

/// Power-posterior evidence trace along the temperature ladder.
struct EvidenceTrace {
  std::vector<double> temperatures;  ///< a_0..a_T
  std::vector<double> f_hat;         ///< f_hat(a_t), t = 0..T
  double log_ml = 0.0;
};

/// f_hat(a_t) = sum_i W_i [log p(theta_i) + log_lhat_i - log pi0(theta_i)]
/// over the normalized pre-resampling weights; all three pieces are already
/// stored on the particles, so this costs no likelihood evaluations.
double f_hat(const Ensemble& ensemble);

/// Trapezoid rule sum_t (a_{t+1} - a_t)(f_{t+1} + f_t)/2; exact for affine f.
double log_ml_trapezoid(std::span<const double> temperatures,
                        std::span<const double> f_values);

}  // namespace aisel
