#pragma once

#include <span>
#include <vector>

#include "aisel/schedule.hpp"
#include "aisel/toy.hpp"
#include "aisel/weights.hpp"

namespace aisel {

/// Synthetic log-likelihood-estimation noise: the base law of
/// z = log p_hat - log p is N(-sigma2/2, sigma2), which keeps exp(z)
/// unbiased with Var(z) = sigma2.
struct NoiseSpec {
  double sigma2 = 0.0;
};

/// 1-d conjugate target whose every interpolation density
/// xi_a ~ prior^(1-a) (prior * lik)^a (with pi_0 = prior) is a closed-form
/// normal, so the idealized perfectly-mixing kernel can draw from it
/// exactly.
struct ConjugatePath {
  double prior_mean = 0.0;
  double prior_var = 1.0;
  double lik_mean = 0.0;   ///< the likelihood peaks here
  double lik_prec = 1.0;   ///< n / obs_var of the underlying toy
  double lik_const = 0.0;  ///< loglik(theta) = lik_const - lik_prec (theta - lik_mean)^2 / 2

  static ConjugatePath from(const GaussianToy& toy);

  double loglik(double theta) const;
  double xi_var(double a) const;
  double xi_mean(double a) const;
};

struct PerfectMixingResult {
  std::vector<double> log_w_exact;  ///< AIS weights with the exact likelihood
  std::vector<double> log_w_noisy;  ///< AISEL weights with injected noise
  double ess_exact = 0.0;
  double ess_noisy = 0.0;
  double ess_ratio = 1.0;
};

/// Idealized AIS with a perfectly mixing kernel and no resampling: each
/// trajectory draws theta^(t) from xi_{a_{t-1}} exactly and a fresh noise
/// variable from the z-marginal of the extended-space interpolation density
/// (the exponentially tilted base law). The exact and noisy weights share
/// the theta path, so the returned ESS ratio estimates exp(-tau sigma2)
/// with the theta-driven variation cancelled.
PerfectMixingResult perfect_mixing_ais(const ConjugatePath& target,
                                       const AnnealingSchedule& schedule,
                                       std::size_t M, NoiseSpec noise,
                                       RngStream& rng);

/// ESS of unnormalized log weights: (sum w)^2 / sum w^2 = M / (1 + CV).
double ess_log_weights(std::span<const double> log_weights);

/// Closed-form asymptotic variance estimate
/// M sum_i (phi_i - phi_hat)^2 W_i^2, valid only when the producing run
/// never resampled (particles independent); refuses otherwise.
double closed_form_variance(const Ensemble& ensemble,
                            std::span<const double> phi);

}  // namespace aisel
