#pragma once

#include <memory>
#include <vector>

#include "aisel/likelihood.hpp"

namespace aisel {

/// Conjugate normal-normal model: y_i ~ N(theta, obs_var) with known
/// obs_var, prior theta ~ N(prior_mean, prior_var). The likelihood is
/// available in closed form, as are the posterior and the evidence, so the
/// model doubles as an analytic oracle.
///
/// Likelihood-estimation noise can be injected in two ways:
///   - direct: log p_hat = log p + z with z ~ N(-sigma2/2, sigma2), so
///     Var(log p_hat) = sigma2 exactly and E[p_hat] = p;
///   - averaged: p_hat = p * mean_k exp(z_k) over N inner replicates with
///     per-replicate variance rep_sigma2; cost scales with N and
///     Var(log p_hat) ~ (exp(rep_sigma2) - 1)/N.
/// Both keep the estimator unbiased in the natural domain.
class GaussianToy final : public Model {
 public:
  enum class NoiseMode { Direct, Averaged };

  GaussianToy(std::vector<double> y, double obs_var, double prior_mean,
              double prior_var);

  /// Synthetic data: n draws from N(true_theta, obs_var).
  static GaussianToy synthetic(int n, double true_theta, double obs_var,
                               double prior_mean, double prior_var,
                               RngStream& rng);

  void set_noise(NoiseMode mode, double sigma2) {
    noise_mode_ = mode;
    noise_sigma2_ = sigma2;
  }

  const ParamLayout& layout() const override { return layout_; }
  double log_prior(const ParamVector& theta) const override;
  LikelihoodEstimate estimate_loglik(const ParamVector& theta,
                                     const EstimatorSettings& settings,
                                     RngStream& rng) const override;

  double exact_loglik(double theta) const;
  double posterior_mean() const;
  double posterior_var() const;
  double log_evidence() const;
  double prior_mean() const { return prior_mean_; }
  double prior_var() const { return prior_var_; }
  int n() const { return n_; }

 private:
  ParamLayout layout_;
  int n_;
  double ybar_;
  double ss_res_;  ///< sum (y_i - ybar)^2
  double obs_var_;
  double prior_mean_;
  double prior_var_;
  NoiseMode noise_mode_ = NoiseMode::Direct;
  double noise_sigma2_ = 0.0;
};

/// pi_0 = the model's own prior.
std::unique_ptr<InitialDensity> default_pi0(const GaussianToy& model);

}  // namespace aisel
