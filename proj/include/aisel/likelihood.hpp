#pragma once

#include <optional>
#include <span>

#include "aisel/param.hpp"
#include "aisel/rng.hpp"

namespace aisel {

/// Log-domain unbiased likelihood estimate: exp(log_value) has expectation
/// p(y | theta) in the natural domain. var_log is an estimate of
/// Var(log p_hat) and gamma2 = n_particles * var_log estimates the variance
/// constant gamma^2(theta) such that Var(log p_hat) ~ gamma^2(theta) / N.
struct LikelihoodEstimate {
  double log_value = 0.0;
  int n_particles = 1;
  std::optional<double> var_log;
  std::optional<double> gamma2;

  void set_var_log(double v) {
    var_log = v;
    gamma2 = static_cast<double>(n_particles) * v;
  }
};

enum class VarianceMethod { None, Jackknife, Delta, Replicate };

struct EstimatorSettings {
  int n_particles = 1;
  VarianceMethod variance_method = VarianceMethod::None;
  int replicates = 20;  ///< k for VarianceMethod::Replicate
};

/// Variance of log p_hat from the inner natural-domain weights u_j of an
/// importance-sampling estimate p_hat = mean(u): (sum u^2)/(sum u)^2 - 1/N.
/// Input is the inner weights in the log domain.
double var_log_delta(std::span<const double> inner_log_weights);

/// Leave-one-out jackknife variance of log p_hat = log mean(u).
double var_log_jackknife(std::span<const double> inner_log_weights);

/// Sample variance (denominator k-1) of k independent log p_hat replicates.
double var_log_replicate(std::span<const double> log_replicates);

/// Dispatch on method; inputs are inner log weights for Delta/Jackknife and
/// log p_hat replicates for Replicate.
double var_log_estimate(std::span<const double> values, VarianceMethod method);

class Model;

/// Initial density pi_0 on the unconstrained scale: sampleable and
/// evaluable (density includes the transform Jacobian).
class InitialDensity {
 public:
  virtual ~InitialDensity() = default;
  virtual ParamVector sample(RngStream& rng) const = 0;
  virtual double log_density(const ParamVector& theta) const = 0;
};

/// A Bayesian model with an unbiasedly estimated likelihood. log_prior and
/// the estimator both take parameters on the unconstrained scale; log_prior
/// includes the transform Jacobian so that densities form proper ratios
/// against pi_0 on the same scale.
class Model {
 public:
  virtual ~Model() = default;
  virtual const ParamLayout& layout() const = 0;
  virtual double log_prior(const ParamVector& theta) const = 0;
  virtual LikelihoodEstimate estimate_loglik(const ParamVector& theta,
                                             const EstimatorSettings& settings,
                                             RngStream& rng) const = 0;
};

/// Free-function form of the estimator entry point.
LikelihoodEstimate estimate_loglik(const Model& model, const ParamVector& theta,
                                   const EstimatorSettings& settings,
                                   RngStream& rng);

}  // namespace aisel
