#include "aisel/toy.hpp"

#include <cmath>
#include <stdexcept>

#include "aisel/densities.hpp"
#include "aisel/weights.hpp"

namespace aisel {

GaussianToy::GaussianToy(std::vector<double> y, double obs_var,
                         double prior_mean, double prior_var)
    : n_(static_cast<int>(y.size())),
      obs_var_(obs_var),
      prior_mean_(prior_mean),
      prior_var_(prior_var) {
  if (y.empty()) throw std::invalid_argument("GaussianToy: empty data");
  if (obs_var <= 0.0 || prior_var <= 0.0)
    throw std::invalid_argument("GaussianToy: variances must be positive");
  double s = 0.0;
  for (double v : y) s += v;
  ybar_ = s / n_;
  ss_res_ = 0.0;
  for (double v : y) ss_res_ += (v - ybar_) * (v - ybar_);
  layout_.add("theta", Support::real());
}

GaussianToy GaussianToy::synthetic(int n, double true_theta, double obs_var,
                                   double prior_mean, double prior_var,
                                   RngStream& rng) {
  std::vector<double> y(n);
  const double sd = std::sqrt(obs_var);
  for (auto& v : y) v = true_theta + sd * rng.normal();
  return GaussianToy(std::move(y), obs_var, prior_mean, prior_var);
}

double GaussianToy::log_prior(const ParamVector& theta) const {
  return log_normal_pdf(theta[0], prior_mean_, prior_var_);
}

double GaussianToy::exact_loglik(double theta) const {
  double d = theta - ybar_;
  return -0.5 * n_ * (log_2pi + std::log(obs_var_)) -
         (ss_res_ + n_ * d * d) / (2.0 * obs_var_);
}

double GaussianToy::posterior_var() const {
  return 1.0 / (1.0 / prior_var_ + n_ / obs_var_);
}

double GaussianToy::posterior_mean() const {
  return posterior_var() * (prior_mean_ / prior_var_ + n_ * ybar_ / obs_var_);
}

double GaussianToy::log_evidence() const {
  // conjugate identity: log p(y) = loglik(t) + log prior(t) - log posterior(t)
  double t = posterior_mean();
  return exact_loglik(t) + log_normal_pdf(t, prior_mean_, prior_var_) -
         log_normal_pdf(t, posterior_mean(), posterior_var());
}

LikelihoodEstimate GaussianToy::estimate_loglik(const ParamVector& theta,
                                                const EstimatorSettings& settings,
                                                RngStream& rng) const {
  if (theta.size() != 1)
    throw std::invalid_argument("GaussianToy: dimension mismatch");
  const double exact = exact_loglik(theta[0]);
  LikelihoodEstimate est;
  est.n_particles = settings.n_particles;
  if (noise_sigma2_ == 0.0) {
    est.log_value = exact;
    if (noise_mode_ == NoiseMode::Averaged) {
      // keep the cost model honest: one draw per inner replicate
      for (int k = 0; k < settings.n_particles; ++k) rng.normal();
    }
    est.set_var_log(0.0);
    return est;
  }
  if (noise_mode_ == NoiseMode::Direct) {
    const double sd = std::sqrt(noise_sigma2_);
    est.log_value = exact - 0.5 * noise_sigma2_ + sd * rng.normal();
    est.set_var_log(noise_sigma2_);
    return est;
  }
  // Averaged: p_hat = p * mean exp(z_k), z_k ~ N(-s2/2, s2)
  const int n = settings.n_particles;
  const double sd = std::sqrt(noise_sigma2_);
  std::vector<double> lz(n);
  for (int k = 0; k < n; ++k)
    lz[k] = -0.5 * noise_sigma2_ + sd * rng.normal();
  est.log_value = exact + log_sum_exp(lz) - std::log(n);
  est.set_var_log(var_log_delta(lz));
  return est;
}

namespace {

class ToyPrior final : public InitialDensity {
 public:
  ToyPrior(double mean, double var) : mean_(mean), var_(var) {}
  ParamVector sample(RngStream& rng) const override {
    return ParamVector({mean_ + std::sqrt(var_) * rng.normal()});
  }
  double log_density(const ParamVector& theta) const override {
    return log_normal_pdf(theta[0], mean_, var_);
  }

 private:
  double mean_, var_;
};

}  // namespace

std::unique_ptr<InitialDensity> default_pi0(const GaussianToy& model) {
  return std::make_unique<ToyPrior>(model.prior_mean(), model.prior_var());
}

}  // namespace aisel
