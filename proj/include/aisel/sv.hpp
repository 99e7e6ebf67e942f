#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "aisel/likelihood.hpp"
#include "aisel/particle_filter.hpp"

namespace aisel {

/// Stochastic volatility model:
///   y_t = exp(h_t / 2) eps_t,
///   h_{t+1} = mu (1 - phi) + phi h_t + sigma_eta eta_t,
///   h_1 ~ N(mu, sigma_eta^2 / (1 - phi^2))   (stationary law).
/// With leverage, corr(eps_t, eta_t) = rho; rho absent means standard SV.
struct SvSpec {
  double mu = -0.6;
  double phi = 0.98;
  double sigma_eta = 0.16;
  std::optional<double> rho;
};

/// One Markov step of the standard SV state equation.
double sv_transition(double h, double mu, double phi, double sigma_eta,
                     RngStream& rng);

/// Leverage step, conditioning on the realized measurement shock
/// eps_t = y_t exp(-h_t/2): the conditional law eta_t | eps_t of the unit
/// bivariate normal with correlation rho gives
///   h_{t+1} = mu(1-phi) + phi h_t + sigma_eta (rho eps_t + sqrt(1-rho^2) xi).
double svl_transition(double h, double y, double mu, double phi,
                      double sigma_eta, double rho, RngStream& rng);

std::vector<double> simulate_sv(const SvSpec& spec, int n, RngStream& rng);

/// Assembles an SvSpec into a bootstrap-filter-ready state-space model.
StateSpaceModel make_ssm(const SvSpec& spec);

/// SV model for the annealed sampler. Parameters (mu, phi, sigma_eta[, rho])
/// with priors mu ~ N(0,100), phi ~ Be(15, 1.5), sigma_eta ~ IG(10, 0.1),
/// rho ~ U(-1,1). The likelihood estimator is the bootstrap particle filter;
/// variance diagnostics use independent filter replicates.
class SvModel final : public Model {
 public:
  SvModel(std::vector<double> y, bool leverage);

  const ParamLayout& layout() const override { return layout_; }
  double log_prior(const ParamVector& theta) const override;
  LikelihoodEstimate estimate_loglik(const ParamVector& theta,
                                     const EstimatorSettings& settings,
                                     RngStream& rng) const override;

  SvSpec spec_from(const ParamVector& theta) const;
  const std::vector<double>& data() const { return y_; }
  bool leverage() const { return leverage_; }

 private:
  std::vector<double> y_;
  bool leverage_;
  ParamLayout layout_;
};

/// pi_0 for the SV runs is the prior itself.
std::unique_ptr<InitialDensity> default_pi0(const SvModel& model);

}  // namespace aisel
