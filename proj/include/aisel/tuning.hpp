#pragma once

#include <span>
#include <utility>
#include <vector>

#include "aisel/likelihood.hpp"

namespace aisel {

/// Cost model for one likelihood estimate: seconds = tau0 + N * tau1.
struct TimingModel {
  double tau0 = 0.0;  ///< overhead per estimate
  double tau1 = 0.0;  ///< per inner particle
};

struct TuningEstimates {
  double gamma_bar2 = 0.0;
  double sigma2_opt = 0.0;
  int n_opt = 1;
  double tau = 0.0;
};

/// Least-squares fit of (N, seconds) samples; a negative intercept is
/// clamped to zero. Needs at least two distinct N values.
TimingModel fit_timing(std::span<const std::pair<int, double>> samples);

/// gamma_bar^2 = (N0 / J) sum_j Var_hat_{N0, theta_j}(z) over J draws
/// theta_j ~ pi_0.
double estimate_gamma_bar2(const Model& model, const InitialDensity& pi0,
                           int J, int N0, RngStream& rng,
                           VarianceMethod variance_method = VarianceMethod::Delta,
                           int replicates = 20);

/// Optimal Var(log p_hat): minimizes ct_star. Equals 1/tau when tau0 = 0,
/// and is continuous in tau0 at zero.
double sigma2_opt(double tau, const TimingModel& timing, double gamma_bar2);

/// Optimal particle count round(gamma_bar2 / sigma2_opt), floored at 1.
/// (Constant across theta; equals tau * gamma_bar2 when tau0 = 0.)
int n_opt(double tau, const TimingModel& timing, double gamma_bar2);

/// Computing-cost profile CT*(sigma2) = exp(tau sigma2)
/// (gamma_bar2 tau1 / sigma2 + tau0); minimized at sigma2_opt.
double ct_star(double sigma2, double tau, const TimingModel& timing,
               double gamma_bar2);

/// Time normalized variance: estimator variance x total compute seconds.
double tnv(double var_estimator, double wall_seconds);

}  // namespace aisel
