#include "aisel/theory.hpp"

#include <cmath>
#include <stdexcept>

namespace aisel {

ConjugatePath ConjugatePath::from(const GaussianToy& toy) {
  ConjugatePath p;
  p.prior_mean = toy.prior_mean();
  p.prior_var = toy.prior_var();
  // match loglik(theta) = const - prec (theta - mode)^2 / 2 by evaluation
  const double l0 = toy.exact_loglik(0.0);
  const double l1 = toy.exact_loglik(1.0);
  const double lm1 = toy.exact_loglik(-1.0);
  p.lik_prec = -(l1 + lm1 - 2.0 * l0);
  p.lik_mean = (l1 - lm1) / (2.0 * p.lik_prec);
  p.lik_const = l0 + 0.5 * p.lik_prec * p.lik_mean * p.lik_mean;
  return p;
}

double ConjugatePath::loglik(double theta) const {
  const double d = theta - lik_mean;
  return lik_const - 0.5 * lik_prec * d * d;
}

double ConjugatePath::xi_var(double a) const {
  return 1.0 / (1.0 / prior_var + a * lik_prec);
}

double ConjugatePath::xi_mean(double a) const {
  return xi_var(a) * (prior_mean / prior_var + a * lik_prec * lik_mean);
}

double ess_log_weights(std::span<const double> log_weights) {
  std::vector<double> doubled(log_weights.size());
  for (std::size_t i = 0; i < log_weights.size(); ++i)
    doubled[i] = 2.0 * log_weights[i];
  const double ls = log_sum_exp(log_weights);
  const double ls2 = log_sum_exp(doubled);
  return std::exp(2.0 * ls - ls2);
}

PerfectMixingResult perfect_mixing_ais(const ConjugatePath& target,
                                       const AnnealingSchedule& schedule,
                                       std::size_t M, NoiseSpec noise,
                                       RngStream& rng) {
  if (noise.sigma2 < 0.0)
    throw std::invalid_argument("perfect_mixing_ais: sigma2 must be >= 0");
  const auto& a = schedule.points();
  const std::size_t T = schedule.steps();
  const double s2 = noise.sigma2;
  const double sd = std::sqrt(s2);

  PerfectMixingResult out;
  out.log_w_exact.resize(M);
  out.log_w_noisy.resize(M);

  for (std::size_t i = 0; i < M; ++i) {
    double lw = 0.0;
    double lw_noisy = 0.0;
    for (std::size_t t = 1; t <= T; ++t) {
      const double a_prev = a[t - 1];
      const double da = a[t] - a_prev;
      const double theta =
          target.xi_mean(a_prev) + std::sqrt(target.xi_var(a_prev)) * rng.normal();
      const double inc = da * target.loglik(theta);
      lw += inc;
      if (s2 > 0.0) {
        // z-marginal of the extended interpolation density at a_prev:
        // the base N(-s2/2, s2) exponentially tilted by exp(a_prev z)
        const double z = -0.5 * s2 + a_prev * s2 + sd * rng.normal();
        lw_noisy += inc + da * z;
      } else {
        lw_noisy += inc;
      }
    }
    out.log_w_exact[i] = lw;
    out.log_w_noisy[i] = lw_noisy;
  }
  out.ess_exact = ess_log_weights(out.log_w_exact);
  out.ess_noisy = ess_log_weights(out.log_w_noisy);
  out.ess_ratio = out.ess_noisy / out.ess_exact;
  return out;
}

double closed_form_variance(const Ensemble& ensemble,
                            std::span<const double> phi) {
  if (!ensemble.normalized)
    throw std::invalid_argument("closed_form_variance: unnormalized ensemble");
  if (ensemble.resampled_ever)
    throw std::invalid_argument(
        "closed_form_variance: invalid after resampling (particles are no "
        "longer independent)");
  if (phi.size() != ensemble.size())
    throw std::invalid_argument("closed_form_variance: phi length mismatch");
  const double m = static_cast<double>(ensemble.size());
  double phi_hat = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i)
    phi_hat += std::exp(ensemble.particles[i].log_weight) * phi[i];
  double sum = 0.0;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    const double w = std::exp(ensemble.particles[i].log_weight);
    const double d = phi[i] - phi_hat;
    sum += d * d * w * w;
  }
  return m * sum;
}

}  // namespace aisel
