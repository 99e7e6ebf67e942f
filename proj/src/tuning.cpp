#include "aisel/tuning.hpp"

#include <cmath>
#include <stdexcept>

namespace aisel {

TimingModel fit_timing(std::span<const std::pair<int, double>> samples) {
  if (samples.size() < 2)
    throw std::invalid_argument("fit_timing: need at least 2 samples");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  const double n = static_cast<double>(samples.size());
  bool distinct = false;
  for (const auto& [N, secs] : samples) {
    if (N != samples.front().first) distinct = true;
    const double x = static_cast<double>(N);
    sx += x;
    sy += secs;
    sxx += x * x;
    sxy += x * secs;
  }
  if (!distinct)
    throw std::invalid_argument("fit_timing: all N values are equal");
  TimingModel tm;
  tm.tau1 = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  tm.tau0 = (sy - tm.tau1 * sx) / n;
  if (tm.tau0 < 0.0) tm.tau0 = 0.0;
  return tm;
}

double estimate_gamma_bar2(const Model& model, const InitialDensity& pi0,
                           int J, int N0, RngStream& rng,
                           VarianceMethod variance_method, int replicates) {
  if (J < 1) throw std::invalid_argument("estimate_gamma_bar2: J must be >= 1");
  if (N0 < 2) throw std::invalid_argument("estimate_gamma_bar2: N0 must be >= 2");
  EstimatorSettings settings;
  settings.n_particles = N0;
  settings.variance_method = variance_method;
  settings.replicates = replicates;
  double sum_var = 0.0;
  for (int j = 0; j < J; ++j) {
    ParamVector theta = pi0.sample(rng);
    auto est = model.estimate_loglik(theta, settings, rng);
    sum_var += est.var_log.value_or(0.0);
  }
  return static_cast<double>(N0) * sum_var / static_cast<double>(J);
}

double sigma2_opt(double tau, const TimingModel& timing, double gamma_bar2) {
  if (!(tau > 0.0)) throw std::invalid_argument("sigma2_opt: tau must be > 0");
  if (!(gamma_bar2 > 0.0))
    throw std::invalid_argument("sigma2_opt: gamma_bar2 must be > 0");
  if (timing.tau0 <= 0.0) return 1.0 / tau;
  const double b = gamma_bar2 * tau * timing.tau1;
  return (std::sqrt(b * b + 4.0 * gamma_bar2 * tau * timing.tau0 * timing.tau1) -
          b) /
         (2.0 * tau * timing.tau0);
}

int n_opt(double tau, const TimingModel& timing, double gamma_bar2) {
  if (!(gamma_bar2 > 0.0)) return 1;
  const double n = gamma_bar2 / sigma2_opt(tau, timing, gamma_bar2);
  const long rounded = std::lround(n);
  return rounded < 1 ? 1 : static_cast<int>(rounded);
}

double ct_star(double sigma2, double tau, const TimingModel& timing,
               double gamma_bar2) {
  if (!(sigma2 > 0.0))
    throw std::invalid_argument("ct_star: sigma2 must be > 0");
  return std::exp(tau * sigma2) *
         (gamma_bar2 * timing.tau1 / sigma2 + timing.tau0);
}

double tnv(double var_estimator, double wall_seconds) {
  return var_estimator * wall_seconds;
}

}  // namespace aisel
