#include "aisel/likelihood.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "aisel/weights.hpp"

namespace aisel {

double var_log_delta(std::span<const double> inner_log_weights) {
  const std::size_t n = inner_log_weights.size();
  if (n < 2) throw std::invalid_argument("var_log_delta: need >= 2 inner weights");
  double ls1 = log_sum_exp(inner_log_weights);
  std::vector<double> doubled(n);
  for (std::size_t i = 0; i < n; ++i) doubled[i] = 2.0 * inner_log_weights[i];
  double ls2 = log_sum_exp(doubled);
  double v = std::exp(ls2 - 2.0 * ls1) - 1.0 / static_cast<double>(n);
  return v > 0.0 ? v : 0.0;
}

double var_log_jackknife(std::span<const double> inner_log_weights) {
  const std::size_t n = inner_log_weights.size();
  if (n < 2)
    throw std::invalid_argument("var_log_jackknife: need >= 2 inner weights");
  double ls = log_sum_exp(inner_log_weights);
  // leave-one-out log means: log((S - u_j)/(n-1)), computed stably as
  // ls + log1p(-exp(lw_j - ls)) - log(n-1)
  std::vector<double> loo(n);
  double mean = 0.0;
  const double logn1 = std::log(static_cast<double>(n - 1));
  for (std::size_t j = 0; j < n; ++j) {
    double r = inner_log_weights[j] - ls;
    double rest = r < 0.0 ? std::log1p(-std::exp(r)) : -INFINITY;
    loo[j] = ls + rest - logn1;
    mean += loo[j];
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (double v : loo) ss += (v - mean) * (v - mean);
  return ss * static_cast<double>(n - 1) / static_cast<double>(n);
}

double var_log_replicate(std::span<const double> log_replicates) {
  const std::size_t k = log_replicates.size();
  if (k < 2)
    throw std::invalid_argument("var_log_replicate: need >= 2 replicates");
  double mean = 0.0;
  for (double v : log_replicates) mean += v;
  mean /= static_cast<double>(k);
  double ss = 0.0;
  for (double v : log_replicates) ss += (v - mean) * (v - mean);
  return ss / static_cast<double>(k - 1);
}

double var_log_estimate(std::span<const double> values, VarianceMethod method) {
  switch (method) {
    case VarianceMethod::Delta:
      return var_log_delta(values);
    case VarianceMethod::Jackknife:
      return var_log_jackknife(values);
    case VarianceMethod::Replicate:
      return var_log_replicate(values);
    case VarianceMethod::None:
      break;
  }
  throw std::invalid_argument("var_log_estimate: no variance method selected");
}

LikelihoodEstimate estimate_loglik(const Model& model, const ParamVector& theta,
                                   const EstimatorSettings& settings,
                                   RngStream& rng) {
  if (theta.size() != model.layout().size())
    throw std::invalid_argument("estimate_loglik: dimension mismatch");
  return model.estimate_loglik(theta, settings, rng);
}

}  // namespace aisel
