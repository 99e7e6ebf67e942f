#pragma once

#include <cmath>
#include <limits>
#include <numbers>

namespace aisel {

inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();
inline const double log_2pi = std::log(2.0 * std::numbers::pi);

inline double log_normal_pdf(double x, double mean, double var) {
  double d = x - mean;
  return -0.5 * (log_2pi + std::log(var) + d * d / var);
}

inline double log_beta_pdf(double x, double a, double b) {
  if (x <= 0.0 || x >= 1.0) return neg_inf;
  return (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) -
         (std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

/// Inverse gamma with shape a, scale b: p(x) = b^a/Gamma(a) x^{-a-1} e^{-b/x}.
inline double log_inv_gamma_pdf(double x, double shape, double scale) {
  if (x <= 0.0) return neg_inf;
  return shape * std::log(scale) - std::lgamma(shape) -
         (shape + 1.0) * std::log(x) - scale / x;
}

/// log sigma(x) computed without overflow.
inline double log_logistic(double x) {
  return x > 0.0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

/// log Bernoulli(y | sigma(logit)).
inline double log_bernoulli_logit(int y, double logit) {
  return y ? log_logistic(logit) : log_logistic(-logit);
}

}  // namespace aisel
