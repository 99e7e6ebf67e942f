#include "aisel/marglik.hpp"

#include <cmath>
#include <stdexcept>

#include "aisel/errors.hpp"

namespace aisel {

double f_hat(const Ensemble& ensemble) {
  if (!ensemble.normalized)
    throw std::invalid_argument("f_hat: ensemble is not normalized");
  // particles whose estimator returned zero carry weight zero from the next
  // weighting step on; they are excluded here the same way, with the
  // remaining weights renormalized
  double sum = 0.0;
  double wsum = 0.0;
  for (const auto& p : ensemble.particles) {
    const double w = std::exp(p.log_weight);
    if (w == 0.0 || std::isinf(p.log_lhat)) continue;
    sum += w * (p.log_prior + p.log_lhat - p.log_pi0);
    wsum += w;
  }
  if (wsum == 0.0)
    throw DegeneracyError("f_hat: no particle carries a usable estimate");
  return sum / wsum;
}

double log_ml_trapezoid(std::span<const double> temperatures,
                        std::span<const double> f_values) {
  if (temperatures.size() != f_values.size())
    throw std::invalid_argument("log_ml_trapezoid: length mismatch");
  if (temperatures.size() < 2)
    throw std::invalid_argument("log_ml_trapezoid: need at least 2 points");
  double sum = 0.0;
  for (std::size_t t = 0; t + 1 < temperatures.size(); ++t) {
    sum += (temperatures[t + 1] - temperatures[t]) *
           0.5 * (f_values[t + 1] + f_values[t]);
  }
  return sum;
}

}  // namespace aisel
