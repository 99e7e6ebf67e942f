#include "aisel/particle_filter.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "aisel/weights.hpp"

namespace aisel {

PFResult bootstrap_pf(const StateSpaceModel& model,
                      const std::vector<double>& y, int n_particles,
                      RngStream& rng) {
  if (n_particles < 2)
    throw std::invalid_argument("bootstrap_pf: need at least 2 particles");
  if (y.empty()) throw std::invalid_argument("bootstrap_pf: empty series");

  const int n = static_cast<int>(y.size());
  const int N = n_particles;
  const double logN = std::log(static_cast<double>(N));
  constexpr double kNegInf = -std::numeric_limits<double>::infinity();

  std::vector<double> h(N), h_next(N), lw(N), w(N);
  PFResult out;
  out.per_step_log_means.reserve(n);

  for (int k = 0; k < N; ++k) h[k] = model.init_state_sampler(rng);

  for (int t = 0; t < n; ++t) {
    if (t > 0) {
      const double y_prev = y[t - 1];
      for (int k = 0; k < N; ++k)
        h_next[k] = model.transition_sampler(h[k], y_prev, rng);
      h.swap(h_next);
    }
    double max_lw = kNegInf;
    for (int k = 0; k < N; ++k) {
      lw[k] = model.measurement_logdensity(y[t], h[k]);
      if (lw[k] > max_lw) max_lw = lw[k];
    }
    if (max_lw == kNegInf) {
      out.degenerate = true;
      out.per_step_log_means.push_back(kNegInf);
      out.log_lhat = kNegInf;
      return out;
    }
    double sum = 0.0;
    for (int k = 0; k < N; ++k) {
      w[k] = std::exp(lw[k] - max_lw);
      sum += w[k];
    }
    out.per_step_log_means.push_back(max_lw + std::log(sum) - logN);
    for (int k = 0; k < N; ++k) w[k] /= sum;
    auto idx = resample_indices(w, N, ResampleMethod::Multinomial, rng);
    for (int k = 0; k < N; ++k) h_next[k] = h[idx[k]];
    h.swap(h_next);
  }
  double total = 0.0;
  for (double v : out.per_step_log_means) total += v;
  out.log_lhat = total;
  return out;
}

}  // namespace aisel
