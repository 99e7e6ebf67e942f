#include "aisel/weights.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "aisel/errors.hpp"

namespace aisel {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

double log_sum_exp(std::span<const double> log_values) {
  double m = kNegInf;
  for (double lv : log_values) m = std::max(m, lv);
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double lv : log_values) s += std::exp(lv - m);
  return m + std::log(s);
}

NormalizeResult normalize(std::span<const double> log_weights) {
  if (log_weights.empty())
    throw std::invalid_argument("normalize: empty weight vector");
  double ls = log_sum_exp(log_weights);
  if (ls == kNegInf)
    throw DegeneracyError("normalize: all log weights are -inf");
  NormalizeResult out;
  out.log_sum = ls;
  out.weights.resize(log_weights.size());
  for (std::size_t i = 0; i < log_weights.size(); ++i)
    out.weights[i] = std::exp(log_weights[i] - ls);
  return out;
}

double normalize_ensemble(Ensemble& ensemble) {
  std::vector<double> lw(ensemble.size());
  for (std::size_t i = 0; i < ensemble.size(); ++i)
    lw[i] = ensemble.particles[i].log_weight;
  double ls = log_sum_exp(lw);
  if (ls == kNegInf)
    throw DegeneracyError("normalize: all log weights are -inf");
  for (auto& p : ensemble.particles) p.log_weight -= ls;
  ensemble.normalized = true;
  return ls;
}

double ess(std::span<const double> normalized_weights) {
  double s2 = 0.0;
  for (double w : normalized_weights) s2 += w * w;
  return 1.0 / s2;
}

double ess(const Ensemble& ensemble) {
  if (!ensemble.normalized)
    throw std::invalid_argument("ess: ensemble is not normalized");
  double s2 = 0.0;
  for (const auto& p : ensemble.particles) {
    double w = std::exp(p.log_weight);
    s2 += w * w;
  }
  return 1.0 / s2;
}

std::vector<std::size_t> resample_indices(std::span<const double> weights,
                                          std::size_t count,
                                          ResampleMethod method,
                                          RngStream& rng) {
  const std::size_t n = weights.size();
  // never let cumulative-sum rounding walk into a zero-weight tail
  std::size_t last = n - 1;
  while (last > 0 && !(weights[last] > 0.0)) --last;
  std::vector<std::size_t> idx;
  idx.reserve(count);
  if (method == ResampleMethod::Systematic) {
    double u = rng.uniform();
    double cum = weights[0];
    std::size_t j = 0;
    for (std::size_t i = 0; i < count; ++i) {
      double p = (static_cast<double>(i) + u) / static_cast<double>(count);
      while (p > cum && j < last) cum += weights[++j];
      idx.push_back(j);
    }
  } else {
    // multinomial via sorted uniform spacings, single pass over the cdf
    std::vector<double> us(count);
    for (auto& u : us) u = rng.uniform();
    std::sort(us.begin(), us.end());
    double cum = weights[0];
    std::size_t j = 0;
    for (double u : us) {
      while (u > cum && j < last) cum += weights[++j];
      idx.push_back(j);
    }
  }
  return idx;
}

Ensemble resample(const Ensemble& ensemble, ResampleMethod method,
                  RngStream& rng) {
  if (!ensemble.normalized)
    throw std::invalid_argument("resample: ensemble is not normalized");
  const std::size_t m = ensemble.size();
  std::vector<double> w(m);
  for (std::size_t i = 0; i < m; ++i)
    w[i] = std::exp(ensemble.particles[i].log_weight);
  auto idx = resample_indices(w, m, method, rng);

  Ensemble out;
  out.particles.reserve(m);
  const double lw = -std::log(static_cast<double>(m));
  for (std::size_t i : idx) {
    Particle p = ensemble.particles[i];
    p.log_weight = lw;
    out.particles.push_back(std::move(p));
  }
  out.normalized = true;
  out.resampled_ever = true;
  return out;
}

}  // namespace aisel
