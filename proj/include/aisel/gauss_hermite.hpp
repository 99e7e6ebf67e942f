#pragma once

#include <array>
#include <functional>

namespace aisel {

/// 32-point Gauss-Hermite rule for the weight function exp(-x^2).
/// Weights are stored in the log domain; the extreme nodes carry weights
/// near 1e-23 that only matter after multiplication by exp(x^2) terms.
struct GaussHermite32 {
  static constexpr int n = 32;
  static const std::array<double, 32> nodes;
  static const std::array<double, 32> log_weights;
};

/// integral of f(x) N(x; mean, sd^2) dx by Gauss-Hermite; f is given in the
/// log domain and the result is returned in the log domain.
double log_gh_integrate_normal(const std::function<double(double)>& log_f,
                               double mean, double sd);

/// Adaptive 2-d rule for integral of exp(log_g(eta)) d eta with a unimodal
/// integrand: centers the tensor rule at `mode` with per-axis scales
/// `scale` (typically from the inverse Hessian diagonal at the mode).
double log_gh_integrate_2d(const std::function<double(double, double)>& log_g,
                           double mode_x, double mode_y, double scale_x,
                           double scale_y);

}  // namespace aisel
