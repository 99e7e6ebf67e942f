#include "aisel/param.hpp"

#include <cmath>
#include <stdexcept>

namespace aisel {

double to_constrained(double v, const Support& s) {
  switch (s.kind) {
    case SupportKind::Real:
      return v;
    case SupportKind::Positive:
      return std::exp(v);
    case SupportKind::Interval: {
      double sig = 1.0 / (1.0 + std::exp(-v));
      return s.lo + (s.hi - s.lo) * sig;
    }
  }
  return v;
}

double to_unconstrained(double c, const Support& s) {
  switch (s.kind) {
    case SupportKind::Real:
      return c;
    case SupportKind::Positive:
      return std::log(c);
    case SupportKind::Interval: {
      double p = (c - s.lo) / (s.hi - s.lo);
      return std::log(p) - std::log1p(-p);
    }
  }
  return c;
}

double log_jacobian(double v, const Support& s) {
  switch (s.kind) {
    case SupportKind::Real:
      return 0.0;
    case SupportKind::Positive:
      return v;
    case SupportKind::Interval: {
      // d/dv [lo + (hi-lo) sigma(v)] = (hi-lo) sigma(v)(1-sigma(v))
      // log sigma(v) = -log1p(exp(-v)), log(1-sigma(v)) = -log1p(exp(v))
      double a = v > 0 ? -v - std::log1p(std::exp(-v)) : -std::log1p(std::exp(v));
      double b = v > 0 ? -std::log1p(std::exp(-v)) : v - std::log1p(std::exp(v));
      return std::log(s.hi - s.lo) + a + b;
    }
  }
  return 0.0;
}

std::vector<double> to_constrained(const ParamVector& theta,
                                   const ParamLayout& layout) {
  if (theta.size() != layout.size())
    throw std::invalid_argument("parameter/layout dimension mismatch");
  std::vector<double> out(theta.size());
  for (std::size_t i = 0; i < theta.size(); ++i)
    out[i] = to_constrained(theta[i], layout.supports[i]);
  return out;
}

ParamVector to_unconstrained(const std::vector<double>& constrained,
                             const ParamLayout& layout) {
  if (constrained.size() != layout.size())
    throw std::invalid_argument("parameter/layout dimension mismatch");
  ParamVector out;
  out.values.resize(constrained.size());
  for (std::size_t i = 0; i < constrained.size(); ++i)
    out.values[i] = to_unconstrained(constrained[i], layout.supports[i]);
  return out;
}

double log_jacobian(const ParamVector& theta, const ParamLayout& layout) {
  if (theta.size() != layout.size())
    throw std::invalid_argument("parameter/layout dimension mismatch");
  double sum = 0.0;
  for (std::size_t i = 0; i < theta.size(); ++i)
    sum += log_jacobian(theta[i], layout.supports[i]);
  return sum;
}

}  // namespace aisel
