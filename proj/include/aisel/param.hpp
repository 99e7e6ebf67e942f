#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace aisel {

/// Support of one scalar parameter on the constrained (natural) scale.
enum class SupportKind { Real, Positive, Interval };

struct Support {
  SupportKind kind = SupportKind::Real;
  double lo = 0.0;
  double hi = 0.0;

  static Support real() { return {SupportKind::Real, 0.0, 0.0}; }
  static Support positive() { return {SupportKind::Positive, 0.0, 0.0}; }
  static Support interval(double lo, double hi) {
    return {SupportKind::Interval, lo, hi};
  }
};

/// Ordered (name, support) pairs describing a parameter point.
struct ParamLayout {
  std::vector<std::string> names;
  std::vector<Support> supports;

  std::size_t size() const { return names.size(); }
  void add(std::string name, Support support) {
    names.push_back(std::move(name));
    supports.push_back(support);
  }
};

/// Parameter point stored on the unconstrained scale. Samplers propose and
/// move on this scale; models map back to the natural scale via the layout.
struct ParamVector {
  std::vector<double> values;

  ParamVector() = default;
  explicit ParamVector(std::vector<double> v) : values(std::move(v)) {}
  std::size_t size() const { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Maps: Real -> identity, Positive -> exp, Interval -> scaled logistic.
double to_constrained(double v, const Support& s);
/// Inverse of to_constrained; +/-inf at the boundary of the domain.
double to_unconstrained(double c, const Support& s);
/// log |d constrained / d unconstrained| at unconstrained value v.
double log_jacobian(double v, const Support& s);

std::vector<double> to_constrained(const ParamVector& theta,
                                   const ParamLayout& layout);
ParamVector to_unconstrained(const std::vector<double>& constrained,
                             const ParamLayout& layout);
/// Sum of per-coordinate log Jacobians.
double log_jacobian(const ParamVector& theta, const ParamLayout& layout);

}  // namespace aisel
