#include "aisel/sv.hpp"

#include <cmath>
#include <stdexcept>

#include "aisel/densities.hpp"

namespace aisel {

double sv_transition(double h, double mu, double phi, double sigma_eta,
                     RngStream& rng) {
  return mu * (1.0 - phi) + phi * h + sigma_eta * rng.normal();
}

double svl_transition(double h, double y, double mu, double phi,
                      double sigma_eta, double rho, RngStream& rng) {
  if (!(std::abs(rho) < 1.0))
    throw std::invalid_argument("svl_transition: |rho| must be < 1");
  const double eps = y * std::exp(-0.5 * h);
  return mu * (1.0 - phi) + phi * h +
         sigma_eta * (rho * eps + std::sqrt(1.0 - rho * rho) * rng.normal());
}

std::vector<double> simulate_sv(const SvSpec& spec, int n, RngStream& rng) {
  if (spec.sigma_eta <= 0.0)
    throw std::invalid_argument("simulate_sv: sigma_eta must be positive");
  if (!(spec.phi > -1.0 && spec.phi < 1.0))
    throw std::invalid_argument("simulate_sv: |phi| must be < 1");
  std::vector<double> y(n);
  const double v1 = spec.sigma_eta * spec.sigma_eta / (1.0 - spec.phi * spec.phi);
  double h = spec.mu + std::sqrt(v1) * rng.normal();
  for (int t = 0; t < n; ++t) {
    const double eps = rng.normal();
    y[t] = std::exp(0.5 * h) * eps;
    if (spec.rho) {
      const double rho = *spec.rho;
      const double eta = rho * eps + std::sqrt(1.0 - rho * rho) * rng.normal();
      h = spec.mu * (1.0 - spec.phi) + spec.phi * h + spec.sigma_eta * eta;
    } else {
      h = sv_transition(h, spec.mu, spec.phi, spec.sigma_eta, rng);
    }
  }
  return y;
}

StateSpaceModel make_ssm(const SvSpec& spec) {
  if (spec.rho && !(std::abs(*spec.rho) < 1.0))
    throw std::invalid_argument("make_ssm: |rho| must be < 1");
  StateSpaceModel ssm;
  const double mu = spec.mu, phi = spec.phi, se = spec.sigma_eta;
  const double v1 = se * se / (1.0 - phi * phi);
  ssm.init_state_sampler = [mu, v1](RngStream& rng) {
    return mu + std::sqrt(v1) * rng.normal();
  };
  if (spec.rho) {
    const double rho = *spec.rho;
    ssm.transition_sampler = [mu, phi, se, rho](double h, double y_prev,
                                                RngStream& rng) {
      return svl_transition(h, y_prev, mu, phi, se, rho, rng);
    };
  } else {
    ssm.transition_sampler = [mu, phi, se](double h, double, RngStream& rng) {
      return sv_transition(h, mu, phi, se, rng);
    };
  }
  ssm.measurement_logdensity = [](double y, double h) {
    return -0.5 * (log_2pi + h + y * y * std::exp(-h));
  };
  return ssm;
}

SvModel::SvModel(std::vector<double> y, bool leverage)
    : y_(std::move(y)), leverage_(leverage) {
  if (y_.empty()) throw std::invalid_argument("SvModel: empty series");
  layout_.add("mu", Support::real());
  layout_.add("phi", Support::interval(0.0, 1.0));
  layout_.add("sigma_eta", Support::positive());
  if (leverage_) layout_.add("rho", Support::interval(-1.0, 1.0));
}

SvSpec SvModel::spec_from(const ParamVector& theta) const {
  auto c = to_constrained(theta, layout_);
  SvSpec spec;
  spec.mu = c[0];
  spec.phi = c[1];
  spec.sigma_eta = c[2];
  if (leverage_) spec.rho = c[3];
  return spec;
}

double SvModel::log_prior(const ParamVector& theta) const {
  if (theta.size() != layout_.size())
    throw std::invalid_argument("SvModel: dimension mismatch");
  for (double v : theta.values)
    if (!std::isfinite(v)) return neg_inf;
  auto c = to_constrained(theta, layout_);
  double lp = log_normal_pdf(c[0], 0.0, 100.0);
  lp += log_beta_pdf(c[1], 15.0, 1.5);
  lp += log_inv_gamma_pdf(c[2], 10.0, 0.1);
  if (leverage_) lp += -std::log(2.0);  // U(-1, 1)
  return lp + log_jacobian(theta, layout_);
}

LikelihoodEstimate SvModel::estimate_loglik(const ParamVector& theta,
                                            const EstimatorSettings& settings,
                                            RngStream& rng) const {
  const auto spec = spec_from(theta);
  const auto ssm = make_ssm(spec);
  LikelihoodEstimate est;
  est.n_particles = settings.n_particles;
  if (settings.variance_method != VarianceMethod::None) {
    // inner-weight methods do not apply across resampling steps; any
    // variance request runs independent filter replicates instead
    const int k = settings.replicates;
    if (k < 2)
      throw std::invalid_argument("SvModel: replicate variance needs k >= 2");
    std::vector<double> reps(k);
    for (int r = 0; r < k; ++r)
      reps[r] = bootstrap_pf(ssm, y_, settings.n_particles, rng).log_lhat;
    est.log_value = reps[0];
    est.set_var_log(var_log_replicate(reps));
    return est;
  }
  est.log_value = bootstrap_pf(ssm, y_, settings.n_particles, rng).log_lhat;
  return est;
}

namespace {

class SvPrior final : public InitialDensity {
 public:
  explicit SvPrior(const SvModel& model) : model_(model) {}

  ParamVector sample(RngStream& rng) const override {
    const auto& layout = model_.layout();
    std::vector<double> c(layout.size());
    c[0] = 10.0 * rng.normal();
    // Beta(15, 1.5) via two gammas
    const double g1 = rng.gamma(15.0, 1.0);
    const double g2 = rng.gamma(1.5, 1.0);
    c[1] = g1 / (g1 + g2);
    // IG(10, 0.1): reciprocal of Gamma(shape 10, rate 0.1)
    c[2] = 0.1 / rng.gamma(10.0, 1.0);
    if (model_.leverage()) c[3] = 2.0 * rng.uniform() - 1.0;
    return to_unconstrained(c, layout);
  }

  double log_density(const ParamVector& theta) const override {
    return model_.log_prior(theta);
  }

 private:
  const SvModel& model_;
};

}  // namespace

std::unique_ptr<InitialDensity> default_pi0(const SvModel& model) {
  return std::make_unique<SvPrior>(model);
}

}  // namespace aisel
