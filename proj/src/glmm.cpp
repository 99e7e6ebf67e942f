#include "aisel/glmm.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "aisel/densities.hpp"
#include "aisel/gauss_hermite.hpp"
#include "aisel/weights.hpp"

namespace aisel {

namespace {

struct ClusterMode {
  double eta0, eta1;    // mode of p(y_i | eta) p(eta)
  double sd0, sd1;      // sqrt of inverse negative Hessian diagonal
};

// Newton ascent on the per-cluster joint log density; concave in eta.
ClusterMode cluster_laplace(const GlmmData& data, int cluster,
                            const std::vector<double>& offsets,
                            double sigma1_sq, double sigma2_sq) {
  const int n = data.n_i;
  const int base = cluster * n;
  double e0 = 0.0, e1 = 0.0;
  double h00 = 0.0, h01 = 0.0, h11 = 0.0;
  for (int it = 0; it < 50; ++it) {
    double g0 = -e0 / sigma1_sq;
    double g1 = -e1 / sigma2_sq;
    h00 = 1.0 / sigma1_sq;
    h01 = 0.0;
    h11 = 1.0 / sigma2_sq;
    for (int j = 0; j < n; ++j) {
      const double zj = data.z[base + j];
      const double logit = offsets[base + j] + e0 + zj * e1;
      const double p = 1.0 / (1.0 + std::exp(-logit));
      const double r = data.y[base + j] - p;
      const double v = p * (1.0 - p);
      g0 += r;
      g1 += zj * r;
      h00 += v;
      h01 += zj * v;
      h11 += zj * zj * v;
    }
    // solve H d = g for the Newton step (H is the negative Hessian)
    const double det = h00 * h11 - h01 * h01;
    const double d0 = (h11 * g0 - h01 * g1) / det;
    const double d1 = (h00 * g1 - h01 * g0) / det;
    e0 += d0;
    e1 += d1;
    if (std::abs(d0) + std::abs(d1) < 1e-11) break;
  }
  ClusterMode out;
  out.eta0 = e0;
  out.eta1 = e1;
  const double det = h00 * h11 - h01 * h01;
  out.sd0 = std::sqrt(h11 / det);
  out.sd1 = std::sqrt(h00 / det);
  return out;
}

void fill_offsets(const GlmmData& data, double beta0,
                  const std::array<double, 3>& beta,
                  std::vector<double>& offsets) {
  offsets.resize(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const auto& x = data.x[r];
    offsets[r] = beta0 + x[0] * beta[0] + x[1] * beta[1] + x[2] * beta[2];
  }
}

}  // namespace

GlmmData simulate_glmm(const GlmmSpec& spec, RngStream& rng) {
  if (spec.sigma1_sq < 0.0 || spec.sigma2_sq < 0.0)
    throw std::invalid_argument("simulate_glmm: negative variance");
  GlmmData data;
  data.m = spec.m;
  data.n_i = spec.n_i;
  const std::size_t rows = static_cast<std::size_t>(spec.m) * spec.n_i;
  data.y.resize(rows);
  data.x.resize(rows);
  data.z.resize(rows);
  const double s1 = std::sqrt(spec.sigma1_sq);
  const double s2 = std::sqrt(spec.sigma2_sq);
  std::size_t r = 0;
  for (int i = 0; i < spec.m; ++i) {
    const double eta0 = s1 * rng.normal();
    const double eta1 = s2 * rng.normal();
    for (int j = 0; j < spec.n_i; ++j, ++r) {
      for (auto& xv : data.x[r]) xv = rng.uniform();
      data.z[r] = rng.uniform();
      const auto& x = data.x[r];
      const double logit = spec.beta0 + x[0] * spec.beta[0] +
                           x[1] * spec.beta[1] + x[2] * spec.beta[2] + eta0 +
                           data.z[r] * eta1;
      const double p = 1.0 / (1.0 + std::exp(-logit));
      data.y[r] = rng.uniform() < p ? 1 : 0;
    }
  }
  return data;
}

LikelihoodEstimate glmm_is_loglik(const GlmmData& data, double beta0,
                                  const std::array<double, 3>& beta,
                                  double sigma1_sq, double sigma2_sq, int N,
                                  RngStream& rng, VarianceMethod variance_method,
                                  GlmmProposal proposal) {
  if (N < 1) throw std::invalid_argument("glmm_is_loglik: N must be >= 1");
  if (sigma1_sq < 0.0 || sigma2_sq < 0.0)
    throw std::invalid_argument(
        "glmm_is_loglik: random-effects covariance not positive semidefinite");

  thread_local std::vector<double> offsets;
  thread_local std::vector<double> lw;
  fill_offsets(data, beta0, beta, offsets);
  lw.resize(N);

  const double s1 = std::sqrt(sigma1_sq);
  const double s2 = std::sqrt(sigma2_sq);
  const int n = data.n_i;
  const double logN = std::log(static_cast<double>(N));

  LikelihoodEstimate est;
  est.n_particles = N;
  double total = 0.0;
  double total_var = 0.0;
  bool want_var = variance_method != VarianceMethod::None;

  for (int i = 0; i < data.m; ++i) {
    const int base = i * n;
    ClusterMode mode{0.0, 0.0, 0.0, 0.0};
    const bool shifted = proposal == GlmmProposal::Laplace &&
                         sigma1_sq > 0.0 && sigma2_sq > 0.0;
    if (shifted) mode = cluster_laplace(data, i, offsets, sigma1_sq, sigma2_sq);
    for (int k = 0; k < N; ++k) {
      const double e0 = mode.eta0 + s1 * rng.normal();
      const double e1 = mode.eta1 + s2 * rng.normal();
      double ll = 0.0;
      for (int j = 0; j < n; ++j) {
        const double logit = offsets[base + j] + e0 + data.z[base + j] * e1;
        ll += log_bernoulli_logit(data.y[base + j], logit);
      }
      if (shifted) {
        // prior / proposal density ratio; both normals share the covariance
        if (s1 > 0.0)
          ll += (mode.eta0 * mode.eta0 - 2.0 * mode.eta0 * e0) / (2.0 * sigma1_sq);
        if (s2 > 0.0)
          ll += (mode.eta1 * mode.eta1 - 2.0 * mode.eta1 * e1) / (2.0 * sigma2_sq);
      }
      lw[k] = ll;
    }
    const double cluster_log = log_sum_exp(lw) - logN;
    total += cluster_log;
    if (want_var && N >= 2) {
      total_var += variance_method == VarianceMethod::Jackknife
                       ? var_log_jackknife(lw)
                       : var_log_delta(lw);
    }
  }
  est.log_value = total;
  if (want_var && N >= 2) est.set_var_log(total_var);
  if (want_var && N < 2) est.set_var_log(0.0);
  return est;
}

GlmmModel::GlmmModel(GlmmData data) : data_(std::move(data)) {
  layout_.add("beta0", Support::real());
  layout_.add("beta1", Support::real());
  layout_.add("beta2", Support::real());
  layout_.add("beta3", Support::real());
  layout_.add("sigma1_sq", Support::positive());
  layout_.add("sigma2_sq", Support::positive());
}

double GlmmModel::log_prior(const ParamVector& theta) const {
  if (theta.size() != 6)
    throw std::invalid_argument("GlmmModel: dimension mismatch");
  double lp = 0.0;
  for (int k = 0; k < 4; ++k) lp += log_normal_pdf(theta[k], 0.0, 100.0);
  // p(sigma^2) ~ 1/sigma^2 on the natural scale cancels its own Jacobian:
  // -log(exp(v)) + v = 0, so the variance coordinates contribute nothing.
  for (int k = 4; k < 6; ++k)
    if (!std::isfinite(theta[k])) return neg_inf;
  return lp;
}

LikelihoodEstimate GlmmModel::estimate_loglik(const ParamVector& theta,
                                              const EstimatorSettings& settings,
                                              RngStream& rng) const {
  if (theta.size() != 6)
    throw std::invalid_argument("GlmmModel: dimension mismatch");
  const std::array<double, 3> beta = {theta[1], theta[2], theta[3]};
  return glmm_is_loglik(data_, theta[0], beta, std::exp(theta[4]),
                        std::exp(theta[5]), settings.n_particles, rng,
                        settings.variance_method, proposal_);
}

double GlmmModel::exact_loglik_quadrature(double beta0,
                                          const std::array<double, 3>& beta,
                                          double sigma1_sq,
                                          double sigma2_sq) const {
  if (sigma1_sq <= 0.0 || sigma2_sq <= 0.0)
    throw std::invalid_argument("quadrature oracle needs positive variances");
  std::vector<double> offsets;
  fill_offsets(data_, beta0, beta, offsets);
  const int n = data_.n_i;
  double total = 0.0;
  for (int i = 0; i < data_.m; ++i) {
    const int base = i * n;
    const auto mode = cluster_laplace(data_, i, offsets, sigma1_sq, sigma2_sq);
    auto log_g = [&](double e0, double e1) {
      double ll = log_normal_pdf(e0, 0.0, sigma1_sq) +
                  log_normal_pdf(e1, 0.0, sigma2_sq);
      for (int j = 0; j < n; ++j) {
        const double logit = offsets[base + j] + e0 + data_.z[base + j] * e1;
        ll += log_bernoulli_logit(data_.y[base + j], logit);
      }
      return ll;
    };
    total += log_gh_integrate_2d(log_g, mode.eta0, mode.eta1, mode.sd0, mode.sd1);
  }
  return total;
}

GlmmInitialDensity::GlmmInitialDensity() : mean_{0, 0, 0, 0, 1, 2} {
  layout_.add("beta0", Support::real());
  layout_.add("beta1", Support::real());
  layout_.add("beta2", Support::real());
  layout_.add("beta3", Support::real());
  layout_.add("sigma1_sq", Support::positive());
  layout_.add("sigma2_sq", Support::positive());
  const double d = 6.0;
  log_norm_ = std::lgamma(0.5 * (df_ + d)) - std::lgamma(0.5 * df_) -
              0.5 * d * std::log(df_ * std::numbers::pi) -
              0.5 * d * std::log(scale_);
}

std::vector<double> mvt_sample_isotropic(std::span<const double> mean,
                                         double scale, double df,
                                         RngStream& rng) {
  // x = mean + sqrt(scale) z / sqrt(W/df), W ~ chi^2(df)
  const double w = std::sqrt(rng.chi_squared(df) / df);
  std::vector<double> x(mean.size());
  for (std::size_t k = 0; k < mean.size(); ++k)
    x[k] = mean[k] + std::sqrt(scale) * rng.normal() / w;
  return x;
}

ParamVector GlmmInitialDensity::sample(RngStream& rng) const {
  // redraw until the variance coordinates are positive
  for (int attempt = 0; attempt < 1000; ++attempt) {
    auto c = mvt_sample_isotropic(mean_, scale_, df_, rng);
    if (c[4] <= 0.0 || c[5] <= 0.0) continue;
    ParamVector theta;
    theta.values = {c[0], c[1], c[2], c[3], std::log(c[4]), std::log(c[5])};
    return theta;
  }
  throw std::runtime_error("GlmmInitialDensity: too many rejected draws");
}

double GlmmInitialDensity::log_density(const ParamVector& theta) const {
  if (theta.size() != 6)
    throw std::invalid_argument("GlmmInitialDensity: dimension mismatch");
  auto c = to_constrained(theta, layout_);
  double quad = 0.0;
  for (int k = 0; k < 6; ++k) {
    const double d = c[k] - mean_[k];
    quad += d * d / scale_;
  }
  const double d = 6.0;
  return log_norm_ - 0.5 * (df_ + d) * std::log1p(quad / df_) +
         log_jacobian(theta, layout_);
}

std::unique_ptr<InitialDensity> default_pi0(const GlmmModel&) {
  return std::make_unique<GlmmInitialDensity>();
}

}  // namespace aisel
