#pragma once

#include <array>
#include <memory>
#include <span>
#include <vector>

#include "aisel/likelihood.hpp"

namespace aisel {

/// Mixed logistic regression:
///   P(y_ij = 1 | beta, eta_i) = sigma(beta0 + x_ij' beta + eta_i0 + z_ij eta_i1)
/// with cluster random effects eta_i ~ N(0, diag(sigma1_sq, sigma2_sq)).
struct GlmmSpec {
  int m = 50;    ///< clusters
  int n_i = 10;  ///< observations per cluster
  double beta0 = -3.0;
  std::array<double, 3> beta = {2.0, -2.0, 2.0};
  double sigma1_sq = 2.0;
  double sigma2_sq = 1.0;
};

struct GlmmData {
  int m = 0;
  int n_i = 0;
  std::vector<int> y;                      ///< m * n_i binary outcomes
  std::vector<std::array<double, 3>> x;    ///< fixed-effect covariates
  std::vector<double> z;                   ///< random-slope covariate
  std::size_t rows() const { return y.size(); }
};

/// Draws covariates from U(0,1) and responses from the logistic model.
GlmmData simulate_glmm(const GlmmSpec& spec, RngStream& rng);

enum class GlmmProposal { Prior, Laplace };

/// Per-cluster importance-sampling estimate of the likelihood on the
/// natural parameter scale. Unbiased: clusters are independent and each
/// cluster mean is an unbiased estimate of its integral. sigma_sq entries
/// must be nonnegative; zero gives the exact logistic likelihood.
LikelihoodEstimate glmm_is_loglik(const GlmmData& data, double beta0,
                                  const std::array<double, 3>& beta,
                                  double sigma1_sq, double sigma2_sq, int N,
                                  RngStream& rng,
                                  VarianceMethod variance_method = VarianceMethod::Delta,
                                  GlmmProposal proposal = GlmmProposal::Prior);

class GlmmModel final : public Model {
 public:
  explicit GlmmModel(GlmmData data);

  const ParamLayout& layout() const override { return layout_; }
  /// N(0, 100 I) on the betas; p(sigma_k^2) ~ 1/sigma_k^2, which is flat
  /// on the log scale once the Jacobian is included.
  double log_prior(const ParamVector& theta) const override;
  LikelihoodEstimate estimate_loglik(const ParamVector& theta,
                                     const EstimatorSettings& settings,
                                     RngStream& rng) const override;

  /// Adaptive Gauss-Hermite (32 nodes per dimension) exact-likelihood
  /// oracle. Intended for tiny validation instances.
  double exact_loglik_quadrature(double beta0, const std::array<double, 3>& beta,
                                 double sigma1_sq, double sigma2_sq) const;

  const GlmmData& data() const { return data_; }
  void set_proposal(GlmmProposal p) { proposal_ = p; }

 private:
  GlmmData data_;
  ParamLayout layout_;
  GlmmProposal proposal_ = GlmmProposal::Prior;
};

/// One draw of the multivariate t(df) with isotropic scale matrix
/// (scale * I); covariance is scale * df / (df - 2).
std::vector<double> mvt_sample_isotropic(std::span<const double> mean,
                                         double scale, double df,
                                         RngStream& rng);

/// The multivariate t initial density used for the GLMM runs: mean
/// (0,0,0,0,1,2) on the natural scale, scale matrix 3I, 10 degrees of
/// freedom. Draws with nonpositive variance coordinates are rejected and
/// redrawn; the density keeps the plain t formula (the truncation mass is
/// a constant that cancels in normalized weights and MH ratios).
class GlmmInitialDensity final : public InitialDensity {
 public:
  GlmmInitialDensity();
  ParamVector sample(RngStream& rng) const override;
  double log_density(const ParamVector& theta) const override;

 private:
  ParamLayout layout_;
  std::array<double, 6> mean_;
  double scale_ = 3.0;
  double df_ = 10.0;
  double log_norm_;  ///< mv-t normalizing constant
};

std::unique_ptr<InitialDensity> default_pi0(const GlmmModel& model);

}  // namespace aisel
