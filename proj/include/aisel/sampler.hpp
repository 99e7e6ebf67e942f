#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aisel/likelihood.hpp"
#include "aisel/marglik.hpp"
#include "aisel/schedule.hpp"
#include "aisel/weights.hpp"

namespace aisel {

/// Particle count policy for likelihood estimates. Fixed uses a constant N
/// for every theta; Adaptive starts small and doubles N until the estimated
/// Var(log p_hat) falls below sigma2_target.
struct NParticlePolicy {
  enum class Kind { Fixed, Adaptive };
  Kind kind = Kind::Fixed;
  int n = 1;
  double sigma2_target = 1.0;
  int n_max = 1 << 14;

  static NParticlePolicy fixed(int n) {
    NParticlePolicy p;
    p.kind = Kind::Fixed;
    p.n = n;
    return p;
  }
  static NParticlePolicy adaptive(double sigma2_target, int n_start = 2,
                                  int n_max = 1 << 14) {
    NParticlePolicy p;
    p.kind = Kind::Adaptive;
    p.n = n_start;
    p.sigma2_target = sigma2_target;
    p.n_max = n_max;
    return p;
  }
};

struct SamplerConfig {
  std::size_t M = 1000;
  AnnealingSchedule schedule = AnnealingSchedule::power(10, 1.0);
  double ess_fraction = 0.5;  ///< alpha: resample when ESS < alpha * M
  int mh_reps = 5;
  double initial_scale = 0.0;  ///< <= 0 selects the 2.38^2 / d default
  NParticlePolicy n_policy = NParticlePolicy::fixed(1);
  ResampleMethod resample_method = ResampleMethod::Systematic;
  /// Variance method for estimates made inside the run (Adaptive N needs
  /// one; Fixed N runs leaner with None).
  VarianceMethod variance_method = VarianceMethod::None;
  int replicates = 20;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  /// Resampling after the final reweight is off by default: the posterior
  /// estimator uses the weighted particles.
  bool resample_final = false;
};

/// Random-walk move state: proposal covariance is the weighted covariance
/// of the current ensemble, scaled by `scale`, which is adapted each sweep
/// from the pooled acceptance rate.
struct MoveState {
  double scale = 1.0;
  std::size_t dim = 0;
  std::vector<double> covariance;  ///< d x d, row-major
  std::vector<double> chol;        ///< lower Cholesky factor of covariance
  double last_acceptance_rate = 0.0;
};

struct SweepRecord {
  std::size_t t = 0;
  double a = 0.0;
  double ess_before = 0.0;
  double ess_after = 0.0;
  bool resampled = false;
  double acceptance_rate = 0.0;
  double f_hat = 0.0;
  double mean_log_lhat = 0.0;
  double var_log_lhat = 0.0;
};

struct SweepTrace {
  std::vector<SweepRecord> records;  ///< one per t = 1..T
};

struct ParamSummary {
  std::string name;
  double mean = 0.0;
  double sd = 0.0;
};

struct RunReport {
  std::vector<ParamSummary> posterior;  ///< constrained scale
  double log_ml = 0.0;
  EvidenceTrace evidence;
  double seconds = 0.0;
  std::uint64_t estimator_calls = 0;
  std::size_t degenerate_particles = 0;  ///< estimator returned zero at init
};

struct RunResult {
  Ensemble ensemble;
  SweepTrace trace;
  RunReport report;
};

/// d x d weighted covariance of the unconstrained parameter values.
std::vector<double> weighted_covariance(const Ensemble& ensemble);

/// Lower-triangular Cholesky factor; std::nullopt when not positive
/// definite.
std::optional<std::vector<double>> cholesky(const std::vector<double>& mat,
                                            std::size_t d);

/// Rebuilds covariance and its Cholesky factor from the ensemble; falls
/// back to the (jittered) diagonal when the matrix is not positive definite.
void update_move_covariance(MoveState& state, const Ensemble& ensemble);

/// Draws M particles from pi_0, estimating the likelihood once per particle
/// (the stored estimate), with uniform weights. Draws outside the model
/// support are redrawn up to a bounded retry count. estimator_calls, when
/// given, accumulates the number of estimator invocations (> M only under
/// an adaptive N policy).
Ensemble init_ensemble(const InitialDensity& pi0, const Model& model,
                       const SamplerConfig& config,
                       std::uint64_t* estimator_calls = nullptr);

/// Log-weight increment (a_curr - a_prev) [log p + log_lhat - log pi0] from
/// the stored estimate and cached densities; renormalizes. Performs no
/// likelihood estimation.
void reweight(Ensemble& ensemble, double a_prev, double a_curr);

/// Resamples iff ESS < alpha * M (strict); returns whether it resampled.
bool maybe_resample(Ensemble& ensemble, double alpha, ResampleMethod method,
                    RngStream& rng);

struct MoveResult {
  int accepted = 0;
  int estimator_calls = 0;
};

/// mh_reps repetitions of the tempered pseudo-marginal random-walk move.
/// Each proposal gets one fresh likelihood estimate; the current particle's
/// stored estimate is never refreshed on rejection.
MoveResult mh_move(Particle& particle, double a_t, const MoveState& state,
                   const Model& model, const InitialDensity& pi0,
                   const NParticlePolicy& n_policy, int mh_reps,
                   const SamplerConfig& config, RngStream& rng);

/// Multiplies the random-walk scale by the tabled factor for the pooled
/// acceptance rate of the previous move step.
void adapt_scale(MoveState& state, double acceptance_rate);
double scale_multiplier(double acceptance_rate);

/// The full annealed sweep: init, then for t = 1..T reweight, conditional
/// resample, Metropolis-Hastings moves with adapted covariance. Throws
/// DegeneracyError naming the temperature index on total weight collapse.
RunResult aisel_run(const Model& model, const InitialDensity& pi0,
                    const SamplerConfig& config);

/// Weighted posterior mean/sd of each constrained parameter.
std::vector<ParamSummary> posterior_summary(const Ensemble& ensemble,
                                            const ParamLayout& layout);

/// Evaluates phi over the ensemble: sum_i W_i phi(theta_i) for each
/// constrained coordinate (the default posterior-mean functional).
std::vector<double> posterior_means(const Ensemble& ensemble,
                                    const ParamLayout& layout);

}  // namespace aisel
