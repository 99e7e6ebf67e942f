#include "aisel/sampler.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <stdexcept>

#include "aisel/errors.hpp"
#include "aisel/parallel.hpp"

namespace aisel {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Stream tags keep init / move / resample draws on disjoint substreams.
enum StreamTag : std::uint64_t { kInit = 1, kMove = 2, kResample = 3 };

struct PolicyEstimate {
  LikelihoodEstimate est;
  int calls = 0;
};

PolicyEstimate estimate_with_policy(const Model& model, const ParamVector& theta,
                                    const NParticlePolicy& policy,
                                    const SamplerConfig& config,
                                    RngStream& rng) {
  PolicyEstimate out;
  EstimatorSettings settings;
  settings.n_particles = policy.n;
  settings.variance_method = config.variance_method;
  settings.replicates = config.replicates;
  if (policy.kind == NParticlePolicy::Kind::Fixed) {
    out.est = model.estimate_loglik(theta, settings, rng);
    out.calls = 1;
    return out;
  }
  if (settings.variance_method == VarianceMethod::None)
    settings.variance_method = VarianceMethod::Delta;
  for (;;) {
    out.est = model.estimate_loglik(theta, settings, rng);
    ++out.calls;
    if (!out.est.var_log.has_value()) break;
    if (*out.est.var_log <= policy.sigma2_target) break;
    if (settings.n_particles >= policy.n_max) break;
    settings.n_particles = std::min(policy.n_max, settings.n_particles * 2);
  }
  return out;
}

}  // namespace

std::vector<double> weighted_covariance(const Ensemble& ensemble) {
  if (!ensemble.normalized)
    throw std::invalid_argument("weighted_covariance: unnormalized ensemble");
  const std::size_t d = ensemble.particles.front().theta.size();
  std::vector<double> mean(d, 0.0), cov(d * d, 0.0);
  for (const auto& p : ensemble.particles) {
    const double w = std::exp(p.log_weight);
    for (std::size_t a = 0; a < d; ++a) mean[a] += w * p.theta[a];
  }
  for (const auto& p : ensemble.particles) {
    const double w = std::exp(p.log_weight);
    if (w == 0.0) continue;
    for (std::size_t a = 0; a < d; ++a) {
      const double da = p.theta[a] - mean[a];
      for (std::size_t b = a; b < d; ++b)
        cov[a * d + b] += w * da * (p.theta[b] - mean[b]);
    }
  }
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < a; ++b) cov[a * d + b] = cov[b * d + a];
  return cov;
}

std::optional<std::vector<double>> cholesky(const std::vector<double>& mat,
                                            std::size_t d) {
  std::vector<double> L(d * d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      double s = mat[i * d + j];
      for (std::size_t k = 0; k < j; ++k) s -= L[i * d + k] * L[j * d + k];
      if (i == j) {
        if (s <= 0.0) return std::nullopt;
        L[i * d + i] = std::sqrt(s);
      } else {
        L[i * d + j] = s / L[j * d + j];
      }
    }
  }
  return L;
}

void update_move_covariance(MoveState& state, const Ensemble& ensemble) {
  const std::size_t d = ensemble.particles.front().theta.size();
  state.dim = d;
  state.covariance = weighted_covariance(ensemble);
  auto L = cholesky(state.covariance, d);
  if (!L) {
    // degenerate spread; propose from the jittered diagonal instead
    std::vector<double> diag(d * d, 0.0);
    for (std::size_t a = 0; a < d; ++a)
      diag[a * d + a] = std::max(state.covariance[a * d + a], 1e-12);
    state.covariance = diag;
    L = cholesky(diag, d);
  }
  state.chol = *L;
}

Ensemble init_ensemble(const InitialDensity& pi0, const Model& model,
                       const SamplerConfig& config,
                       std::uint64_t* estimator_calls) {
  const std::size_t M = config.M;
  if (M < 1) throw std::invalid_argument("init_ensemble: M must be >= 1");
  Ensemble ens;
  ens.particles.resize(M);
  const double lw = -std::log(static_cast<double>(M));
  std::atomic<bool> failed{false};
  std::atomic<std::uint64_t> calls{0};

  parallel_for(M, config.workers, [&](std::size_t i) {
    RngStream rng = RngStream::child(config.seed, kInit, i);
    Particle& p = ens.particles[i];
    bool ok = false;
    for (int attempt = 0; attempt < 100; ++attempt) {
      p.theta = pi0.sample(rng);
      p.log_prior = model.log_prior(p.theta);
      p.log_pi0 = pi0.log_density(p.theta);
      if (std::isfinite(p.log_prior) && std::isfinite(p.log_pi0)) {
        ok = true;
        break;
      }
    }
    if (!ok) {
      failed.store(true);
      return;
    }
    auto pe = estimate_with_policy(model, p.theta, config.n_policy, config, rng);
    p.log_lhat = pe.est.log_value;
    p.log_weight = lw;
    p.cum_log_inc = 0.0;
    calls.fetch_add(pe.calls, std::memory_order_relaxed);
  });
  if (estimator_calls) *estimator_calls += calls.load();
  if (failed.load())
    throw std::runtime_error(
        "init_ensemble: initial density kept producing draws outside the "
        "model support");
  ens.normalized = true;
  return ens;
}

void reweight(Ensemble& ensemble, double a_prev, double a_curr) {
  if (!(a_curr > a_prev))
    throw std::invalid_argument("reweight: a_curr must exceed a_prev");
  if (!ensemble.normalized)
    throw std::invalid_argument("reweight: ensemble is not normalized");
  const double da = a_curr - a_prev;
  for (auto& p : ensemble.particles) {
    if (!std::isfinite(p.log_lhat) && p.log_lhat != kNegInf)
      throw std::invalid_argument("reweight: particle without stored estimate");
    const double inc = p.log_lhat == kNegInf
                           ? kNegInf
                           : da * (p.log_prior + p.log_lhat - p.log_pi0);
    p.cum_log_inc += inc;
    p.log_weight += inc;
  }
  normalize_ensemble(ensemble);
}

bool maybe_resample(Ensemble& ensemble, double alpha, ResampleMethod method,
                    RngStream& rng) {
  const double e = ess(ensemble);
  if (e < alpha * static_cast<double>(ensemble.size())) {
    ensemble = resample(ensemble, method, rng);
    return true;
  }
  return false;
}

double scale_multiplier(double acceptance_rate) {
  const double ar = acceptance_rate;
  if (ar < 0.0 || ar > 1.0)
    throw std::invalid_argument("scale_multiplier: rate outside [0, 1]");
  if (ar < 0.01) return 0.2;
  if (ar < 0.10) return 0.5;
  if (ar < 0.15) return 0.7;
  if (ar < 0.20) return 0.9;
  if (ar < 0.23) return 0.99;
  if (ar < 0.25) return 1.0;
  if (ar < 0.50) return 1.0 / 0.97;
  if (ar < 0.85) return 1.0 / 0.8;
  if (ar < 0.99) return 1.0 / 0.7;
  return 1.0 / 0.5;
}

void adapt_scale(MoveState& state, double acceptance_rate) {
  state.scale *= scale_multiplier(acceptance_rate);
  state.last_acceptance_rate = acceptance_rate;
}

MoveResult mh_move(Particle& particle, double a_t, const MoveState& state,
                   const Model& model, const InitialDensity& pi0,
                   const NParticlePolicy& n_policy, int mh_reps,
                   const SamplerConfig& config, RngStream& rng) {
  MoveResult result;
  const std::size_t d = particle.theta.size();
  const double sqrt_scale = std::sqrt(state.scale);
  std::vector<double> z(d);
  ParamVector proposal;
  proposal.values.resize(d);

  for (int rep = 0; rep < mh_reps; ++rep) {
    for (auto& v : z) v = rng.normal();
    for (std::size_t a = 0; a < d; ++a) {
      double step = 0.0;
      for (std::size_t b = 0; b <= a; ++b) step += state.chol[a * d + b] * z[b];
      proposal.values[a] = particle.theta[a] + sqrt_scale * step;
    }

    const double lp_pi0 = pi0.log_density(proposal);
    const double lp_prior = model.log_prior(proposal);
    if (!std::isfinite(lp_pi0) || !std::isfinite(lp_prior)) continue;  // auto-reject

    double log_ratio = (1.0 - a_t) * (lp_pi0 - particle.log_pi0) +
                       a_t * (lp_prior - particle.log_prior);
    double lhat_p = 0.0;
    if (a_t > 0.0) {
      auto pe = estimate_with_policy(model, proposal, n_policy, config, rng);
      result.estimator_calls += pe.calls;
      lhat_p = pe.est.log_value;
      if (lhat_p == kNegInf) continue;  // zero-likelihood proposal
      log_ratio += a_t * (lhat_p - particle.log_lhat);
    }

    if (log_ratio >= 0.0 || std::log(rng.uniform()) < log_ratio) {
      particle.theta = proposal;
      particle.log_pi0 = lp_pi0;
      particle.log_prior = lp_prior;
      if (a_t > 0.0) particle.log_lhat = lhat_p;
      ++result.accepted;
    }
  }
  return result;
}

std::vector<double> posterior_means(const Ensemble& ensemble,
                                    const ParamLayout& layout) {
  const std::size_t d = layout.size();
  std::vector<double> mean(d, 0.0);
  for (const auto& p : ensemble.particles) {
    const double w = std::exp(p.log_weight);
    if (w == 0.0) continue;
    auto c = to_constrained(p.theta, layout);
    for (std::size_t a = 0; a < d; ++a) mean[a] += w * c[a];
  }
  return mean;
}

std::vector<ParamSummary> posterior_summary(const Ensemble& ensemble,
                                            const ParamLayout& layout) {
  const std::size_t d = layout.size();
  std::vector<double> mean = posterior_means(ensemble, layout);
  std::vector<double> var(d, 0.0);
  for (const auto& p : ensemble.particles) {
    const double w = std::exp(p.log_weight);
    if (w == 0.0) continue;
    auto c = to_constrained(p.theta, layout);
    for (std::size_t a = 0; a < d; ++a) {
      const double dv = c[a] - mean[a];
      var[a] += w * dv * dv;
    }
  }
  std::vector<ParamSummary> out(d);
  for (std::size_t a = 0; a < d; ++a) {
    out[a].name = layout.names[a];
    out[a].mean = mean[a];
    out[a].sd = std::sqrt(var[a]);
  }
  return out;
}

RunResult aisel_run(const Model& model, const InitialDensity& pi0,
                    const SamplerConfig& config) {
  if (!(config.ess_fraction > 0.0 && config.ess_fraction < 1.0))
    throw std::invalid_argument("aisel_run: ess_fraction must be in (0, 1)");
  if (config.M < 2) throw std::invalid_argument("aisel_run: M must be >= 2");
  if (config.mh_reps < 1)
    throw std::invalid_argument("aisel_run: mh_reps must be >= 1");

  const auto t_start = std::chrono::steady_clock::now();
  const auto& a = config.schedule.points();
  const std::size_t T = config.schedule.steps();
  const std::size_t d = model.layout().size();

  RunResult out;
  out.report.estimator_calls = 0;
  out.ensemble = init_ensemble(pi0, model, config, &out.report.estimator_calls);
  for (const auto& p : out.ensemble.particles)
    if (p.log_lhat == kNegInf) ++out.report.degenerate_particles;

  out.report.evidence.temperatures.assign(a.begin(), a.end());
  out.report.evidence.f_hat.reserve(T + 1);
  try {
    out.report.evidence.f_hat.push_back(f_hat(out.ensemble));
  } catch (const DegeneracyError&) {
    throw DegeneracyError(
        "aisel_run: every initial likelihood estimate is zero (temperature "
        "index 0)",
        0);
  }

  MoveState move_state;
  move_state.scale =
      config.initial_scale > 0.0 ? config.initial_scale : 2.38 * 2.38 / d;

  for (std::size_t t = 1; t <= T; ++t) {
    try {
      reweight(out.ensemble, a[t - 1], a[t]);
    } catch (const DegeneracyError&) {
      throw DegeneracyError(
          "aisel_run: total weight degeneracy at temperature index " +
              std::to_string(t),
          static_cast<int>(t));
    }

    SweepRecord rec;
    rec.t = t;
    rec.a = a[t];
    rec.ess_before = ess(out.ensemble);
    rec.f_hat = f_hat(out.ensemble);
    out.report.evidence.f_hat.push_back(rec.f_hat);

    {
      double mean = 0.0, sq = 0.0, wsum = 0.0;
      for (const auto& p : out.ensemble.particles) {
        if (p.log_lhat == kNegInf) continue;
        const double w = std::exp(p.log_weight);
        mean += w * p.log_lhat;
        sq += w * p.log_lhat * p.log_lhat;
        wsum += w;
      }
      if (wsum > 0.0) {
        mean /= wsum;
        rec.mean_log_lhat = mean;
        rec.var_log_lhat = std::max(0.0, sq / wsum - mean * mean);
      }
    }

    if (t < T || config.resample_final) {
      RngStream rng = RngStream::child(config.seed, kResample, t);
      rec.resampled = maybe_resample(out.ensemble, config.ess_fraction,
                                     config.resample_method, rng);
    }
    rec.ess_after = ess(out.ensemble);

    update_move_covariance(move_state, out.ensemble);

    std::atomic<long> accepted{0};
    std::atomic<long> calls{0};
    const double a_t = a[t];
    parallel_for(config.M, config.workers, [&](std::size_t i) {
      RngStream rng = RngStream::child(config.seed, kMove, t, i);
      auto res = mh_move(out.ensemble.particles[i], a_t, move_state, model,
                         pi0, config.n_policy, config.mh_reps, config, rng);
      accepted.fetch_add(res.accepted, std::memory_order_relaxed);
      calls.fetch_add(res.estimator_calls, std::memory_order_relaxed);
    });
    out.report.estimator_calls += static_cast<std::uint64_t>(calls.load());
    rec.acceptance_rate = static_cast<double>(accepted.load()) /
                          (static_cast<double>(config.M) * config.mh_reps);
    adapt_scale(move_state, rec.acceptance_rate);
    out.trace.records.push_back(rec);
  }

  out.report.evidence.log_ml = log_ml_trapezoid(
      out.report.evidence.temperatures, out.report.evidence.f_hat);
  out.report.log_ml = out.report.evidence.log_ml;
  out.report.posterior = posterior_summary(out.ensemble, model.layout());
  out.report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start)
          .count();
  return out;
}

}  // namespace aisel
