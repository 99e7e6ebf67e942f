#include "aisel/factory.hpp"

#include <stdexcept>

#include "aisel/parallel.hpp"

namespace aisel {

AnnealingSchedule schedule_from(const KvConfig& cfg) {
  const int T = cfg.get_int("T", 10);
  const std::string kind = cfg.get_string("schedule", "linear");
  if (kind == "linear") return AnnealingSchedule::power(T, 1.0);
  if (kind.rfind("power:", 0) == 0)
    return AnnealingSchedule::power(T, std::stod(kind.substr(6)));
  throw std::invalid_argument("unknown schedule '" + kind +
                              "' (use linear or power:<exponent>)");
}

GlmmSpec glmm_spec_from(const KvConfig& cfg) {
  GlmmSpec spec;
  spec.m = cfg.get_int("glmm_m", spec.m);
  spec.n_i = cfg.get_int("glmm_n_i", spec.n_i);
  spec.beta0 = cfg.get_double("glmm_beta0", spec.beta0);
  spec.beta[0] = cfg.get_double("glmm_beta1", spec.beta[0]);
  spec.beta[1] = cfg.get_double("glmm_beta2", spec.beta[1]);
  spec.beta[2] = cfg.get_double("glmm_beta3", spec.beta[2]);
  spec.sigma1_sq = cfg.get_double("glmm_sigma1_sq", spec.sigma1_sq);
  spec.sigma2_sq = cfg.get_double("glmm_sigma2_sq", spec.sigma2_sq);
  return spec;
}

SvSpec sv_spec_from(const KvConfig& cfg, bool leverage) {
  SvSpec spec;
  spec.mu = cfg.get_double("sv_mu", spec.mu);
  spec.phi = cfg.get_double("sv_phi", spec.phi);
  spec.sigma_eta = cfg.get_double("sv_sigma_eta", spec.sigma_eta);
  if (leverage) spec.rho = cfg.get_double("sv_rho", 0.0);
  return spec;
}

ModelBundle build_model(const KvConfig& cfg) {
  const std::string name = cfg.get_string("model", "");
  const std::string data = cfg.get_string("data", "");
  const std::uint64_t seed = cfg.get_uint64("seed", 1);
  ModelBundle b;
  if (name == "toy") {
    RngStream rng(derive_seed(seed, 0xDA7A));
    auto toy = std::make_unique<GaussianToy>(GaussianToy::synthetic(
        cfg.get_int("toy_n", 20), cfg.get_double("toy_theta", 0.8),
        cfg.get_double("toy_obs_var", 2.0),
        cfg.get_double("toy_prior_mean", 0.0),
        cfg.get_double("toy_prior_var", 4.0), rng));
    const double noise = cfg.get_double("toy_noise_sigma2", 0.0);
    if (noise > 0.0) toy->set_noise(GaussianToy::NoiseMode::Direct, noise);
    b.pi0 = default_pi0(*toy);
    b.model = std::move(toy);
    return b;
  }
  if (name == "glmm") {
    GlmmData d;
    if (!data.empty()) {
      d = load_glmm_csv(data);
    } else {
      RngStream rng(derive_seed(seed, 0xDA7A));
      d = simulate_glmm(glmm_spec_from(cfg), rng);
    }
    auto model = std::make_unique<GlmmModel>(std::move(d));
    if (cfg.get_string("glmm_proposal", "prior") == "laplace")
      model->set_proposal(GlmmProposal::Laplace);
    b.pi0 = default_pi0(*model);
    b.model = std::move(model);
    return b;
  }
  if (name == "sv" || name == "svl") {
    const bool leverage = name == "svl";
    std::vector<double> y;
    if (!data.empty()) {
      y = load_series(data);
      if (cfg.get_bool("center", true)) y = center_series(std::move(y));
    } else {
      RngStream rng(derive_seed(seed, 0xDA7A));
      y = simulate_sv(sv_spec_from(cfg, leverage), cfg.get_int("sv_n", 500),
                      rng);
    }
    auto model = std::make_unique<SvModel>(std::move(y), leverage);
    b.pi0 = default_pi0(*model);
    b.model = std::move(model);
    return b;
  }
  throw std::invalid_argument("unknown model '" + name +
                              "' (expected glmm, sv, svl, or toy)");
}

SamplerConfig sampler_config_from(const KvConfig& cfg) {
  SamplerConfig c;
  c.M = static_cast<std::size_t>(cfg.get_int("M", 1000));
  c.schedule = schedule_from(cfg);
  c.ess_fraction = cfg.get_double("alpha", 0.5);
  c.mh_reps = cfg.get_int("mh_reps", 5);
  c.initial_scale = cfg.get_double("initial_scale", 0.0);
  c.n_policy = NParticlePolicy::fixed(cfg.get_int("n_particles", 10));
  if (cfg.has("sigma2_target"))
    c.n_policy = NParticlePolicy::adaptive(cfg.get_double("sigma2_target", 1.0),
                                           cfg.get_int("n_particles", 2));
  c.seed = cfg.get_uint64("seed", 1);
  c.workers = static_cast<unsigned>(cfg.get_int("workers", default_workers()));
  return c;
}

}  // namespace aisel
