#pragma once

#include <memory>

#include "aisel/glmm.hpp"
#include "aisel/io.hpp"
#include "aisel/sampler.hpp"
#include "aisel/sv.hpp"
#include "aisel/toy.hpp"

namespace aisel {

struct ModelBundle {
  std::unique_ptr<Model> model;
  std::unique_ptr<InitialDensity> pi0;
};

/// Builds a model + initial density from a key=value configuration:
/// `model` selects glmm / sv / svl / toy; `data` points at a dataset file
/// (GLMM csv, or one return per line for sv/svl); without `data` a
/// synthetic dataset is drawn from the model-specific keys.
ModelBundle build_model(const KvConfig& cfg);

/// Sampler configuration from the same key=value text (M, T, schedule,
/// alpha, mh_reps, n_particles, sigma2_target, seed, workers).
SamplerConfig sampler_config_from(const KvConfig& cfg);

AnnealingSchedule schedule_from(const KvConfig& cfg);
GlmmSpec glmm_spec_from(const KvConfig& cfg);
SvSpec sv_spec_from(const KvConfig& cfg, bool leverage);

}  // namespace aisel
