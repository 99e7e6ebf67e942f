#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "aisel/sampler.hpp"

namespace aisel {

/// Result of R independent sampler replicates. The batch variance
/// (1/R) sum_r (phi_r - mean)^2 estimates Var of a single-batch estimator;
/// it requires R >= 2 and is empty otherwise.
struct BatchReport {
  std::vector<std::string> names;                  ///< parameter functionals
  std::vector<std::vector<double>> batch_estimates;  ///< [batch][param]
  std::vector<double> batch_log_ml;
  std::vector<double> batch_seconds;
  std::vector<std::uint64_t> seeds;
  std::vector<std::size_t> failed;  ///< batch indices that aborted
  std::vector<double> pooled_mean;
  std::vector<double> variance;  ///< empty when fewer than 2 completed batches
  std::vector<double> tnv;       ///< variance * total_seconds, per functional
  double total_seconds = 0.0;    ///< summed compute over batches
  std::size_t completed = 0;
};

/// Runs R independent AISEL replicates with per-batch seeds derived from
/// root_seed by counter; deterministic for fixed seeds regardless of the
/// worker partition. Batches that abort on weight degeneracy are recorded
/// and excluded from the pooled statistics.
BatchReport run_batches(const Model& model, const InitialDensity& pi0,
                        const SamplerConfig& config, int R,
                        std::uint64_t root_seed, unsigned workers);

struct TnvSweepRow {
  int n = 0;
  double tnv = 0.0;      ///< averaged over the parameter functionals
  double var = 0.0;      ///< likewise averaged
  double seconds = 0.0;  ///< total compute across batches
};

/// TNV-vs-N profile: for each N runs R batches at fixed N and reports the
/// averaged time normalized variance.
std::vector<TnvSweepRow> tnv_sweep(const Model& model, const InitialDensity& pi0,
                                   const SamplerConfig& base_config,
                                   const std::vector<int>& n_values, int R,
                                   std::uint64_t root_seed, unsigned workers);

}  // namespace aisel
