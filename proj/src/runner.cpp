#include "aisel/runner.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "aisel/errors.hpp"
#include "aisel/parallel.hpp"
#include "aisel/tuning.hpp"

namespace aisel {

namespace {
enum SeedTag : std::uint64_t { kBatch = 4, kSweep = 5 };
}

BatchReport run_batches(const Model& model, const InitialDensity& pi0,
                        const SamplerConfig& config, int R,
                        std::uint64_t root_seed, unsigned workers) {
  if (R < 1) throw std::invalid_argument("run_batches: R must be >= 1");
  BatchReport report;
  for (const auto& name : model.layout().names) report.names.push_back(name);
  report.seeds.resize(R);
  for (int r = 0; r < R; ++r)
    report.seeds[r] = derive_seed(root_seed, kBatch, static_cast<std::uint64_t>(r));

  report.batch_estimates.assign(R, {});
  report.batch_log_ml.assign(R, 0.0);
  report.batch_seconds.assign(R, 0.0);
  std::vector<char> ok(R, 0);

  const unsigned outer = std::min<unsigned>(workers, static_cast<unsigned>(R));
  SamplerConfig batch_config = config;
  batch_config.workers = R > 1 ? std::max(1u, workers / std::max(1u, outer))
                               : config.workers;

  std::mutex mu;
  parallel_for(static_cast<std::size_t>(R), outer, [&](std::size_t r) {
    SamplerConfig c = batch_config;
    c.seed = report.seeds[r];
    try {
      RunResult res = aisel_run(model, pi0, c);
      report.batch_estimates[r] = posterior_means(res.ensemble, model.layout());
      report.batch_log_ml[r] = res.report.log_ml;
      report.batch_seconds[r] = res.report.seconds;
      ok[r] = 1;
    } catch (const DegeneracyError&) {
      std::lock_guard<std::mutex> lock(mu);
      report.failed.push_back(r);
    }
  });
  std::sort(report.failed.begin(), report.failed.end());

  const std::size_t d = model.layout().size();
  report.pooled_mean.assign(d, 0.0);
  std::size_t completed = 0;
  double total_seconds = 0.0;
  for (int r = 0; r < R; ++r) {
    if (!ok[r]) continue;
    ++completed;
    total_seconds += report.batch_seconds[r];
    for (std::size_t a = 0; a < d; ++a)
      report.pooled_mean[a] += report.batch_estimates[r][a];
  }
  report.completed = completed;
  report.total_seconds = total_seconds;
  if (completed == 0) {
    report.pooled_mean.clear();
    return report;
  }
  for (auto& v : report.pooled_mean) v /= static_cast<double>(completed);

  if (completed >= 2) {
    report.variance.assign(d, 0.0);
    for (int r = 0; r < R; ++r) {
      if (!ok[r]) continue;
      for (std::size_t a = 0; a < d; ++a) {
        const double dv = report.batch_estimates[r][a] - report.pooled_mean[a];
        report.variance[a] += dv * dv;
      }
    }
    for (auto& v : report.variance) v /= static_cast<double>(completed);
    report.tnv.resize(d);
    for (std::size_t a = 0; a < d; ++a)
      report.tnv[a] = tnv(report.variance[a], report.total_seconds);
  }
  return report;
}

std::vector<TnvSweepRow> tnv_sweep(const Model& model, const InitialDensity& pi0,
                                   const SamplerConfig& base_config,
                                   const std::vector<int>& n_values, int R,
                                   std::uint64_t root_seed, unsigned workers) {
  if (n_values.empty())
    throw std::invalid_argument("tnv_sweep: empty N list");
  std::vector<TnvSweepRow> rows;
  rows.reserve(n_values.size());
  for (std::size_t k = 0; k < n_values.size(); ++k) {
    SamplerConfig c = base_config;
    c.n_policy = NParticlePolicy::fixed(n_values[k]);
    const std::uint64_t seed = derive_seed(root_seed, kSweep, k);
    BatchReport rep = run_batches(model, pi0, c, R, seed, workers);
    TnvSweepRow row;
    row.n = n_values[k];
    row.seconds = rep.total_seconds;
    if (!rep.variance.empty()) {
      double vbar = 0.0;
      for (double v : rep.variance) vbar += v;
      vbar /= static_cast<double>(rep.variance.size());
      row.var = vbar;
      row.tnv = tnv(vbar, rep.total_seconds);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace aisel
