// aisel: annealed importance sampling with estimated likelihoods.
//
// Subcommands: simulate-data, tune, run, evidence, tnv-sweep,
// validate-theory. Configuration comes from a key=value file plus flag
// overrides; outputs are CSV and key=value text.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical degeneracy.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <sstream>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "aisel/errors.hpp"
#include "aisel/factory.hpp"
#include "aisel/glmm.hpp"
#include "aisel/io.hpp"
#include "aisel/marglik.hpp"
#include "aisel/parallel.hpp"
#include "aisel/runner.hpp"
#include "aisel/sampler.hpp"
#include "aisel/schedule.hpp"
#include "aisel/sv.hpp"
#include "aisel/theory.hpp"
#include "aisel/toy.hpp"
#include "aisel/tuning.hpp"

namespace fs = std::filesystem;
using namespace aisel;

namespace {

struct CommonOptions {
  std::string model_name;
  std::string data_path;
  std::string config_path;
  std::string out;
  std::vector<std::string> sets;  ///< raw key=value overrides
  // flag overrides; negative/0 sentinel = "not set", fall back to config
  int M = -1;
  int T = -1;
  int N = -1;
  int batches = -1;
  int mh_reps = -1;
  double alpha = -1.0;
  std::string schedule;
  std::optional<std::uint64_t> seed;
  int workers = -1;
  std::optional<bool> center;
};

void add_common_flags(CLI::App* cmd, CommonOptions& opt) {
  // model may come from the config file instead; validated at build time
  cmd->add_option("--model", opt.model_name, "Model: glmm, sv, svl, or toy");
  cmd->add_option("--data", opt.data_path,
                  "Dataset file (GLMM csv / one return per line for sv,svl)");
  cmd->add_option("--config", opt.config_path, "key = value configuration file");
  cmd->add_option("--M", opt.M, "Importance-sample count per batch");
  cmd->add_option("--T", opt.T, "Number of annealing steps");
  cmd->add_option("--N", opt.N, "Particles per likelihood estimate");
  cmd->add_option("--batches", opt.batches, "Independent batches R");
  cmd->add_option("--mh-reps", opt.mh_reps, "RWMH repetitions per move step");
  cmd->add_option("--alpha", opt.alpha, "ESS fraction triggering resampling");
  cmd->add_option("--schedule", opt.schedule,
                  "Temperature ladder: linear or power:<exponent>");
  cmd->add_option_function<std::uint64_t>(
      "--seed", [&opt](std::uint64_t s) { opt.seed = s; }, "Root seed");
  cmd->add_option("--workers", opt.workers, "Worker thread limit");
  cmd->add_flag_callback(
      "--center", [&opt] { opt.center = true; },
      "Mean-center the series before filtering (default)");
  cmd->add_flag_callback(
      "--no-center", [&opt] { opt.center = false; },
      "Skip mean-centering of the series");
  cmd->add_option("--set", opt.sets,
                  "Extra key=value overrides (e.g. --set sv_n=945)");
}

KvConfig merged_config(const CommonOptions& opt) {
  KvConfig cfg;
  if (!opt.config_path.empty()) cfg = KvConfig::parse_file(opt.config_path);
  if (!opt.model_name.empty()) cfg.set("model", opt.model_name);
  if (!opt.data_path.empty()) cfg.set("data", opt.data_path);
  if (opt.M > 0) cfg.set("M", std::to_string(opt.M));
  if (opt.T > 0) cfg.set("T", std::to_string(opt.T));
  if (opt.N > 0) cfg.set("n_particles", std::to_string(opt.N));
  if (opt.batches > 0) cfg.set("batches", std::to_string(opt.batches));
  if (opt.mh_reps > 0) cfg.set("mh_reps", std::to_string(opt.mh_reps));
  if (opt.alpha > 0.0) cfg.set("alpha", format_double(opt.alpha));
  if (!opt.schedule.empty()) cfg.set("schedule", opt.schedule);
  if (opt.seed) cfg.set("seed", std::to_string(*opt.seed));
  if (opt.workers > 0) cfg.set("workers", std::to_string(opt.workers));
  if (opt.center) cfg.set("center", *opt.center ? "true" : "false");
  for (const auto& kv : opt.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0)
      throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
    cfg.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  return cfg;
}

AnnealingSchedule parse_ladder(const std::string& name) {
  const auto colon = name.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("ladder '" + name + "': expected kind:T");
  const std::string kind = name.substr(0, colon);
  const int T = std::stoi(name.substr(colon + 1));
  if (kind == "linear") return AnnealingSchedule::power(T, 1.0);
  if (kind.rfind("power", 0) == 0)
    return AnnealingSchedule::power(T, std::stod(kind.substr(5)));
  throw std::invalid_argument("ladder '" + name + "': unknown kind");
}

std::vector<double> parse_double_list(const std::string& csv) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos < csv.size()) {
    auto comma = csv.find(',', pos);
    if (comma == std::string::npos) comma = csv.size();
    out.push_back(std::stod(csv.substr(pos, comma - pos)));
    pos = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty list");
  return out;
}

std::vector<int> parse_int_list(const std::string& csv) {
  std::vector<int> out;
  for (double v : parse_double_list(csv)) out.push_back(static_cast<int>(v));
  return out;
}

void write_run_outputs(const fs::path& out_dir, const RunResult& primary,
                       const BatchReport* batches, const KvConfig& cfg) {
  fs::create_directories(out_dir);
  std::vector<ParamSummary> posterior = primary.report.posterior;
  if (batches && !batches->pooled_mean.empty()) {
    for (std::size_t i = 0; i < posterior.size(); ++i)
      posterior[i].mean = batches->pooled_mean[i];
  }
  write_posterior_csv((out_dir / "posterior.csv").string(), posterior);
  write_trace_csv((out_dir / "trace.csv").string(), primary.trace);
  write_evidence_csv((out_dir / "evidence.csv").string(),
                     primary.report.evidence);

  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("model", cfg.get_string("model", ""));
  kv.emplace_back("M", std::to_string(cfg.get_int("M", 1000)));
  kv.emplace_back("T", std::to_string(cfg.get_int("T", 10)));
  kv.emplace_back("n_particles", std::to_string(cfg.get_int("n_particles", 10)));
  kv.emplace_back("seed", std::to_string(cfg.get_uint64("seed", 1)));
  kv.emplace_back("log_ml", format_double(primary.report.log_ml));
  kv.emplace_back("estimator_calls",
                  std::to_string(primary.report.estimator_calls));
  kv.emplace_back("degenerate_particles",
                  std::to_string(primary.report.degenerate_particles));
  for (const auto& p : posterior) {
    kv.emplace_back("mean." + p.name, format_double(p.mean));
    kv.emplace_back("sd." + p.name, format_double(p.sd));
  }
  if (batches) {
    kv.emplace_back("batches", std::to_string(batches->batch_estimates.size()));
    kv.emplace_back("batches_completed", std::to_string(batches->completed));
    kv.emplace_back("batches_failed", std::to_string(batches->failed.size()));
    if (!batches->variance.empty()) {
      for (std::size_t i = 0; i < batches->names.size(); ++i) {
        kv.emplace_back("batch_var." + batches->names[i],
                        format_double(batches->variance[i]));
        kv.emplace_back("tnv." + batches->names[i],
                        format_double(batches->tnv[i]));
      }
    }
    kv.emplace_back("timing.batch_seconds_total",
                    format_double(batches->total_seconds));
  }
  kv.emplace_back("timing.primary_run_seconds",
                  format_double(primary.report.seconds));
  write_kv_file((out_dir / "report.kv").string(), kv);
}

int cmd_simulate_data(const CommonOptions& opt) {
  KvConfig cfg = merged_config(opt);
  const std::string name = cfg.get_string("model", "");
  const std::uint64_t seed = cfg.get_uint64("seed", 1);
  RngStream rng(derive_seed(seed, 0xDA7A));
  if (opt.out.empty()) throw std::invalid_argument("--out is required");
  if (name == "glmm") {
    save_glmm_csv(opt.out, simulate_glmm(glmm_spec_from(cfg), rng));
  } else if (name == "sv" || name == "svl") {
    save_series(opt.out, simulate_sv(sv_spec_from(cfg, name == "svl"),
                                     cfg.get_int("sv_n", 500), rng));
  } else {
    throw std::invalid_argument("simulate-data supports glmm, sv, svl");
  }
  std::cout << "wrote " << opt.out << "\n";
  return 0;
}

int cmd_tune(const CommonOptions& opt, int J, int N0) {
  KvConfig cfg = merged_config(opt);
  auto bundle = build_model(cfg);
  auto schedule = schedule_from(cfg);
  const double tau_v = tau(schedule);
  const std::uint64_t seed = cfg.get_uint64("seed", 1);

  // timing samples: a few estimator calls at two particle counts
  const int n_small = std::max(2, N0 / 2), n_big = N0;
  const bool is_sv = cfg.get_string("model", "") == "sv" ||
                     cfg.get_string("model", "") == "svl";
  EstimatorSettings es;
  es.variance_method = is_sv ? VarianceMethod::Replicate : VarianceMethod::Delta;
  es.replicates = cfg.get_int("replicates", 20);

  RngStream rng(derive_seed(seed, 0x7061E));
  std::vector<std::pair<int, double>> timing;
  for (int n : {n_small, n_big}) {
    EstimatorSettings ts;
    ts.n_particles = n;
    ts.variance_method = VarianceMethod::None;
    const int reps = 20;
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) {
      auto theta = bundle.pi0->sample(rng);
      bundle.model->estimate_loglik(theta, ts, rng);
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count() /
        reps;
    timing.emplace_back(n, secs);
  }
  auto tm = fit_timing(timing);

  es.n_particles = N0;
  const double g2 = estimate_gamma_bar2(*bundle.model, *bundle.pi0, J, N0, rng,
                                        es.variance_method, es.replicates);
  const double s2 = sigma2_opt(tau_v, tm, g2);
  const int n = n_opt(tau_v, tm, g2);

  std::vector<std::pair<std::string, std::string>> kv = {
      {"tau0", format_double(tm.tau0)},
      {"tau1", format_double(tm.tau1)},
      {"gamma_bar2", format_double(g2)},
      {"tau", format_double(tau_v)},
      {"sigma2_opt", format_double(s2)},
      {"n_opt", std::to_string(n)},
  };
  for (const auto& [k, v] : kv) std::cout << k << " = " << v << "\n";
  if (!opt.out.empty()) write_kv_file(opt.out, kv);
  return 0;
}

int cmd_run(const CommonOptions& opt, bool evidence_only) {
  KvConfig cfg = merged_config(opt);
  if (opt.out.empty()) throw std::invalid_argument("--out is required");
  auto bundle = build_model(cfg);
  SamplerConfig sc = sampler_config_from(cfg);
  const int R = cfg.get_int("batches", 1);

  auto primary = aisel_run(*bundle.model, *bundle.pi0, sc);
  std::optional<BatchReport> batches;
  if (R > 1) {
    batches = run_batches(*bundle.model, *bundle.pi0, sc, R, sc.seed,
                          sc.workers);
    if (!batches->failed.empty())
      std::cerr << "warning: " << batches->failed.size()
                << " batch(es) aborted on degeneracy; pooled statistics use "
                << batches->completed << " completed batches\n";
  }
  write_run_outputs(opt.out, primary, batches ? &*batches : nullptr, cfg);
  std::cout << "log_ml = " << format_double(primary.report.log_ml) << "\n";
  if (!evidence_only) {
    for (const auto& p : primary.report.posterior)
      std::cout << p.name << " = " << format_double(p.mean) << " (sd "
                << format_double(p.sd) << ")\n";
  }
  return 0;
}

int cmd_tnv_sweep(const CommonOptions& opt, const std::string& n_list) {
  KvConfig cfg = merged_config(opt);
  if (opt.out.empty()) throw std::invalid_argument("--out is required");
  auto bundle = build_model(cfg);
  SamplerConfig sc = sampler_config_from(cfg);
  const int R = cfg.get_int("batches", 20);
  auto rows = tnv_sweep(*bundle.model, *bundle.pi0, sc, parse_int_list(n_list),
                        R, sc.seed, sc.workers);
  write_sweep_csv(opt.out, rows);
  for (const auto& r : rows)
    std::cout << "N=" << r.n << " tnv=" << format_double(r.tnv)
              << " var=" << format_double(r.var)
              << " seconds=" << format_double(r.seconds) << "\n";
  return 0;
}

int cmd_validate_theory(const std::string& sigma2_list,
                        const std::string& ladders, int m_traj,
                        std::uint64_t seed, const std::string& out) {
  // tractable conjugate path with a moderate likelihood
  RngStream data_rng(derive_seed(seed, 0xDA7A));
  auto toy = GaussianToy::synthetic(8, 0.6, 1.5, 0.0, 2.0, data_rng);
  auto path = ConjugatePath::from(toy);

  std::vector<std::string> ladder_names;
  std::size_t pos = 0;
  while (pos < ladders.size()) {
    auto comma = ladders.find(',', pos);
    if (comma == std::string::npos) comma = ladders.size();
    ladder_names.push_back(ladders.substr(pos, comma - pos));
    pos = comma + 1;
  }

  std::ostringstream csv;
  csv << "ladder,sigma2,tau,ess_ratio_measured,ess_ratio_theory\n";
  for (const auto& name : ladder_names) {
    auto schedule = parse_ladder(name);
    const double t = tau(schedule);
    for (double s2 : parse_double_list(sigma2_list)) {
      RngStream rng(derive_seed(seed, std::hash<std::string>{}(name),
                                static_cast<std::uint64_t>(s2 * 1000)));
      auto res = perfect_mixing_ais(path, schedule, m_traj, NoiseSpec{s2}, rng);
      csv << name << ',' << format_double(s2) << ',' << format_double(t) << ','
          << format_double(res.ess_ratio) << ','
          << format_double(std::exp(-t * s2)) << '\n';
    }
  }
  if (!out.empty()) {
    std::ofstream f(out);
    if (!f) throw std::invalid_argument("cannot open " + out);
    f << csv.str();
  }
  std::cout << csv.str();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Annealed importance sampling with estimated likelihoods"};
  app.require_subcommand(1);

  CommonOptions sim_opt, tune_opt, run_opt, ev_opt, sweep_opt;
  int tune_j = 20, tune_n0 = 50;
  std::string sweep_n_list = "1,7,10,20,50";
  std::string vt_sigma2 = "0.5,1,2", vt_ladders = "linear:5,linear:20,power3:15";
  int vt_m = 100000;
  std::uint64_t vt_seed = 1;
  std::string vt_out;

  auto* sim = app.add_subcommand("simulate-data", "Draw a synthetic dataset");
  add_common_flags(sim, sim_opt);
  sim->add_option("--out", sim_opt.out, "Output file")->required();

  auto* tune = app.add_subcommand(
      "tune", "Estimate timing constants, gamma_bar^2, sigma2_opt and N_opt");
  add_common_flags(tune, tune_opt);
  tune->add_option("--J", tune_j, "Initial-density draws for gamma_bar^2");
  tune->add_option("--N0", tune_n0, "Pilot particle count");
  tune->add_option("--out", tune_opt.out, "Also write the report here");

  auto* run = app.add_subcommand("run", "Run the annealed sampler");
  add_common_flags(run, run_opt);
  run->add_option("--out", run_opt.out, "Output directory")->required();

  auto* ev = app.add_subcommand(
      "evidence", "Run the sampler and report the log marginal likelihood");
  add_common_flags(ev, ev_opt);
  ev->add_option("--out", ev_opt.out, "Output directory")->required();

  auto* sweep = app.add_subcommand("tnv-sweep",
                                   "Time-normalized variance profile over N");
  add_common_flags(sweep, sweep_opt);
  sweep->add_option("--n-list", sweep_n_list, "Comma-separated particle counts");
  sweep->add_option("--out", sweep_opt.out, "Output csv")->required();

  auto* vt = app.add_subcommand(
      "validate-theory",
      "Measure the ESS degradation of noisy weights against exp(-tau sigma2)");
  vt->add_option("--sigma2-list", vt_sigma2, "Noise variances");
  vt->add_option("--ladders", vt_ladders,
                 "Ladder list, e.g. linear:5,power3:15");
  vt->add_option("--m-traj", vt_m, "Trajectories per configuration");
  vt->add_option("--seed", vt_seed, "Root seed");
  vt->add_option("--out", vt_out, "Output csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sim->parsed()) return cmd_simulate_data(sim_opt);
    if (tune->parsed()) return cmd_tune(tune_opt, tune_j, tune_n0);
    if (run->parsed()) return cmd_run(run_opt, false);
    if (ev->parsed()) return cmd_run(ev_opt, true);
    if (sweep->parsed()) return cmd_tnv_sweep(sweep_opt, sweep_n_list);
    if (vt->parsed())
      return cmd_validate_theory(vt_sigma2, vt_ladders, vt_m, vt_seed, vt_out);
  } catch (const DegeneracyError& e) {
    std::cerr << "degeneracy: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
