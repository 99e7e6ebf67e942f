#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aisel/factory.hpp"
#include "aisel/marglik.hpp"
#include "aisel/particle_filter.hpp"
#include "aisel/runner.hpp"
#include "aisel/sampler.hpp"
#include "aisel/schedule.hpp"
#include "aisel/sv.hpp"
#include "aisel/theory.hpp"
#include "aisel/toy.hpp"
#include "aisel/tuning.hpp"
#include "aisel/weights.hpp"

namespace py = pybind11;
using namespace aisel;

namespace {

KvConfig config_from_dict(const std::map<std::string, std::string>& options) {
  KvConfig cfg;
  for (const auto& [k, v] : options) cfg.set(k, v);
  return cfg;
}

py::dict report_to_dict(const RunResult& res) {
  py::dict out;
  py::dict posterior;
  for (const auto& p : res.report.posterior)
    posterior[py::str(p.name)] = py::make_tuple(p.mean, p.sd);
  out["posterior"] = posterior;
  out["log_ml"] = res.report.log_ml;
  out["seconds"] = res.report.seconds;
  out["estimator_calls"] = res.report.estimator_calls;
  out["degenerate_particles"] = res.report.degenerate_particles;
  py::list ess_before, ess_after, acceptance, resampled, f_hat;
  for (const auto& r : res.trace.records) {
    ess_before.append(r.ess_before);
    ess_after.append(r.ess_after);
    acceptance.append(r.acceptance_rate);
    resampled.append(r.resampled);
  }
  out["ess_before"] = ess_before;
  out["ess_after"] = ess_after;
  out["acceptance_rate"] = acceptance;
  out["resampled"] = resampled;
  out["temperatures"] = res.report.evidence.temperatures;
  out["f_hat"] = res.report.evidence.f_hat;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Annealed importance sampling with unbiasedly estimated likelihoods: "
      "temperature schedules, weight arithmetic, particle filters, the "
      "annealed sampler, marginal-likelihood estimation and the "
      "particle-count tuner.";

  m.def(
      "schedule_points",
      [](std::size_t T, double exponent) {
        return AnnealingSchedule::power(T, exponent).points();
      },
      py::arg("T"), py::arg("exponent") = 1.0,
      "Temperature ladder a_t = (t/T)^exponent, t = 0..T.");

  m.def(
      "tau",
      [](const std::vector<double>& points) {
        return tau(AnnealingSchedule(points));
      },
      py::arg("points"),
      "Schedule constant sum (a_t - a_{t-1})(2 a_t - 1); the ESS of the "
      "annealed sampler degrades by exp(-tau * sigma2).");

  m.def(
      "normalize",
      [](const std::vector<double>& log_weights) {
        auto r = normalize(log_weights);
        return py::make_tuple(r.weights, r.log_sum);
      },
      py::arg("log_weights"),
      "Stable weight normalization; returns (weights, log_sum_exp).");

  m.def(
      "ess",
      [](const std::vector<double>& weights) {
        return ess(std::span<const double>(weights));
      },
      py::arg("normalized_weights"), "1 / sum w_i^2");

  m.def(
      "resample_indices",
      [](const std::vector<double>& weights, std::size_t count,
         const std::string& method, std::uint64_t seed) {
        RngStream rng(seed);
        return resample_indices(weights, count,
                                method == "multinomial"
                                    ? ResampleMethod::Multinomial
                                    : ResampleMethod::Systematic,
                                rng);
      },
      py::arg("weights"), py::arg("count"), py::arg("method") = "systematic",
      py::arg("seed") = 1);

  m.def(
      "log_ml_trapezoid",
      [](const std::vector<double>& temperatures,
         const std::vector<double>& f_values) {
        return log_ml_trapezoid(temperatures, f_values);
      },
      py::arg("temperatures"), py::arg("f_values"));

  m.def(
      "fit_timing",
      [](const std::vector<std::pair<int, double>>& samples) {
        auto tm = fit_timing(samples);
        return py::make_tuple(tm.tau0, tm.tau1);
      },
      py::arg("samples"),
      "Least-squares (tau0, tau1) of seconds = tau0 + N tau1.");

  m.def(
      "sigma2_opt",
      [](double tau_v, double tau0, double tau1, double gamma_bar2) {
        return sigma2_opt(tau_v, TimingModel{tau0, tau1}, gamma_bar2);
      },
      py::arg("tau"), py::arg("tau0"), py::arg("tau1"), py::arg("gamma_bar2"),
      "Optimal Var(log p_hat); equals 1/tau when tau0 = 0.");

  m.def(
      "n_opt",
      [](double tau_v, double tau0, double tau1, double gamma_bar2) {
        return n_opt(tau_v, TimingModel{tau0, tau1}, gamma_bar2);
      },
      py::arg("tau"), py::arg("tau0"), py::arg("tau1"), py::arg("gamma_bar2"));

  m.def(
      "ct_star",
      [](double sigma2, double tau_v, double tau0, double tau1,
         double gamma_bar2) {
        return ct_star(sigma2, tau_v, TimingModel{tau0, tau1}, gamma_bar2);
      },
      py::arg("sigma2"), py::arg("tau"), py::arg("tau0"), py::arg("tau1"),
      py::arg("gamma_bar2"));

  m.def("tnv", &tnv, py::arg("var_estimator"), py::arg("wall_seconds"));

  m.def(
      "simulate_sv",
      [](int n, double mu, double phi, double sigma_eta,
         std::optional<double> rho, std::uint64_t seed) {
        SvSpec spec{mu, phi, sigma_eta, rho};
        RngStream rng(seed);
        return simulate_sv(spec, n, rng);
      },
      py::arg("n"), py::arg("mu") = -0.6, py::arg("phi") = 0.98,
      py::arg("sigma_eta") = 0.16, py::arg("rho") = std::nullopt,
      py::arg("seed") = 1);

  m.def(
      "sv_loglik",
      [](const std::vector<double>& y, double mu, double phi, double sigma_eta,
         std::optional<double> rho, int n_particles, std::uint64_t seed) {
        SvSpec spec{mu, phi, sigma_eta, rho};
        RngStream rng(seed);
        auto res = bootstrap_pf(make_ssm(spec), y, n_particles, rng);
        return py::make_tuple(res.log_lhat, res.degenerate);
      },
      py::arg("y"), py::arg("mu"), py::arg("phi"), py::arg("sigma_eta"),
      py::arg("rho") = std::nullopt, py::arg("n_particles") = 24,
      py::arg("seed") = 1,
      "Bootstrap-particle-filter likelihood estimate; exp of it is unbiased "
      "for the true likelihood.");

  m.def(
      "ess_degradation",
      [](const std::vector<double>& schedule_points, double sigma2,
         std::size_t n_trajectories, std::uint64_t seed) {
        RngStream data_rng(derive_seed(seed, 0xDA7A));
        auto toy = GaussianToy::synthetic(8, 0.6, 1.5, 0.0, 2.0, data_rng);
        auto path = ConjugatePath::from(toy);
        AnnealingSchedule schedule(schedule_points);
        RngStream rng(seed);
        auto res =
            perfect_mixing_ais(path, schedule, n_trajectories, NoiseSpec{sigma2},
                               rng);
        py::dict out;
        out["ess_ratio_measured"] = res.ess_ratio;
        out["ess_ratio_theory"] = std::exp(-tau(schedule) * sigma2);
        out["ess_exact"] = res.ess_exact;
        out["ess_noisy"] = res.ess_noisy;
        return out;
      },
      py::arg("schedule_points"), py::arg("sigma2"),
      py::arg("n_trajectories") = 100000, py::arg("seed") = 1,
      "Idealized no-resampling run measuring the ESS ratio against "
      "exp(-tau sigma2).");

  m.def(
      "run",
      [](const std::map<std::string, std::string>& options) {
        KvConfig cfg = config_from_dict(options);
        auto bundle = build_model(cfg);
        auto sc = sampler_config_from(cfg);
        return report_to_dict(aisel_run(*bundle.model, *bundle.pi0, sc));
      },
      py::arg("options"),
      "Full annealed run. Options mirror the CLI configuration keys "
      "(model, data, M, T, schedule, n_particles, seed, ...).");

  m.def(
      "run_batches",
      [](const std::map<std::string, std::string>& options, int R) {
        KvConfig cfg = config_from_dict(options);
        auto bundle = build_model(cfg);
        auto sc = sampler_config_from(cfg);
        auto rep =
            run_batches(*bundle.model, *bundle.pi0, sc, R, sc.seed, sc.workers);
        py::dict out;
        out["names"] = rep.names;
        out["pooled_mean"] = rep.pooled_mean;
        out["variance"] = rep.variance;
        out["tnv"] = rep.tnv;
        out["total_seconds"] = rep.total_seconds;
        out["completed"] = rep.completed;
        out["batch_estimates"] = rep.batch_estimates;
        out["batch_log_ml"] = rep.batch_log_ml;
        return out;
      },
      py::arg("options"), py::arg("R"),
      "R independent replicates with counter-derived seeds; reports the "
      "batch variance estimate and the time normalized variance.");
}
