#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "aisel/densities.hpp"
#include "aisel/glmm.hpp"
#include "aisel/sv.hpp"
#include "aisel/toy.hpp"
#include "support/stats.hpp"

using namespace aisel;
using test_support::mean;
using test_support::se_mean;
using test_support::simpson;

TEST_CASE("simulate_glmm: degenerate spec gives a fair coin") {
  GlmmSpec spec;
  spec.m = 10000;
  spec.n_i = 10;
  spec.beta0 = 0.0;
  spec.beta = {0.0, 0.0, 0.0};
  spec.sigma1_sq = 0.0;
  spec.sigma2_sq = 0.0;
  RngStream rng(5);
  auto data = simulate_glmm(spec, rng);
  REQUIRE(data.rows() == 100000);
  std::vector<double> y(data.y.begin(), data.y.end());
  CHECK(std::abs(mean(y) - 0.5) < 3.0 * se_mean(y));
}

TEST_CASE("simulate_glmm: intercept-only rate matches the logistic value") {
  GlmmSpec spec;
  spec.m = 10000;
  spec.n_i = 10;
  spec.beta0 = -3.0;
  spec.beta = {0.0, 0.0, 0.0};
  spec.sigma1_sq = 0.0;
  spec.sigma2_sq = 0.0;
  RngStream rng(7);
  auto data = simulate_glmm(spec, rng);
  std::vector<double> y(data.y.begin(), data.y.end());
  const double p = 1.0 / (1.0 + std::exp(3.0));
  CHECK(std::abs(mean(y) - p) < 3.0 * se_mean(y));
}

TEST_CASE("simulate_glmm: default spec sizes") {
  GlmmSpec spec;  // m=50, n_i=10, the simulated-experiment configuration
  RngStream rng(9);
  auto data = simulate_glmm(spec, rng);
  CHECK(data.rows() == 500);
  CHECK(data.m == 50);
  CHECK(data.n_i == 10);
  for (const auto& xr : data.x)
    for (double v : xr) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
    }
}

TEST_CASE("glmm log_prior: arithmetic at beta = 0, sigma^2 = 1") {
  GlmmSpec spec;
  spec.m = 2;
  spec.n_i = 2;
  RngStream rng(1);
  GlmmModel model(simulate_glmm(spec, rng));
  // unconstrained value log(1) = 0 for both variance coordinates
  ParamVector theta({0.0, 0.0, 0.0, 0.0, 0.0, 0.0});
  const double expected = 4.0 * log_normal_pdf(0.0, 0.0, 100.0);
  CHECK(model.log_prior(theta) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("sv log_prior: boundary phi has zero density") {
  RngStream rng(2);
  SvModel model(simulate_sv(SvSpec{}, 50, rng), false);
  // phi -> 1 corresponds to +inf on the unconstrained scale
  ParamVector theta({0.0, std::numeric_limits<double>::infinity(),
                     std::log(0.2)});
  CHECK(model.log_prior(theta) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("sv prior: Be(15, 1.5) mode found by grid search") {
  // density maximum of the phi prior, validated on a 1-d grid
  double best_phi = 0.0, best = -1e300;
  for (int i = 1; i < 20000; ++i) {
    const double phi = i / 20000.0;
    const double lp = log_beta_pdf(phi, 15.0, 1.5);
    if (lp > best) {
      best = lp;
      best_phi = phi;
    }
  }
  CHECK(best_phi == doctest::Approx(14.0 / 14.5).epsilon(1e-3));
}

TEST_CASE("sv prior components integrate to one") {
  const double beta_mass = simpson(
      [](double x) { return std::exp(log_beta_pdf(x, 15.0, 1.5)); }, 1e-9,
      1.0 - 1e-9, 4000);
  CHECK(beta_mass == doctest::Approx(1.0).epsilon(0.01));

  // IG(10, 0.1) mass sits near 0.01; resolve the peak
  const double ig_mass = simpson(
      [](double x) { return std::exp(log_inv_gamma_pdf(x, 10.0, 0.1)); }, 1e-4,
      0.5, 8000);
  CHECK(ig_mass == doctest::Approx(1.0).epsilon(0.01));

  const double normal_mass = simpson(
      [](double x) { return std::exp(log_normal_pdf(x, 0.0, 100.0)); }, -80.0,
      80.0, 4000);
  CHECK(normal_mass == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("sv prior: unconstrained density integrates to one (jacobian)") {
  // integrate exp(log_prior) along each coordinate's unconstrained line,
  // dividing out the fixed factors; each must give mass ~1
  RngStream rng(3);
  SvModel model(simulate_sv(SvSpec{}, 50, rng), false);

  auto line_mass = [&](int coord, double lo, double hi, double base0,
                       double base1, double base2) {
    return simpson(
        [&](double v) {
          ParamVector theta({base0, base1, base2});
          theta.values[coord] = v;
          return std::exp(model.log_prior(theta));
        },
        lo, hi, 4000);
  };
  // fixed factors at the base point
  const double mu0 = 0.0, phi_u = 2.0, se_u = std::log(0.15);
  const double f_mu = std::exp(log_normal_pdf(mu0, 0.0, 100.0));
  const double f_phi =
      std::exp(log_beta_pdf(to_constrained(phi_u, Support::interval(0, 1)),
                            15.0, 1.5) +
               log_jacobian(phi_u, Support::interval(0, 1)));
  const double f_se = std::exp(log_inv_gamma_pdf(0.15, 10.0, 0.1) + se_u);

  CHECK(line_mass(0, -100.0, 100.0, mu0, phi_u, se_u) / (f_phi * f_se) ==
        doctest::Approx(1.0).epsilon(0.01));
  CHECK(line_mass(1, -14.0, 14.0, mu0, phi_u, se_u) / (f_mu * f_se) ==
        doctest::Approx(1.0).epsilon(0.01));
  // IG(10, 0.1) mass sits near sigma_eta ~ 0.01
  CHECK(line_mass(2, std::log(1e-3), std::log(1.0), mu0, phi_u, se_u) /
            (f_mu * f_phi) ==
        doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("glmm pi0: density at its own mean is the t normalizing value") {
  GlmmInitialDensity pi0;
  // constrained mean (0,0,0,0,1,2); on the unconstrained scale the
  // variance coordinates are log 1 and log 2, and the density picks up
  // the transform Jacobian log 1 + log 2
  ParamVector theta({0.0, 0.0, 0.0, 0.0, 0.0, std::log(2.0)});
  const double d = 6.0, df = 10.0, scale = 3.0;
  const double log_norm = std::lgamma(0.5 * (df + d)) - std::lgamma(0.5 * df) -
                          0.5 * d * std::log(df * std::numbers::pi) -
                          0.5 * d * std::log(scale);
  CHECK(pi0.log_density(theta) ==
        doctest::Approx(log_norm + std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("mvt draws: sample covariance matches scale * df/(df-2)") {
  RngStream rng(11);
  const std::vector<double> mu = {0.0, 0.0, 0.0, 0.0, 1.0, 2.0};
  const int n = 100000;
  std::vector<std::vector<double>> draws(6, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    auto x = mvt_sample_isotropic(mu, 3.0, 10.0, rng);
    for (int k = 0; k < 6; ++k) draws[k][i] = x[k];
  }
  const double expected = 3.0 * 10.0 / 8.0;
  for (int k = 0; k < 6; ++k) {
    const double v = test_support::sample_var(draws[k]);
    // t(10) fourth moments are heavy; a 5% band is > 5 SEs here
    CHECK(v == doctest::Approx(expected).epsilon(0.05));
    CHECK(std::abs(mean(draws[k]) - mu[k]) < 4.0 * se_mean(draws[k]));
  }
}

TEST_CASE("glmm pi0 sampling respects the support") {
  GlmmInitialDensity pi0;
  RngStream rng(13);
  for (int i = 0; i < 2000; ++i) {
    auto theta = pi0.sample(rng);
    REQUIRE(theta.size() == 6);
    for (double v : theta.values) CHECK(std::isfinite(v));
    CHECK(std::isfinite(pi0.log_density(theta)));
  }
}

TEST_CASE("sv pi0 equals the prior") {
  RngStream rng(17);
  SvModel model(simulate_sv(SvSpec{}, 80, rng), false);
  auto pi0 = default_pi0(model);
  RngStream rng2(19);
  for (int i = 0; i < 500; ++i) {
    auto theta = pi0->sample(rng2);
    CHECK(pi0->log_density(theta) ==
          doctest::Approx(model.log_prior(theta)).epsilon(1e-12));
  }
}

TEST_CASE("sv pi0 draws: phi concentrates where Be(15,1.5) puts it") {
  RngStream rng(23);
  SvModel model(simulate_sv(SvSpec{}, 80, rng), false);
  auto pi0 = default_pi0(model);
  RngStream rng2(29);
  std::vector<double> phis;
  for (int i = 0; i < 50000; ++i) {
    auto theta = pi0->sample(rng2);
    phis.push_back(to_constrained(theta[1], Support::interval(0.0, 1.0)));
  }
  // Beta(15, 1.5) mean = 15/16.5
  CHECK(std::abs(mean(phis) - 15.0 / 16.5) < 3.0 * se_mean(phis));
}

TEST_CASE("toy model: posterior and evidence identities") {
  RngStream rng(31);
  auto toy = GaussianToy::synthetic(25, 1.2, 2.0, 0.5, 3.0, rng);
  // evidence must integrate prior x likelihood: check by 1-d quadrature
  const double lml = toy.log_evidence();
  const double direct =
      std::log(simpson(
          [&](double th) {
            return std::exp(toy.exact_loglik(th) +
                            log_normal_pdf(th, 0.5, 3.0) - lml);
          },
          -8.0, 8.0, 4000)) +
      lml;
  CHECK(direct == doctest::Approx(lml).epsilon(1e-8));

  // posterior mean against the quadrature of the same integrand
  const double post_mean = simpson(
      [&](double th) {
        return th * std::exp(toy.exact_loglik(th) +
                             log_normal_pdf(th, 0.5, 3.0) - lml);
      },
      -8.0, 8.0, 4000);
  CHECK(post_mean == doctest::Approx(toy.posterior_mean()).epsilon(1e-8));
}
