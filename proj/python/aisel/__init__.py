"""Annealed importance sampling with unbiasedly estimated likelihoods.

The heavy lifting lives in the compiled extension; this package re-exports
its surface: temperature schedules and the tau constant, stable weight
arithmetic, the bootstrap particle filter for stochastic volatility models,
the annealed sampler with its batch runner, the power-posterior evidence
estimator, the optimal particle-count tuner, and the ESS-degradation
measurement harness.
"""

from aisel._core import (
    ct_star,
    ess,
    ess_degradation,
    fit_timing,
    log_ml_trapezoid,
    n_opt,
    normalize,
    resample_indices,
    run,
    run_batches,
    schedule_points,
    sigma2_opt,
    simulate_sv,
    sv_loglik,
    tau,
    tnv,
)

__all__ = [
    "ct_star",
    "ess",
    "ess_degradation",
    "fit_timing",
    "log_ml_trapezoid",
    "n_opt",
    "normalize",
    "resample_indices",
    "run",
    "run_batches",
    "schedule_points",
    "sigma2_opt",
    "simulate_sv",
    "sv_loglik",
    "tau",
    "tnv",
]

__version__ = "0.1.0"
