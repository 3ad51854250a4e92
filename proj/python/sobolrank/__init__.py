"""Lagged rank estimators of first-order Sobol indices.

Thin wrapper around the C++ core. The main entry points:

- ``sobol(xs, ys, k=None)``: Sobol index estimate from paired data.
- ``eta_lags`` / ``eta_avg``: the underlying lagged estimates.
- ``theory_summary(model, law)``: asymptotic variance constants of a
  catalog model (``sin5``, ``quad``, optionally ``:vzero``).
- ``sample_model`` / ``empirical_lag_cov`` / ``lag_replicates``: seeded,
  reproducible Monte Carlo building blocks.
"""

from ._core import (
    asymptotic_cov,
    bias_bound,
    default_k,
    empirical_lag_cov,
    eta_avg,
    eta_lags,
    expected_range,
    lag_replicates,
    sample_model,
    sobol,
    theory_summary,
)

__all__ = [
    "asymptotic_cov",
    "bias_bound",
    "default_k",
    "empirical_lag_cov",
    "eta_avg",
    "eta_lags",
    "expected_range",
    "lag_replicates",
    "sample_model",
    "sobol",
    "theory_summary",
]

__version__ = "0.1.0"
