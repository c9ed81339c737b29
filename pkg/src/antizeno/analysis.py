"""Least-squares fits for the quadratic and exponential survival laws, and
the rate-collapse diagnostic across measurement periods.

Exponential fits run as linear least squares in log space: survival values
in all presets stay far from zero, linearity needs no iterative optimizer,
and R^2 is then naturally reported in log space. Fits are unweighted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

__all__ = ["FitResult", "CollapseResult", "fit_quadratic_origin", "fit_exponential", "collapse_slopes"]

# Survival values below this are numerically extinct and dropped from
# exponential fits (log-space blowup); the drop count is reported.
EXP_FIT_FLOOR = 1e-12

FIT_MODELS = ("quadratic_origin", "exponential", "linear")


@dataclass(frozen=True)
class FitResult:
    """Fit model name, coefficients, coefficient of determination and the
    largest absolute residual (in fit space: log space for exponentials)."""

    model: str
    coefficients: Mapping[str, float]
    r_squared: float
    residual_max: float
    n_dropped: int = 0

    def __post_init__(self):
        if self.model not in FIT_MODELS:
            raise ValueError(f"unknown fit model {self.model!r}")
        for name, value in self.coefficients.items():
            if not np.isfinite(value):
                raise ValueError(f"non-finite fitted coefficient {name}={value!r}")
        if not -1e-12 <= self.r_squared <= 1.0 + 1e-12:
            raise ValueError(f"r_squared outside [0, 1]: {self.r_squared!r}")
        object.__setattr__(self, "coefficients", dict(self.coefficients))
        object.__setattr__(self, "r_squared", float(min(max(self.r_squared, 0.0), 1.0)))


@dataclass(frozen=True)
class CollapseResult:
    """Per-period decay rates in t/T1 units and their max/min ratio."""

    rates: Mapping[float, float]
    rate_ratio: float
    fits: Mapping[float, FitResult] = field(default_factory=dict)


def _r_squared(y: np.ndarray, predicted: np.ndarray) -> float:
    ss_res = float(np.sum((y - predicted) ** 2))
    ss_tot = float(np.sum((y - y.mean()) ** 2))
    if ss_tot == 0.0:
        # constant data: perfect fit counts as 1, anything else as 0
        return 1.0 if ss_res <= 1e-24 else 0.0
    # a fit worse than the mean clamps to 0 so r_squared stays in [0, 1]
    return max(0.0, min(1.0, 1.0 - ss_res / ss_tot))


def fit_quadratic_origin(x, y) -> FitResult:
    """Least-squares y = lam * x**2 (through the origin).

    Closed form lam = sum(x^2 y) / sum(x^4).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    if x.size < 3:
        raise ValueError("need at least 3 points")
    x4 = float(np.sum(x**4))
    if x4 == 0.0:
        raise ValueError("all x are zero; quadratic coefficient is undetermined")
    lam = float(np.sum(x**2 * y) / x4)
    predicted = lam * x**2
    return FitResult(
        "quadratic_origin",
        {"lam": lam},
        _r_squared(y, predicted),
        float(np.max(np.abs(y - predicted))),
    )


def fit_exponential(x, y) -> FitResult:
    """Least-squares y = exp(intercept - rate * x), fitted linearly on log y.

    Requires strictly positive y; values below ``EXP_FIT_FLOOR`` are dropped
    (count reported in ``n_dropped``). R^2 and residual_max are computed in
    log space.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("x and y must be 1-d arrays of equal length")
    if np.any(y <= 0):
        raise ValueError("exponential fit requires strictly positive y")
    keep = y >= EXP_FIT_FLOOR
    n_dropped = int(np.sum(~keep))
    x, y = x[keep], y[keep]
    if x.size < 2:
        raise ValueError("fewer than 2 points remain above the fit floor")
    log_y = np.log(y)
    slope, intercept = np.polyfit(x, log_y, 1)
    predicted = slope * x + intercept
    return FitResult(
        "exponential",
        {"rate": float(-slope), "intercept": float(intercept)},
        _r_squared(log_y, predicted),
        float(np.max(np.abs(log_y - predicted))),
        n_dropped=n_dropped,
    )


def collapse_slopes(traces: Mapping[float, object]) -> CollapseResult:
    """Decay rate of each survival trace against t/T1, keyed by T1.

    Accepts single-run traces (``cumulative``) or ensemble traces
    (``cumulative_mean``). Returns the per-key rates and their max/min
    ratio; similar rates across periods mean the decay per measurement is
    period-independent.
    """
    if len(traces) < 2:
        raise ValueError("need at least two periods to compare slopes")
    rates: dict[float, float] = {}
    fits: dict[float, FitResult] = {}
    for t1, trace in traces.items():
        survival = getattr(trace, "cumulative", None)
        if survival is None:
            survival = trace.cumulative_mean
        fit = fit_exponential(np.asarray(trace.times, dtype=float) / t1, survival)
        rates[t1] = fit.coefficients["rate"]
        fits[t1] = fit
    values = list(rates.values())
    return CollapseResult(rates, float(max(values) / min(values)), fits)
