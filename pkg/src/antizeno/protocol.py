"""Repeated-measurement survival protocol: schedules, single runs, jitter
ensembles, period sweeps and the truncated-chain closed form.

A run starts from the model ground state, measures at each schedule time and
keeps only the no-click branch: record the per-event no-click probability,
evolve the conditional state to the next event, repeat. The ground state is
stationary, so the first factor is exactly the ground-state no-click
probability epsilon + (1-epsilon)(1-p_e). Cumulative survival is accumulated
in log space to avoid underflow on long schedules.

Schedules use two alternating periods T1 and T2 = ratio*T1 (ratio = sqrt(2)
in all presets) and optional uniform time jitter. Incommensurate periods and
jitter exist to keep the events from locking onto the post-measurement
dynamics: commensurate, jitter-free schedules can hit resonances where the
survival decay stalls or accelerates, so presets always randomize.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .dynamics import QuantumState, evolve
from .errors import NumericalError
from .measurement import MeasurementModel, measure_no_click
from .model import ModelParams, GroundStateDecomposition, ground_state, hamiltonian
from .numkit import SpectralDecomposition, hermitian_eig

__all__ = [
    "MeasurementSchedule",
    "SurvivalTrace",
    "EnsembleTrace",
    "PreparedModel",
    "prepare_model",
    "two_period_schedule",
    "jitter_schedule",
    "child_seeds",
    "run_survival",
    "ensemble_survival",
    "sweep_T1",
    "truncated_survival",
]

_JITTER_ATTEMPTS = 100


@dataclass(frozen=True)
class MeasurementSchedule:
    """Strictly increasing measurement times (ns) plus generation metadata."""

    times: np.ndarray
    provenance: Mapping = field(default_factory=dict)

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        if t.ndim != 1 or t.size == 0:
            raise ValueError("schedule must contain at least one time")
        if t[0] <= 0 or np.any(np.diff(t) <= 0):
            raise ValueError("schedule times must be strictly increasing and start after 0")
        t.flags.writeable = False
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "provenance", dict(self.provenance))

    def __len__(self) -> int:
        return self.times.size


@dataclass(frozen=True)
class SurvivalTrace:
    """Per-event no-click probabilities and their cumulative product."""

    times: np.ndarray
    single: np.ndarray
    cumulative: np.ndarray
    mean_single: float


@dataclass(frozen=True)
class EnsembleTrace:
    """Per-event mean/std of single and cumulative survival over jittered
    schedules. ``times`` are the nominal (unjittered) event times."""

    times: np.ndarray
    single_mean: np.ndarray
    single_std: np.ndarray
    cumulative_mean: np.ndarray
    cumulative_std: np.ndarray
    runs: int
    base_seed: int

    @property
    def mean_single(self) -> float:
        """Ensemble average of the per-run mean single-event survival."""
        return float(np.mean(self.single_mean))


@dataclass(frozen=True)
class PreparedModel:
    """Spectral decomposition + ground state, reusable across runs."""

    params: ModelParams
    kind: str
    spec: SpectralDecomposition
    ground: GroundStateDecomposition


def prepare_model(p: ModelParams, kind: str = "rabi") -> PreparedModel:
    """Diagonalize once; reuse across schedule events, sweeps and ensembles."""
    spec = hermitian_eig(hamiltonian(p, kind))
    return PreparedModel(p, kind, spec, ground_state(p, kind))


def two_period_schedule(T1: float, ratio: float, N: int) -> MeasurementSchedule:
    """N times built from alternating increments T1, T2 = ratio*T1, starting
    with T1: T1, T1+T2, 2*T1+T2, 2*T1+2*T2, ..."""
    if not (np.isfinite(T1) and T1 > 0):
        raise ValueError(f"T1 must be > 0, got {T1!r}")
    if not (np.isfinite(ratio) and ratio > 0):
        raise ValueError(f"ratio must be > 0, got {ratio!r}")
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N!r}")
    increments = np.empty(N)
    increments[0::2] = T1
    increments[1::2] = ratio * T1
    return MeasurementSchedule(
        np.cumsum(increments),
        {"T1": float(T1), "ratio": float(ratio), "jitter_width": 0.0, "seed": None},
    )


def jitter_schedule(
    s: MeasurementSchedule, width: float, omega: float, seed: int
) -> MeasurementSchedule:
    """Shift each event by an independent uniform draw in [-width/omega,
    +width/omega] (width is a dimensionless omega*dt).

    Events are drawn in order; a draw that breaks the strict ordering is
    redrawn up to 100 times before giving up. Deterministic for a given seed.
    """
    if not (np.isfinite(width) and width >= 0):
        raise ValueError(f"jitter width must be >= 0, got {width!r}")
    if width == 0.0:
        return MeasurementSchedule(
            s.times, {**s.provenance, "jitter_width": 0.0, "seed": int(seed)}
        )
    rng = np.random.default_rng(int(seed))
    half_window = width / omega
    out = np.empty_like(s.times)
    prev = 0.0
    for i, t in enumerate(s.times):
        for _ in range(_JITTER_ATTEMPTS):
            candidate = t + rng.uniform(-half_window, half_window)
            if candidate > prev:
                out[i] = candidate
                prev = candidate
                break
        else:
            raise NumericalError(
                f"jitter ordering could not be restored at event {i} "
                f"after {_JITTER_ATTEMPTS} redraws (width too large for the schedule)"
            )
    return MeasurementSchedule(
        out, {**s.provenance, "jitter_width": float(width), "seed": int(seed)}
    )


def child_seeds(base_seed: int, runs: int) -> np.ndarray:
    """Deterministic per-run seeds: SeedSequence(base_seed) expanded to
    ``runs`` uint64 words. The generator used downstream is numpy PCG64."""
    return np.random.SeedSequence(int(base_seed)).generate_state(runs, dtype=np.uint64)


def _as_prepared(p, kind: str) -> PreparedModel:
    if isinstance(p, PreparedModel):
        return p
    return prepare_model(p, kind)


def run_survival(
    p: ModelParams | PreparedModel,
    s: MeasurementSchedule,
    m: MeasurementModel,
    kind: str = "rabi",
) -> SurvivalTrace:
    """Survival trace of one schedule, starting from the ground state.

    The evolution before the first event is a no-op (the ground state is
    stationary), so the first single-event survival equals the ground-state
    no-click probability. With epsilon = 0 the conditional state stays pure
    and the cheap pure-state path is used; otherwise the state is promoted
    to a density matrix.
    """
    prep = _as_prepared(p, kind)
    if prep.ground.degenerate:
        raise ValueError(
            "ground manifold is degenerate (omega0 = 0?); the survival protocol "
            "requires a unique ground state"
        )
    state = QuantumState.pure(prep.ground.state)
    if m.epsilon > 0.0:
        state = state.promoted()

    singles = np.empty(len(s))
    previous_time = 0.0
    for i, t in enumerate(s.times):
        state = evolve(prep.spec, state, t - previous_time)
        outcome = measure_no_click(state, m)
        state = outcome.post_state
        singles[i] = outcome.no_click_probability
        previous_time = t
    cumulative = np.exp(np.cumsum(np.log(singles)))
    return SurvivalTrace(s.times, singles, cumulative, float(singles.mean()))


def ensemble_survival(
    p: ModelParams | PreparedModel,
    base: MeasurementSchedule,
    m: MeasurementModel,
    jitter_width: float,
    runs: int,
    base_seed: int,
    kind: str = "rabi",
) -> EnsembleTrace:
    """Mean/std of survival over ``runs`` jittered copies of ``base``.

    Per-run seeds derive deterministically from ``base_seed`` via
    ``child_seeds``; the k-th run uses the same jitter draws regardless of
    epsilon or coupling, so ensembles with different detector settings are
    paired.
    """
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs!r}")
    prep = _as_prepared(p, kind)
    seeds = child_seeds(base_seed, runs)
    singles = np.empty((runs, len(base)))
    cumulatives = np.empty((runs, len(base)))
    for k in range(runs):
        schedule = jitter_schedule(base, jitter_width, prep.params.omega, int(seeds[k]))
        trace = run_survival(prep, schedule, m)
        singles[k] = trace.single
        cumulatives[k] = trace.cumulative
    return EnsembleTrace(
        times=base.times,
        single_mean=singles.mean(axis=0),
        single_std=singles.std(axis=0),
        cumulative_mean=cumulatives.mean(axis=0),
        cumulative_std=cumulatives.std(axis=0),
        runs=runs,
        base_seed=int(base_seed),
    )


def sweep_T1(
    p: ModelParams | PreparedModel,
    N: int,
    T1_values,
    ratio: float,
    m: MeasurementModel,
    kind: str = "rabi",
) -> float:
    """Mean over T1 of the final cumulative survival after N measurements."""
    values = np.asarray(T1_values, dtype=float)
    if values.size == 0:
        raise ValueError("T1_values must be non-empty")
    prep = _as_prepared(p, kind)
    finals = [
        run_survival(prep, two_period_schedule(t1, ratio, N), m).cumulative[-1]
        for t1 in values
    ]
    return float(np.mean(finals))


def truncated_survival(c0: float, N: int) -> float:
    """|c0|**(2N+2): survival after N measurements if every no-click left the
    system exactly in the ground state (two-state truncation of the chain)."""
    magnitude = abs(c0)
    if magnitude > 1.0 + 1e-12:
        raise ValueError(f"|c0| must be <= 1, got {magnitude!r}")
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N!r}")
    return float(min(magnitude, 1.0) ** (2 * N + 2))
