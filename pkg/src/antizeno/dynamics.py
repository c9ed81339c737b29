"""State propagation under a fixed Hamiltonian via its spectral decomposition.

Pure states are evolved as V exp(-i E t) V^dagger psi without forming the
propagator; density matrices get the full U rho U^dagger. One spectral
decomposition per parameter set is reused across all times, so each step
costs O(dim^2) (pure) or O(dim^3) (density).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .numkit import SpectralDecomposition, hermitian_eig, propagator
from . import model as _model

__all__ = ["QuantumState", "ExcitationTrace", "evolve", "excitation_trace"]

_PURE_NORM_TOL = 1e-10
_DENSITY_HERM_TOL = 1e-12
_DENSITY_TRACE_TOL = 1e-10
_DENSITY_MIN_EIG = -1e-10


@dataclass(frozen=True)
class QuantumState:
    """Pure-state amplitude vector or density matrix over the composite
    qubit (x) Fock basis.

    Invariants are enforced at construction: unit norm for pure states;
    Hermiticity, unit trace and positivity (min eigenvalue >= -1e-10) for
    density matrices.
    """

    kind: str  # "pure" | "density"
    data: np.ndarray

    def __post_init__(self):
        data = np.array(self.data, dtype=complex, copy=True)
        if self.kind == "pure":
            if data.ndim != 1:
                raise ValueError("pure state data must be a 1-d amplitude vector")
            norm = float(np.linalg.norm(data))
            if abs(norm - 1.0) > _PURE_NORM_TOL:
                raise ValueError(f"pure state norm deviates from 1 by {abs(norm - 1.0):.3e}")
            dim = data.size
        elif self.kind == "density":
            if data.ndim != 2 or data.shape[0] != data.shape[1]:
                raise ValueError("density matrix must be square")
            herm = np.max(np.abs(data - data.conj().T))
            if herm > _DENSITY_HERM_TOL:
                raise ValueError(f"density matrix not Hermitian: max dev {herm:.3e}")
            trace = float(np.trace(data).real)
            if abs(trace - 1.0) > _DENSITY_TRACE_TOL:
                raise ValueError(f"density matrix trace deviates from 1 by {abs(trace - 1.0):.3e}")
            min_eig = float(np.linalg.eigvalsh(data)[0])
            if min_eig < _DENSITY_MIN_EIG:
                raise ValueError(f"density matrix not positive: min eigenvalue {min_eig:.3e}")
            dim = data.shape[0]
        else:
            raise ValueError(f"kind must be 'pure' or 'density', got {self.kind!r}")
        if dim < 4 or dim % 2:
            raise ValueError(f"composite dimension must be even and >= 4, got {dim}")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @classmethod
    def pure(cls, amplitudes) -> "QuantumState":
        return cls("pure", np.asarray(amplitudes, dtype=complex))

    @classmethod
    def density(cls, matrix) -> "QuantumState":
        return cls("density", np.asarray(matrix, dtype=complex))

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    def promoted(self) -> "QuantumState":
        """This state as a density matrix (pure states become projectors)."""
        if self.kind == "density":
            return self
        return QuantumState.density(np.outer(self.data, self.data.conj()))


@dataclass(frozen=True)
class ExcitationTrace:
    """Excitation probability sampled on an ascending time grid (ns)."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        t = np.asarray(self.times, dtype=float)
        v = np.asarray(self.values, dtype=float)
        if t.shape != v.shape or t.ndim != 1:
            raise ValueError("times and values must be 1-d arrays of equal length")
        if np.any(np.diff(t) <= 0):
            raise ValueError("times must be strictly increasing")
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)


def evolve(spec: SpectralDecomposition, s: QuantumState, t: float) -> QuantumState:
    """Propagate a state for time t (ns) under exp(-i H t)."""
    if not np.isfinite(t):
        raise ValueError("evolution time must be finite")
    if s.dim != spec.dim:
        raise ValueError(f"state dim {s.dim} does not match spectrum dim {spec.dim}")
    if s.kind == "pure":
        v = spec.eigenvectors
        phases = np.exp(-1j * spec.eigenvalues * t)
        return QuantumState.pure(v @ (phases * (v.conj().T @ s.data)))
    u = propagator(spec, t)
    return QuantumState.density(u @ s.data @ u.conj().T)


def excitation_trace(
    p: "_model.ModelParams", initial: QuantumState, t_grid, kind: str = "rabi"
) -> ExcitationTrace:
    """Excitation probability of ``initial`` evolved to each grid time.

    Each grid point is evolved independently from ``initial`` given one
    spectral decomposition, so the grid need not start at zero.
    """
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("t_grid must be a non-empty 1-d sequence")
    if np.any(np.diff(t) <= 0):
        raise ValueError("t_grid must be strictly increasing")
    spec = hermitian_eig(_model.hamiltonian(p, kind))
    values = [_model.excitation_probability(evolve(spec, initial, ti)) for ti in t]
    return ExcitationTrace(t, np.asarray(values))
