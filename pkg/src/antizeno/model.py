"""Qubit-resonator Hamiltonians, ground-state structure and the quadratic
self-excitation law.

Two Hamiltonians are provided: the full model with counter-rotating coupling
sigma_x (a + a^dagger), and its rotating-wave (excitation-conserving)
counterpart used as a null reference. The full model conserves the parity
(-1)**(n+s), and its ground state lives in the even sector: it is a chain
|g,0>, |e,1>, |g,2>, ... whose coefficients grow with the coupling. The
qubit excitation probability in that ground state scales quadratically with
g/omega at resonance; for small coupling the leading chain coefficient has
the closed form -g/(omega+omega0).

Units: frequencies in GHz, times in ns, hbar = 1.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import TYPE_CHECKING

import numpy as np

from .errors import NumericalError
from .numkit import HermitianOperator, SpectralDecomposition, hermitian_eig, tensor_product
from .operators import FockBasis, annihilation, field_operator, qubit_operator

if TYPE_CHECKING:  # pragma: no cover
    from .dynamics import QuantumState

__all__ = [
    "DEGENERACY_GAP",
    "CUTOFF_CAP",
    "ModelParams",
    "GroundStateDecomposition",
    "rabi_hamiltonian",
    "jaynes_cummings_hamiltonian",
    "hamiltonian",
    "ground_state",
    "excitation_probability",
    "perturbative_c1",
    "converge_cutoff",
    "assert_cutoff_converged",
    "eigenstate_overlaps",
]

# Ground manifolds with a gap below this are reported as degenerate.
DEGENERACY_GAP = 1e-10

# converge_cutoff gives up at this n_max.
CUTOFF_CAP = 200

HAMILTONIAN_KINDS = ("rabi", "jc")


@dataclass(frozen=True)
class ModelParams:
    """Model parameters: resonator frequency, qubit splitting, coupling (GHz)
    and the Fock cutoff."""

    omega: float
    omega0: float
    g: float
    n_max: int

    def __post_init__(self):
        if not (np.isfinite(self.omega) and self.omega > 0):
            raise ValueError(f"omega must be > 0, got {self.omega!r}")
        if not (np.isfinite(self.omega0) and self.omega0 >= 0):
            raise ValueError(f"omega0 must be >= 0, got {self.omega0!r}")
        if not (np.isfinite(self.g) and self.g >= 0):
            raise ValueError(f"g must be >= 0, got {self.g!r}")
        FockBasis(self.n_max)  # validates n_max

    @property
    def basis(self) -> FockBasis:
        return FockBasis(self.n_max)


@dataclass(frozen=True)
class GroundStateDecomposition:
    """Ground energy, state vector and even-chain coefficients.

    ``even_chain[k]`` is the amplitude on |g,k> for even k and on |e,k> for
    odd k; ``p_e`` is the qubit excitation probability. The global phase is
    fixed so that ``even_chain[0]`` is real and >= 0.

    When the ground manifold is numerically degenerate (gap below
    ``DEGENERACY_GAP``, e.g. at omega0 = 0) the result is flagged: ``state``
    and ``even_chain`` are then one arbitrary member of the manifold (no
    phase fix, no parity guarantee) while ``p_e`` is the basis-independent
    equal-weight average over the degenerate block.
    """

    energy: float
    state: np.ndarray
    even_chain: np.ndarray
    p_e: float
    gap: float
    degenerate: bool = False


def rabi_hamiltonian(p: ModelParams) -> HermitianOperator:
    """omega a^dagger a + (omega0/2) sigma_z + g sigma_x (a + a^dagger)."""
    basis = p.basis
    a = annihilation(basis)
    number = field_operator(a.conj().T @ a, basis)
    sz = qubit_operator("sigma_z", basis).matrix
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    coupling = tensor_product(sx, a + a.conj().T)
    return HermitianOperator(p.omega * number + 0.5 * p.omega0 * sz + p.g * coupling)


def jaynes_cummings_hamiltonian(p: ModelParams) -> HermitianOperator:
    """Rotating-wave counterpart: the counter-rotating terms are dropped.

    H = omega a^dagger a + (omega0/2) sigma_z + g (sigma^+ a + sigma^- a^dagger),
    which conserves the excitation number and has the separable ground state
    |g,0> for g < omega at resonance.
    """
    basis = p.basis
    a = annihilation(basis)
    number = field_operator(a.conj().T @ a, basis)
    sz = qubit_operator("sigma_z", basis).matrix
    sp = np.array([[0, 0], [1, 0]], dtype=complex)  # |e><g|
    exchange = tensor_product(sp, a)
    return HermitianOperator(
        p.omega * number + 0.5 * p.omega0 * sz + p.g * (exchange + exchange.conj().T)
    )


def hamiltonian(p: ModelParams, kind: str = "rabi") -> HermitianOperator:
    """Dispatch between the full model ("rabi") and the RWA model ("jc")."""
    if kind == "rabi":
        return rabi_hamiltonian(p)
    if kind == "jc":
        return jaynes_cummings_hamiltonian(p)
    raise ValueError(f"unknown Hamiltonian kind {kind!r}; expected one of {HAMILTONIAN_KINDS}")


def _block_p_e(vec: np.ndarray) -> float:
    half = vec.size // 2
    return float(np.sum(np.abs(vec[half:]) ** 2))


def ground_state(p: ModelParams, kind: str = "rabi") -> GroundStateDecomposition:
    """Lowest eigenstate of the model, decomposed along the even parity chain.

    The caller is responsible for using a converged cutoff (see
    ``converge_cutoff``).
    """
    spec = hermitian_eig(hamiltonian(p, kind))
    vals, vecs = spec.eigenvalues, spec.eigenvectors
    energy = float(vals[0])
    gap = float(vals[1] - vals[0])
    nf = p.n_max + 1

    if gap < DEGENERACY_GAP:
        block = np.flatnonzero(vals - vals[0] < DEGENERACY_GAP)
        p_e = float(np.mean([_block_p_e(vecs[:, i]) for i in block]))
        state = vecs[:, 0].copy()
        chain = _extract_chain(state, nf)
        return GroundStateDecomposition(energy, state, chain, p_e, gap, degenerate=True)

    state = vecs[:, 0].copy()
    c0 = state[0]
    if abs(c0) > 0:
        state = state * (c0.conjugate() / abs(c0))
    chain = _extract_chain(state, nf)

    odd_weight = 1.0 - float(np.sum(np.abs(chain) ** 2))
    if abs(odd_weight) > 1e-10:
        raise NumericalError(
            f"ground state leaks out of the even parity sector by {odd_weight:.3e}"
        )
    p_e = _block_p_e(state)
    return GroundStateDecomposition(energy, state, chain, p_e, gap, degenerate=False)


def _extract_chain(state: np.ndarray, nf: int) -> np.ndarray:
    # chain[k] = <g,k|G> for even k, <e,k|G> for odd k
    chain = np.empty(nf, dtype=complex)
    for k in range(nf):
        chain[k] = state[k] if k % 2 == 0 else state[nf + k]
    return chain


def excitation_probability(state: "QuantumState") -> float:
    """Qubit excitation probability <P_e> of a normalized state."""
    data = state.data
    if state.kind == "pure":
        norm_sq = float(np.vdot(data, data).real)
        if abs(norm_sq - 1.0) > 1e-8:
            raise NumericalError(f"state norm^2 deviates from 1 by {abs(norm_sq - 1.0):.3e}")
        return _block_p_e(data)
    trace = float(np.trace(data).real)
    if abs(trace - 1.0) > 1e-8:
        raise NumericalError(f"density matrix trace deviates from 1 by {abs(trace - 1.0):.3e}")
    half = data.shape[0] // 2
    return float(np.sum(np.diag(data).real[half:]))


def perturbative_c1(p: ModelParams) -> float:
    """Leading-order chain coefficient -g/(omega+omega0), valid for g << omega.

    Squared, this gives the small-coupling excitation probability; at
    resonance the quadratic-law prefactor is omega^2/(omega+omega0)^2 = 1/4.
    """
    return -p.g / (p.omega + p.omega0)


def _ground_scalars(p: ModelParams, n_max: int, kind: str) -> tuple[float, float]:
    gs = ground_state(replace(p, n_max=n_max), kind)
    return gs.energy, gs.p_e


def converge_cutoff(p: ModelParams, tol: float, kind: str = "rabi") -> int:
    """Smallest n_max (stepping by 10 from 10) whose ground energy and p_e
    both move by less than ``tol`` when the cutoff grows by 10.

    Raises ``NumericalError`` if the cap (n_max = 200) is reached without
    convergence.
    """
    if not (np.isfinite(tol) and tol > 0):
        raise ValueError(f"tol must be > 0, got {tol!r}")
    cache: dict[int, tuple[float, float]] = {}

    def scalars(n_max: int) -> tuple[float, float]:
        if n_max not in cache:
            cache[n_max] = _ground_scalars(p, n_max, kind)
        return cache[n_max]

    for candidate in range(10, CUTOFF_CAP, 10):
        e1, pe1 = scalars(candidate)
        e2, pe2 = scalars(candidate + 10)
        if abs(e2 - e1) < tol and abs(pe2 - pe1) < tol:
            return candidate
    raise NumericalError(
        f"cutoff not converged to tol={tol:g} at the n_max={CUTOFF_CAP} cap"
    )


def assert_cutoff_converged(p: ModelParams, tol: float = 1e-8, kind: str = "rabi") -> None:
    """Check that growing p.n_max by 10 moves ground energy and p_e by < tol."""
    e1, pe1 = _ground_scalars(p, p.n_max, kind)
    e2, pe2 = _ground_scalars(p, p.n_max + 10, kind)
    if abs(e2 - e1) >= tol or abs(pe2 - pe1) >= tol:
        raise NumericalError(
            f"Fock cutoff n_max={p.n_max} not converged to {tol:g}: "
            f"dE={abs(e2 - e1):.3e}, dp_e={abs(pe2 - pe1):.3e}"
        )


def eigenstate_overlaps(state: "QuantumState", spec: SpectralDecomposition, k: int) -> np.ndarray:
    """Overlap probabilities |<E_i|psi>|^2 with the k lowest eigenstates."""
    if state.kind != "pure":
        raise ValueError("eigenstate_overlaps requires a pure state")
    if not 1 <= k <= spec.dim:
        raise ValueError(f"k must be in [1, {spec.dim}], got {k}")
    amps = spec.eigenvectors[:, :k].conj().T @ state.data
    return np.abs(amps) ** 2
