import numpy as np
import pytest

from antizeno.operators import (
    FockBasis,
    annihilation,
    basis_index,
    basis_state,
    field_operator,
    parity_operator,
    qubit_operator,
)


def test_basis_validation():
    with pytest.raises(ValueError):
        FockBasis(0)
    with pytest.raises(ValueError):
        FockBasis(-3)
    assert FockBasis(5).dim == 12


def test_basis_index_is_bijective():
    basis = FockBasis(4)
    indices = [basis_index(basis, s, n) for s in (0, 1) for n in range(5)]
    assert sorted(indices) == list(range(basis.dim))


class TestAnnihilation:
    def test_lowering_on_one_photon(self):
        a = annihilation(FockBasis(2))
        one = np.zeros(3, dtype=complex)
        one[1] = 1.0
        assert np.allclose(a @ one, [1.0, 0.0, 0.0], atol=1e-15)

    def test_vacuum_annihilates(self):
        a = annihilation(FockBasis(2))
        vac = np.zeros(3, dtype=complex)
        vac[0] = 1.0
        assert np.allclose(a @ vac, 0.0, atol=1e-15)

    def test_number_operator_diagonal(self):
        a = annihilation(FockBasis(5))
        number = a.conj().T @ a
        assert np.allclose(np.diag(number).real, [0, 1, 2, 3, 4, 5], atol=1e-14)
        assert np.max(np.abs(number - np.diag(np.diag(number)))) == 0.0

    def test_commutator_identity_below_cutoff(self):
        basis = FockBasis(7)
        a = annihilation(basis)
        commutator = a @ a.conj().T - a.conj().T @ a
        # the last diagonal entry is a truncation artifact; only n < n_max counts
        assert np.allclose(np.diag(commutator)[: basis.n_max], 1.0, atol=1e-14)


class TestQubitOperators:
    def test_completeness(self):
        basis = FockBasis(3)
        total = qubit_operator("P_e", basis).matrix + qubit_operator("P_g", basis).matrix
        assert np.array_equal(total, np.eye(basis.dim, dtype=complex))

    def test_sigma_x_flips_spin(self):
        basis = FockBasis(3)
        sx = qubit_operator("sigma_x", basis).matrix
        assert np.allclose(sx @ basis_state(basis, 0, 0), basis_state(basis, 1, 0), atol=1e-15)

    def test_sigma_z_eigenstate(self):
        basis = FockBasis(3)
        sz = qubit_operator("sigma_z", basis).matrix
        e3 = basis_state(basis, 1, 3)
        assert np.vdot(e3, sz @ e3).real == pytest.approx(1.0, abs=1e-15)

    def test_unknown_name(self):
        with pytest.raises(ValueError, match="unknown qubit operator"):
            qubit_operator("sigma_y", FockBasis(2))

    def test_qubit_and_field_operators_commute(self):
        basis = FockBasis(4)
        a_full = field_operator(annihilation(basis), basis)
        number_full = field_operator(
            annihilation(basis).conj().T @ annihilation(basis), basis
        )
        for name in ("sigma_x", "sigma_z", "P_e", "P_g"):
            q = qubit_operator(name, basis).matrix
            for f in (a_full, number_full):
                assert np.max(np.abs(q @ f - f @ q)) <= 1e-14


class TestParity:
    def test_even_states(self):
        basis = FockBasis(4)
        parity = parity_operator(basis).matrix
        g0 = basis_state(basis, 0, 0)
        e1 = basis_state(basis, 1, 1)
        assert np.vdot(g0, parity @ g0).real == 1.0
        assert np.vdot(e1, parity @ e1).real == 1.0

    def test_odd_state(self):
        basis = FockBasis(4)
        parity = parity_operator(basis).matrix
        g3 = basis_state(basis, 0, 3)
        assert np.vdot(g3, parity @ g3).real == -1.0

    def test_squares_to_identity_exactly(self):
        basis = FockBasis(6)
        parity = parity_operator(basis).matrix
        assert np.array_equal(parity @ parity, np.eye(basis.dim, dtype=complex))
