"""State/operator algebra: definitions, invariants, and the propagator oracle."""

import numpy as np
import pytest
import scipy.linalg

from azoqubit import qcore
from azoqubit.qcore import (
    QuantumState,
    apply,
    basis_state,
    concurrence,
    hadamard,
    is_hermitian,
    is_unitary,
    matrix_exponential,
    random_state,
    random_unitary,
    spin_operator,
    state_from_token,
)


class TestBasisState:
    def test_00_is_first_basis_vector(self):
        np.testing.assert_array_equal(basis_state("00").amplitudes, [1, 0, 0, 0])

    def test_10_is_third_basis_vector(self):
        """Binary-lexicographic ordering: |10> sits at index 2."""
        np.testing.assert_array_equal(basis_state("10").amplitudes, [0, 0, 1, 0])

    def test_non_binary_character_rejected(self):
        with pytest.raises(ValueError):
            basis_state("2")

    def test_length_out_of_range_rejected(self):
        with pytest.raises(ValueError):
            basis_state("")
        with pytest.raises(ValueError):
            basis_state("0" * 9)

    def test_all_two_qubit_vectors(self):
        for idx, bits in enumerate(["00", "01", "10", "11"]):
            amps = basis_state(bits).amplitudes
            assert amps[idx] == 1.0
            assert np.count_nonzero(amps) == 1


class TestQuantumState:
    def test_normalization_enforced(self):
        with pytest.raises(ValueError):
            QuantumState([1.0, 1.0])

    def test_non_power_of_two_rejected(self):
        with pytest.raises(ValueError):
            QuantumState([1.0, 0.0, 0.0])

    def test_immutable(self):
        psi = basis_state("0")
        with pytest.raises(AttributeError):
            psi.amplitudes = np.array([0.0, 1.0])
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 0.0

    def test_norm_within_1e12_after_construction(self):
        psi = QuantumState(np.ones(4) / 2.0)
        assert abs(np.linalg.norm(psi.amplitudes) - 1.0) <= 1e-12


class TestSpinOperator:
    def test_z_single_qubit(self):
        """sigma_z / 2 = diag(1/2, -1/2)."""
        np.testing.assert_allclose(
            spin_operator("z", 0, 1), np.diag([0.5, -0.5]), atol=qcore.ATOL
        )

    def test_x_single_qubit(self):
        np.testing.assert_allclose(
            spin_operator("x", 0, 1), np.array([[0, 0.5], [0.5, 0]]), atol=qcore.ATOL
        )

    def test_z_on_second_qubit_of_two(self):
        """I (x) sigma_z/2 = diag(1/2, -1/2, 1/2, -1/2)."""
        np.testing.assert_allclose(
            spin_operator("z", 1, 2), np.diag([0.5, -0.5, 0.5, -0.5]), atol=qcore.ATOL
        )

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            spin_operator("z", 2, 2)

    def test_bad_axis(self):
        with pytest.raises(ValueError):
            spin_operator("w", 0, 1)

    def test_spin_commutator(self):
        """[Ix, Iy] = i Iz for the spin-1/2 operators."""
        ix, iy, iz = (spin_operator(a, 0, 1) for a in "xyz")
        np.testing.assert_allclose(ix @ iy - iy @ ix, 1j * iz, atol=qcore.ATOL)


class TestHadamard:
    def test_single_qubit_plus_state(self):
        psi = apply(hadamard(0, 1), basis_state("0"))
        np.testing.assert_allclose(psi.amplitudes, np.array([1, 1]) / np.sqrt(2), atol=qcore.ATOL)

    def test_first_qubit_of_two_gives_plus_zero(self):
        """H on qubit 0 of |00> -> (|00> + |10>)/sqrt(2)."""
        psi = apply(hadamard(0, 2), basis_state("00"))
        np.testing.assert_allclose(
            psi.amplitudes, np.array([1, 0, 1, 0]) / np.sqrt(2), atol=qcore.ATOL
        )

    def test_involution(self):
        np.testing.assert_allclose(hadamard(0, 1) @ hadamard(0, 1), np.eye(2), atol=qcore.ATOL)

    def test_index_out_of_range(self):
        with pytest.raises(ValueError):
            hadamard(1, 1)


class TestApply:
    def test_identity(self):
        psi = random_state(np.random.default_rng(0), 2)
        out = apply(np.eye(4), psi)
        np.testing.assert_allclose(out.amplitudes, psi.amplitudes, atol=qcore.ATOL)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            apply(np.eye(2), basis_state("00"))

    def test_non_square_rejected(self):
        with pytest.raises(ValueError):
            apply(np.ones((2, 4)), basis_state("00"))

    def test_non_unitary_misuse_detected(self):
        with pytest.raises(ValueError):
            apply(2.0 * np.eye(4), basis_state("00"))


class TestConcurrence:
    def test_bell_state_is_maximal(self):
        bell = QuantumState(np.array([1, 0, 0, 1]) / np.sqrt(2))
        assert concurrence(bell) == pytest.approx(1.0, abs=1e-12)

    def test_product_state_is_zero(self):
        assert concurrence(state_from_token("+0")) == pytest.approx(0.0, abs=1e-12)

    def test_zz_coupling_at_half_period_entangles_plus_plus(self):
        # Independent route: build the phased amplitudes by hand at J*t = pi
        # and evaluate C directly; analytically C = |sin(J*t/2)| = 1.
        jt = np.pi
        amps = np.array(
            [
                np.exp(-1j * jt / 4),
                np.exp(+1j * jt / 4),
                np.exp(+1j * jt / 4),
                np.exp(-1j * jt / 4),
            ]
        ) / 2.0
        c = concurrence(QuantumState(amps))
        assert c == pytest.approx(abs(np.sin(jt / 2.0)), abs=1e-12)
        assert c == pytest.approx(1.0, abs=1e-12)

    def test_wrong_dimension_rejected(self):
        with pytest.raises(ValueError):
            concurrence(basis_state("0"))

    def test_bounds_on_random_states(self):
        """0 <= C <= 1 over >= 1000 random normalized states."""
        rng = np.random.default_rng(42)
        for _ in range(1000):
            c = concurrence(random_state(rng, 2))
            assert -1e-15 <= c <= 1.0 + 1e-12

    def test_local_unitary_invariance(self):
        """C((A x B) psi) = C(psi) for random single-qubit unitaries."""
        rng = np.random.default_rng(7)
        for _ in range(200):
            psi = random_state(rng, 2)
            ab = np.kron(random_unitary(rng, 2), random_unitary(rng, 2))
            assert concurrence(apply(ab, psi)) == pytest.approx(concurrence(psi), abs=1e-10)


class TestMatrixExponential:
    def test_zero_time_is_identity(self):
        h = np.diag([1.0, -1.0, 2.0, 0.5])
        np.testing.assert_allclose(matrix_exponential(h, 0.0), np.eye(4), atol=qcore.ATOL)

    def test_zz_coupling_closed_form(self):
        """exp(-i J Iz(x)Iz t) is diagonal with phases -+ J t / 4."""
        j, t = 10.0, 0.1
        h = j * (spin_operator("z", 0, 2) @ spin_operator("z", 1, 2))
        expected = np.diag(np.exp(np.array([-1, 1, 1, -1]) * 1j * j * t / 4.0))
        np.testing.assert_allclose(matrix_exponential(h, t), expected, atol=qcore.ATOL)

    def test_unitarity_for_random_hermitian(self):
        rng = np.random.default_rng(3)
        for _ in range(50):
            z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            h = (z + z.conj().T) / 2.0
            u = matrix_exponential(h, rng.uniform(-2.0, 2.0))
            assert is_unitary(u, atol=qcore.ATOL)

    def test_agrees_with_scipy_expm(self):
        """Cross-check the spectral route against Pade scaling-and-squaring."""
        rng = np.random.default_rng(11)
        for _ in range(50):
            z = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
            h = (z + z.conj().T) / 2.0
            t = rng.uniform(0.0, 2.0)
            np.testing.assert_allclose(
                matrix_exponential(h, t), scipy.linalg.expm(-1j * h * t), atol=1e-12
            )

    def test_non_hermitian_rejected(self):
        with pytest.raises(ValueError):
            matrix_exponential(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)

    def test_non_finite_time_rejected(self):
        with pytest.raises(ValueError):
            matrix_exponential(np.eye(2), float("inf"))


class TestNormPreservation:
    def test_random_unitaries_preserve_norm(self):
        rng = np.random.default_rng(123)
        for _ in range(1000):
            psi = random_state(rng, 2)
            out = apply(random_unitary(rng, 4), psi)
            assert abs(np.linalg.norm(out.amplitudes) - 1.0) <= 1e-12


class TestStateFromToken:
    def test_plus_plus_is_uniform(self):
        np.testing.assert_allclose(
            state_from_token("++").amplitudes, np.full(4, 0.5), atol=qcore.ATOL
        )

    def test_basis_tokens(self):
        np.testing.assert_array_equal(state_from_token("01").amplitudes, [0, 1, 0, 0])

    def test_unknown_token_rejected(self):
        with pytest.raises(ValueError):
            state_from_token("07")


def test_hermiticity_and_unitarity_helpers():
    assert is_hermitian(np.diag([1.0, 2.0]))
    assert not is_hermitian(np.array([[0, 1], [0, 0]]))
    assert is_unitary(np.eye(3))
    assert not is_unitary(2 * np.eye(3))
