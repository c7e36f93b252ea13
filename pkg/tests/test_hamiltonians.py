"""Hamiltonian construction, the closed-form propagator, and frame consistency."""

import numpy as np
import pytest

from azoqubit import qcore
from azoqubit.hamiltonians import (
    TwoSpinParameters,
    coupling_propagator,
    lab_hamiltonian,
    rotating_frame_map,
    secular_hamiltonian,
)
from azoqubit.qcore import QuantumState, apply, is_hermitian, matrix_exponential


class TestLabHamiltonian:
    def test_pure_coupling_spectrum(self):
        """J = 4 isotropic coupling splits into a triplet at 1 and singlet at -3."""
        h = lab_hamiltonian(TwoSpinParameters(0.0, 0.0, 4.0))
        evals = np.sort(np.linalg.eigvalsh(h))
        np.testing.assert_allclose(evals, [-3.0, 1.0, 1.0, 1.0], atol=qcore.ATOL)

    def test_pure_zeeman_diagonal(self):
        """omega1=10, omega2=6, J=0 -> diag(-8, -2, 2, 8)."""
        h = lab_hamiltonian(TwoSpinParameters(10.0, 6.0, 0.0))
        np.testing.assert_allclose(h, np.diag([-8.0, -2.0, 2.0, 8.0]), atol=qcore.ATOL)

    def test_hermitian(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            p = TwoSpinParameters(*rng.uniform(-1e5, 1e5, 2), rng.uniform(-50, 50))
            assert is_hermitian(lab_hamiltonian(p), atol=qcore.ATOL)

    def test_heteronuclearity_check(self):
        TwoSpinParameters(1.0, 2.0, 0.0).require_heteronuclear()
        with pytest.raises(ValueError):
            TwoSpinParameters(1.0, 1.0, 0.0).require_heteronuclear()


class TestSecularHamiltonian:
    def test_scaling(self):
        np.testing.assert_allclose(
            secular_hamiltonian(4.0), np.diag([1.0, -1.0, -1.0, 1.0]), atol=qcore.ATOL
        )

    def test_zero_coupling(self):
        np.testing.assert_allclose(secular_hamiltonian(0.0), np.zeros((4, 4)), atol=0)

    def test_diagonal_traceless(self):
        h = secular_hamiltonian(-8.9)
        np.testing.assert_allclose(h, np.diag(np.diagonal(h)), atol=0)
        assert abs(np.trace(h)) <= qcore.ATOL


class TestCouplingPropagator:
    def test_zero_time_identity(self):
        np.testing.assert_allclose(coupling_propagator(-16.0, 0.0), np.eye(4), atol=0)

    def test_global_phase_at_jt_4pi(self):
        """J*t = 4*pi puts e^{-+ i pi} = -1 on every diagonal entry."""
        u = coupling_propagator(2.0, 2.0 * np.pi)
        np.testing.assert_allclose(u, -np.eye(4), atol=1e-12)

    def test_matches_matrix_exponential_oracle(self):
        j, t = 10.0, 0.1
        np.testing.assert_allclose(
            coupling_propagator(j, t),
            matrix_exponential(secular_hamiltonian(j), t),
            atol=1e-12,
        )

    def test_oracle_agreement_100_random(self):
        """Closed form equals the spectral oracle for 100 random (J, t)."""
        rng = np.random.default_rng(2024)
        for _ in range(100):
            j = rng.uniform(-50.0, 50.0)
            t = rng.uniform(0.0, 2.0)
            np.testing.assert_allclose(
                coupling_propagator(j, t),
                matrix_exponential(secular_hamiltonian(j), t),
                atol=1e-12,
            )

    def test_semigroup(self):
        """U(J, t1) U(J, t2) = U(J, t1 + t2)."""
        rng = np.random.default_rng(8)
        for _ in range(50):
            j = rng.uniform(-50.0, 50.0)
            t1, t2 = rng.uniform(0.0, 2.0, 2)
            np.testing.assert_allclose(
                coupling_propagator(j, t1) @ coupling_propagator(j, t2),
                coupling_propagator(j, t1 + t2),
                atol=1e-12,
            )

    def test_commutes_across_couplings(self):
        u1 = coupling_propagator(-3.8, 0.3)
        u2 = coupling_propagator(-16.0, 0.7)
        np.testing.assert_allclose(u1 @ u2, u2 @ u1, atol=1e-12)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            coupling_propagator(1.0, float("nan"))


class TestRotatingFrameConsistency:
    @staticmethod
    def _infidelity(a: QuantumState, b: QuantumState) -> float:
        return 1.0 - abs(a.overlap(b)) ** 2

    def _run(self, omega1, omega2, j, t, psi0):
        params = TwoSpinParameters(omega1, omega2, j)
        params.require_heteronuclear()
        lab = apply(matrix_exponential(lab_hamiltonian(params), t), psi0)
        mapped = apply(rotating_frame_map(params, t), lab)
        secular = apply(coupling_propagator(j, t), psi0)
        return self._infidelity(mapped, secular)

    def test_secular_limit_bound(self):
        """Well-separated Zeeman frequencies: lab evolution mapped into the
        rotating frame matches the secular evolution within the perturbative
        bound 10*(J/d_omega)^2 + 1e-9 at t = pi/|J|."""
        rng = np.random.default_rng(31)
        cases = [
            (1.0e5, 3.0e5, 10.0),
            (2.0e5, -1.0e5, 20.0),
            (5.0e5, 1.0e6, -30.0),
        ]
        for omega1, omega2, j in cases:
            assert abs(omega1 - omega2) >= 1e4 * abs(j)
            psi0 = qcore.random_state(rng, 2)
            bound = 10.0 * (j / (omega1 - omega2)) ** 2 + 1e-9
            assert self._run(omega1, omega2, j, np.pi / abs(j), psi0) <= bound

    def test_reference_point(self):
        """omega1=1e5, omega2=3e5, J=10: infidelity <= 1e-3 at t = pi/10."""
        psi0 = qcore.state_from_token("++")
        assert self._run(1.0e5, 3.0e5, 10.0, np.pi / 10.0, psi0) <= 1e-3
