"""State-vector and operator algebra for small spin-1/2 registers.

Conventions used throughout the package:

* Basis ordering is binary-lexicographic. For two qubits the basis is
  {|00>, |01>, |10>, |11>} and qubit 0 is the leftmost tensor factor,
  so index(b0 b1 ... b_{n-1}) = int(b0 b1 ... b_{n-1}, 2).
* Spin operators are Pauli matrices divided by two, in natural units
  (hbar = 1). Hamiltonian entries are angular rates; propagators and
  gates are dimensionless.
* Everything is dense complex128. The register size is capped at
  ``MAX_QUBITS`` qubits, far beyond what the two-spin physics needs.

All values are immutable after construction and every operation is a
pure function, so objects can be shared freely across threads.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

# Absolute tolerance for operator algebra checks (hermiticity, unitarity,
# closed-form/oracle agreement).  Single knob for the 4x4 linear algebra.
ATOL = 1e-12

# A norm drifting further than this from 1 signals a non-unitary operator
# (or a bad hand-built state) rather than floating-point noise.
NORM_ATOL = 1e-9

MAX_QUBITS = 8

PAULI = {
    "x": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

_HADAMARD_1Q = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)
_IDENTITY_1Q = np.eye(2, dtype=complex)


class QuantumState:
    """Normalized complex amplitude vector over the n-qubit binary basis.

    Amplitudes are copied, checked for unit norm and frozen; instances are
    immutable value objects.
    """

    __slots__ = ("amplitudes",)

    def __init__(self, amplitudes: Sequence[complex], *, atol: float = NORM_ATOL):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        n = int(amps.size).bit_length() - 1
        if amps.size < 2 or amps.size != 2**n:
            raise ValueError(f"amplitude vector length {amps.size} is not a power of two >= 2")
        if n > MAX_QUBITS:
            raise ValueError(f"{n} qubits exceeds the supported maximum of {MAX_QUBITS}")
        norm = float(np.linalg.norm(amps))
        if abs(norm - 1.0) > atol:
            raise ValueError(f"state norm {norm!r} deviates from 1 by more than {atol}")
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def __setattr__(self, name, value):
        raise AttributeError("QuantumState is immutable")

    @property
    def n_qubits(self) -> int:
        return int(self.amplitudes.size).bit_length() - 1

    def overlap(self, other: "QuantumState") -> complex:
        """Inner product <self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __repr__(self) -> str:
        return f"QuantumState({self.amplitudes.tolist()!r})"


def basis_state(bits: str) -> QuantumState:
    """Computational basis vector |bits>, e.g. basis_state("10") -> (0,0,1,0)."""
    if not 1 <= len(bits) <= MAX_QUBITS:
        raise ValueError(f"bit string length must be in [1, {MAX_QUBITS}], got {len(bits)}")
    if any(c not in "01" for c in bits):
        raise ValueError(f"bit string may contain only '0'/'1', got {bits!r}")
    amps = np.zeros(2 ** len(bits), dtype=complex)
    amps[int(bits, 2)] = 1.0
    return QuantumState(amps)


def _embed(single: np.ndarray, qubit: int, n: int) -> np.ndarray:
    """Tensor a single-qubit operator into an n-qubit register (identity elsewhere)."""
    if not 0 <= qubit < n:
        raise ValueError(f"qubit index {qubit} out of range for {n} qubits")
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {n}")
    out = np.array([[1.0 + 0.0j]])
    for k in range(n):
        out = np.kron(out, single if k == qubit else _IDENTITY_1Q)
    return out


def spin_operator(axis: str, qubit: int, n: int) -> np.ndarray:
    """n-qubit embedding of the spin-1/2 operator sigma_axis / 2 on one qubit."""
    if axis not in PAULI:
        raise ValueError(f"axis must be one of 'x', 'y', 'z', got {axis!r}")
    return _embed(PAULI[axis] / 2.0, qubit, n)


def hadamard(qubit: int, n: int) -> np.ndarray:
    """n-qubit embedding of the Hadamard gate on one qubit."""
    return _embed(_HADAMARD_1Q, qubit, n)


def apply(operator: np.ndarray, psi: QuantumState) -> QuantumState:
    """Apply a unitary to a state; the result's norm is checked, never forced."""
    op = np.asarray(operator, dtype=complex)
    if op.ndim != 2 or op.shape[0] != op.shape[1]:
        raise ValueError(f"operator must be square, got shape {op.shape}")
    if op.shape[0] != psi.amplitudes.size:
        raise ValueError(
            f"dimension mismatch: operator is {op.shape[0]}x{op.shape[1]}, "
            f"state has {psi.amplitudes.size} amplitudes"
        )
    return QuantumState(op @ psi.amplitudes, atol=NORM_ATOL)


def concurrence(psi: QuantumState) -> float:
    """Pure-state concurrence C = 2|a00*a11 - a01*a10| of a two-qubit state.

    C = 1 for maximally entangled states, C = 0 for product states.
    """
    if psi.amplitudes.size != 4:
        raise ValueError("concurrence is defined here for exactly 2 qubits")
    a00, a01, a10, a11 = psi.amplitudes
    return float(2.0 * abs(a00 * a11 - a01 * a10))


def is_hermitian(operator: np.ndarray, atol: float = ATOL) -> bool:
    op = np.asarray(operator)
    return bool(np.max(np.abs(op - op.conj().T)) <= atol)


def is_unitary(operator: np.ndarray, atol: float = ATOL) -> bool:
    op = np.asarray(operator)
    return bool(np.max(np.abs(op.conj().T @ op - np.eye(op.shape[0]))) <= atol)


def matrix_exponential(hamiltonian: np.ndarray, t: float) -> np.ndarray:
    """Unitary exp(-i H t) of a Hermitian H, via spectral decomposition.

    Serves as the ground-truth propagator against which closed forms are
    checked; exact to machine precision for the 4x4 matrices used here.
    """
    h = np.asarray(hamiltonian, dtype=complex)
    if h.ndim != 2 or h.shape[0] != h.shape[1]:
        raise ValueError(f"Hamiltonian must be square, got shape {h.shape}")
    if not is_hermitian(h, atol=NORM_ATOL):
        dev = float(np.max(np.abs(h - h.conj().T)))
        raise ValueError(f"Hamiltonian deviates from Hermitian by {dev:g} (> {NORM_ATOL:g})")
    if not np.isfinite(t):
        raise ValueError(f"time must be finite, got {t!r}")
    evals, evecs = np.linalg.eigh(h)
    phases = np.exp(-1j * evals * t)
    return (evecs * phases) @ evecs.conj().T


def state_from_token(token: str) -> QuantumState:
    """Two-qubit initial state from a short token.

    Accepted tokens: "00", "01", "10", "11", "+0" (Hadamard on qubit 0 of
    |00>) and "++" (Hadamard on both qubits of |00>).
    """
    if token in ("00", "01", "10", "11"):
        return basis_state(token)
    if token == "+0":
        return apply(hadamard(0, 2), basis_state("00"))
    if token == "++":
        return apply(hadamard(1, 2) @ hadamard(0, 2), basis_state("00"))
    raise ValueError(
        f"unknown initial-state token {token!r}; expected one of 00, 01, 10, 11, +0, ++"
    )


def random_state(rng: np.random.Generator, n: int = 2) -> QuantumState:
    """Haar-ish random pure state (normalized complex Gaussian vector)."""
    vec = rng.standard_normal(2**n) + 1j * rng.standard_normal(2**n)
    return QuantumState(vec / np.linalg.norm(vec))


def random_unitary(rng: np.random.Generator, dim: int = 2) -> np.ndarray:
    """Haar-distributed random unitary via QR of a complex Gaussian matrix."""
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diagonal(r) / np.abs(np.diagonal(r)))
