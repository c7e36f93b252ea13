"""Two-spin Hamiltonians and the closed-form weak-coupling propagator.

The model is a heteronuclear spin-1/2 pair in a strong static field:
Zeeman terms for each spin plus an isotropic scalar coupling. In each
spin's rotating frame the secular part of the coupling survives as
J * Iz(x)Iz, whose propagator is diagonal with phases -+ J t / 4.

Unit convention: the built-in dataset tabulates couplings in Hz and those
numbers are used directly as angular rates (hbar = 1); the conventional
2*pi factor is deliberately not applied, so entangling times come out as
pi / |J| with the tabulated value plugged in as-is.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .qcore import spin_operator

_IZ1 = spin_operator("z", 0, 2)
_IZ2 = spin_operator("z", 1, 2)
_IZIZ = _IZ1 @ _IZ2
_IXIX = spin_operator("x", 0, 2) @ spin_operator("x", 1, 2)
_IYIY = spin_operator("y", 0, 2) @ spin_operator("y", 1, 2)


@dataclass(frozen=True)
class TwoSpinParameters:
    """Zeeman angular frequencies (rad/s) and scalar coupling of a spin pair.

    ``j`` follows the dataset convention described in the module docstring.
    """

    omega1: float
    omega2: float
    j: float

    @property
    def heteronuclear(self) -> bool:
        return abs(self.omega1 - self.omega2) > 0.0

    def require_heteronuclear(self) -> None:
        if not self.heteronuclear:
            raise ValueError("distinct Zeeman frequencies required (heteronuclear pair)")


def lab_hamiltonian(params: TwoSpinParameters) -> np.ndarray:
    """Full laboratory-frame Hamiltonian of the coupled pair.

    H = -omega1 Iz(x)I - omega2 I(x)Iz + J (Ix(x)Ix + Iy(x)Iy + Iz(x)Iz)
    """
    return (
        -params.omega1 * _IZ1
        - params.omega2 * _IZ2
        + params.j * (_IXIX + _IYIY + _IZIZ)
    )


def secular_hamiltonian(j: float) -> np.ndarray:
    """Rotating-frame coupling after dropping rapidly oscillating terms.

    J * Iz(x)Iz = (J/4) diag(1, -1, -1, 1).
    """
    return j * _IZIZ


def coupling_propagator(j: float, t: float) -> np.ndarray:
    """Closed-form rotating-frame propagator exp(-i J Iz(x)Iz t).

    Diagonal with entries (e^{-iJt/4}, e^{+iJt/4}, e^{+iJt/4}, e^{-iJt/4}).
    """
    if not math.isfinite(j) or not math.isfinite(t):
        raise ValueError(f"coupling and time must be finite, got j={j!r}, t={t!r}")
    phase = j * t / 4.0
    return np.diag(np.exp(np.array([-1.0, 1.0, 1.0, -1.0]) * 1j * phase))


def rotating_frame_map(params: TwoSpinParameters, t: float) -> np.ndarray:
    """Unitary carrying a lab-frame state into each spin's rotating frame.

    U(t) = exp(-i omega1 Iz t) (x) exp(-i omega2 Iz t); applied to a state
    evolved under ``lab_hamiltonian`` it should reproduce the secular
    rotating-frame evolution up to terms of order (J / |omega1 - omega2|).
    """
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t!r}")
    u1 = np.diag([np.exp(-1j * params.omega1 * t / 2.0), np.exp(1j * params.omega1 * t / 2.0)])
    u2 = np.diag([np.exp(-1j * params.omega2 * t / 2.0), np.exp(1j * params.omega2 * t / 2.0)])
    return np.kron(u1, u2)
