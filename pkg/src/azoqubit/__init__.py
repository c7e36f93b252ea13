"""Two-spin NMR entanglement calculator with photoswitchable couplings."""

__version__ = "0.1.0"

from .dynamics import (
    EvolutionSchedule,
    Segment,
    concurrence_trajectory,
    entangling_time,
    evolve,
    remaining_entangling_time,
)
from .hamiltonians import (
    TwoSpinParameters,
    coupling_propagator,
    lab_hamiltonian,
    rotating_frame_map,
    secular_hamiltonian,
)
from .qcore import (
    QuantumState,
    apply,
    basis_state,
    concurrence,
    hadamard,
    matrix_exponential,
    spin_operator,
    state_from_token,
)

__all__ = [
    "__version__",
    "EvolutionSchedule",
    "Segment",
    "QuantumState",
    "TwoSpinParameters",
    "apply",
    "basis_state",
    "concurrence",
    "concurrence_trajectory",
    "coupling_propagator",
    "entangling_time",
    "evolve",
    "hadamard",
    "lab_hamiltonian",
    "matrix_exponential",
    "remaining_entangling_time",
    "rotating_frame_map",
    "secular_hamiltonian",
    "spin_operator",
    "state_from_token",
]
