"""Time evolution under piecewise-constant couplings and entanglement timing.

A coupling switch (photoisomerization in the built-in dataset) is modeled
as an instantaneous, lossless change of J between segments; within a
segment the state evolves under the closed-form weak-coupling propagator.
All segment generators are diagonal and commute, so only the accumulated
phase sum(J_i * t_i) matters, the segment order does not.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .hamiltonians import coupling_propagator
from .qcore import QuantumState, apply, concurrence


@dataclass(frozen=True)
class Segment:
    """One constant-coupling stretch: J, duration in seconds, provenance tag."""

    j: float
    duration: float
    tag: str = ""

    def __post_init__(self):
        if not math.isfinite(self.j):
            raise ValueError(f"coupling must be finite, got {self.j!r}")
        if not math.isfinite(self.duration) or self.duration < 0.0:
            raise ValueError(f"duration must be finite and >= 0, got {self.duration!r}")


@dataclass(frozen=True)
class EvolutionSchedule:
    """Ordered sequence of constant-coupling segments."""

    segments: tuple[Segment, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))

    def total_duration(self) -> float:
        return float(sum(s.duration for s in self.segments))

    def accumulated_phase(self) -> float:
        """Phase sum(J_i * t_i); the propagator's diagonal phases are this / 4."""
        return float(sum(s.j * s.duration for s in self.segments))

    def phase_at(self, t: float) -> float:
        """Accumulated phase after evolving for time t from the start."""
        phase = 0.0
        remaining = t
        for seg in self.segments:
            dt = min(seg.duration, remaining)
            if dt <= 0.0:
                break
            phase += seg.j * dt
            remaining -= dt
        return phase

    def boundaries(self) -> tuple[float, ...]:
        """Cumulative segment end times (switch instants plus the final time)."""
        out, acc = [], 0.0
        for seg in self.segments:
            acc += seg.duration
            out.append(acc)
        return tuple(out)


def evolve(schedule: EvolutionSchedule, psi0: QuantumState) -> QuantumState:
    """Apply the schedule's propagators in order to a two-qubit state."""
    if psi0.amplitudes.size != 4:
        raise ValueError("evolution is defined for two-qubit states")
    psi = psi0
    for seg in schedule.segments:
        psi = apply(coupling_propagator(seg.j, seg.duration), psi)
    return psi


def entangling_time(j: float, n: int = 0) -> float:
    """Time at which the coupling maximally entangles |++>: pi/|J| * (2n+1).

    The same instants make the evolved |+0> amplitudes satisfy
    |cos(J t / 4)| = |sin(J t / 4)|. With J = 0 no finite time exists.
    """
    if j == 0.0:
        raise ValueError("zero coupling never reaches maximal entanglement")
    if not math.isfinite(j):
        raise ValueError(f"coupling must be finite, got {j!r}")
    if n < 0 or n != int(n):
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    return math.pi / abs(j) * (2 * int(n) + 1)


def remaining_entangling_time(accumulated_phase: float, j_next: float) -> float:
    """Smallest t >= 0 driving |accumulated_phase + J_next * t| onto an odd
    multiple of pi (the |++> maximal-entanglement condition).

    ``accumulated_phase`` is sum(J_i * t_i) from a prior schedule.
    """
    if j_next == 0.0:
        raise ValueError("zero coupling never reaches maximal entanglement")
    if not math.isfinite(j_next) or not math.isfinite(accumulated_phase):
        raise ValueError("phase and coupling must be finite")
    # The phase moves monotonically with slope j_next; the first odd multiple
    # of pi encountered in that direction gives the answer.
    x = accumulated_phase / math.pi
    if j_next > 0.0:
        m = 2 * math.ceil((x - 1.0) / 2.0) + 1
    else:
        m = 2 * math.floor((x - 1.0) / 2.0) + 1
    return (m * math.pi - accumulated_phase) / j_next


def state_trajectory(
    schedule: EvolutionSchedule, psi0: QuantumState, samples: int
) -> list[tuple[float, QuantumState]]:
    """States at ``samples`` uniformly spaced times from 0 to the total
    duration inclusive; exact at every sample (diagonal phases accumulate
    linearly inside segments)."""
    if samples < 2:
        raise ValueError(f"samples must be >= 2, got {samples}")
    if psi0.amplitudes.size != 4:
        raise ValueError("evolution is defined for two-qubit states")
    times = np.linspace(0.0, schedule.total_duration(), samples)
    out = []
    for t in times:
        u = coupling_propagator(1.0, schedule.phase_at(float(t)))
        out.append((float(t), apply(u, psi0)))
    return out


def concurrence_trajectory(
    schedule: EvolutionSchedule, psi0: QuantumState, samples: int
) -> list[tuple[float, float]]:
    """Concurrence sampled along the schedule; see ``state_trajectory``."""
    return [(t, concurrence(psi)) for t, psi in state_trajectory(schedule, psi0, samples)]
