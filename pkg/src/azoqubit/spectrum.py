"""First-order (weak-coupling) stick-spectrum synthesis from a spin system.

Each spin resonates at its shift converted to a Hz offset and is split by
every spin-1/2 coupling partner into lines at +-J/2, the usual first-order
multiplet picture. Valid for heteronuclear pairs where the shift difference
dwarfs J; no second-order lineshapes here.

Reference (base) frequencies are caller-supplied. Zero gyromagnetic-ratio
physics is hard-coded: the offsets are whatever the caller's spectrometer
frame implies.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from .molecules import SpinSystem

# Shift-referencing conventions carried as output metadata for known nuclides.
REFERENCE_COMPOUNDS = {"13C": "TMS", "15N": "NH3"}

# Lines closer than this (Hz) merge into one peak with summed intensity.
MERGE_ATOL = 1e-9


@dataclass(frozen=True)
class Peak:
    owner: str
    frequency_hz: float
    intensity: float


@dataclass(frozen=True)
class PeakList:
    """Stick peaks sorted ascending by frequency, plus referencing notes."""

    peaks: tuple[Peak, ...]
    reference_notes: dict[str, str] = field(default_factory=dict)

    def for_owner(self, label: str) -> tuple[Peak, ...]:
        return tuple(p for p in self.peaks if p.owner == label)


def ppm_to_hz(shift_ppm: float, base_mhz: float) -> float:
    """Offset in Hz of a ppm shift at a given reference frequency in MHz."""
    if base_mhz <= 0.0:
        raise ValueError(f"base frequency must be positive, got {base_mhz!r}")
    return shift_ppm * base_mhz


def first_order_peaks(system: SpinSystem, bases: dict[str, float]) -> PeakList:
    """Stick spectrum of a spin system at the given base frequencies.

    A spin with m coupling partners yields 2^m lines at nu0 + sum(+-J_k/2),
    each of intensity 2^-m; degenerate lines merge with summed intensity.
    """
    for spin in system.spins:
        if spin.nuclide not in bases:
            raise ValueError(f"no base frequency supplied for nuclide {spin.nuclide!r}")

    peaks: list[Peak] = []
    for spin in system.spins:
        nu0 = ppm_to_hz(spin.shift, bases[spin.nuclide])
        js = [j for _, j in system.partners(spin.label)]
        weight = 0.5 ** len(js)
        lines: list[float] = []
        for signs in product((+0.5, -0.5), repeat=len(js)):
            lines.append(nu0 + sum(s * j for s, j in zip(signs, js)))
        lines.sort()
        merged: list[tuple[float, float]] = []
        for freq in lines:
            if merged and abs(freq - merged[-1][0]) <= MERGE_ATOL:
                prev_freq, prev_int = merged[-1]
                merged[-1] = (prev_freq, prev_int + weight)
            else:
                merged.append((freq, weight))
        peaks.extend(Peak(spin.label, freq, intensity) for freq, intensity in merged)

    peaks.sort(key=lambda p: (p.frequency_hz, p.owner))
    notes = {
        spin.nuclide: REFERENCE_COMPOUNDS[spin.nuclide]
        for spin in system.spins
        if spin.nuclide in REFERENCE_COMPOUNDS
    }
    return PeakList(peaks=tuple(peaks), reference_notes=notes)
