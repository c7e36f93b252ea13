"""Azobenzene dataset, spin-system data model, and molecule-file ingestion.

The built-in table holds chemical shifts, couplings and maximal-entanglement
times for trans-azobenzene (TAB) and cis-azobenzene (CAB), one row per DFT
functional plus one experimental row per isomer. The qubit pair is the azo
nitrogen (15N) and its ipso carbon (13C); the carbon-carbon coupling average
is carried as metadata only, those carbons are not modeled as spins.

Values are stored as printed in the source dataset: couplings in Hz
(negative sign kept), shifts in ppm, times in seconds. All entangling-time
math uses |J|.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from importlib import resources

from .dynamics import EvolutionSchedule, Segment

ISOMERS = ("TAB", "CAB")
METHODS = ("B3LYP", "B3PW91", "PW91PW91", "PBEPBE", "EXPERIMENT")
COMPUTED_METHODS = ("B3LYP", "B3PW91", "PW91PW91", "PBEPBE")

# Experimental shift provenance differs per nucleus; kept as a caveat on the rows.
_EXPERIMENT_NOTE = (
    "carbon shift measured in chloroform solution; "
    "nitrogen shift measured on a polycrystalline sample"
)


@dataclass(frozen=True)
class IsomerRecord:
    """One dataset row: shifts (ppm), couplings (Hz), entangling time (s).

    ``j_cn`` and ``tau_table`` are absent on experimental rows (no measured
    N-C coupling exists). ``j_cc_avg`` averages the two ipso-ortho carbon
    couplings and is metadata only.
    """

    isomer: str
    method: str
    shift_n: float
    shift_c: float
    j_cc_avg: float
    j_cn: float | None = None
    tau_table: float | None = None
    note: str = ""

    def __post_init__(self):
        if self.isomer not in ISOMERS:
            raise ValueError(f"unknown isomer {self.isomer!r}")
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        for name, value in (("shift_n", self.shift_n), ("shift_c", self.shift_c)):
            if not math.isfinite(value) or value <= 0.0:
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        if not math.isfinite(self.j_cc_avg):
            raise ValueError(f"j_cc_avg must be finite, got {self.j_cc_avg!r}")
        if self.j_cn is not None and not math.isfinite(self.j_cn):
            raise ValueError(f"j_cn must be finite, got {self.j_cn!r}")


BUILTIN_RECORDS: tuple[IsomerRecord, ...] = (
    IsomerRecord("TAB", "B3LYP", 504.0, 157.0, 37.0, -3.8, 0.84),
    IsomerRecord("TAB", "B3PW91", 501.0, 153.0, 35.0, -4.5, 0.70),
    IsomerRecord("TAB", "PW91PW91", 486.0, 157.0, 33.0, -8.9, 0.35),
    IsomerRecord("TAB", "PBEPBE", 486.0, 156.0, 33.0, -8.5, 0.37),
    IsomerRecord("TAB", "EXPERIMENT", 509.0, 153.0, 34.0, note=_EXPERIMENT_NOTE),
    IsomerRecord("CAB", "B3LYP", 547.0, 159.0, 37.0, -16.0, 0.20),
    IsomerRecord("CAB", "B3PW91", 542.0, 155.0, 36.0, -16.0, 0.20),
    IsomerRecord("CAB", "PW91PW91", 525.0, 158.0, 34.0, -21.0, 0.15),
    IsomerRecord("CAB", "PBEPBE", 524.0, 158.0, 34.0, -20.0, 0.15),
    IsomerRecord("CAB", "EXPERIMENT", 529.0, 154.0, 32.0, note=_EXPERIMENT_NOTE),
)


def builtin_table() -> tuple[IsomerRecord, ...]:
    """All built-in dataset rows (4 computed + 1 experimental per isomer)."""
    return BUILTIN_RECORDS


def lookup(isomer: str, method: str, records: tuple[IsomerRecord, ...] | None = None) -> IsomerRecord:
    """Fetch one dataset row; raises KeyError for an unknown (isomer, method)."""
    for rec in records if records is not None else BUILTIN_RECORDS:
        if rec.isomer == isomer and rec.method == method:
            return rec
    raise KeyError(f"no record for isomer={isomer!r}, method={method!r}")


@dataclass(frozen=True)
class Spin:
    label: str
    nuclide: str
    shift: float


@dataclass(frozen=True)
class SpinSystem:
    """Labeled spins plus a symmetric scalar-coupling map in Hz.

    Couplings are keyed by label pair in either order; self-couplings and
    references to unknown labels are rejected at construction.
    """

    spins: tuple[Spin, ...]
    couplings: dict[tuple[str, str], float] = field(default_factory=dict)
    meta: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        labels = [s.label for s in self.spins]
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate spin labels in {labels}")
        canonical: dict[tuple[str, str], float] = {}
        for (a, b), j in self.couplings.items():
            if a == b:
                raise ValueError(f"self-coupling on {a!r}")
            if a not in labels or b not in labels:
                raise ValueError(f"coupling ({a!r}, {b!r}) references an unknown spin label")
            key = (a, b) if a <= b else (b, a)
            if key in canonical and canonical[key] != j:
                raise ValueError(
                    f"conflicting couplings for pair {key}: {canonical[key]!r} vs {j!r}"
                )
            canonical[key] = float(j)
        object.__setattr__(self, "spins", tuple(self.spins))
        object.__setattr__(self, "couplings", canonical)

    def labels(self) -> tuple[str, ...]:
        return tuple(s.label for s in self.spins)

    def spin(self, label: str) -> Spin:
        for s in self.spins:
            if s.label == label:
                return s
        raise KeyError(f"no spin labeled {label!r}")

    def j(self, a: str, b: str) -> float:
        self.spin(a)
        self.spin(b)
        key = (a, b) if a <= b else (b, a)
        if key not in self.couplings:
            raise KeyError(f"no coupling recorded for pair ({a!r}, {b!r})")
        return self.couplings[key]

    def partners(self, label: str) -> list[tuple[str, float]]:
        """Coupling partners of one spin as (other_label, J) in spin order."""
        out = []
        for other in self.labels():
            if other == label:
                continue
            key = (label, other) if label <= other else (other, label)
            if key in self.couplings:
                out.append((other, self.couplings[key]))
        return out


def _printed_labels(isomer: str) -> tuple[str, str]:
    # CAB atoms are conventionally primed in the dataset.
    return ("C1'", "N7'") if isomer == "CAB" else ("C1", "N7")


def _record_meta(record: IsomerRecord) -> dict[str, str]:
    meta = {
        "isomer": record.isomer,
        "jcc_avg_hz": repr(record.j_cc_avg),
        "method": record.method,
    }
    if record.tau_table is not None:
        meta["tau_table_s"] = repr(record.tau_table)
    if record.note:
        meta["note"] = record.note
    return meta


def two_spin_system(record: IsomerRecord) -> SpinSystem:
    """The modeled qubit pair of one dataset row: 13C and 15N with their J.

    Experimental rows carry no N-C coupling and are rejected.
    """
    if record.j_cn is None:
        raise ValueError(
            f"{record.isomer}/{record.method} has no N-C coupling; "
            "experimental rows cannot form the simulated pair"
        )
    c_label, n_label = _printed_labels(record.isomer)
    return SpinSystem(
        spins=(
            Spin(c_label, "13C", record.shift_c),
            Spin(n_label, "15N", record.shift_n),
        ),
        couplings={(c_label, n_label): record.j_cn},
        meta=_record_meta(record),
    )


def three_spin_system(record: IsomerRecord) -> SpinSystem:
    """Qubit pair plus the second azo nitrogen, whose N-N coupling is ~0.

    The two nitrogens are equivalent by symmetry (same shift); their mutual
    coupling is stored as exactly 0 Hz, so no finite entangling time exists
    for that pair. Labels are canonical (unprimed) for both isomers.
    """
    if record.j_cn is None:
        raise ValueError(
            f"{record.isomer}/{record.method} has no N-C coupling; "
            "experimental rows cannot form the simulated system"
        )
    return SpinSystem(
        spins=(
            Spin("C1", "13C", record.shift_c),
            Spin("N7", "15N", record.shift_n),
            Spin("N7'", "15N", record.shift_n),
        ),
        couplings={("C1", "N7"): record.j_cn, ("N7", "N7'"): 0.0},
        meta=_record_meta(record),
    )


@dataclass(frozen=True)
class IsomerPair:
    """Interconvertible isomer systems sharing spin labels and nuclides."""

    tab: SpinSystem
    cab: SpinSystem
    method: str

    def __post_init__(self):
        if self.tab.labels() != self.cab.labels():
            raise ValueError("isomer systems must share spin labels")
        for a, b in zip(self.tab.spins, self.cab.spins):
            if a.nuclide != b.nuclide:
                raise ValueError(f"nuclide mismatch on label {a.label!r}")

    def system(self, isomer: str) -> SpinSystem:
        if isomer == "TAB":
            return self.tab
        if isomer == "CAB":
            return self.cab
        raise KeyError(f"unknown isomer {isomer!r}")


def isomer_pair(method: str, records: tuple[IsomerRecord, ...] | None = None) -> IsomerPair:
    """Build the TAB/CAB pair for one method with shared canonical labels.

    The primed dataset labels denote the isomer, not different atoms, so the
    pair uses C1/N7 for both systems to keep switch schedules addressable.
    """

    def canonical(record: IsomerRecord) -> SpinSystem:
        return SpinSystem(
            spins=(
                Spin("C1", "13C", record.shift_c),
                Spin("N7", "15N", record.shift_n),
            ),
            couplings={("C1", "N7"): record.j_cn},
            meta=_record_meta(record),
        )

    tab = lookup("TAB", method, records)
    cab = lookup("CAB", method, records)
    if tab.j_cn is None or cab.j_cn is None:
        raise ValueError(f"method {method!r} has no N-C coupling data")
    return IsomerPair(tab=canonical(tab), cab=canonical(cab), method=method)


def isomer_schedule(
    pair: IsomerPair,
    spin_a: str,
    spin_b: str,
    switch_times: tuple[float, ...],
    start: str,
    total: float,
) -> EvolutionSchedule:
    """Piecewise schedule alternating the pair's coupling at each switch.

    Segments carry the isomer's J(spin_a, spin_b), starting from ``start``,
    with boundaries at the strictly ascending ``switch_times`` and the final
    boundary at ``total``.
    """
    if start not in ISOMERS:
        raise ValueError(f"unknown isomer {start!r}")
    if not math.isfinite(total) or total <= 0.0:
        raise ValueError(f"total duration must be positive and finite, got {total!r}")
    times = tuple(float(t) for t in switch_times)
    if any(not math.isfinite(t) or t < 0.0 for t in times):
        raise ValueError(f"switch times must be finite and >= 0, got {times}")
    if any(t2 <= t1 for t1, t2 in zip(times, times[1:])):
        raise ValueError(f"switch times must be strictly ascending, got {times}")
    if any(t >= total for t in times):
        raise ValueError(f"switch times must precede the total duration {total}")

    segments = []
    isomer = start
    prev = 0.0
    for boundary in times + (total,):
        system = pair.system(isomer)
        segments.append(
            Segment(
                j=system.j(spin_a, spin_b),
                duration=boundary - prev,
                tag=f"{isomer}/{pair.method}",
            )
        )
        prev = boundary
        isomer = "CAB" if isomer == "TAB" else "TAB"
    return EvolutionSchedule(tuple(segments))


class MoleculeParseError(ValueError):
    """Molecule-file syntax or consistency error; carries the 1-based line."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_spin_system(text: str) -> SpinSystem:
    """Parse the line-oriented molecule format into a SpinSystem.

    Statements, one per line, whitespace-separated:
        spin <label> <nuclide> <shift_ppm>
        coupling <labelA> <labelB> <J_hz>
        meta <key> <value...>
    '#' starts a comment; blank lines are ignored.
    """
    spins: list[Spin] = []
    seen: set[str] = set()
    couplings: dict[tuple[str, str], float] = {}
    coupling_lines: dict[tuple[str, str], int] = {}
    meta: dict[str, str] = {}

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        kind = tokens[0]
        if kind == "spin":
            if len(tokens) != 4:
                raise MoleculeParseError(lineno, f"expected 'spin <label> <nuclide> <shift_ppm>', got {raw!r}")
            label, nuclide, shift_text = tokens[1:]
            if label in seen:
                raise MoleculeParseError(lineno, f"duplicate spin label {label!r}")
            try:
                shift = float(shift_text)
            except ValueError:
                raise MoleculeParseError(lineno, f"bad shift value {shift_text!r}") from None
            seen.add(label)
            spins.append(Spin(label, nuclide, shift))
        elif kind == "coupling":
            if len(tokens) != 4:
                raise MoleculeParseError(lineno, f"expected 'coupling <labelA> <labelB> <J_hz>', got {raw!r}")
            a, b, j_text = tokens[1:]
            try:
                j = float(j_text)
            except ValueError:
                raise MoleculeParseError(lineno, f"bad coupling value {j_text!r}") from None
            if a == b:
                raise MoleculeParseError(lineno, f"self-coupling on {a!r}")
            key = (a, b) if a <= b else (b, a)
            if key in couplings and couplings[key] != j:
                raise MoleculeParseError(
                    lineno,
                    f"coupling ({a!r}, {b!r}) already set to {couplings[key]!r} "
                    f"on line {coupling_lines[key]}, conflicting value {j!r}",
                )
            couplings[key] = j
            coupling_lines[key] = lineno
        elif kind == "meta":
            if len(tokens) < 3:
                raise MoleculeParseError(lineno, f"expected 'meta <key> <value>', got {raw!r}")
            meta[tokens[1]] = " ".join(tokens[2:])
        else:
            raise MoleculeParseError(lineno, f"unknown statement {kind!r}")

    for (a, b), lineno in coupling_lines.items():
        if a not in seen or b not in seen:
            raise MoleculeParseError(lineno, f"coupling ({a!r}, {b!r}) references an undeclared spin")
    return SpinSystem(spins=tuple(spins), couplings=couplings, meta=meta)


def serialize_spin_system(system: SpinSystem) -> str:
    """Deterministic molecule-format text; parse(serialize(s)) == s."""
    lines = []
    for s in system.spins:
        lines.append(f"spin {s.label} {s.nuclide} {s.shift!r}")
    for (a, b) in sorted(system.couplings):
        lines.append(f"coupling {a} {b} {system.couplings[(a, b)]!r}")
    for key in sorted(system.meta):
        lines.append(f"meta {key} {system.meta[key]}")
    return "\n".join(lines) + "\n"


def _data_file_name(isomer: str, method: str) -> str:
    return f"{isomer.lower()}_{method.lower()}.mol"


def packaged_system_text(isomer: str, method: str) -> str:
    """Raw molecule-format text shipped for one computed dataset row."""
    path = resources.files("azoqubit") / "data" / _data_file_name(isomer, method)
    return path.read_text(encoding="utf-8")


def load_packaged_system(isomer: str, method: str) -> SpinSystem:
    """Parse the molecule file shipped for one computed dataset row."""
    return parse_spin_system(packaged_system_text(isomer, method))
