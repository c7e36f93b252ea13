"""Dataset regression report and the self-validation suite.

``table_report`` checks the built-in dataset for internal consistency
(tabulated times vs pi/|J|, per-method coupling ratios); ``run_validation``
re-derives every headline result and property guarantee of the package and
returns one pass/fail item each. Both accept a records override so a
corrupted dataset is reported as a failure rather than crashing.

Everything here is deterministic: randomized checks draw from a fixed seed,
so two runs produce byte-identical reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import dynamics, hamiltonians, molecules, qcore, spectrum

# Tolerances for the dataset regression.
TAU_ATOL = 0.015
RATIO_ATOL = 0.1
TAU_RATIO_BOUNDS = (3.9, 4.4)

# Per-method |J_CAB| / |J_TAB| targets carried with the dataset.
RATIO_TARGETS = {"B3LYP": 4.2, "B3PW91": 3.6, "PW91PW91": 2.3, "PBEPBE": 2.4}

_SEED = 20260810


@dataclass(frozen=True)
class TableRow:
    isomer: str
    method: str
    j_cn: float
    tau_computed: float
    tau_table: float
    abs_delta: float
    within_tolerance: bool


@dataclass(frozen=True)
class RatioRow:
    method: str
    coupling_ratio: float
    target: float
    within_tolerance: bool


@dataclass(frozen=True)
class TableReport:
    rows: tuple[TableRow, ...]
    ratios: tuple[RatioRow, ...]
    tau_ratio_b3lyp: float
    tau_ratio_ok: bool
    passed: bool


@dataclass(frozen=True)
class ValidationItem:
    name: str
    passed: bool
    detail: str


def table_report(records: tuple[molecules.IsomerRecord, ...] | None = None) -> TableReport:
    """Check every computed dataset row against pi/|J| and the ratio targets."""
    recs = records if records is not None else molecules.builtin_table()
    rows = []
    for rec in recs:
        if rec.j_cn is None or rec.tau_table is None:
            continue
        tau = dynamics.entangling_time(rec.j_cn, 0)
        delta = abs(tau - rec.tau_table)
        rows.append(
            TableRow(
                isomer=rec.isomer,
                method=rec.method,
                j_cn=rec.j_cn,
                tau_computed=tau,
                tau_table=rec.tau_table,
                abs_delta=delta,
                within_tolerance=delta <= TAU_ATOL,
            )
        )

    ratios = []
    for method, target in RATIO_TARGETS.items():
        try:
            tab = molecules.lookup("TAB", method, recs)
            cab = molecules.lookup("CAB", method, recs)
        except KeyError:
            continue
        if tab.j_cn is None or cab.j_cn is None:
            continue
        ratio = abs(cab.j_cn) / abs(tab.j_cn)
        ratios.append(
            RatioRow(
                method=method,
                coupling_ratio=ratio,
                target=target,
                within_tolerance=abs(ratio - target) <= RATIO_ATOL,
            )
        )

    # Trans-to-cis ratio of entangling times for the first functional; tau is
    # inversely proportional to |J|, so this equals the coupling ratio.
    tau_ratio = 0.0
    tau_ratio_ok = False
    try:
        tab = molecules.lookup("TAB", "B3LYP", recs)
        cab = molecules.lookup("CAB", "B3LYP", recs)
        if tab.j_cn is not None and cab.j_cn is not None:
            tau_ratio = dynamics.entangling_time(tab.j_cn) / dynamics.entangling_time(cab.j_cn)
            tau_ratio_ok = TAU_RATIO_BOUNDS[0] <= tau_ratio <= TAU_RATIO_BOUNDS[1]
    except KeyError:
        pass

    passed = (
        bool(rows)
        and all(r.within_tolerance for r in rows)
        and bool(ratios)
        and all(r.within_tolerance for r in ratios)
        and tau_ratio_ok
    )
    return TableReport(
        rows=tuple(rows),
        ratios=tuple(ratios),
        tau_ratio_b3lyp=tau_ratio,
        tau_ratio_ok=tau_ratio_ok,
        passed=passed,
    )


def _dataset_couplings(recs) -> list[float]:
    return [r.j_cn for r in recs if r.j_cn is not None]


def _item(name: str, passed: bool, detail: str) -> ValidationItem:
    return ValidationItem(name=name, passed=bool(passed), detail=detail)


def run_validation(
    records: tuple[molecules.IsomerRecord, ...] | None = None,
) -> tuple[ValidationItem, ...]:
    """Run every self-check and return one pass/fail item per check."""
    recs = records if records is not None else molecules.builtin_table()
    items: list[ValidationItem] = []

    # Dataset time regression and ratio claims.
    report = table_report(recs)
    worst = max((r.abs_delta for r in report.rows), default=float("inf"))
    items.append(
        _item(
            "dataset-time-regression",
            bool(report.rows) and all(r.within_tolerance for r in report.rows),
            f"{len(report.rows)} rows, worst |tau - pi/|J|| = {worst:.4f} s (limit {TAU_ATOL})",
        )
    )
    ratio_text = ", ".join(f"{r.method}={r.coupling_ratio:.2f}" for r in report.ratios)
    items.append(
        _item(
            "coupling-ratio-claim",
            bool(report.ratios)
            and all(r.within_tolerance for r in report.ratios)
            and report.tau_ratio_ok,
            f"{ratio_text}; trans/cis time ratio {report.tau_ratio_b3lyp:.2f} "
            f"in [{TAU_RATIO_BOUNDS[0]}, {TAU_RATIO_BOUNDS[1]}]",
        )
    )

    # Closed-form propagator vs the spectral oracle.
    rng = np.random.default_rng(_SEED)
    worst_entry = 0.0
    for _ in range(100):
        j = float(rng.uniform(-50.0, 50.0))
        t = float(rng.uniform(0.0, 2.0))
        diff = np.max(
            np.abs(
                hamiltonians.coupling_propagator(j, t)
                - qcore.matrix_exponential(hamiltonians.secular_hamiltonian(j), t)
            )
        )
        worst_entry = max(worst_entry, float(diff))
    items.append(
        _item(
            "propagator-oracle-agreement",
            worst_entry <= 1e-12,
            f"100 random (J, t), worst entrywise |closed - oracle| = {worst_entry:.2e}",
        )
    )

    # Amplitude identity for the superposed-first-qubit input.
    plus0 = qcore.state_from_token("+0")
    minus0 = np.array([1.0, 0.0, -1.0, 0.0]) / math.sqrt(2.0)
    worst_overlap = 0.0
    for _ in range(100):
        j = float(rng.uniform(-50.0, 50.0))
        t = float(rng.uniform(0.0, 2.0))
        psi = dynamics.evolve(
            dynamics.EvolutionSchedule((dynamics.Segment(j, t),)), plus0
        )
        cos_err = abs(abs(np.vdot(plus0.amplitudes, psi.amplitudes)) - abs(math.cos(j * t / 4)))
        sin_err = abs(abs(np.vdot(minus0, psi.amplitudes)) - abs(math.sin(j * t / 4)))
        worst_overlap = max(worst_overlap, cos_err, sin_err)
    items.append(
        _item(
            "amplitude-overlap-identity",
            worst_overlap <= 1e-12,
            f"|cos(Jt/4)| / |sin(Jt/4)| overlaps, worst error {worst_overlap:.2e}",
        )
    )

    # Maximal entanglement certification on the dataset couplings.
    plusplus = qcore.state_from_token("++")
    couplings = _dataset_couplings(recs)
    worst_c = 1.0
    scaling_exact = True
    for j in couplings:
        for n in (0, 1, 2):
            tau = dynamics.entangling_time(j, n)
            if tau != (2 * n + 1) * dynamics.entangling_time(j, 0):
                scaling_exact = False
            psi = dynamics.evolve(
                dynamics.EvolutionSchedule((dynamics.Segment(j, tau),)), plusplus
            )
            worst_c = min(worst_c, qcore.concurrence(psi))
    worst_law = 0.0
    for j in couplings:
        sched = dynamics.EvolutionSchedule((dynamics.Segment(j, 2.0 * math.pi / abs(j)),))
        for t, c in dynamics.concurrence_trajectory(sched, plusplus, 100):
            worst_law = max(worst_law, abs(c - abs(math.sin(j * t / 2.0))))
    items.append(
        _item(
            "max-entanglement-certification",
            bool(couplings)
            and (1.0 - worst_c) <= 1e-9
            and scaling_exact
            and worst_law <= 1e-9,
            f"{len(couplings)} couplings x n in {{0,1,2}}: min C = {worst_c:.12f}; "
            f"odd-multiple scaling exact: {scaling_exact}; "
            f"worst |C(t) - |sin(Jt/2)|| = {worst_law:.2e}",
        )
    )

    # The superposed-first-qubit input stays a product state forever.
    sched = dynamics.EvolutionSchedule(
        (dynamics.Segment(-8.9, 0.3), dynamics.Segment(-21.0, 0.2))
    )
    worst_prod = max(c for _, c in dynamics.concurrence_trajectory(sched, plus0, 100))
    items.append(
        _item(
            "product-state-concurrence",
            worst_prod <= 1e-12,
            f"evolved |+0> concurrence stays <= {worst_prod:.2e} over 100 samples",
        )
    )

    # Lab-frame evolution mapped into the rotating frame vs secular evolution.
    params = hamiltonians.TwoSpinParameters(1.0e5, 3.0e5, 10.0)
    t = math.pi / 10.0
    lab = qcore.apply(
        qcore.matrix_exponential(hamiltonians.lab_hamiltonian(params), t), plusplus
    )
    mapped = qcore.apply(hamiltonians.rotating_frame_map(params, t), lab)
    secular = qcore.apply(hamiltonians.coupling_propagator(params.j, t), plusplus)
    infidelity = 1.0 - abs(mapped.overlap(secular)) ** 2
    items.append(
        _item(
            "rotating-frame-consistency",
            infidelity <= 1e-3,
            f"infidelity {infidelity:.2e} at t = pi/10 for omega = (1e5, 3e5), J = 10",
        )
    )

    # Property suite: norms, concurrence bounds, local-unitary invariance.
    worst_norm = 0.0
    bounds_ok = True
    worst_lu = 0.0
    for _ in range(1000):
        psi = qcore.random_state(rng, 2)
        out = qcore.apply(qcore.random_unitary(rng, 4), psi)
        worst_norm = max(worst_norm, abs(float(np.linalg.norm(out.amplitudes)) - 1.0))
        c = qcore.concurrence(psi)
        bounds_ok = bounds_ok and (-1e-15 <= c <= 1.0 + 1e-12)
        ab = np.kron(qcore.random_unitary(rng, 2), qcore.random_unitary(rng, 2))
        worst_lu = max(worst_lu, abs(qcore.concurrence(qcore.apply(ab, psi)) - c))
    items.append(
        _item(
            "norm-preservation",
            worst_norm <= 1e-12,
            f"1000 random unitaries, worst norm drift {worst_norm:.2e}",
        )
    )
    items.append(
        _item("concurrence-bounds", bounds_ok, "0 <= C <= 1 over 1000 random states")
    )
    items.append(
        _item(
            "local-unitary-invariance",
            worst_lu <= 1e-10,
            f"1000 random (A x B), worst |C change| = {worst_lu:.2e}",
        )
    )

    # Segment order invariance.
    segs = [dynamics.Segment(float(rng.uniform(-30, 30)), float(rng.uniform(0, 1))) for _ in range(5)]
    ref = dynamics.evolve(dynamics.EvolutionSchedule(tuple(segs)), plusplus)
    worst_perm = 0.0
    for _ in range(10):
        perm = [segs[i] for i in rng.permutation(len(segs))]
        out = dynamics.evolve(dynamics.EvolutionSchedule(tuple(perm)), plusplus)
        worst_perm = max(worst_perm, float(np.max(np.abs(out.amplitudes - ref.amplitudes))))
    items.append(
        _item(
            "schedule-order-invariance",
            worst_perm <= 1e-12,
            f"10 permutations of 5 segments, worst amplitude diff {worst_perm:.2e}",
        )
    )

    # Molecule-format round trip, including the packaged data files.
    roundtrip_ok = True
    detail = "serialize/parse fixed point on all computed rows and packaged files"
    try:
        for rec in recs:
            if rec.j_cn is None:
                continue
            system = molecules.two_spin_system(rec)
            text = molecules.serialize_spin_system(system)
            roundtrip_ok = roundtrip_ok and molecules.parse_spin_system(text) == system
            roundtrip_ok = (
                roundtrip_ok
                and molecules.serialize_spin_system(molecules.parse_spin_system(text)) == text
            )
        for isomer in molecules.ISOMERS:
            for method in molecules.COMPUTED_METHODS:
                shipped = molecules.packaged_system_text(isomer, method)
                reparsed = molecules.serialize_spin_system(molecules.parse_spin_system(shipped))
                roundtrip_ok = roundtrip_ok and shipped == reparsed
    except (ValueError, KeyError, FileNotFoundError) as exc:
        roundtrip_ok = False
        detail = f"round trip failed: {exc}"
    items.append(_item("molecule-roundtrip", roundtrip_ok, detail))

    # Spectrum: per-spin intensity conservation and doublet separation.
    bases = {"13C": 100.0, "15N": 40.5}
    intensity_ok = True
    worst_sep = 0.0
    try:
        for rec in recs:
            if rec.j_cn is None:
                continue
            system = molecules.two_spin_system(rec)
            peaks = spectrum.first_order_peaks(system, bases)
            for spin in system.spins:
                owned = peaks.for_owner(spin.label)
                intensity_ok = intensity_ok and abs(
                    sum(p.intensity for p in owned) - 1.0
                ) <= 1e-12
                if len(owned) == 2:
                    sep = owned[-1].frequency_hz - owned[0].frequency_hz
                    worst_sep = max(worst_sep, abs(sep - abs(rec.j_cn)))
                else:
                    intensity_ok = False
        sep_detail = f"worst |separation - |J|| = {worst_sep:.2e} Hz"
    except ValueError as exc:
        intensity_ok = False
        sep_detail = f"spectrum synthesis failed: {exc}"
    items.append(
        _item(
            "spectrum-multiplets",
            intensity_ok and worst_sep <= 1e-9,
            f"intensity sums to 1 per spin; {sep_detail}",
        )
    )

    return tuple(items)
