"""Deterministic output emitters: CSV, a minimal SVG line chart, text reports.

Numbers in CSV use repr (shortest round-tripping form, locale independent);
identical inputs always produce byte-identical output.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .qcore import QuantumState, concurrence
from .spectrum import PeakList
from .validation import TableReport, ValidationItem

TRAJECTORY_CSV_HEADER = (
    "t,concurrence,re_a00,im_a00,re_a01,im_a01,re_a10,im_a10,re_a11,im_a11"
)

PEAKS_CSV_HEADER = "owner,frequency_hz,intensity"


def _num(x: float) -> str:
    # + 0.0 normalizes -0.0; repr round-trips exactly.
    return repr(float(x) + 0.0)


def trajectory_rows_csv(rows: Iterable[tuple[float, float, Sequence[float]]]) -> str:
    """CSV from (t, concurrence, 8 interleaved re/im amplitudes) rows."""
    lines = [TRAJECTORY_CSV_HEADER]
    for t, c, amps in rows:
        if len(amps) != 8:
            raise ValueError(f"expected 8 interleaved re/im values, got {len(amps)}")
        lines.append(",".join([_num(t), _num(c)] + [_num(a) for a in amps]))
    return "\n".join(lines) + "\n"


def trajectory_csv(samples: list[tuple[float, QuantumState]]) -> str:
    rows = []
    for t, psi in samples:
        flat: list[float] = []
        for amp in psi.amplitudes:
            flat.extend((amp.real, amp.imag))
        rows.append((t, concurrence(psi), flat))
    return trajectory_rows_csv(rows)


def peak_rows_csv(rows: Iterable[tuple[str, float, float]]) -> str:
    """CSV from (owner, frequency_hz, intensity) rows."""
    lines = [PEAKS_CSV_HEADER]
    for owner, freq, intensity in rows:
        lines.append(f"{owner},{_num(freq)},{_num(intensity)}")
    return "\n".join(lines) + "\n"


def peaks_csv(peaks: PeakList) -> str:
    return peak_rows_csv((p.owner, p.frequency_hz, p.intensity) for p in peaks.peaks)


def trajectory_svg(
    times: list[float],
    concurrences: list[float],
    switch_times: tuple[float, ...] = (),
    width: int = 720,
    height: int = 400,
) -> str:
    """Static concurrence-vs-time line chart with switch markers."""
    if len(times) != len(concurrences) or len(times) < 2:
        raise ValueError("need matching times/concurrences with at least two samples")
    left, right, top, bottom = 60.0, 20.0, 20.0, 50.0
    plot_w = width - left - right
    plot_h = height - top - bottom
    t0, t1 = times[0], times[-1]
    span = (t1 - t0) or 1.0

    def x(t: float) -> float:
        return left + (t - t0) / span * plot_w

    def y(c: float) -> float:
        return top + (1.0 - min(max(c, 0.0), 1.0)) * plot_h

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    # Axes.
    parts.append(
        f'<line x1="{left:.1f}" y1="{top + plot_h:.1f}" x2="{left + plot_w:.1f}" '
        f'y2="{top + plot_h:.1f}" stroke="black" stroke-width="1"/>'
    )
    parts.append(
        f'<line x1="{left:.1f}" y1="{top:.1f}" x2="{left:.1f}" '
        f'y2="{top + plot_h:.1f}" stroke="black" stroke-width="1"/>'
    )
    # Ticks and labels.
    for i in range(5):
        t = t0 + span * i / 4.0
        parts.append(
            f'<line x1="{x(t):.2f}" y1="{top + plot_h:.1f}" x2="{x(t):.2f}" '
            f'y2="{top + plot_h + 5:.1f}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{x(t):.2f}" y="{top + plot_h + 20:.1f}" font-size="12" '
            f'text-anchor="middle" font-family="sans-serif">{t:.4g}</text>'
        )
    for c in (0.0, 0.5, 1.0):
        parts.append(
            f'<line x1="{left - 5:.1f}" y1="{y(c):.2f}" x2="{left:.1f}" '
            f'y2="{y(c):.2f}" stroke="black" stroke-width="1"/>'
        )
        parts.append(
            f'<text x="{left - 10:.1f}" y="{y(c) + 4:.2f}" font-size="12" '
            f'text-anchor="end" font-family="sans-serif">{c:g}</text>'
        )
    parts.append(
        f'<text x="{left + plot_w / 2:.1f}" y="{height - 10:.1f}" font-size="13" '
        f'text-anchor="middle" font-family="sans-serif">t [s]</text>'
    )
    parts.append(
        f'<text x="16" y="{top + plot_h / 2:.1f}" font-size="13" text-anchor="middle" '
        f'font-family="sans-serif" transform="rotate(-90 16 {top + plot_h / 2:.1f})">'
        "concurrence</text>"
    )
    # Switch markers.
    for s in switch_times:
        if not t0 <= s <= t1:
            continue
        parts.append(
            f'<line x1="{x(s):.2f}" y1="{top:.1f}" x2="{x(s):.2f}" y2="{top + plot_h:.1f}" '
            f'stroke="#c0392b" stroke-width="1" stroke-dasharray="4 3"/>'
        )
    # Data.
    points = " ".join(f"{x(t):.2f},{y(c):.2f}" for t, c in zip(times, concurrences))
    parts.append(
        f'<polyline points="{points}" fill="none" stroke="#2166ac" stroke-width="1.5"/>'
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def table_text(report: TableReport) -> str:
    lines = [
        "isomer  method     J_CN[Hz]  tau_calc[s]  tau_table[s]  |delta|[s]  ok",
        "-" * 70,
    ]
    for r in report.rows:
        lines.append(
            f"{r.isomer:<7} {r.method:<10} {r.j_cn:>8.4g} {r.tau_computed:>12.4f} "
            f"{r.tau_table:>13.4g} {r.abs_delta:>11.4f}  {'yes' if r.within_tolerance else 'NO'}"
        )
    lines.append("")
    lines.append("method      |J_CAB|/|J_TAB|  target  ok")
    lines.append("-" * 42)
    for r in report.ratios:
        lines.append(
            f"{r.method:<11} {r.coupling_ratio:>15.4f} {r.target:>7.3g}  "
            f"{'yes' if r.within_tolerance else 'NO'}"
        )
    lines.append("")
    lines.append(
        f"trans/cis entangling-time ratio (B3LYP): {report.tau_ratio_b3lyp:.4f} "
        f"(expected within [3.9, 4.4]): {'yes' if report.tau_ratio_ok else 'NO'}"
    )
    lines.append(f"overall: {'PASS' if report.passed else 'FAIL'}")
    return "\n".join(lines) + "\n"


def validation_text(items: tuple[ValidationItem, ...]) -> str:
    lines = []
    for item in items:
        status = "PASS" if item.passed else "FAIL"
        lines.append(f"{status}  {item.name:<32} {item.detail}")
    total = len(items)
    good = sum(1 for i in items if i.passed)
    lines.append(f"{good}/{total} checks passed")
    return "\n".join(lines) + "\n"
