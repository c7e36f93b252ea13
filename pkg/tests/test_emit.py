"""CSV/SVG emitters: formatting precision and determinism."""

import math
import xml.etree.ElementTree as ET

import pytest

from azoqubit.dynamics import EvolutionSchedule, Segment, state_trajectory
from azoqubit.emit import (
    peak_rows_csv,
    peaks_csv,
    trajectory_csv,
    trajectory_rows_csv,
    trajectory_svg,
)
from azoqubit.molecules import lookup, two_spin_system
from azoqubit.qcore import state_from_token
from azoqubit.spectrum import first_order_peaks


def test_trajectory_csv_roundtrips_floats():
    sched = EvolutionSchedule((Segment(-3.8, math.pi / 3.8),))
    samples = state_trajectory(sched, state_from_token("++"), 4)
    text = trajectory_csv(samples)
    lines = text.splitlines()
    assert len(lines) == 5
    for (t, psi), line in zip(samples, lines[1:]):
        cells = line.split(",")
        assert float(cells[0]) == t
        assert float(cells[2]) == psi.amplitudes[0].real
        assert float(cells[3]) == psi.amplitudes[0].imag


def test_negative_zero_normalized():
    text = trajectory_rows_csv([(0.0, 0.0, [-0.0] * 8)])
    assert "-0.0" not in text


def test_at_least_nine_significant_digits():
    value = math.pi / 3.8
    text = trajectory_rows_csv([(value, 0.0, [0.0] * 8)])
    cell = text.splitlines()[1].split(",")[0]
    assert float(cell) == value
    digits = cell.replace("-", "").replace(".", "").lstrip("0")
    assert len(digits) >= 9


def test_wrong_amplitude_count_rejected():
    with pytest.raises(ValueError):
        trajectory_rows_csv([(0.0, 0.0, [0.0] * 6)])


def test_peaks_csv_matches_rows():
    peaks = first_order_peaks(
        two_spin_system(lookup("TAB", "B3LYP")), {"13C": 100.0, "15N": 40.5}
    )
    assert peaks_csv(peaks) == peak_rows_csv(
        (p.owner, p.frequency_hz, p.intensity) for p in peaks.peaks
    )
    assert peaks_csv(peaks).splitlines()[1] == "C1,15698.1,0.5"


def test_svg_is_well_formed_xml():
    times = [i / 10 for i in range(11)]
    cs = [abs(math.sin(5 * t)) for t in times]
    svg = trajectory_svg(times, cs, switch_times=(0.5,))
    root = ET.fromstring(svg)
    assert root.tag.endswith("svg")
    assert "stroke-dasharray" in svg


def test_svg_requires_two_samples():
    with pytest.raises(ValueError):
        trajectory_svg([0.0], [0.0])
