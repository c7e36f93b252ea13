"""HTTP service exposing the calculator.

Endpoints mirror the library surface: dataset regression (/table), unitary
evolution with coupling switches (/evolve), stick spectra (/spectrum), the
self-validation suite (/validate) and entangling-time solves. All payloads
are JSON; domain errors map to 400 with a machine-readable ``kind`` so
clients can distinguish usage mistakes from input-file problems.
"""

from __future__ import annotations

from fastapi import FastAPI, HTTPException, Query
from pydantic import BaseModel, Field, model_validator

from . import __version__, dynamics, molecules, qcore, spectrum, validation

app = FastAPI(
    title="azoqubit",
    version=__version__,
    description=(
        "Two-spin NMR entanglement calculator with photoswitchable couplings "
        "and a built-in azobenzene dataset."
    ),
)


def _usage_error(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"kind": "usage", "message": message})


def _parse_error(message: str) -> HTTPException:
    return HTTPException(status_code=400, detail={"kind": "parse", "message": message})


# ---------------------------------------------------------------------------
# Schemas


class HealthResponse(BaseModel):
    status: str
    version: str


class RecordOut(BaseModel):
    isomer: str
    method: str
    shift_n_ppm: float
    shift_c_ppm: float
    j_cc_avg_hz: float
    j_cn_hz: float | None = None
    tau_table_s: float | None = None
    note: str = ""


class TableRowOut(BaseModel):
    isomer: str
    method: str
    j_cn_hz: float
    tau_computed_s: float
    tau_table_s: float
    abs_delta_s: float
    within_tolerance: bool


class RatioRowOut(BaseModel):
    method: str
    coupling_ratio: float
    target: float
    within_tolerance: bool


class TableResponse(BaseModel):
    rows: list[TableRowOut]
    ratios: list[RatioRowOut]
    tau_ratio_b3lyp: float
    tau_ratio_ok: bool
    passed: bool


class SegmentIn(BaseModel):
    j: float = Field(description="coupling in Hz (dataset convention)")
    duration: float = Field(ge=0.0, description="segment length in seconds")
    tag: str = ""


class IsomerRunIn(BaseModel):
    method: str = Field(description="dataset method selecting the coupling values")
    start: str = Field(default="TAB", description="isomer at t = 0")
    total: float = Field(gt=0.0, description="total evolution time in seconds")
    switch_times: list[float] = Field(default_factory=list)
    spin_a: str = "C1"
    spin_b: str = "N7"


class EvolveRequest(BaseModel):
    initial_state: str = Field(description="one of 00, 01, 10, 11, +0, ++")
    samples: int = Field(default=201, ge=2)
    segments: list[SegmentIn] | None = None
    isomer_run: IsomerRunIn | None = None

    @model_validator(mode="after")
    def _exactly_one_schedule(self):
        if (self.segments is None) == (self.isomer_run is None):
            raise ValueError("provide exactly one of 'segments' or 'isomer_run'")
        return self


class SegmentOut(BaseModel):
    j: float
    duration: float
    tag: str


class SampleOut(BaseModel):
    t: float
    concurrence: float
    amplitudes: list[tuple[float, float]] = Field(
        description="per basis state |00>,|01>,|10>,|11>: (re, im)"
    )


class EvolveResponse(BaseModel):
    samples: list[SampleOut]
    segments: list[SegmentOut]
    switch_times: list[float]
    total_duration_s: float
    final_concurrence: float


class SpectrumRequest(BaseModel):
    isomer: str | None = None
    method: str | None = None
    molecule_text: str | None = None
    bases_mhz: dict[str, float] = Field(description="nuclide -> reference frequency in MHz")

    @model_validator(mode="after")
    def _exactly_one_source(self):
        builtin = self.isomer is not None or self.method is not None
        if builtin == (self.molecule_text is not None):
            raise ValueError("provide either isomer+method or molecule_text")
        if builtin and (self.isomer is None or self.method is None):
            raise ValueError("builtin selection needs both isomer and method")
        return self


class PeakOut(BaseModel):
    owner: str
    frequency_hz: float
    intensity: float


class SpectrumResponse(BaseModel):
    peaks: list[PeakOut]
    reference_notes: dict[str, str]


class ValidationItemOut(BaseModel):
    name: str
    passed: bool
    detail: str


class ValidationResponse(BaseModel):
    items: list[ValidationItemOut]
    passed: bool


class TimingResponse(BaseModel):
    seconds: float


# ---------------------------------------------------------------------------
# Endpoints


@app.get("/health", response_model=HealthResponse)
def health() -> HealthResponse:
    return HealthResponse(status="ok", version=__version__)


@app.get("/records", response_model=list[RecordOut])
def records() -> list[RecordOut]:
    return [
        RecordOut(
            isomer=r.isomer,
            method=r.method,
            shift_n_ppm=r.shift_n,
            shift_c_ppm=r.shift_c,
            j_cc_avg_hz=r.j_cc_avg,
            j_cn_hz=r.j_cn,
            tau_table_s=r.tau_table,
            note=r.note,
        )
        for r in molecules.builtin_table()
    ]


@app.get("/table", response_model=TableResponse)
def table() -> TableResponse:
    report = validation.table_report()
    return TableResponse(
        rows=[
            TableRowOut(
                isomer=r.isomer,
                method=r.method,
                j_cn_hz=r.j_cn,
                tau_computed_s=r.tau_computed,
                tau_table_s=r.tau_table,
                abs_delta_s=r.abs_delta,
                within_tolerance=r.within_tolerance,
            )
            for r in report.rows
        ],
        ratios=[
            RatioRowOut(
                method=r.method,
                coupling_ratio=r.coupling_ratio,
                target=r.target,
                within_tolerance=r.within_tolerance,
            )
            for r in report.ratios
        ],
        tau_ratio_b3lyp=report.tau_ratio_b3lyp,
        tau_ratio_ok=report.tau_ratio_ok,
        passed=report.passed,
    )


@app.get("/entangling-time", response_model=TimingResponse)
def entangling_time_endpoint(
    j: float = Query(description="coupling in Hz (dataset convention)"),
    n: int = Query(default=0, ge=0, description="odd-multiple index"),
) -> TimingResponse:
    try:
        return TimingResponse(seconds=dynamics.entangling_time(j, n))
    except ValueError as exc:
        raise _usage_error(str(exc)) from exc


@app.get("/remaining-time", response_model=TimingResponse)
def remaining_time_endpoint(
    accumulated_phase: float = Query(description="sum of J_i * t_i from a prior schedule"),
    j_next: float = Query(description="coupling after the switch"),
) -> TimingResponse:
    try:
        return TimingResponse(
            seconds=dynamics.remaining_entangling_time(accumulated_phase, j_next)
        )
    except ValueError as exc:
        raise _usage_error(str(exc)) from exc


def _build_schedule(request: EvolveRequest) -> dynamics.EvolutionSchedule:
    if request.segments is not None:
        return dynamics.EvolutionSchedule(
            tuple(dynamics.Segment(s.j, s.duration, s.tag) for s in request.segments)
        )
    run = request.isomer_run
    pair = molecules.isomer_pair(run.method)
    return molecules.isomer_schedule(
        pair,
        run.spin_a,
        run.spin_b,
        tuple(run.switch_times),
        run.start,
        run.total,
    )


@app.post("/evolve", response_model=EvolveResponse)
def evolve_endpoint(request: EvolveRequest) -> EvolveResponse:
    try:
        psi0 = qcore.state_from_token(request.initial_state)
        schedule = _build_schedule(request)
        trajectory = dynamics.state_trajectory(schedule, psi0, request.samples)
    except KeyError as exc:
        raise _usage_error(str(exc)) from exc
    except ValueError as exc:
        raise _usage_error(str(exc)) from exc

    samples = [
        SampleOut(
            t=t,
            concurrence=qcore.concurrence(psi),
            amplitudes=[(a.real, a.imag) for a in psi.amplitudes],
        )
        for t, psi in trajectory
    ]
    return EvolveResponse(
        samples=samples,
        segments=[SegmentOut(j=s.j, duration=s.duration, tag=s.tag) for s in schedule.segments],
        switch_times=list(schedule.boundaries()[:-1]),
        total_duration_s=schedule.total_duration(),
        final_concurrence=samples[-1].concurrence,
    )


@app.post("/spectrum", response_model=SpectrumResponse)
def spectrum_endpoint(request: SpectrumRequest) -> SpectrumResponse:
    try:
        if request.molecule_text is not None:
            system = molecules.parse_spin_system(request.molecule_text)
        else:
            record = molecules.lookup(request.isomer, request.method)
            system = molecules.two_spin_system(record)
        peaks = spectrum.first_order_peaks(system, request.bases_mhz)
    except molecules.MoleculeParseError as exc:
        raise _parse_error(str(exc)) from exc
    except KeyError as exc:
        raise _usage_error(str(exc)) from exc
    except ValueError as exc:
        raise _usage_error(str(exc)) from exc
    return SpectrumResponse(
        peaks=[
            PeakOut(owner=p.owner, frequency_hz=p.frequency_hz, intensity=p.intensity)
            for p in peaks.peaks
        ],
        reference_notes=peaks.reference_notes,
    )


@app.get("/validate", response_model=ValidationResponse)
def validate() -> ValidationResponse:
    items = validation.run_validation()
    return ValidationResponse(
        items=[ValidationItemOut(name=i.name, passed=i.passed, detail=i.detail) for i in items],
        passed=all(i.passed for i in items),
    )
