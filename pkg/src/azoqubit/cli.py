"""Command-line client for the calculator service.

Subcommands call the HTTP API and format the results; by default the
service runs in-process (no server needed), while ``--server URL`` points
the same requests at a remote instance. ``serve`` starts the service.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 input-file
error.
"""

from __future__ import annotations

import argparse
import asyncio
import sys
from pathlib import Path

import httpx

from . import __version__, emit, validation

_EXIT_OK = 0
_EXIT_FAILED = 1
_EXIT_USAGE = 2
_EXIT_INPUT = 3


def _call(server: str | None, method: str, path: str, json_body=None, params=None) -> httpx.Response:
    async def go() -> httpx.Response:
        if server:
            transport = None
            base_url = server
        else:
            from .service import app

            transport = httpx.ASGITransport(app=app)
            base_url = "http://azoqubit.internal"
        async with httpx.AsyncClient(
            transport=transport, base_url=base_url, timeout=60.0
        ) as client:
            return await client.request(method, path, json=json_body, params=params)

    return asyncio.run(go())


def _report_http_error(resp: httpx.Response) -> int:
    """Print the service error and map it onto an exit code."""
    try:
        detail = resp.json().get("detail")
    except ValueError:
        detail = resp.text
    if isinstance(detail, dict) and "message" in detail:
        print(f"error: {detail['message']}", file=sys.stderr)
        return _EXIT_INPUT if detail.get("kind") == "parse" else _EXIT_USAGE
    print(f"error: {detail}", file=sys.stderr)
    return _EXIT_USAGE


def _write_output(text: str, out: str | None, label: str) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
        print(f"wrote {label} to {out}", file=sys.stderr)
    else:
        sys.stdout.write(text)


def _parse_base_flag(item: str) -> tuple[str, float]:
    nuclide, sep, value = item.partition("=")
    if not sep or not nuclide:
        raise ValueError(f"--base expects <nuclide>=<MHz>, got {item!r}")
    return nuclide, float(value)


def _read_bases_config(path: str) -> dict[str, float]:
    """Config lines: 'base <nuclide> <MHz>'; '#' comments and blanks ignored."""
    bases: dict[str, float] = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 3 or tokens[0] != "base":
            raise ValueError(f"{path}: line {lineno}: expected 'base <nuclide> <MHz>'")
        try:
            bases[tokens[1]] = float(tokens[2])
        except ValueError:
            raise ValueError(f"{path}: line {lineno}: bad frequency {tokens[2]!r}") from None
    return bases


def _collect_bases(args) -> dict[str, float]:
    bases: dict[str, float] = {}
    if args.config:
        bases.update(_read_bases_config(args.config))
    for item in args.base or []:
        nuclide, mhz = _parse_base_flag(item)
        bases[nuclide] = mhz
    return bases


# ---------------------------------------------------------------------------
# Subcommands


def cmd_table(args) -> int:
    resp = _call(args.server, "GET", "/table")
    if resp.status_code != 200:
        return _report_http_error(resp)
    body = resp.json()
    report = validation.TableReport(
        rows=tuple(
            validation.TableRow(
                isomer=r["isomer"],
                method=r["method"],
                j_cn=r["j_cn_hz"],
                tau_computed=r["tau_computed_s"],
                tau_table=r["tau_table_s"],
                abs_delta=r["abs_delta_s"],
                within_tolerance=r["within_tolerance"],
            )
            for r in body["rows"]
        ),
        ratios=tuple(
            validation.RatioRow(
                method=r["method"],
                coupling_ratio=r["coupling_ratio"],
                target=r["target"],
                within_tolerance=r["within_tolerance"],
            )
            for r in body["ratios"]
        ),
        tau_ratio_b3lyp=body["tau_ratio_b3lyp"],
        tau_ratio_ok=body["tau_ratio_ok"],
        passed=body["passed"],
    )
    sys.stdout.write(emit.table_text(report))
    return _EXIT_OK if body["passed"] else _EXIT_FAILED


def _parse_segment_flag(item: str):
    parts = item.split(":")
    if len(parts) not in (2, 3):
        raise ValueError(f"--segment expects J:DURATION[:TAG], got {item!r}")
    j, duration = float(parts[0]), float(parts[1])
    tag = parts[2] if len(parts) == 3 else ""
    return {"j": j, "duration": duration, "tag": tag}


def cmd_evolve(args) -> int:
    request: dict = {"initial_state": args.init, "samples": args.samples}
    if args.segment:
        if args.molecule or args.switch_at:
            print("error: --segment excludes --molecule/--switch-at", file=sys.stderr)
            return _EXIT_USAGE
        try:
            request["segments"] = [_parse_segment_flag(s) for s in args.segment]
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return _EXIT_USAGE
    else:
        if not (args.molecule and args.method and args.duration is not None):
            print(
                "error: need --segment, or --molecule with --method and --duration",
                file=sys.stderr,
            )
            return _EXIT_USAGE
        request["isomer_run"] = {
            "method": args.method,
            "start": args.molecule,
            "total": args.duration,
            "switch_times": args.switch_at or [],
        }

    resp = _call(args.server, "POST", "/evolve", json_body=request)
    if resp.status_code != 200:
        return _report_http_error(resp)
    body = resp.json()

    rows = [
        (s["t"], s["concurrence"], [v for pair in s["amplitudes"] for v in pair])
        for s in body["samples"]
    ]
    _write_output(emit.trajectory_rows_csv(rows), args.out, "trajectory CSV")
    if args.svg:
        svg = emit.trajectory_svg(
            [s["t"] for s in body["samples"]],
            [s["concurrence"] for s in body["samples"]],
            tuple(body["switch_times"]),
        )
        Path(args.svg).write_text(svg, encoding="utf-8")
        print(f"wrote chart to {args.svg}", file=sys.stderr)
    print(f"final concurrence: {body['final_concurrence']:.6f}", file=sys.stderr)
    return _EXIT_OK


def cmd_spectrum(args) -> int:
    try:
        bases = _collect_bases(args)
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return _EXIT_INPUT if isinstance(exc, OSError) else _EXIT_USAGE

    request: dict = {"bases_mhz": bases}
    if args.molecule_file:
        if args.molecule:
            print("error: --molecule-file excludes --molecule", file=sys.stderr)
            return _EXIT_USAGE
        try:
            request["molecule_text"] = Path(args.molecule_file).read_text(encoding="utf-8")
        except OSError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return _EXIT_INPUT
    elif args.molecule and args.method:
        request["isomer"] = args.molecule
        request["method"] = args.method
    else:
        print("error: need --molecule with --method, or --molecule-file", file=sys.stderr)
        return _EXIT_USAGE

    resp = _call(args.server, "POST", "/spectrum", json_body=request)
    if resp.status_code != 200:
        return _report_http_error(resp)
    body = resp.json()
    csv = emit.peak_rows_csv(
        (p["owner"], p["frequency_hz"], p["intensity"]) for p in body["peaks"]
    )
    _write_output(csv, args.out, "peak list")
    return _EXIT_OK


def cmd_validate(args) -> int:
    resp = _call(args.server, "GET", "/validate")
    if resp.status_code != 200:
        return _report_http_error(resp)
    body = resp.json()
    items = tuple(
        validation.ValidationItem(name=i["name"], passed=i["passed"], detail=i["detail"])
        for i in body["items"]
    )
    sys.stdout.write(emit.validation_text(items))
    return _EXIT_OK if body["passed"] else _EXIT_FAILED


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("azoqubit.service:app", host=args.host, port=args.port)
    return _EXIT_OK


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="azoqubit",
        description="Two-spin NMR entanglement calculator with photoswitchable couplings.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "--server",
        default=None,
        help="base URL of a running service; default runs the service in-process",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_table = sub.add_parser("table", help="dataset regression: entangling times and ratios")
    p_table.set_defaults(func=cmd_table)

    p_evolve = sub.add_parser("evolve", help="evolve a state and emit the concurrence trajectory")
    p_evolve.add_argument("--init", default="++", help="initial state token (00 01 10 11 +0 ++)")
    p_evolve.add_argument("--samples", type=int, default=201, help="number of time samples (>= 2)")
    p_evolve.add_argument("--molecule", choices=["TAB", "CAB"], help="starting isomer")
    p_evolve.add_argument("--method", help="dataset method supplying the couplings")
    p_evolve.add_argument("--duration", type=float, help="total evolution time in seconds")
    p_evolve.add_argument(
        "--switch-at",
        type=float,
        action="append",
        metavar="T",
        help="isomer switch time in seconds; repeatable, strictly ascending",
    )
    p_evolve.add_argument(
        "--segment",
        action="append",
        metavar="J:DURATION[:TAG]",
        help=(
            "explicit schedule segment; repeatable, excludes --molecule; "
            "use the --segment=-16:0.2 form for negative couplings"
        ),
    )
    p_evolve.add_argument("--out", help="trajectory CSV path (default: stdout)")
    p_evolve.add_argument("--svg", help="also write a concurrence-vs-time SVG chart")
    p_evolve.set_defaults(func=cmd_evolve)

    p_spec = sub.add_parser("spectrum", help="first-order stick spectrum as a peak-list CSV")
    p_spec.add_argument("--molecule", choices=["TAB", "CAB"], help="builtin isomer")
    p_spec.add_argument("--method", help="dataset method for the builtin molecule")
    p_spec.add_argument("--molecule-file", help="molecule-format file to synthesize instead")
    p_spec.add_argument(
        "--base",
        action="append",
        metavar="NUCLIDE=MHZ",
        help="reference frequency, e.g. --base 13C=100; repeatable",
    )
    p_spec.add_argument("--config", help="config file with 'base <nuclide> <MHz>' lines")
    p_spec.add_argument("--out", help="peak-list CSV path (default: stdout)")
    p_spec.set_defaults(func=cmd_spectrum)

    p_val = sub.add_parser("validate", help="run the self-validation suite")
    p_val.set_defaults(func=cmd_validate)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.set_defaults(func=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else _EXIT_OK
    try:
        return args.func(args)
    except httpx.HTTPError as exc:
        print(f"error: request failed: {exc}", file=sys.stderr)
        return _EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
