"""Command-line interface: ``python -m wignerqpi <command> ...``.

Every command prints one record to stdout, JSON by default or CSV with
``--format csv``. JSON floats use the shortest repr that round-trips;
CSV floats use 12 significant digits. Output carries no timestamp unless
``--timestamp`` is given, so identical invocations are byte-identical.

Exit codes: 0 success, 2 usage or input error, 3 quadrature tolerance not
reached, 4 scaling conventions unresolved.
"""

from __future__ import annotations

import argparse
import csv
import datetime as _dt
import hashlib
import io
import json
import math
import sys

import numpy as np

from . import __version__
from .quadrature import QuadratureSpec, ToleranceNotReached
from .scaling import AmbiguousConvention, ConventionUnresolved, resolve_conventions, scaled_spectra
from .spectra import (
    DEFAULT_NMAX,
    FockWeights,
    RegionKind,
    bounds,
    circle_eigenvalue,
    disk_eigenvalue,
    qpi,
    spectrum,
)
from .wigner import HermiteState, qpi_oracle_disk_result, wigner_grid

# decision: CLI-EXIT-CODES
EXIT_OK = 0
EXIT_USAGE = 2
EXIT_TOLERANCE = 3
EXIT_CONVENTION = 4

CSV_DIGITS = 12


class UsageError(ValueError):
    pass


def _clean(obj):
    """Convert numpy scalars/arrays and enums to plain JSON types."""
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [_clean(v) for v in obj.tolist()]
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if hasattr(obj, "value") and not isinstance(obj, (int, str)):
        return obj.value
    return obj


def payload_hash(payload) -> str:
    text = json.dumps(_clean(payload), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(text.encode()).hexdigest()


def make_record(command, parameters, tol: QuadratureSpec, payload, *, conventions_hash=None, timestamp=False):
    record = {
        "command": command,
        "version": __version__,
        "parameters": parameters,
        "tolerances": {
            "abs_tol": tol.abs_tol,
            "rel_tol": tol.rel_tol,
            "max_subdivisions": tol.max_subdivisions,
        },
        "conventions_hash": conventions_hash,
        "payload": payload,
        "payload_sha256": payload_hash(payload),
    }
    if timestamp:
        record["generated_at"] = _dt.datetime.now(_dt.timezone.utc).isoformat()
    return _clean(record)


# decision: CLI-NUMBER-FORMAT
def render_json(record) -> str:
    return json.dumps(record, indent=2) + "\n"


def render_csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    fmt = f"{{:.{CSV_DIGITS}g}}"
    for row in rows:
        w.writerow(["" if v is None else fmt.format(v) if isinstance(v, float) else v for v in (_clean(x) for x in row)])
    return buf.getvalue()


def load_state(path):
    """Parse a state file: JSON with exactly one of fock_weights / hermite_coeffs."""
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read state file {path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise UsageError("state file must hold a JSON object")
    keys = {"fock_weights", "hermite_coeffs"} & set(doc)
    if len(keys) != 1 or set(doc) - keys:
        raise UsageError("state file needs exactly one key: fock_weights or hermite_coeffs")
    key = keys.pop()
    vals = doc[key]
    if not isinstance(vals, list) or not vals or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in vals):
        raise UsageError(f"{key} must be a nonempty list of numbers")
    arr = np.asarray(vals, dtype=float)
    if key == "fock_weights":
        if np.any(arr < 0) or abs(arr.sum() - 1.0) > 1e-9:
            raise UsageError("fock_weights must be nonnegative and sum to 1")
        return FockWeights(arr / arr.sum())
    if abs(float(arr @ arr) - 1.0) > 1e-9:
        raise UsageError("hermite_coeffs must have unit square sum")
    return HermiteState(arr / np.linalg.norm(arr))


def _tol(args) -> QuadratureSpec:
    try:
        return QuadratureSpec(args.abs_tol, args.rel_tol, args.max_subdivisions)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _positive(name, v):
    if not (v > 0 and math.isfinite(v)):
        raise UsageError(f"{name} must be positive, got {v}")


def cmd_spectrum(args):
    _positive("radius", args.radius)
    if args.nmax < 0:
        raise UsageError("nmax must be >= 0")
    tol = _tol(args)
    sp = spectrum(args.region, args.radius, args.nmax, tol)
    rows = [(n, float(v), float(e)) for n, (v, e) in enumerate(zip(sp.values, sp.errors))]
    params = {"region": args.region, "radius": args.radius, "nmax": args.nmax}
    payload = {"columns": ["n", "value", "error_estimate"], "rows": rows}
    return make_record("spectrum", params, tol, payload, timestamp=args.timestamp), payload


def cmd_bounds(args):
    _positive("radius", args.radius)
    if args.nmax < 1:
        raise UsageError("nmax must be >= 1")
    tol = _tol(args)
    rep = bounds(args.region, args.radius, args.nmax, tol)
    payload = {
        "lower": rep.lower,
        "upper": rep.upper,
        "arg_lower": rep.arg_lower,
        "arg_upper": rep.arg_upper,
        "truncation": rep.truncation,
        "tail_bound": rep.tail_bound,
        "certified": rep.certified,
        "empirical_tail": rep.empirical_tail,
    }
    params = {"region": args.region, "radius": args.radius, "nmax": args.nmax}
    rec = make_record("bounds", params, tol, payload, timestamp=args.timestamp)
    return rec, {"columns": list(payload), "rows": [list(payload.values())]}


def cmd_qpi(args):
    _positive("radius", args.radius)
    tol = _tol(args)
    state = load_state(args.state)
    weights = state if isinstance(state, FockWeights) else state.populations()
    nmax = max(len(weights) - 1, 0)
    sp = spectrum(args.region, args.radius, nmax, tol)
    value = qpi(weights, sp)
    err = float(np.dot(weights.p, sp.errors[: len(weights)]))
    payload = {"spectral": value, "spectral_error_estimate": err}
    if isinstance(state, HermiteState):
        if RegionKind(args.region) is RegionKind.DISK:
            res = qpi_oracle_disk_result(state, args.radius, tol)
            payload.update(oracle=res.value, oracle_error_estimate=res.error_estimate, discrepancy=abs(res.value - value))
        else:
            payload.update(oracle=None, oracle_error_estimate=None, discrepancy=None)
    params = {"region": args.region, "radius": args.radius, "state": _clean(
        {"fock_weights": state.p} if isinstance(state, FockWeights) else {"hermite_coeffs": state.coeffs}
    )}
    rec = make_record("qpi", params, tol, payload, timestamp=args.timestamp)
    return rec, {"columns": list(payload), "rows": [list(payload.values())]}


def cmd_scale_check(args):
    _positive("radius", args.radius)
    _positive("xi", args.xi)
    if args.xi == 1.0:
        raise UsageError("xi = 1 is the identity scaling; choose xi != 1")
    if args.mmax < 0:
        raise UsageError("mmax must be >= 0")
    if args.trunc is not None and args.trunc < args.mmax:
        raise UsageError("trunc must be >= mmax")
    tol = _tol(args)
    conv = resolve_conventions()
    kind = RegionKind(args.region)
    series, truncs, tails = scaled_spectra(kind, args.mmax, args.radius, args.xi, args.trunc, conv, tol)
    target = args.xi * args.radius
    rows = []
    for m in range(args.mmax + 1):
        direct = circle_eigenvalue(m, target) if kind is RegionKind.CIRCLE else disk_eigenvalue(m, target, tol)
        rows.append((m, float(direct), float(series[m]), abs(float(series[m]) - direct), int(truncs[m]), float(tails[m])))
    payload = {
        "columns": ["m", "direct", "series", "discrepancy", "truncation", "tail_estimate"],
        "rows": rows,
        "conventions": {
            "direction": conv.direction.value,
            "meixner_argument": conv.meixner_flag.value,
            "report": "CONVENTIONS",
        },
    }
    params = {"region": args.region, "radius": args.radius, "xi": args.xi, "mmax": args.mmax, "trunc": args.trunc}
    rec = make_record("scale-check", params, tol, payload, conventions_hash=conv.hash, timestamp=args.timestamp)
    return rec, payload


def cmd_wigner_grid(args):
    if args.state is None and args.fock is None:
        raise UsageError("give --state FILE or --fock N")
    state = load_state(args.state) if args.state is not None else int(args.fock)
    try:
        grid = wigner_grid(state, tuple(args.q_range), tuple(args.p_range), args.step)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    lo, hi = grid.extrema()
    summary = {"min": lo, "max": hi, "within_bound": grid.within_bound(), "bound": 1.0 / math.pi}
    rows = [(float(q), float(p), float(grid.values[i, j])) for i, q in enumerate(grid.q) for j, p in enumerate(grid.p)]
    payload = {"columns": ["q", "p", "W"], "rows": rows, "summary": summary}
    params = {
        "state": args.state if args.state is not None else {"fock": args.fock},
        "q_range": args.q_range,
        "p_range": args.p_range,
        "step": args.step,
    }
    rec = make_record("wigner-grid", params, _tol(args), payload, timestamp=args.timestamp)
    return rec, payload


def cmd_conventions(args):
    conv = resolve_conventions()
    text = conv.report()
    if args.write:
        with open(args.write, "w", newline="\n") as fh:
            fh.write(text)
    return text


def cmd_fixtures(args):
    from .fixtures import check_fixtures, regenerate_fixtures

    if args.check:
        problems = check_fixtures(args.out)
        return "\n".join(problems) + ("\n" if problems else "fixtures match\n"), bool(problems)
    written = regenerate_fixtures(args.out)
    return "".join(f"wrote {p}\n" for p in written), False


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wignerqpi",
        description="Spectra of disk/circle operators, QPI bounds and Meixner scaling checks.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--abs-tol", type=float, default=1e-10)
    common.add_argument("--rel-tol", type=float, default=1e-10)
    common.add_argument("--max-subdivisions", type=int, default=2000)
    common.add_argument("--format", choices=("json", "csv"), default=None, help="json (default) or csv; wigner-grid defaults to csv")
    common.add_argument("--timestamp", action="store_true", help="add generated_at to the metadata")

    region = argparse.ArgumentParser(add_help=False)
    region.add_argument("--region", choices=("disk", "circle"), required=True)
    region.add_argument("--radius", type=float, required=True)

    p = sub.add_parser("spectrum", parents=[common, region], help="eigenvalues lambda_0..lambda_nmax")
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("bounds", parents=[common, region], help="extremal eigenvalues (QPI bounds)")
    p.add_argument("--nmax", type=int, default=DEFAULT_NMAX)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("qpi", parents=[common, region], help="QPI of a state over a disk or circle")
    p.add_argument("--state", required=True, help="JSON state file")
    p.set_defaults(func=cmd_qpi)

    p = sub.add_parser("scale-check", parents=[common], help="verify the Meixner scaling identity")
    p.add_argument("--region", choices=("disk", "circle"), default="circle")
    p.add_argument("--radius", type=float, required=True)
    p.add_argument("--xi", type=float, required=True)
    p.add_argument("--mmax", type=int, default=4)
    p.add_argument("--trunc", type=int, default=None)
    p.set_defaults(func=cmd_scale_check)

    p = sub.add_parser("wigner-grid", parents=[common], help="Wigner function on a grid")
    p.add_argument("--state", default=None, help="JSON state file")
    p.add_argument("--fock", type=int, default=None, help="Fock state index instead of --state")
    p.add_argument("--q-range", type=float, nargs=2, default=(-3.0, 3.0), metavar=("LO", "HI"))
    p.add_argument("--p-range", type=float, nargs=2, default=(-3.0, 3.0), metavar=("LO", "HI"))
    p.add_argument("--step", type=float, default=0.1)
    p.set_defaults(func=cmd_wigner_grid)

    p = sub.add_parser("conventions", help="resolve and print the scaling conventions report")
    p.add_argument("--write", default=None, help="also write the report to this path")
    p.set_defaults(func=cmd_conventions)

    p = sub.add_parser("fixtures", help="regenerate or check golden fixtures")
    p.add_argument("--out", required=True, help="fixture directory")
    p.add_argument("--check", action="store_true", help="compare instead of rewriting")
    p.set_defaults(func=cmd_fixtures)
    return parser


def run(argv=None):
    """Run a command; return ``(exit_code, stdout_text, stderr_text)``."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), "", ""
    try:
        if args.command == "conventions":
            return EXIT_OK, args.func(args), ""
        if args.command == "fixtures":
            text, failed = args.func(args)
            return (1 if failed else EXIT_OK), text, ""
        record, table = args.func(args)
    except UsageError as exc:
        return EXIT_USAGE, "", f"error: {exc}\n"
    except ToleranceNotReached as exc:
        return EXIT_TOLERANCE, "", f"error: {exc}\n"
    except (ConventionUnresolved, AmbiguousConvention) as exc:
        return EXIT_CONVENTION, "", f"error: {exc}\n"
    fmt = args.format or ("csv" if args.command == "wigner-grid" else "json")
    if fmt == "csv":
        out = render_csv(table["columns"], table["rows"])
        err = ""
        if "summary" in table:
            s = table["summary"]
            err = f"# min={s['min']!r} max={s['max']!r} within_bound={str(s['within_bound']).lower()}\n"
        return EXIT_OK, out, err
    return EXIT_OK, render_json(record), ""


def main(argv=None):
    code, out, err = run(argv)
    if out:
        sys.stdout.write(out)
    if err:
        sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
