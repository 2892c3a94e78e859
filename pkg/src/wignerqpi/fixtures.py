"""Golden fixtures: CLI invocations, their payloads and per-field tolerances.

Each fixture file holds the argv that produced it, the expected payload,
an explicit tolerance for every numeric field and the hash of the scaling
conventions in force when it was written. Regeneration checks every
payload against independent oracles first and writes nothing if any check
fails.
"""

from __future__ import annotations

import json
import math
import os

from .cli import run
from .scaling import resolve_conventions

__all__ = [
    "FIXTURES",
    "FixtureOracleError",
    "fixture_payload",
    "compare_payload",
    "regenerate_fixtures",
    "check_fixtures",
]

# decision: FIXTURE-TOLERANCES
SPECTRUM_TOL = {"n": 0.0, "value": 1e-12, "error_estimate": 1e-12}
SCALE_TOL = {"m": 0.0, "direct": 1e-12, "series": 1e-11, "discrepancy": 1e-11, "truncation": 0.0, "tail_estimate": 1e-12}
BOUNDS_TOL = {
    "lower": 1e-12,
    "upper": 1e-12,
    "arg_lower": 0.0,
    "arg_upper": 0.0,
    "truncation": 0.0,
    "tail_bound": 1e-12,
    "empirical_tail": 1e-12,
}


def _spectrum_fixtures():
    for kind in ("disk", "circle"):
        for a in ("0.5", "1", "2"):
            yield f"spectrum_{kind}_a{a}", ["spectrum", "--region", kind, "--radius", a, "--nmax", "10"], SPECTRUM_TOL


FIXTURES = [
    *_spectrum_fixtures(),
    ("scale_check_circle_a1_xi2", ["scale-check", "--region", "circle", "--radius", "1", "--xi", "2", "--mmax", "8"], SCALE_TOL),
    ("scale_check_disk_a1_xi2", ["scale-check", "--region", "disk", "--radius", "1", "--xi", "2", "--mmax", "8"], SCALE_TOL),
    ("bounds_disk_a1", ["bounds", "--region", "disk", "--radius", "1", "--nmax", "200"], BOUNDS_TOL),
]


class FixtureOracleError(RuntimeError):
    """A regenerated payload disagrees with its oracle."""


def fixture_payload(argv):
    """Run the CLI in-process and return its parsed JSON record."""
    code, out, err = run(list(argv))
    if code != 0:
        raise RuntimeError(f"{' '.join(argv)} exited {code}: {err.strip()}")
    return json.loads(out)


def _oracle_checks(name, argv, record):
    """Independent checks on a fresh record; returns a list of failures."""
    payload = record["payload"]
    fails = []

    def expect(label, got, want, tol):
        if not abs(got - want) <= tol:
            fails.append(f"{name}: {label} = {got!r}, oracle {want!r}")

    if argv[0] == "spectrum":
        kind, a = argv[2], float(argv[4])
        rows = payload["rows"]
        e = math.exp(-a * a)
        if kind == "disk":
            expect("lambda_0", rows[0][1], 1.0 - e, 1e-10)
            expect("lambda_1", rows[1][1], 1.0 - (1.0 + 2.0 * a * a) * e, 1e-10)
        else:
            expect("lambda_0", rows[0][1], 2.0 * a * e, 1e-12)
            expect("lambda_1", rows[1][1], -2.0 * a * (1.0 - 2.0 * a * a) * e, 1e-12)
    elif argv[0] == "scale-check":
        for m, _, _, disc, _, _ in payload["rows"]:
            if not disc < 1e-7:
                fails.append(f"{name}: m = {m} discrepancy {disc!r}")
    elif argv[0] == "bounds":
        expect("lower", payload["lower"], 1.0 - 3.0 / math.e, 1e-10)
        expect("upper", payload["upper"], 1.0 - 1.0 / math.e, 1e-10)
        if (payload["arg_lower"], payload["arg_upper"]) != (1, 0):
            fails.append(f"{name}: extremal indices {payload['arg_lower']}, {payload['arg_upper']}")
    return fails


def regenerate_fixtures(outdir):
    """Recompute every fixture, verify against oracles, then write them all."""
    conv_hash = resolve_conventions().hash
    built, fails = [], []
    for name, argv, tol in FIXTURES:
        record = fixture_payload(argv)
        fails.extend(_oracle_checks(name, argv, record))
        built.append(
            (
                name,
                {
                    "name": name,
                    "argv": argv,
                    "conventions_hash": conv_hash,
                    "tolerance": tol,
                    "expected": record["payload"],
                },
            )
        )
    if fails:
        raise FixtureOracleError("; ".join(fails))
    os.makedirs(outdir, exist_ok=True)
    written = []
    for name, doc in built:
        path = os.path.join(outdir, f"{name}.json")
        with open(path, "w", newline="\n") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
        written.append(path)
    return written


def _tol_for(key, tol):
    if key not in tol:
        raise KeyError(f"no tolerance declared for field {key!r}")
    return tol[key]


def compare_payload(expected, actual, tol, path="payload"):
    """Differences between two payloads under per-field tolerances.

    Tabular payloads (``columns`` + ``rows``) take the tolerance of each
    column; other numeric fields take the tolerance of their key.
    """
    out = []
    if isinstance(expected, dict):
        if not isinstance(actual, dict) or set(expected) != set(actual):
            return [f"{path}: keys differ"]
        cols = expected.get("columns")
        for key in expected:
            if key == "rows" and cols is not None:
                if len(expected["rows"]) != len(actual["rows"]):
                    out.append(f"{path}.rows: length differs")
                    continue
                for i, (er, ar) in enumerate(zip(expected["rows"], actual["rows"])):
                    for col, ev, av in zip(cols, er, ar):
                        out.extend(_compare_leaf(ev, av, _tol_for(col, tol), f"{path}.rows[{i}].{col}"))
            elif isinstance(expected[key], (dict, list)):
                out.extend(compare_payload(expected[key], actual[key], tol, f"{path}.{key}"))
            else:
                t = tol.get(key, 0.0)
                out.extend(_compare_leaf(expected[key], actual[key], t, f"{path}.{key}"))
        return out
    if isinstance(expected, list):
        if not isinstance(actual, list) or len(expected) != len(actual):
            return [f"{path}: length differs"]
        for i, (e, a) in enumerate(zip(expected, actual)):
            out.extend(compare_payload(e, a, tol, f"{path}[{i}]") if isinstance(e, (dict, list)) else _compare_leaf(e, a, 0.0, f"{path}[{i}]"))
        return out
    return _compare_leaf(expected, actual, 0.0, path)


def _compare_leaf(e, a, tol, path):
    numeric = (int, float)
    if isinstance(e, numeric) and not isinstance(e, bool) and isinstance(a, numeric) and not isinstance(a, bool):
        if abs(e - a) <= tol:
            return []
        return [f"{path}: expected {e!r}, got {a!r} (tol {tol!r})"]
    return [] if e == a else [f"{path}: expected {e!r}, got {a!r}"]


def check_fixtures(fixture_dir):
    """Compare stored fixtures with fresh output; returns a list of problems."""
    conv_hash = resolve_conventions().hash
    problems = []
    for name, argv, _ in FIXTURES:
        path = os.path.join(fixture_dir, f"{name}.json")
        if not os.path.exists(path):
            problems.append(f"{name}: missing")
            continue
        with open(path) as fh:
            doc = json.load(fh)
        if doc["conventions_hash"] != conv_hash:
            problems.append(f"{name}: stale conventions hash {doc['conventions_hash']} (now {conv_hash})")
            continue
        record = fixture_payload(doc["argv"])
        problems.extend(f"{name}: {d}" for d in compare_payload(doc["expected"], record["payload"], doc["tolerance"]))
    return problems
