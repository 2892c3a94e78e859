"""Acceptance criteria 1-10, one pass/fail line each.

Run under pytest, or directly with ``python tests/test_acceptance.py``.
"""

import math
import pathlib
import subprocess
import sys

import numpy as np
import pytest

from wignerqpi import glbasis
from wignerqpi.fixtures import check_fixtures
from wignerqpi.scaling import coefficient_matrix, dilation_entry, resolve_conventions, scaled_spectra
from wignerqpi.spectra import bounds, circle_eigenvalue, disk_eigenvalue
from wignerqpi.wigner import WIGNER_BOUND, HermiteState, fock_wigner, qpi_oracle_disk, wigner_grid

ROOT = pathlib.Path(__file__).resolve().parents[1]
FIXTURE_DIR = ROOT / "tests" / "fixtures" / "v1"


def closed_form_spectra():
    worst = 0.0
    for a in (0.1, 0.5, 1.0, 2.0, 4.0):
        e = math.exp(-a * a)
        worst = max(worst, abs(disk_eigenvalue(0, a) - (1.0 - e)))
        worst = max(worst, abs(disk_eigenvalue(1, a) - (1.0 - (1.0 + 2.0 * a * a) * e)))
    return worst < 1e-10, f"max error {worst:.2e} (tol 1e-10)"


def derivative_relation():
    h = 1e-5
    worst = 0.0
    for a in (0.3, 0.7, 1.0, 1.8, 3.0):
        for n in range(21):
            fd = (disk_eigenvalue(n, a + h) - disk_eigenvalue(n, a - h)) / (2.0 * h)
            worst = max(worst, abs(fd - circle_eigenvalue(n, a)))
    return worst < 1e-6, f"max |FD - lambda^C| {worst:.2e} (tol 1e-6)"


def completeness_limit():
    worst = max(abs(disk_eigenvalue(n, 8.0) - 1.0) for n in range(11))
    return worst < 1e-8, f"max |lambda_n^D(8) - 1| {worst:.2e} (tol 1e-8)"


def meixner_proposition():
    conv = resolve_conventions()
    passing = [row for row in conv.residuals if row[2] < 1e-8]
    worst = 0.0
    for kind in ("disk", "circle"):
        for a in (0.5, 1.0, 2.0):
            for xi in (0.5, 2.0):
                series, _, _ = scaled_spectra(kind, 8, a, xi, conventions=conv)
                for m in range(9):
                    direct = disk_eigenvalue(m, xi * a) if kind == "disk" else circle_eigenvalue(m, xi * a)
                    worst = max(worst, abs(series[m] - direct))
    ok = worst < 1e-7 and len(passing) == 1
    return ok, f"max discrepancy {worst:.2e} (tol 1e-7); passing combinations {len(passing)}"


def oracle_equivalence():
    worst = 0.0
    for a in (0.5, 1.0, 2.0):
        for n in range(6):
            worst = max(worst, abs(qpi_oracle_disk(n, a) - disk_eigenvalue(n, a)))
    return worst < 1e-6, f"max |oracle - lambda^D| {worst:.2e} (tol 1e-6)"


def wigner_bound():
    rng = np.random.default_rng(20260)
    violations = 0
    extreme = 0.0
    for _ in range(100):
        state = HermiteState.normalized(rng.normal(size=4))
        g = wigner_grid(state, (-5.0, 5.0), (-5.0, 5.0), 0.05)
        violations += int(np.count_nonzero(np.abs(g.values) > WIGNER_BOUND + 1e-12))
        extreme = max(extreme, float(np.max(np.abs(g.values))))
    attain = max(abs(fock_wigner(0, 0.0, 0.0) - WIGNER_BOUND), abs(fock_wigner(1, 0.0, 0.0) + WIGNER_BOUND))
    ok = violations == 0 and attain < 1e-12
    return ok, f"violations {violations}, max |W| pi = {extreme * math.pi:.6f}, origin error {attain:.1e}"


def su11_structure():
    worst = 0.0
    for realization, params in ((glbasis.Realization.PI, glbasis.CIRCLE_PI), (glbasis.Realization.SIGMA, glbasis.CIRCLE_SIGMA)):
        for n in range(9):
            worst = max(worst, max(glbasis.eigen_residuals(realization, params, n).values()))
    triple = 0.0
    for n in range(9):
        for a in (0.3, 0.8, 1.5, 2.5):
            lam, via_e, via_u = glbasis.identify_circle_spectrum(n, a)
            triple = max(triple, abs(abs(lam) - abs(via_e)), abs(abs(lam) - abs(via_u)))
            triple = max(triple, abs(lam - glbasis.identification_sign(n) * via_e), abs(lam - via_u))
    ok = worst < 1e-8 and triple < 1e-10
    return ok, f"max algebra residual {worst:.2e} (tol 1e-8); identification {triple:.2e} (tol 1e-10)"


def dilation_orthogonality():
    flag = resolve_conventions().meixner_flag
    T = np.array([[dilation_entry(m, n, 0.6, flag) for n in range(501)] for m in range(9)])
    ortho = float(np.max(np.abs(T @ T.T - np.eye(9))))
    conv = resolve_conventions()
    # |c| <= 0.39 for these factors, so 150 inner terms leave a tail below 1e-40
    xi1, xi2 = 1.5, 0.8
    inner = 150
    A = coefficient_matrix(8, conv.params(xi1), inner)
    c2 = conv.params(xi2).c_eff
    B = np.array([[dilation_entry(n, k, c2, conv.meixner_flag) for k in range(9)] for n in range(inner + 1)])
    C = coefficient_matrix(8, conv.params(xi1 * xi2), 8)
    comp = float(np.max(np.abs(A @ B - C)))
    ok = ortho < 1e-8 and comp < 1e-7
    return ok, f"row orthonormality {ortho:.2e} (tol 1e-8); composition {comp:.2e} (tol 1e-7)"


def bounds_sanity():
    rep = bounds("disk", 1.0, 200)
    ok = (
        rep.arg_lower == 1
        and rep.arg_upper == 0
        and abs(rep.lower - (1.0 - 3.0 / math.e)) < 1e-10
        and abs(rep.upper - (1.0 - 1.0 / math.e)) < 1e-10
        and rep.lower < 0.0
    )
    return ok, f"lower {rep.lower:.12f} at n={rep.arg_lower}, upper {rep.upper:.12f} at n={rep.arg_upper}, scanned to {rep.truncation}"


def _cli(*args):
    return subprocess.run([sys.executable, "-m", "wignerqpi", *args], capture_output=True, check=True).stdout


def cli_determinism():
    runs = [
        ("spectrum", "--region", "disk", "--radius", "1", "--nmax", "10"),
        ("spectrum", "--region", "circle", "--radius", "2", "--nmax", "10", "--format", "csv"),
        ("scale-check", "--radius", "1", "--xi", "2", "--mmax", "4"),
    ]
    same = all(_cli(*r) == _cli(*r) for r in runs)
    problems = check_fixtures(FIXTURE_DIR)
    ok = same and not problems
    detail = f"byte-identical {same}; fixture mismatches {len(problems)}"
    if problems:
        detail += f" (first: {problems[0]})"
    return ok, detail


CRITERIA = [
    (1, "closed-form spectra", closed_form_spectra),
    (2, "derivative relation", derivative_relation),
    (3, "completeness limit", completeness_limit),
    (4, "Meixner scaling identity", meixner_proposition),
    (5, "oracle equivalence", oracle_equivalence),
    (6, "Wigner bound", wigner_bound),
    (7, "su(1,1) structure", su11_structure),
    (8, "dilation-matrix orthogonality", dilation_orthogonality),
    (9, "bounds sanity", bounds_sanity),
    (10, "CLI determinism and round-trip", cli_determinism),
]


def _line(num, name, ok, detail):
    return f"criterion {num:2d} {'PASS' if ok else 'FAIL'}  {name}: {detail}"


@pytest.mark.parametrize("num,name,check", CRITERIA, ids=[f"c{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(num, name, check, capsys):
    ok, detail = check()
    with capsys.disabled():
        print("\n" + _line(num, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for num, name, check in CRITERIA:
        ok, detail = check()
        failed += not ok
        print(_line(num, name, ok, detail))
    sys.exit(1 if failed else 0)
