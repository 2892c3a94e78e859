"""Eigenvalues of the disk and circle operators, QPIs and QPI bounds.

The disk operator K_D(a) and circle operator K_C(a) are diagonal in the
Fock basis e_n with eigenvalues

    lambda_n^D(a) = 2 (-1)^n int_0^a L_n(2 x^2) exp(-x^2) x dx
    lambda_n^C(a) = d/da lambda_n^D(a) = 2 (-1)^n L_n(2 a^2) exp(-a^2) a

A quasiprobability integral (QPI) of a state with Fock populations p_n is
sum_n p_n lambda_n, so the extremal eigenvalues bound every QPI over the
region or contour.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .polyfn import laguerre, laguerre_all
from .quadrature import DEFAULT_SPEC, QuadratureSpec, integrate_1d

__all__ = [
    "RegionKind",
    "Spectrum",
    "FockWeights",
    "BoundsReport",
    "DimensionMismatch",
    "DEFAULT_NMAX",
    "circle_eigenvalue",
    "circle_eigenvalues",
    "disk_eigenvalue",
    "disk_eigenvalue_result",
    "spectrum",
    "qpi",
    "bounds",
    "eigenvalue_bound",
]

# decision: SPECTRA-NMAX
DEFAULT_NMAX = 128


class RegionKind(enum.Enum):
    DISK = "disk"
    CIRCLE = "circle"


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues lambda_0..lambda_nmax of K_D(radius) or K_C(radius)."""

    kind: RegionKind
    radius: float
    values: np.ndarray
    errors: np.ndarray = field(default=None)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "values", values)
        if self.errors is None:
            object.__setattr__(self, "errors", np.zeros_like(values))
        else:
            object.__setattr__(self, "errors", np.asarray(self.errors, dtype=float))

    @property
    def nmax(self) -> int:
        return len(self.values) - 1

    def __len__(self):
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]


@dataclass(frozen=True)
class FockWeights:
    """Diagonal of a density operator in the Fock basis."""

    p: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("weights must be a nonempty 1-d sequence")
        if np.any(p < 0):
            raise ValueError("weights must be nonnegative")
        if abs(p.sum() - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1 (sum = {p.sum()!r})")
        object.__setattr__(self, "p", p)

    @classmethod
    def fock(cls, n, size=None):
        p = np.zeros(max(n + 1, size or 0))
        p[n] = 1.0
        return cls(p)

    def __len__(self):
        return len(self.p)


@dataclass(frozen=True)
class BoundsReport:
    """Extremal eigenvalues over n <= truncation.

    Every eigenvalue with n > truncation lies in
    ``[lower - tail_bound, upper + tail_bound]``; ``certified`` is True when
    ``tail_bound == 0``, i.e. the scanned extrema are the true bounds.
    ``empirical_tail`` is the largest |lambda_n| seen in the last quarter of
    the scan, a heuristic indication of how the tail behaves.
    """

    kind: RegionKind
    radius: float
    lower: float
    upper: float
    arg_lower: int
    arg_upper: int
    truncation: int
    tail_bound: float
    certified: bool
    empirical_tail: float


def circle_eigenvalue(n, a):
    """lambda_n^C(a) = 2 (-1)^n L_n(2 a^2) exp(-a^2) a (closed form)."""
    a = np.asarray(a, dtype=float)
    sign = -1.0 if n % 2 else 1.0
    out = 2.0 * sign * laguerre(n, 0.0, 2.0 * a * a) * np.exp(-a * a) * a
    return float(out) if out.ndim == 0 else out


def circle_eigenvalues(nmax, a):
    """Vector [lambda_0^C(a), ..., lambda_nmax^C(a)]."""
    signs = np.where(np.arange(nmax + 1) % 2, -1.0, 1.0)
    return 2.0 * a * math.exp(-a * a) * signs * laguerre_all(nmax, 0.0, 2.0 * a * a)


def _disk_integrand(n):
    sign = -1.0 if n % 2 else 1.0

    def f(x):
        return 2.0 * sign * laguerre(n, 0.0, 2.0 * x * x) * math.exp(-x * x) * x

    return f


def disk_eigenvalue_result(n, a, spec: QuadratureSpec = DEFAULT_SPEC):
    """Quadrature of the disk-eigenvalue integrand, returned as a QuadResult."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if not a > 0:
        raise ValueError("radius must be positive")
    # decision: DISK-BY-QUADRATURE
    return integrate_1d(_disk_integrand(n), 0.0, a, spec)


def disk_eigenvalue(n, a, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """lambda_n^D(a) = 2 (-1)^n int_0^a L_n(2 x^2) exp(-x^2) x dx."""
    return disk_eigenvalue_result(n, a, spec).value


def spectrum(kind, a, nmax=DEFAULT_NMAX, spec: QuadratureSpec = DEFAULT_SPEC) -> Spectrum:
    """Eigenvalues lambda_0..lambda_nmax of the disk or circle operator."""
    kind = RegionKind(kind)
    if nmax < 0:
        raise ValueError("nmax must be nonnegative")
    if not a > 0:
        raise ValueError("radius must be positive")
    if kind is RegionKind.CIRCLE:
        return Spectrum(kind, float(a), circle_eigenvalues(nmax, a))
    results = [disk_eigenvalue_result(n, a, spec) for n in range(nmax + 1)]
    return Spectrum(
        kind,
        float(a),
        [r.value for r in results],
        [r.error_estimate for r in results],
    )


def qpi(weights, sp: Spectrum) -> float:
    """Quasiprobability integral sum_n p_n lambda_n of a Fock-diagonal state."""
    if not isinstance(weights, FockWeights):
        weights = FockWeights(weights)
    lam = sp.values
    if len(weights) > len(lam):
        raise DimensionMismatch(
            f"{len(weights)} weights but spectrum truncated at n = {len(lam) - 1}"
        )
    return float(np.dot(weights.p, lam[: len(weights)]))


def eigenvalue_bound(kind, a) -> float:
    """Certified bound on |lambda_n| valid for every n.

    Follows from |L_n(u) exp(-u/2)| <= 1 for u >= 0: |lambda_n^D(a)| <= a^2
    and |lambda_n^C(a)| <= 2a.
    """
    kind = RegionKind(kind)
    return a * a if kind is RegionKind.DISK else 2.0 * a


def bounds(kind, a, nmax=DEFAULT_NMAX, spec: QuadratureSpec = DEFAULT_SPEC) -> BoundsReport:
    """Scan lambda_0..lambda_nmax for the extremal eigenvalues."""
    if nmax < 1:
        raise ValueError("nmax must be >= 1")
    sp = spectrum(kind, a, nmax, spec)
    vals = sp.values
    # exact ties occur (lambda_1^D(1) == lambda_2^D(1)); take the lowest index
    # among values equal to the extremum within the quadrature error
    slack = 2.0 * float(np.max(sp.errors)) + 4.0 * np.finfo(float).eps
    lo_i = int(np.flatnonzero(vals <= vals.min() + slack)[0])
    hi_i = int(np.flatnonzero(vals >= vals.max() - slack)[0])
    lower, upper = float(vals[lo_i]), float(vals[hi_i])
    # decision: BOUNDS-TAIL
    b = eigenvalue_bound(kind, a)
    tail = max(0.0, b - upper, b + lower)
    quarter = vals[nmax - nmax // 4 :]
    return BoundsReport(
        kind=sp.kind,
        radius=float(a),
        lower=lower,
        upper=upper,
        arg_lower=lo_i,
        arg_upper=hi_i,
        truncation=int(nmax),
        tail_bound=float(tail),
        certified=tail == 0.0,
        empirical_tail=float(np.max(np.abs(quarter))),
    )
