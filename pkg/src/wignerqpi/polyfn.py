"""Special functions: Laguerre, normalized Hermite, Pochhammer and Meixner.

All routines evaluate by recurrence or terminating sums in double precision
and broadcast over numpy arrays in the argument ``x``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

__all__ = [
    "MeixnerConvention",
    "MeixnerSpec",
    "laguerre",
    "laguerre_all",
    "laguerre_derivative",
    "hermite_normalized",
    "hermite_functions",
    "pochhammer",
    "meixner",
    "hyp2f1_terminating",
]


class MeixnerConvention(enum.Enum):
    """Which argument the 2F1 in the Meixner polynomial is evaluated at."""

    ONE_MINUS_INV_C = "1-1/c"
    ONE_MINUS_INV_C_SQUARED = "1-1/c^2"

    def argument(self, c: float) -> float:
        if self is MeixnerConvention.ONE_MINUS_INV_C:
            return 1.0 - 1.0 / c
        return 1.0 - 1.0 / (c * c)


@dataclass(frozen=True)
class MeixnerSpec:
    """Indices and parameters of M_n(m, beta; .).

    ``convention`` has no default on purpose: the caller must say which
    2F1 argument is meant.
    """

    n: int
    m: int
    beta: float
    convention: MeixnerConvention

    def __post_init__(self):
        if self.n < 0 or self.m < 0:
            raise ValueError("Meixner indices must be nonnegative")
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if not isinstance(self.convention, MeixnerConvention):
            raise TypeError("convention must be a MeixnerConvention")


def _check_degree(n):
    if n < 0 or int(n) != n:
        raise ValueError(f"degree must be a nonnegative integer, got {n!r}")
    return int(n)


# decision: LAGUERRE-RECURRENCE
def laguerre(n, alpha, x):
    """Generalized Laguerre polynomial L_n^alpha(x).

    Uses the upward recurrence
    (k+1) L_{k+1} = (2k+1+alpha-x) L_k - (k+alpha) L_{k-1},
    which is accurate for n up to a few hundred and x up to ~100.

    Parameters
    ----------
    n : int
        degree, n >= 0
    alpha : float
        shape parameter, alpha >= -1
    x : float or array_like
        evaluation points

    Returns
    -------
    float or numpy.ndarray
        same shape as ``x``
    """
    n = _check_degree(n)
    if np.ndim(x) == 0:
        return _laguerre_scalar(n, float(alpha), float(x))
    x = np.asarray(x, dtype=float)
    prev = np.ones_like(x)
    if n == 0:
        return prev
    cur = 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def _laguerre_scalar(n, alpha, x):
    # plain floats: quadrature calls this once per node
    if n == 0:
        return 1.0
    prev, cur = 1.0, 1.0 + alpha - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre_all(nmax, alpha, x):
    """Table [L_0^alpha(x), ..., L_nmax^alpha(x)] stacked along axis 0."""
    nmax = _check_degree(nmax)
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = 1.0
    if nmax >= 1:
        out[1] = 1.0 + alpha - x
    for k in range(1, nmax):
        out[k + 1] = ((2 * k + 1 + alpha - x) * out[k] - (k + alpha) * out[k - 1]) / (k + 1)
    return out


def laguerre_derivative(n, alpha, x):
    """d/dx L_n^alpha(x), via the identity d/dx L_n^alpha = -L_{n-1}^{alpha+1}."""
    n = _check_degree(n)
    if n == 0:
        return 0.0 * np.asarray(x, dtype=float) if np.ndim(x) else 0.0
    return -laguerre(n - 1, alpha + 1, x)


def hermite_normalized(n, x):
    """Hermite polynomial scaled so that H_n(x) exp(-x^2/2) is orthonormal on R.

    H_0 = pi^(-1/4); H_{k+1} = sqrt(2/(k+1)) x H_k - sqrt(k/(k+1)) H_{k-1}.
    For large |x| use :func:`hermite_functions`, which folds in the
    Gaussian before the recurrence and cannot overflow.
    """
    n = _check_degree(n)
    scalar = np.ndim(x) == 0
    x = np.asarray(x, dtype=float)
    prev = np.full_like(x, np.pi ** -0.25)
    cur = prev
    if n >= 1:
        cur = np.sqrt(2.0) * x * prev
    for k in range(1, n):
        prev, cur = cur, np.sqrt(2.0 / (k + 1)) * x * cur - np.sqrt(k / (k + 1)) * prev
    return float(cur) if scalar else cur


def hermite_functions(nmax, x):
    """Orthonormal Hermite functions H_k(x) exp(-x^2/2) for k = 0..nmax.

    Returns an array of shape ``(nmax + 1,) + np.shape(x)``.
    """
    nmax = _check_degree(nmax)
    x = np.asarray(x, dtype=float)
    out = np.empty((nmax + 1,) + x.shape)
    out[0] = np.pi ** -0.25 * np.exp(-0.5 * x * x)
    if nmax >= 1:
        out[1] = np.sqrt(2.0) * x * out[0]
    for k in range(1, nmax):
        out[k + 1] = np.sqrt(2.0 / (k + 1)) * x * out[k] - np.sqrt(k / (k + 1)) * out[k - 1]
    return out


def pochhammer(alpha, n):
    """Rising factorial (alpha)_n = alpha (alpha+1) ... (alpha+n-1); (alpha)_0 = 1."""
    n = _check_degree(n)
    out = 1.0
    for j in range(n):
        out *= alpha + j
    return out


def hyp2f1_terminating(n, m, beta, z):
    """2F1(-n, -m; beta; z) for nonnegative integers n, m.

    The series stops after min(n, m) + 1 terms, so this is an exact
    finite sum.
    """
    n = _check_degree(n)
    m = _check_degree(m)
    total = 0.0
    term = 1.0
    for j in range(min(n, m) + 1):
        total += term
        term *= (j - n) * (j - m) / ((beta + j) * (j + 1)) * z
    return total


def meixner(spec: MeixnerSpec, c: float) -> float:
    """Meixner polynomial M_n(m, beta; c) as a terminating 2F1.

    The argument of the hypergeometric sum is ``1 - 1/c`` or
    ``1 - 1/c**2`` depending on ``spec.convention``. Negative ``c`` is
    accepted (dilations that shrink the radius need it); ``c`` must satisfy
    ``0 < |c| < 1``.
    """
    # decision: MEIXNER-NEGATIVE-C
    if not (0.0 < abs(c) < 1.0):
        raise ValueError(f"c must satisfy 0 < |c| < 1, got {c!r}")
    return hyp2f1_terminating(spec.n, spec.m, spec.beta, spec.convention.argument(c))

