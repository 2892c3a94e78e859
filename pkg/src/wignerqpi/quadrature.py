"""Error-controlled integration on intervals and on disks centred at the origin.

Both routines wrap ``scipy.integrate.quad`` (adaptive Gauss-Kronrod,
QUADPACK) and report the error estimate and number of subintervals used.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from scipy import integrate

__all__ = [
    "QuadratureSpec",
    "QuadResult",
    "ToleranceNotReached",
    "DEFAULT_SPEC",
    "integrate_1d",
    "integrate_disk",
]


class ToleranceNotReached(RuntimeError):
    """Adaptive subdivision ran out before the requested accuracy.

    The best available estimate is attached as ``result``.
    """

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class QuadratureSpec:
    abs_tol: float = 1e-10
    rel_tol: float = 1e-10
    max_subdivisions: int = 2000

    def __post_init__(self):
        if not self.abs_tol > 0 or not self.rel_tol > 0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")

    def target(self, value: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(value))


# decision: QUAD-DEFAULTS
DEFAULT_SPEC = QuadratureSpec()


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    subdivisions_used: int

    def __float__(self):
        return float(self.value)


def integrate_1d(f, lo, hi, spec: QuadratureSpec = DEFAULT_SPEC, *, strict=True) -> QuadResult:
    """Integrate ``f`` over ``[lo, hi]``.

    Parameters
    ----------
    f : callable
        scalar function of one float
    lo, hi : float
        limits with ``lo <= hi``
    spec : QuadratureSpec
        tolerances and subdivision limit
    strict : bool
        if True, raise :class:`ToleranceNotReached` when the error
        estimate exceeds the requested tolerance; otherwise return the
        best estimate

    Returns
    -------
    QuadResult
    """
    if hi < lo:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi}]")
    if hi == lo:
        return QuadResult(0.0, 0.0, 0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(
            f,
            lo,
            hi,
            epsabs=spec.abs_tol,
            epsrel=spec.rel_tol,
            limit=spec.max_subdivisions,
            full_output=1,
        )
    value, err, info = out[0], out[1], out[2]
    res = QuadResult(float(value), float(err), int(info["last"]))
    if strict and not res.error_estimate <= spec.target(res.value):
        raise ToleranceNotReached(
            f"error estimate {err:.3g} above target {spec.target(value):.3g} "
            f"on [{lo}, {hi}] after {res.subdivisions_used} subintervals",
            res,
        )
    return res


def integrate_disk(f, radius, spec: QuadratureSpec = DEFAULT_SPEC, *, angle_offset=0.0) -> QuadResult:
    """Integrate ``f(q, p)`` over the disk q^2 + p^2 <= radius^2 with measure dq dp.

    Polar factorization: the outer adaptive rule runs over the radius, the
    inner one over the angle. ``angle_offset`` rotates the angular origin;
    the result must not depend on it.
    """
    if not radius > 0:
        raise ValueError("radius must be positive")
    inner_spec = QuadratureSpec(
        abs_tol=spec.abs_tol / (2.0 * radius),
        rel_tol=spec.rel_tol,
        max_subdivisions=spec.max_subdivisions,
    )
    worst = [0.0]
    used = [0]

    def ring(r):
        if r == 0.0:
            return 0.0
        res = integrate_1d(
            lambda t: f(r * math.cos(t), r * math.sin(t)),
            angle_offset,
            angle_offset + 2.0 * math.pi,
            inner_spec,
        )
        worst[0] = max(worst[0], res.error_estimate * r)
        used[0] += res.subdivisions_used
        return r * res.value

    outer = integrate_1d(ring, 0.0, radius, spec)
    # inner errors enter the outer integral scaled by at most the radius
    err = outer.error_estimate + worst[0] * radius
    return QuadResult(outer.value, err, outer.subdivisions_used + used[0])
