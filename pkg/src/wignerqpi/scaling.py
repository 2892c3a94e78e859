"""Spectra at proportional radii related by Meixner-polynomial coefficients.

For a scale factor xi > 0 the eigenvalues at radius xi*a expand in the
eigenvalues at radius a,

    lambda_m^C(xi a) = sum_n t_n(m) lambda_n^C(a),
    lambda_m^D(xi a) = xi * sum_n t_n(m) lambda_n^D(a),
    t_n(m) = N_m c^n M_n(m, 1; .),   N_m = (-1)^m sqrt(1 - c^2) c^m.

Two conventions are not fixed
by the formula alone: the sign of ``c`` relative to the scale (whether
c = (xi^2 - 1)/(xi^2 + 1) produces radius xi*a or a/xi) and the argument of
the 2F1 defining M_n. :func:`resolve_conventions` settles both by direct
comparison with closed-form circle eigenvalues and caches the outcome; the
rest of the module refuses to run until that has happened.

The coefficient matrix is also the matrix of the dilation operator
exp(-r L_2), r = 2 ln xi, in the Gauss-Laguerre basis, which
:func:`dilation_matrix_expm` computes independently from the ladder
coefficients.
"""

from __future__ import annotations

import enum
import functools
import hashlib
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import expm

from . import glbasis
from .polyfn import MeixnerConvention, hyp2f1_terminating
from .quadrature import DEFAULT_SPEC, QuadratureSpec
from .spectra import RegionKind, circle_eigenvalue, circle_eigenvalues, spectrum

__all__ = [
    "Direction",
    "Conventions",
    "ScalingParams",
    "ExpansionCoefficients",
    "AmbiguousConvention",
    "ConventionUnresolved",
    "TAIL_TOL",
    "TRUNC_CAP",
    "dilation_entry",
    "default_truncation",
    "expansion_coefficients",
    "coefficient_matrix",
    "resolve_conventions",
    "current_conventions",
    "scaled_spectrum",
    "scaled_spectra",
    "disk_jacobian",
    "generator_matrix",
    "dilation_matrix_expm",
    "dilation_check",
    "sigma_phase_fit",
]

TAIL_TOL = 1e-10
TRUNC_CAP = 2000


class AmbiguousConvention(RuntimeError):
    """Zero or several convention combinations reproduced the target."""


class ConventionUnresolved(RuntimeError):
    """A scaled quantity was requested before :func:`resolve_conventions` ran."""


class Direction(enum.Enum):
    """How c = (xi^2 - 1)/(xi^2 + 1) maps to the radius the series produces.

    AS_WRITTEN: the series with this c gives lambda_m(xi a).
    INVERTED: it gives lambda_m(a / xi), so lambda_m(xi a) needs c -> -c.
    """

    AS_WRITTEN = "as_written"
    INVERTED = "inverted"


@dataclass(frozen=True)
class ScalingParams:
    xi: float
    direction: Direction
    meixner_flag: MeixnerConvention

    def __post_init__(self):
        if not (self.xi > 0 and math.isfinite(self.xi)):
            raise ValueError("xi must be positive and finite")

    @property
    def r(self) -> float:
        return 2.0 * math.log(self.xi)

    @property
    def c(self) -> float:
        x2 = self.xi * self.xi
        return (x2 - 1.0) / (x2 + 1.0)

    @property
    def c_eff(self) -> float:
        """The c that actually enters the coefficients for target radius xi*a."""
        return self.c if self.direction is Direction.AS_WRITTEN else -self.c

    def normalization(self, m) -> float:
        c = self.c_eff
        return (-1.0) ** m * math.sqrt(1.0 - c * c) * c ** m


@dataclass(frozen=True)
class ExpansionCoefficients:
    m: int
    terms: np.ndarray
    truncation: int
    tail_estimate: float
    params: ScalingParams = field(repr=False)


def dilation_entry(m, n, c, flag: MeixnerConvention) -> float:
    """t_n(m) = (-1)^m sqrt(1-c^2) c^(m+n) M_n(m, 1; .) as a polynomial in c.

    Expanding the 2F1 term by term, c^(m+n) z^j with z = 1 - 1/c^2 becomes
    c^(m+n-2j) (c^2 - 1)^j (and c^(m+n-j) (c - 1)^j for z = 1 - 1/c), with
    nonnegative powers of c since j <= min(m, n). The entry is therefore
    finite at c = 0. There it reduces to the identity for 1 - 1/c^2; for
    1 - 1/c only the (0, 0) entry survives, so that choice is not unitary.
    """
    if not abs(c) < 1.0:
        raise ValueError("need |c| < 1")
    squared = flag is MeixnerConvention.ONE_MINUS_INV_C_SQUARED
    step = 2 if squared else 1
    base = c * c - 1.0 if squared else c - 1.0
    total = 0.0
    coef = 1.0
    for j in range(min(m, n) + 1):
        power = m + n - step * j
        if power >= 0:
            total += coef * (c ** power if power else 1.0) * base ** j
        coef *= (j - n) * (j - m) / ((1.0 + j) * (j + 1.0))
    return (-1.0) ** m * math.sqrt(1.0 - c * c) * total


def _meixner_abs_max(m, c, flag, nmax):
    z = flag.argument(c)
    return max(abs(hyp2f1_terminating(n, m, 1.0, z)) for n in range(nmax + 1))


def _tail(m, c, flag, N, running_max):
    a = abs(c)
    return math.sqrt(1.0 - c * c) * a ** m * a ** (N + 1) / (1.0 - a) * running_max


# decision: SCALING-TRUNC
def default_truncation(m, params: ScalingParams, tol=TAIL_TOL, cap=TRUNC_CAP):
    """Smallest N >= m whose geometric tail estimate is below ``tol``.

    The estimate is |N_m| |c|^(N+1) / (1 - |c|) * max_{n<=N} |M_n(m)|.
    Returns ``(N, estimate)``; N is capped at ``cap``.
    """
    c = params.c_eff
    if c == 0.0:
        return m, 0.0
    z = params.meixner_flag.argument(c)
    running = 0.0
    for N in range(cap + 1):
        running = max(running, abs(hyp2f1_terminating(N, m, 1.0, z)))
        if N >= m:
            est = _tail(m, c, params.meixner_flag, N, running)
            if est < tol:
                return N, est
    return cap, est


def expansion_coefficients(m, params: ScalingParams, trunc=None) -> ExpansionCoefficients:
    """Coefficients t_0(m)..t_trunc(m) of the Meixner expansion."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    c = params.c_eff
    if trunc is None:
        trunc, tail = default_truncation(m, params)
    else:
        if trunc < m:
            raise ValueError("trunc must be >= m")
        tail = 0.0 if c == 0.0 else _tail(m, c, params.meixner_flag, trunc, _meixner_abs_max(m, c, params.meixner_flag, trunc))
    terms = np.array([dilation_entry(m, n, c, params.meixner_flag) for n in range(trunc + 1)])
    return ExpansionCoefficients(m, terms, int(trunc), float(tail), params)


def coefficient_matrix(mmax, params: ScalingParams, trunc) -> np.ndarray:
    """Rows m = 0..mmax of the truncated coefficient matrix, shape (mmax+1, trunc+1)."""
    return np.array([expansion_coefficients(m, params, trunc).terms for m in range(mmax + 1)])


@dataclass(frozen=True)
class Conventions:
    """Outcome of :func:`resolve_conventions`."""

    direction: Direction
    meixner_flag: MeixnerConvention
    residuals: tuple  # ((direction, flag, max residual), ...)
    probe: tuple  # (a, xi, trunc, mmax)
    sigma_phases: tuple = ()

    def params(self, xi) -> ScalingParams:
        return ScalingParams(xi, self.direction, self.meixner_flag)

    @property
    def hash(self) -> str:
        key = f"direction={self.direction.value};meixner={self.meixner_flag.value};phase=(-1)^m;disk=xi"
        return hashlib.sha256(key.encode()).hexdigest()[:16]

    def report(self) -> str:
        a, xi, trunc, mmax = self.probe
        lines = [
            "CONVENTIONS",
            "===========",
            "",
            "Meixner expansion lambda_m(xi a) = sum_n N_m c^n M_n(m,1;.) lambda_n(a),",
            "N_m = (-1)^m sqrt(1-c^2) c^m, checked against closed-form circle eigenvalues.",
            "",
            f"probe: a = {a!r}, xi = {xi!r}, truncation = {trunc}, m = 0..{mmax}",
            "",
            "candidate                                   max |series - direct|",
        ]
        for d, f, res in self.residuals:
            mark = "  <- selected" if (d, f) == (self.direction, self.meixner_flag) else ""
            lines.append(f"direction={d.value:<11s} meixner arg={f.value:<8s}  {res:.3e}{mark}")
        lines += [
            "",
            f"resolved direction : {self.direction.value}",
            "  the series with c = (xi^2-1)/(xi^2+1) reproduces lambda_m(a/xi);",
            "  lambda_m(xi a) uses c = -(xi^2-1)/(xi^2+1)"
            if self.direction is Direction.INVERTED
            else "  the series with c = (xi^2-1)/(xi^2+1) reproduces lambda_m(xi a)",
            f"resolved 2F1 argument: {self.meixner_flag.value}",
            "phase for the pi-realization (lambda_n^C = sqrt(a) u_n): (-1)^m",
            "disk spectra: same coefficients times the Jacobian xi,",
            "  lambda_m^D(xi a) = xi sum_n t_n(m) lambda_n^D(a)",
        ]
        if self.sigma_phases:
            ph = ", ".join(f"{m}:{p:+d}" for m, p in self.sigma_phases)
            lines += [
                "phase fitted for the sigma-realization (g_n = a^(3/2) e_n^(1/2), c as written):",
                f"  {ph}",
            ]
        lines += ["", f"hash: {self.hash}", ""]
        return "\n".join(lines)


_RESOLVED: Conventions | None = None


def _circle_series(m, a, params, trunc):
    t = expansion_coefficients(m, params, trunc).terms
    return float(np.dot(t, circle_eigenvalues(trunc, a)))


# decision: SCALING-RESOLVE
def resolve_conventions(a=1.0, xi=2.0, trunc=200, mmax=3, tol=1e-8) -> Conventions:
    """Pick the (direction, 2F1 argument) pair that reproduces the circle spectrum.

    Each of the four candidates is evaluated for m = 0..mmax against
    circle_eigenvalue(m, xi*a). The m = 0 row alone cannot separate the two
    2F1 arguments (M_n(0, .) = 1), hence mmax >= 1 is required.

    The first successful resolution is cached and used by every later call
    to :func:`scaled_spectrum`; a later resolution that disagrees raises
    :class:`AmbiguousConvention`.
    """
    global _RESOLVED
    if xi == 1.0:
        raise ValueError("xi = 1 cannot distinguish conventions")
    if mmax < 1:
        raise ValueError("mmax must be >= 1 to separate the Meixner arguments")
    results = []
    for d in Direction:
        for f in MeixnerConvention:
            p = ScalingParams(xi, d, f)
            res = max(abs(_circle_series(m, a, p, trunc) - circle_eigenvalue(m, xi * a)) for m in range(mmax + 1))
            results.append((d, f, res))
    passing = [(d, f) for d, f, res in results if res < tol]
    if len(passing) != 1:
        raise AmbiguousConvention(f"{len(passing)} candidate conventions pass: {results}")
    d, f = passing[0]
    phases = tuple(sigma_phase_fit(m, a, xi, trunc, flag=f)[0] for m in range(mmax + 1))
    conv = Conventions(d, f, tuple(results), (a, xi, trunc, mmax), tuple(enumerate(phases)))
    if _RESOLVED is None:
        _RESOLVED = conv
    elif (_RESOLVED.direction, _RESOLVED.meixner_flag) != (d, f):
        raise AmbiguousConvention("resolution disagrees with the cached conventions")
    return conv


def current_conventions() -> Conventions:
    if _RESOLVED is None:
        raise ConventionUnresolved("call resolve_conventions() first")
    return _RESOLVED


def _reset_conventions():
    global _RESOLVED
    _RESOLVED = None


# decision: SCALING-DISK-JACOBIAN
def disk_jacobian(kind, xi) -> float:
    """Extra factor for the disk series: xi for DISK, 1 for CIRCLE.

    lambda_m^D(xi a) = int_0^(xi a) lambda_m^C(y) dy = xi int_0^a lambda_m^C(xi x) dx,
    so integrating the circle series termwise picks up the Jacobian xi.
    """
    return float(xi) if RegionKind(kind) is RegionKind.DISK else 1.0


@functools.lru_cache(maxsize=64)
def _spectrum_values(kind, a, nmax, spec):
    return spectrum(kind, a, nmax, spec).values


def scaled_spectra(kind, mmax, a, xi, trunc=None, conventions=None, spec: QuadratureSpec = DEFAULT_SPEC):
    """Series values for m = 0..mmax at radius xi*a from the spectrum at radius a.

    Returns ``(values, truncations, tail_estimates)`` as numpy arrays.
    """
    conv = conventions or current_conventions()
    params = conv.params(xi)
    kind = RegionKind(kind)
    coeffs = [expansion_coefficients(m, params, trunc) for m in range(mmax + 1)]
    N = max(c.truncation for c in coeffs)
    lam = _spectrum_values(kind, float(a), N, spec)
    jac = disk_jacobian(kind, xi)
    vals = np.array([jac * float(np.dot(c.terms, lam[: c.truncation + 1])) for c in coeffs])
    return (
        vals,
        np.array([c.truncation for c in coeffs]),
        np.array([c.tail_estimate for c in coeffs]),
    )


def scaled_spectrum(kind, m, a, xi, trunc=None, conventions=None, spec: QuadratureSpec = DEFAULT_SPEC) -> float:
    """lambda_m at radius xi*a, computed as the Meixner series over lambda_n(a)."""
    conv = conventions or current_conventions()
    kind = RegionKind(kind)
    coeffs = expansion_coefficients(m, conv.params(xi), trunc)
    lam = _spectrum_values(kind, float(a), coeffs.truncation, spec)
    return disk_jacobian(kind, xi) * float(np.dot(coeffs.terms, lam))


def generator_matrix(size, label=0.5) -> np.ndarray:
    """Matrix of L_2 = (L_+ - L_-)/2 on basis indices 0..size-1.

    Built only from the ladder coefficients mu_+-, so it is independent of
    the Meixner formula.
    """
    G = np.zeros((size, size))
    for k in range(size - 1):
        mp = glbasis.mu_plus(k, label)
        G[k + 1, k] = 0.5 * mp
        G[k, k + 1] = -0.5 * mp
    return G


def dilation_matrix_expm(r, size, pad=None) -> np.ndarray:
    """E = expm(-r L_2), with exp(-r L_2) u_n = sum_k E[k, n] u_k.

    The generator is truncated at ``size + pad`` and the leading block
    returned, so truncation effects stay away from the returned entries.
    """
    if pad is None:
        pad = max(100, size)
    big = expm(-r * generator_matrix(size + pad))
    return big[:size, :size]


def dilation_check(n, a, r, size=None) -> float:
    """Max discrepancy among the routes from radius a to radius e^(r/2) a.

    Compares, at xi = e^(r/2):

    * e^(r/4) u_n(xi a) with [exp(-r L_2) u_n](a) from :func:`dilation_matrix_expm`;
    * e^(3r/4) e_n(xi a) with [exp(r J_2) e_n](a), J_2 in its real form,
      from the same ladder matrix;
    * lambda_n^C(xi a) with sqrt(xi a) u_n(xi a), with
      sigma(n) (xi a)^(3/2) e_n(xi a), and with sqrt(a) [exp(-r L_2) u_n](a).
    """
    xi = math.exp(r / 2.0)
    if size is None:
        size = n + 120
    E = dilation_matrix_expm(r, size)
    # J_2 = (J_+ - J_-)/2 has the same ladder matrix as L_2 but enters with +r
    F = dilation_matrix_expm(-r, size)
    ks = range(size)
    u = np.array([glbasis.u_basis(glbasis.CIRCLE_PI.with_k(k), a) for k in ks])
    e = np.array([glbasis.e_basis(glbasis.CIRCLE_SIGMA.with_m(k), a) for k in ks])
    u_n_xa = glbasis.u_basis(glbasis.CIRCLE_PI.with_k(n), xi * a)
    e_n_xa = glbasis.e_basis(glbasis.CIRCLE_SIGMA.with_m(n), xi * a)
    pi_lhs = math.exp(r / 4.0) * u_n_xa
    pi_rhs = float(E[:, n] @ u)
    sg_lhs = math.exp(3.0 * r / 4.0) * e_n_xa
    sg_rhs = float(F[:, n] @ e)
    lam = circle_eigenvalue(n, xi * a)
    routes = [
        math.sqrt(xi * a) * u_n_xa,
        glbasis.identification_sign(n) * (xi * a) ** 1.5 * e_n_xa,
        math.sqrt(a) * pi_rhs,
    ]
    return max([abs(pi_lhs - pi_rhs), abs(sg_lhs - sg_rhs)] + [abs(lam - v) for v in routes])


def sigma_phase_fit(m, a, xi, trunc=200, flag=MeixnerConvention.ONE_MINUS_INV_C_SQUARED):
    """Fit the phase for the sigma-route functions g_n(a) = a^(3/2) e_n^{(1/2)}(a).

    Uses c = (xi^2 - 1)/(xi^2 + 1) as written. Returns ``(phase, residual)``
    where phase in {+1, -1} minimises
    |g_m(xi a) - phase * sqrt(1-c^2) sum_n c^(m+n) M_n(m,1;.) g_n(a)|.
    """
    p = ScalingParams(xi, Direction.AS_WRITTEN, flag)
    t = expansion_coefficients(m, p, trunc).terms * (-1.0) ** m  # strip the pi phase
    g = lambda n, x: x ** 1.5 * glbasis.e_basis(glbasis.CIRCLE_SIGMA.with_m(n), x)
    series = float(np.dot(t, [g(n, a) for n in range(trunc + 1)]))
    target = g(m, xi * a)
    best = min((+1, -1), key=lambda ph: abs(target - ph * series))
    return best, abs(target - best * series)
