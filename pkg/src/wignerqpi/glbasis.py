"""Gauss-Laguerre bases of the su(1,1) positive discrete series.

Two differential-operator realizations are provided:

* pi: basis u_{k,l}^{(M)}(r) on L^2([0, inf), dr), generators L_0, L_+-,
  representation label d = (l + 3/2) / 2;
* sigma: basis e_m^{(k)}(r) on L^2([0, inf), r^w dr), generators J_0, J_1,
  J_2, J_+-, representation label k.

Basis functions are held as :class:`GLExpr`, finite sums of terms
``coef * r**s * exp(-beta r**w) * L_n^alpha(gamma r**w)``. That family is
closed under d/dr (product rule plus d/dx L_n^alpha = -L_{n-1}^{alpha+1})
and under multiplication by powers of r, so every generator, and every
product of generators, is applied exactly rather than by finite
differences.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .polyfn import laguerre
from .spectra import circle_eigenvalue

__all__ = [
    "GLExpr",
    "PiBasisParams",
    "SigmaBasisParams",
    "PiGenerator",
    "SigmaGenerator",
    "Realization",
    "mu_minus",
    "mu_plus",
    "u_expr",
    "e_expr",
    "u_basis",
    "e_basis",
    "apply_pi_generator",
    "apply_sigma_generator",
    "casimir",
    "casimir_check",
    "eigen_residuals",
    "identification_sign",
    "identify_circle_spectrum",
    "CIRCLE_PI",
    "CIRCLE_SIGMA",
    "SAMPLE_R",
]

# decision: GL-SAMPLE-POINTS
SAMPLE_R = (0.2, 0.5, 1.0, 2.0, 4.0)

_KEY_DIGITS = 12


def _key(s, n, alpha):
    return (round(s, _KEY_DIGITS), n, round(alpha, _KEY_DIGITS))


class GLExpr:
    """Sum of terms coef * r^s * exp(-beta r^w) * L_n^alpha(gamma r^w).

    ``beta``, ``w`` and ``gamma`` are shared by all terms. Terms are stored
    in a dict keyed by ``(s, n, alpha)``.
    """

    __slots__ = ("beta", "w", "gamma", "terms")

    def __init__(self, beta, w, gamma, terms=None):
        self.beta = float(beta)
        self.w = float(w)
        self.gamma = float(gamma)
        self.terms = {}
        for (s, n, alpha), coef in (terms or {}).items():
            self._add(s, n, alpha, coef)

    def _add(self, s, n, alpha, coef):
        if coef == 0.0 or n < 0:
            return
        k = _key(s, n, alpha)
        total = self.terms.get(k, 0.0) + coef
        if total == 0.0:
            self.terms.pop(k, None)
        else:
            self.terms[k] = total

    def _empty(self):
        return GLExpr(self.beta, self.w, self.gamma)

    def _check(self, other):
        if (self.beta, self.w, self.gamma) != (other.beta, other.w, other.gamma):
            raise ValueError("GLExpr parameters differ")

    @classmethod
    def zero_like(cls, other):
        return other._empty()

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        self._check(other)
        out = self._empty()
        for src in (self, other):
            for (s, n, alpha), coef in src.terms.items():
                out._add(s, n, alpha, coef)
        return out

    def __sub__(self, other):
        return self + other * -1.0

    def __mul__(self, c):
        out = self._empty()
        if c != 0.0:
            for (s, n, alpha), coef in self.terms.items():
                out._add(s, n, alpha, coef * c)
        return out

    __rmul__ = __mul__

    def mul_power(self, p):
        """Multiply by r**p."""
        out = self._empty()
        for (s, n, alpha), coef in self.terms.items():
            out._add(s + p, n, alpha, coef)
        return out

    def diff(self):
        """d/dr, exact."""
        out = self._empty()
        bw = self.beta * self.w
        gw = self.gamma * self.w
        shift = self.w - 1.0
        for (s, n, alpha), coef in self.terms.items():
            if s != 0.0:
                out._add(s - 1.0, n, alpha, coef * s)
            if bw != 0.0:
                out._add(s + shift, n, alpha, -coef * bw)
            if n >= 1 and gw != 0.0:
                out._add(s + shift, n - 1, alpha + 1.0, -coef * gw)
        return out

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        rw = r ** self.w
        gauss = np.exp(-self.beta * rw)
        total = np.zeros_like(r)
        for (s, n, alpha), coef in self.terms.items():
            total = total + coef * r ** s * laguerre(n, alpha, self.gamma * rw)
        out = total * gauss
        return float(out) if out.ndim == 0 else out

    def __repr__(self):
        return f"GLExpr(beta={self.beta}, w={self.w}, gamma={self.gamma}, {len(self.terms)} terms)"


def mu_minus(n, k):
    """Lowering coefficient sqrt(n (2k + n - 1)); zero at n = 0."""
    return math.sqrt(n * (2.0 * k + n - 1.0)) if n > 0 else 0.0


def mu_plus(n, k):
    """Raising coefficient mu_-(n + 1)."""
    return mu_minus(n + 1, k)


@dataclass(frozen=True)
class PiBasisParams:
    M: float
    k: int
    l: float

    def __post_init__(self):
        # decision: PI-M-POSITIVE
        if not self.M > 0:
            raise ValueError("M must be positive (the basis uses sqrt(M))")
        if self.k < 0 or int(self.k) != self.k:
            raise ValueError("k must be a nonnegative integer")
        if not self.k + self.l + 1.5 > 0:
            raise ValueError("need k + l + 3/2 > 0")

    @property
    def d(self):
        return 0.5 * (self.l + 1.5)

    def with_k(self, k):
        return PiBasisParams(self.M, k, self.l)


@dataclass(frozen=True)
class SigmaBasisParams:
    w: float
    k: float
    m: int

    def __post_init__(self):
        if not self.w >= 1:
            raise ValueError("w must be >= 1")
        if not self.k > 0:
            raise ValueError("k must be positive")
        if self.m < 0 or int(self.m) != self.m:
            raise ValueError("m must be a nonnegative integer")

    @property
    def W(self):
        return (self.w + 1.0) / (2.0 * self.w)

    @property
    def xi(self):
        W = self.W
        return self.k * (self.k - 1.0) - W * (W - 1.0)

    def with_m(self, m):
        return SigmaBasisParams(self.w, self.k, m)


# parameter sets used for the circle-operator identification
CIRCLE_PI = PiBasisParams(M=2.0, k=0, l=-0.5)
CIRCLE_SIGMA = SigmaBasisParams(w=2.0, k=0.5, m=0)


def u_expr(params: PiBasisParams) -> GLExpr:
    """u_{k,l}^{(M)} as a GLExpr.

    u = (-1)^k (2 sqrt(M) k! / Gamma(k+l+3/2))^(1/2) (sqrt(M) r)^(l+1)
        exp(-M r^2 / 2) L_k^{l+1/2}(M r^2)

    Orthonormal on (0, inf) with measure dr.
    """
    M, k, l = params.M, int(params.k), params.l
    log_norm = 0.5 * (math.log(2.0 * math.sqrt(M)) + math.lgamma(k + 1) - math.lgamma(k + l + 1.5))
    coef = (-1.0) ** k * math.exp(log_norm) * math.sqrt(M) ** (l + 1.0)
    return GLExpr(M / 2.0, 2.0, M, {(l + 1.0, k, l + 0.5): coef})


def e_expr(params: SigmaBasisParams) -> GLExpr:
    """e_m^{(k)} as a GLExpr.

    e = 2^W sqrt(w m! / Gamma(2k+m)) exp(-r^w) (2 r^w)^(k-W) L_m^{(2k-1)}(2 r^w)

    Orthonormal on (0, inf) with measure r^w dr.
    """
    w, k, m, W = params.w, params.k, int(params.m), params.W
    log_norm = 0.5 * (math.log(w) + math.lgamma(m + 1) - math.lgamma(2.0 * k + m))
    coef = 2.0 ** W * math.exp(log_norm) * 2.0 ** (k - W)
    return GLExpr(1.0, w, 2.0, {(w * (k - W), m, 2.0 * k - 1.0): coef})


def u_basis(params: PiBasisParams, r):
    """Evaluate u_{k,l}^{(M)}(r)."""
    return u_expr(params)(r)


def e_basis(params: SigmaBasisParams, r):
    """Evaluate e_m^{(k)}(r)."""
    return e_expr(params)(r)


class PiGenerator(enum.Enum):
    L0 = "L0"
    L1 = "L1"
    L2 = "L2"
    LPLUS = "L+"
    LMINUS = "L-"


class SigmaGenerator(enum.Enum):
    J0 = "J0"
    J1 = "J1"
    J2 = "J2"
    JPLUS = "J+"
    JMINUS = "J-"


class Realization(enum.Enum):
    PI = "pi"
    SIGMA = "sigma"


def _pi_parts(f: GLExpr, M, l):
    # kinetic part (1/4M)[-f'' + l(l+1) f / r^2], oscillator part (M/4) r^2 f,
    # dilation part (1/2)(r f' + f/2)
    d1 = f.diff()
    kin = (d1.diff() * -1.0 + f.mul_power(-2.0) * (l * (l + 1.0))) * (1.0 / (4.0 * M))
    osc = f.mul_power(2.0) * (M / 4.0)
    dil = (d1.mul_power(1.0) + f * 0.5) * 0.5
    return kin, osc, dil


def apply_pi_generator(which, params: PiBasisParams, f: GLExpr | None = None) -> GLExpr:
    """Apply a pi-realization generator to ``f`` (default: the basis element).

    L_0 = (1/4M)[-d^2/dr^2 + l(l+1)/r^2] + (M/4) r^2
    L_+- = -(1/4M)[-d^2/dr^2 + l(l+1)/r^2] + (M/4) r^2 -+ (1/2)(r d/dr + 1/2)
    L_1 = (L_+ + L_-)/2,  L_2 = (L_+ - L_-)/2 = -(1/2)(r d/dr + 1/2)
    """
    which = PiGenerator(which)
    if f is None:
        f = u_expr(params)
    kin, osc, dil = _pi_parts(f, params.M, params.l)
    if which is PiGenerator.L0:
        return kin + osc
    if which is PiGenerator.L1:
        return osc - kin
    if which is PiGenerator.L2:
        return dil * -1.0
    if which is PiGenerator.LPLUS:
        return osc - kin - dil
    return osc - kin + dil


def _sigma_parts(f: GLExpr, w, xi):
    # P f = w^-2 r^(2-w) p_r^2 f with p_r^2 = -(d^2/dr^2 + (2/r) d/dr)
    d1 = f.diff()
    kin = (d1.diff() + d1.mul_power(-1.0) * 2.0).mul_power(2.0 - w) * (-1.0 / (w * w))
    pot = f.mul_power(-w) * xi
    osc = f.mul_power(w)
    # J_2 in the real form (1/w)(r d/dr + (w+1)/2)
    dil = (d1.mul_power(1.0) + f * (0.5 * (w + 1.0))) * (1.0 / w)
    return kin, pot, osc, dil


def apply_sigma_generator(which, params: SigmaBasisParams, f: GLExpr | None = None) -> GLExpr:
    """Apply a sigma-realization generator to ``f`` (default: the basis element).

    J_0 = (1/2)(w^-2 r^(2-w) p_r^2 + xi r^-w + r^w)
    J_1 = (1/2)(w^-2 r^(2-w) p_r^2 + xi r^-w - r^w)
    J_2 = (1/w)(r d/dr + (w+1)/2), the real operator i*w^-1(r p_r - (i/2)(w-1));
          for w = 2 this is (1/2)(a d/da + 3/2)
    J_+- = J_1 +- J_2

    p_r = -i(d/dr + 1/r) and xi = k(k-1) - W(W-1). The xi r^-w term enters
    J_1 with a plus sign; with a minus sign J_1 +- J_2 would not step the
    basis (checked by :func:`eigen_residuals`).
    """
    which = SigmaGenerator(which)
    if f is None:
        f = e_expr(params)
    kin, pot, osc, dil = _sigma_parts(f, params.w, params.xi)
    if which is SigmaGenerator.J0:
        return (kin + pot + osc) * 0.5
    # decision: SIGMA-J1-SIGN
    j1 = (kin + pot - osc) * 0.5
    if which is SigmaGenerator.J1:
        return j1
    if which is SigmaGenerator.J2:
        return dil
    if which is SigmaGenerator.JPLUS:
        return j1 + dil
    return j1 - dil


def casimir(realization, params, f: GLExpr | None = None) -> GLExpr:
    """C f = S_0^2 f - (1/2)(S_+ S_- + S_- S_+) f in the chosen realization."""
    realization = Realization(realization)
    if realization is Realization.PI:
        app, g0, gp, gm = apply_pi_generator, PiGenerator.L0, PiGenerator.LPLUS, PiGenerator.LMINUS
        f = u_expr(params) if f is None else f
    else:
        app, g0, gp, gm = apply_sigma_generator, SigmaGenerator.J0, SigmaGenerator.JPLUS, SigmaGenerator.JMINUS
        f = e_expr(params) if f is None else f
    s00 = app(g0, params, app(g0, params, f))
    pm = app(gp, params, app(gm, params, f))
    mp = app(gm, params, app(gp, params, f))
    return s00 - (pm + mp) * 0.5


def _label(realization, params):
    return params.d if Realization(realization) is Realization.PI else params.k


def casimir_check(realization, params, n=None, r=SAMPLE_R) -> float:
    """Max |C f - label(label-1) f| over the sample radii for basis element n."""
    realization = Realization(realization)
    if realization is Realization.PI:
        params = params if n is None else params.with_k(n)
        f = u_expr(params)
    else:
        params = params if n is None else params.with_m(n)
        f = e_expr(params)
    lab = _label(realization, params)
    resid = casimir(realization, params, f) - f * (lab * (lab - 1.0))
    return float(np.max(np.abs(resid(np.asarray(r)))))


def eigen_residuals(realization, params, n, r=SAMPLE_R) -> dict:
    """Residuals of S_0 f_n = (label+n) f_n and S_+- f_n = mu_+- f_{n+-1}.

    Returns a dict with keys ``"S0"``, ``"S+"``, ``"S-"``, ``"S+S-"``,
    ``"casimir"``; each value is the max absolute residual over ``r``.
    """
    realization = Realization(realization)
    r = np.asarray(r, dtype=float)
    if realization is Realization.PI:
        p = params.with_k(n)
        basis = lambda j: u_expr(p.with_k(j))
        app = apply_pi_generator
        g0, gp, gm = PiGenerator.L0, PiGenerator.LPLUS, PiGenerator.LMINUS
    else:
        p = params.with_m(n)
        basis = lambda j: e_expr(p.with_m(j))
        app = apply_sigma_generator
        g0, gp, gm = SigmaGenerator.J0, SigmaGenerator.JPLUS, SigmaGenerator.JMINUS
    lab = _label(realization, p)
    f = basis(n)
    out = {}
    out["S0"] = app(g0, p, f) - f * (lab + n)
    out["S+"] = app(gp, p, f) - basis(n + 1) * mu_plus(n, lab)
    lower = app(gm, p, f)
    out["S-"] = lower if n == 0 else lower - basis(n - 1) * mu_minus(n, lab)
    out["S+S-"] = app(gm, p, app(gp, p, f)) - f * (mu_minus(n + 1, lab) * mu_plus(n, lab))
    out["casimir"] = casimir(realization, p, f) - f * (lab * (lab - 1.0))
    return {name: float(np.max(np.abs(g(r)))) for name, g in out.items()}


# decision: GL-SIGN-MAP
def identification_sign(n) -> int:
    """sigma(n) with a^(3/2) e_n^{(1/2)}(a) = sigma(n) * lambda_n^C(a).

    sqrt(a) u_{n,-1/2}^{(2)}(a) equals lambda_n^C(a) exactly; the sigma basis
    has no (-1)^n prefactor, so it differs by sigma(n) = (-1)^n.
    """
    return -1 if n % 2 else 1


def identify_circle_spectrum(n, a):
    """(lambda_n^C(a), a sqrt(a) e_n^{(1/2)}(a), sqrt(a) u_{n,-1/2}^{(2)}(a)).

    The three agree in absolute value; see :func:`identification_sign`
    for the relative sign.
    """
    if not a > 0:
        raise ValueError("a must be positive")
    lam = circle_eigenvalue(n, a)
    via_e = a * math.sqrt(a) * e_basis(CIRCLE_SIGMA.with_m(n), a)
    via_u = math.sqrt(a) * u_basis(CIRCLE_PI.with_k(n), a)
    return lam, via_e, via_u
