import io
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from wignerqpi.spectra import FockWeights, disk_eigenvalue, qpi, spectrum
from wignerqpi.wigner import (
    WIGNER_BOUND,
    BoundViolation,
    HermiteState,
    WignerGrid,
    bound_scan,
    fock_wigner,
    grid_axis,
    pure_state_wigner,
    qpi_oracle_disk,
    qpi_oracle_disk_result,
    wigner,
    wigner_grid,
)


def test_origin_parity():
    for n in range(8):
        assert fock_wigner(n, 0.0, 0.0) == pytest.approx((-1) ** n / math.pi, abs=1e-15)


def test_hermite_state_validation():
    with pytest.raises(ValueError):
        HermiteState([0.6, 0.6])
    with pytest.raises(ValueError):
        HermiteState([])
    s = HermiteState.normalized([1.0, 2.0, 2.0])
    assert float(s.coeffs @ s.coeffs) == pytest.approx(1.0)
    assert np.allclose(s.populations().p, [1 / 9, 4 / 9, 4 / 9])


def test_series_matches_defining_integral():
    state = HermiteState.normalized([0.3, -0.5, 0.8, 0.1])
    for q, p in [(0.0, 0.0), (0.7, -0.4), (-1.2, 1.5), (2.0, 0.3)]:
        assert wigner(state, q, p) == pytest.approx(pure_state_wigner(state, q, p), abs=1e-12)


def test_fock_series_matches_defining_integral():
    for n in (0, 1, 3, 6):
        for q, p in [(0.2, 0.1), (1.0, -1.3)]:
            assert fock_wigner(n, q, p) == pytest.approx(pure_state_wigner(n, q, p), abs=1e-12)


def test_fock_weights_are_mixtures():
    w = FockWeights([0.2, 0.5, 0.3])
    q, p = np.array([0.1, 0.9]), np.array([-0.4, 1.1])
    want = 0.2 * fock_wigner(0, q, p) + 0.5 * fock_wigner(1, q, p) + 0.3 * fock_wigner(2, q, p)
    assert np.allclose(wigner(w, q, p), want)


@pytest.mark.parametrize("n", [0, 2, 5])
def test_rotational_invariance_of_fock_states(n):
    rho = np.linspace(0, 3, 7)
    base = fock_wigner(n, rho, 0 * rho)
    for theta in (0.3, 1.7, 4.0):
        assert np.allclose(fock_wigner(n, rho * math.cos(theta), rho * math.sin(theta)), base, atol=1e-15)


def test_superposition_is_not_rotation_invariant():
    state = HermiteState.normalized([1.0, 1.0])
    assert abs(wigner(state, 0.8, 0.0) - wigner(state, -0.8, 0.0)) > 1e-2


@pytest.mark.parametrize("coeffs", [[1.0], [0.0, 1.0], [0.6, 0.0, -0.8], [0.5, 0.5, 0.5, 0.5]])
def test_normalization(coeffs):
    state = HermiteState.normalized(coeffs)
    x = np.linspace(-9, 9, 361)
    Q, P = np.meshgrid(x, x, indexing="ij")
    total = integrate.simpson(integrate.simpson(wigner(state, Q, P), x=x, axis=1), x=x)
    assert total == pytest.approx(1.0, abs=1e-10)


def test_marginal_is_position_density():
    state = HermiteState.normalized([0.4, -0.7, 0.2, 0.5])
    p = np.linspace(-10, 10, 801)
    for q in (0.0, 0.9, -1.4):
        marginal = integrate.simpson(wigner(state, np.full_like(p, q), p), x=p)
        assert marginal == pytest.approx(float(state.psi(q)) ** 2, abs=1e-10)


@pytest.mark.parametrize("n", range(4))
@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
def test_disk_oracle_cartesian_route(n, a):
    # independent of the polar factorization used by the library
    val, _ = integrate.dblquad(
        lambda p, q: fock_wigner(n, q, p),
        -a,
        a,
        lambda q: -math.sqrt(max(a * a - q * q, 0.0)),
        lambda q: math.sqrt(max(a * a - q * q, 0.0)),
        epsabs=1e-12,
        epsrel=1e-12,
    )
    assert val == pytest.approx(disk_eigenvalue(n, a), abs=1e-9)


@pytest.mark.slow
@pytest.mark.parametrize("n", [0, 1, 2])
def test_disk_oracle_from_wavefunction(n):
    # W from the defining integral, disk integral by fixed Gauss-Legendre x trapezoid
    a = 1.0
    x, w = np.polynomial.legendre.leggauss(24)
    r = 0.5 * a * (x + 1)
    wr = 0.5 * a * w
    thetas = np.linspace(0, 2 * math.pi, 6, endpoint=False) + 0.1
    state = HermiteState.fock(n)
    total = 0.0
    for ri, wi in zip(r, wr):
        ring = np.mean([pure_state_wigner(state, ri * math.cos(t), ri * math.sin(t)) for t in thetas])
        total += wi * ri * 2 * math.pi * ring
    assert total == pytest.approx(disk_eigenvalue(n, a), abs=1e-9)


def test_oracle_result_has_error_estimate():
    res = qpi_oracle_disk_result(2, 1.0)
    assert 0 <= res.error_estimate < 1e-9
    assert res.subdivisions_used > 0


def test_oracle_on_mixture_and_superposition():
    a = 1.0
    sp = spectrum("disk", a, 3)
    w = FockWeights([0.1, 0.2, 0.3, 0.4])
    assert qpi_oracle_disk(w, a) == pytest.approx(qpi(w, sp), abs=1e-10)
    # off-diagonal terms integrate to zero over a centred disk
    state = HermiteState.normalized([0.3, -0.5, 0.8, 0.1])
    assert qpi_oracle_disk(state, a) == pytest.approx(qpi(state.populations(), sp), abs=1e-9)


@settings(max_examples=25, deadline=None)
@given(c=st.lists(st.floats(-1, 1), min_size=4, max_size=4).filter(lambda v: sum(x * x for x in v) > 1e-2))
def test_bound_on_random_states(c):
    state = HermiteState.normalized(c)
    g = wigner_grid(state, (-4.0, 4.0), (-4.0, 4.0), 0.1)
    assert g.within_bound()


def test_bound_attained_only_at_extremes():
    lo, hi = bound_scan(0, (-2, 2), (-2, 2), 0.5)
    assert hi == pytest.approx(WIGNER_BOUND, abs=1e-15)
    lo, hi = bound_scan(1, (-2, 2), (-2, 2), 0.5)
    assert lo == pytest.approx(-WIGNER_BOUND, abs=1e-15)


def test_bound_scan_raises_on_violation():
    fake = WignerGrid(np.array([0.0]), np.array([0.0]), np.array([[0.5]]))
    with pytest.raises(BoundViolation):
        bound_scan(fake)


def test_grid_axis():
    assert np.allclose(grid_axis(-1, 1, 0.5), [-1, -0.5, 0, 0.5, 1])
    assert len(grid_axis(-5, 5, 0.05)) == 201
    assert np.allclose(grid_axis(0.3, 0.3, 0.1), [0.3])
    with pytest.raises(ValueError):
        grid_axis(1, 0, 0.1)
    with pytest.raises(ValueError):
        grid_axis(0, 1, 0.0)


def test_grid_csv():
    g = wigner_grid(1, (-1, 1), (0, 0), 1.0)
    text = g.to_csv()
    lines = text.split("\n")
    assert lines[0] == "q,p,W"
    assert lines[2] == "0,0,-0.318309886184"
    assert "\r" not in text and text.endswith("\n")
    buf = io.StringIO()
    g.to_csv(buf)
    assert buf.getvalue() == text
