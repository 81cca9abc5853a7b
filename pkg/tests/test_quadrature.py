import math

import numpy as np
import pytest

from gup_entropy.quadrature import (
    QuadratureError,
    QuadResult,
    entropy_integrand,
    gauss_kronrod,
    gauss_legendre,
    integrate,
    integrate_tail_truncated,
)
from gup_entropy.specfun import gegenbauer, gegenbauer_norm

# (integrand, a, b, exact)
SUITE = [
    (lambda x: x, 0.0, 1.0, 0.5),
    (np.sin, 0.0, math.pi, 2.0),
    (np.exp, -1.0, 2.0, math.e**2 - math.exp(-1)),
    (lambda x: 1 / (1 + x * x), -5.0, 5.0, 2 * math.atan(5.0)),
    (np.sqrt, 0.0, 1.0, 2 / 3),
    (lambda x: np.log(x), 1e-300, 1.0, -1.0),
    (lambda x: x**-0.5, 1e-300, 1.0, 2.0),
    (lambda x: np.exp(-x * x), -6.0, 6.0, math.sqrt(math.pi) * math.erf(6.0)),
    (lambda x: np.cos(30 * x), 0.0, 1.0, math.sin(30.0) / 30),
    (lambda x: np.abs(x - 0.3), 0.0, 1.0, 0.045 + 0.245),
    (lambda x: x**8, -1.0, 1.0, 2 / 9),
    (lambda x: 1 / (1e-2 + x * x), -1.0, 1.0, 20 * math.atan(10.0)),
    (lambda x: np.sin(x) ** 2, 0.0, 10 * math.pi, 5 * math.pi),
    (lambda x: np.exp(-x) * np.cos(x), 0.0, 40.0, 0.5 * (1 + math.exp(-40) * (math.sin(40) - math.cos(40)))),
    (lambda x: x * np.log1p(x), 0.0, 1.0, 0.25),
    (lambda x: np.sqrt(1 - x * x), -1.0, 1.0, math.pi / 2),
    (lambda x: 1 / np.cosh(x) ** 2, -20.0, 20.0, 2 * math.tanh(20.0)),
    (lambda x: np.where(x < 0.5, 1.0, 0.0), 0.0, 1.0, 0.5),
    (lambda x: x**3 - 2 * x, -2.0, 3.0, (81 - 16) / 4 - (9 - 4)),
    (lambda x: np.exp(np.sin(x)), 0.0, 2 * math.pi, 2 * math.pi * 1.2660658777520082),
]


def test_gauss_legendre_matches_numpy():
    for n in (2, 7, 16, 40):
        x, w = gauss_legendre(n)
        rx, rw = np.polynomial.legendre.leggauss(n)
        np.testing.assert_allclose(x, rx, atol=1e-15)
        np.testing.assert_allclose(w, rw, atol=1e-15)


def test_kronrod_nodes():
    nodes, kw, gw = gauss_kronrod(7)
    assert len(nodes) == 15
    assert max(nodes) == pytest.approx(0.991455371120812639206854697526329, abs=1e-15)
    assert math.fsum(kw) == pytest.approx(2.0, abs=1e-14)
    assert math.fsum(gw) == pytest.approx(2.0, abs=1e-14)
    # Kronrod rule integrates degree 3n + 1 = 22 exactly
    assert float(np.dot(kw, nodes**22)) == pytest.approx(2 / 23, rel=1e-13)


def test_basic_examples():
    assert integrate(lambda x: x, 0, 1, 1e-12).value == pytest.approx(0.5, abs=1e-12)
    assert integrate(np.sin, 0, math.pi, 1e-10).value == pytest.approx(2.0, abs=1e-10)


def test_weighted_gegenbauer_integral():
    lam = 1.5
    res = integrate(lambda x: (1 - x * x) * gegenbauer(1, lam, x) ** 2, -1, 1, 1e-12)
    assert res.value == pytest.approx(gegenbauer_norm(1, lam), rel=1e-12)


def test_error_estimate_soundness():
    tol = 1e-9
    honest = 0
    for f, a, b, exact in SUITE:
        res = integrate(f, a, b, tol)
        true_err = abs(res.value - exact)
        assert true_err <= tol, (a, b, exact, res)
        assert res.err_estimate >= 0 and res.evaluations > 0
        honest += true_err <= 10 * res.err_estimate
    assert honest >= 0.95 * len(SUITE)


def test_refinement_does_not_hurt():
    for f, a, b, exact in SUITE:
        previous = math.inf
        for tol in (1e-6, 5e-7, 2.5e-7, 1.25e-7):
            err = abs(integrate(f, a, b, tol).value - exact)
            # allow roundoff-level wobble once the answer is converged
            assert err <= previous + 4e-15 * max(1.0, abs(exact))
            previous = err


def test_deterministic():
    f = lambda x: np.exp(-x) * np.sin(7 * x)
    first = integrate(f, 0, 9, 1e-11)
    again = integrate(f, 0, 9, 1e-11)
    assert first == again


def test_panel_limit_raises_with_estimate():
    with pytest.raises(QuadratureError) as info:
        integrate(lambda x: np.sin(1 / x), 1e-9, 1, 1e-14, max_panels=20)
    assert isinstance(info.value.result, QuadResult)


def test_invalid_interval():
    with pytest.raises(ValueError):
        integrate(np.sin, 1.0, 0.0, 1e-8)
    with pytest.raises(ValueError):
        integrate(np.sin, 0.0, 1.0, 0.0)


def test_quadresult_arithmetic():
    a = QuadResult(1.0, 1e-9, 15)
    b = QuadResult(2.0, 2e-9, 30)
    total = a + b
    assert total.value == 3.0 and total.evaluations == 45
    assert total.err_estimate == pytest.approx(3e-9)
    assert a.scaled(-2.0).err_estimate == pytest.approx(2e-9)


@pytest.mark.parametrize("rho, expected", [(0.0, 0.0), (1.0, 0.0), (math.e, math.e), (1e-301, 0.0)])
def test_entropy_integrand(rho, expected):
    assert entropy_integrand(rho) == pytest.approx(expected)


def test_entropy_integrand_vector_and_negative():
    out = entropy_integrand(np.array([0.0, 0.5, 2.0]))
    np.testing.assert_allclose(out, [0.0, 0.5 * math.log(0.5), 2 * math.log(2.0)])
    with pytest.raises(ValueError):
        entropy_integrand(-1e-3)


def test_tail_truncated_gaussian_entropy():
    rho = lambda x: np.exp(-x * x) / math.sqrt(math.pi)
    res = integrate_tail_truncated(lambda x: -entropy_integrand(rho(x)), 1e-10, decay_hint=60.0)
    assert res.value == pytest.approx(0.5 * (1 + math.log(math.pi)), abs=1e-8)


def test_tail_truncated_power_law():
    tol = 1e-6
    res = integrate_tail_truncated(lambda x: (1 + x * x) ** -1.5, tol, decay_hint=3.0)
    assert abs(res.value - 2.0) <= tol
    assert res.err_estimate <= tol


def test_tail_truncated_odd_and_shifted():
    res = integrate_tail_truncated(lambda x: np.exp(-((x - 1.0) ** 2)), 1e-9, decay_hint=60.0, even=False)
    assert res.value == pytest.approx(math.sqrt(math.pi), abs=1e-9)


def test_tail_truncated_rejects_non_decaying():
    with pytest.raises(QuadratureError):
        integrate_tail_truncated(lambda x: np.ones_like(x), 1e-6, decay_hint=2.0, max_radius=1e4)
    with pytest.raises(ValueError):
        integrate_tail_truncated(lambda x: np.exp(-x * x), 1e-6, decay_hint=1.0)
