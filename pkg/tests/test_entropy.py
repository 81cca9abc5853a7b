import math

import numpy as np
import pytest
from scipy.integrate import trapezoid

from conftest import TABLE1, cached_report
from gup_entropy.entropy import (
    BBM_BOUND,
    FIRST_LIMIT,
    GROUND_LIMIT,
    bbm_bound,
    bbm_report,
    density_profiles,
    dispersions,
    ordinary_report,
    sp_analytic,
    sp_numeric,
    x_second_moment_position,
)
from gup_entropy.oscillator import EigenState, GupParams
from gup_entropy.quadrature import integrate
from gup_entropy.transform import GridSpec, position_wave

GRID_BETAS = tuple(float(b) for b in np.geomspace(1e-3, 2.0, 10))


def test_constants():
    assert BBM_BOUND == pytest.approx(2.1447298858494, abs=1e-12)
    assert GROUND_LIMIT == pytest.approx(1.0723649429, abs=1e-10)
    assert FIRST_LIMIT == pytest.approx(1.3427278, abs=1e-7)
    assert bbm_bound(1.0) == BBM_BOUND
    assert bbm_bound(2.0) == pytest.approx(BBM_BOUND + math.log(2.0))


@pytest.mark.parametrize("key", sorted(TABLE1))
def test_reference_table(key):
    n, beta = key
    sx, sp = TABLE1[key]
    report = cached_report(beta, n)
    assert report.S_x == pytest.approx(sx, abs=2e-3)
    assert report.S_p == pytest.approx(sp, abs=2e-3)
    assert report.sum > BBM_BOUND
    assert report.bbm_holds and report.gup_holds and report.min_length_holds


@pytest.mark.parametrize("beta", [0.1, 0.5, 1.0, 1.7])
@pytest.mark.parametrize("n", [0, 1])
def test_analytic_momentum_entropy(beta, n):
    params = GupParams(beta)
    numeric = sp_numeric(EigenState(params, n))
    assert numeric.value == pytest.approx(sp_analytic(params, n), abs=1e-8)


def test_analytic_examples():
    assert sp_analytic(GupParams(0.5), 0) == pytest.approx(0.85220, abs=1e-4)
    assert sp_analytic(GupParams(1e-9), 0) == pytest.approx(GROUND_LIMIT, abs=1e-6)
    assert sp_analytic(GupParams(1e-9), 1) == pytest.approx(FIRST_LIMIT, abs=1e-6)
    with pytest.raises(NotImplementedError):
        sp_analytic(GupParams(0.5), 2)


@pytest.mark.parametrize("n, limit", [(0, GROUND_LIMIT), (1, FIRST_LIMIT)])
def test_small_beta_limits(n, limit):
    report = cached_report(1e-6, n)
    assert report.S_x == pytest.approx(limit, abs=1e-3)
    assert report.S_p == pytest.approx(limit, abs=1e-3)


def test_ground_state_saturates_bound_from_above():
    report = cached_report(1e-6, 0)
    margin = report.sum - report.bbm_bound
    assert -(report.err_Sx + report.err_Sp) <= margin < 1e-3
    assert report.bbm_holds and report.gup_holds


@pytest.mark.parametrize("n", [0, 1])
def test_monotone_in_beta(n):
    reports = [cached_report(b, n) for b in (0.1, 0.5, 1.0)]
    sx = [r.S_x for r in reports]
    sp = [r.S_p for r in reports]
    assert sx == sorted(sx) and len(set(sx)) == 3
    assert sp == sorted(sp, reverse=True) and len(set(sp)) == 3


@pytest.mark.parametrize("beta", GRID_BETAS)
@pytest.mark.parametrize("n", [0, 1, 2])
def test_property_grid(beta, n):
    r = cached_report(beta, n)
    assert r.sum == pytest.approx(r.S_x + r.S_p, abs=0)
    assert r.bbm_holds
    assert r.gup_holds
    assert r.min_length_holds
    assert r.delta_X >= math.sqrt(beta) - 1e-12
    assert r.numeric_only == (n >= 2)


def test_report_with_units():
    params = GupParams(0.4, m=1.3, omega=0.8, hbar=1.7)
    r = bbm_report(params, 1)
    assert r.bbm_bound == pytest.approx(1 + math.log(math.pi * 1.7))
    assert r.bbm_holds and r.gup_holds and r.min_length_holds
    assert r.S_p == pytest.approx(r.S_p_analytic, abs=1e-8)
    record = r.to_dict()
    assert record["hbar"] == 1.7 and record["n"] == 1


def test_ordinary_report():
    r0 = ordinary_report(0)
    assert r0.S_x == pytest.approx(GROUND_LIMIT, abs=1e-8)
    assert r0.S_p == pytest.approx(GROUND_LIMIT, abs=1e-8)
    assert r0.delta_X == pytest.approx(1 / math.sqrt(2))
    r1 = ordinary_report(1)
    assert r1.S_x == pytest.approx(FIRST_LIMIT, abs=1e-8)
    # m = 4 halves the length scale: entropies shift by -ln 2 and +ln 2
    scaled = ordinary_report(0, m=4.0)
    assert scaled.S_x == pytest.approx(GROUND_LIMIT - math.log(2.0), abs=1e-8)
    assert scaled.S_p == pytest.approx(GROUND_LIMIT + math.log(2.0), abs=1e-8)


# ---------------------------------------------------------------------------


def test_dispersions_small_beta():
    d = dispersions(EigenState(GupParams(1e-6), 0))
    assert d.delta_X == pytest.approx(1 / math.sqrt(2), abs=1e-3)
    assert d.delta_P == pytest.approx(1 / math.sqrt(2), abs=1e-3)


@pytest.mark.parametrize("beta", [0.1, 0.5])
@pytest.mark.parametrize("n", [0, 1])
def test_position_second_moment_cross_check(beta, n):
    state = EigenState(GupParams(beta), n)
    d = dispersions(state)
    direct = x_second_moment_position(position_wave(state), 1e-7)
    assert direct.value == pytest.approx(d.delta_X**2, abs=1e-6)


@pytest.mark.parametrize("beta", [1e-6, 0.01, 0.5, 2.0])
@pytest.mark.parametrize("n", [0, 1, 3])
def test_virial_identity(beta, n):
    # for this Hamiltonian <H> = <P^2>/2 + <X^2>/2 = E_n (m = omega = 1)
    state = EigenState(GupParams(beta), n)
    d = dispersions(state)
    assert 0.5 * (d.delta_X**2 + d.delta_P**2) == pytest.approx(state.energy, rel=1e-10)


def test_ground_state_saturates_dispersion_relation():
    for beta in (0.1, 1.0):
        r = cached_report(beta, 0)
        assert r.gup_lhs == pytest.approx(r.gup_rhs, rel=1e-9)


def test_density_profiles():
    state = EigenState(GupParams(0.5), 1)
    profiles = density_profiles(state, None, GridSpec(-10.0, 10.0, 401))
    np.testing.assert_allclose(profiles.rho_x, profiles.rho_x[::-1], atol=1e-15)
    np.testing.assert_allclose(profiles.rho_s_p, profiles.rho_s_p[::-1], atol=1e-15)
    zero = profiles.rho_p == 0
    assert np.all(profiles.rho_s_p[zero] == 0)
    # integrating the exported momentum samples recovers S_p
    s_p = -trapezoid(profiles.rho_s_p, profiles.p)
    assert s_p == pytest.approx(sp_analytic(state.params, 1), abs=1e-4)


def test_density_profiles_custom_momentum_grid():
    state = EigenState(GupParams(0.5), 0)
    profiles = density_profiles(state, None, GridSpec(-3.0, 3.0, 11), GridSpec(-1.0, 1.0, 5))
    np.testing.assert_allclose(profiles.p, [-1.0, -0.5, 0.0, 0.5, 1.0])
    np.testing.assert_allclose(profiles.rho_p, state(profiles.p) ** 2)
    np.testing.assert_allclose(profiles.rho_s_p, profiles.rho_p * np.log(profiles.rho_p))


def test_sp_numeric_direct_integral():
    state = EigenState(GupParams(0.8), 2)
    pm = state.params.p_max
    direct = integrate(lambda p: -state(p) ** 2 * np.log(np.maximum(state(p) ** 2, 1e-300)), -pm, pm, 1e-11)
    assert sp_numeric(state).value == pytest.approx(direct.value, abs=1e-9)
