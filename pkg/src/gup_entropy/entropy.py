"""Shannon entropies, dispersions and the entropic uncertainty check.

Entropies are in nats. Momentum integrals run over the (effective) band and
use parity, position integrals run over the real line with a certified
power-law tail.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from . import specfun
from .oscillator import (
    EigenState,
    GupParams,
    ordinary_phi,
    ordinary_psi,
    phi_eval,
)
from .quadrature import QuadResult, entropy_integrand, integrate, integrate_tail_truncated
from .transform import GridSpec, PositionWave, position_wave

BBM_BOUND = 1.0 + math.log(math.pi)
# S_p = S_x in the undeformed limit (m = hbar = omega = 1)
GROUND_LIMIT = 0.5 * (1.0 + math.log(math.pi))
FIRST_LIMIT = 0.5 * math.log(math.pi) + math.log(2.0) + specfun.EULER_GAMMA - 0.5


def bbm_bound(hbar: float = 1.0) -> float:
    """Lower bound 1 + ln(pi hbar) on S_x + S_p; reduces to 1 + ln pi at hbar = 1."""
    return 1.0 + math.log(math.pi * hbar)


def _half_band(state: EigenState) -> float:
    return state.support()


def _band_integral(state: EigenState, g, tol: float) -> QuadResult:
    """2 * int_0^{p_eff} g(p) dp for an even integrand ``g``."""
    return integrate(g, 0.0, _half_band(state), tol / 2).scaled(2.0)


# ---------------------------------------------------------------------------
# momentum space


def sp_numeric(state: EigenState, tol: float = 1e-12) -> QuadResult:
    """S_p = -int |phi|^2 ln |phi|^2 dp over the band, by quadrature."""

    def minus_rho_log_rho(p):
        log_rho = state.log_density(p)
        with np.errstate(invalid="ignore"):
            out = -np.exp(log_rho) * log_rho
        return np.where(np.isfinite(log_rho), out, 0.0)

    return _band_integral(state, minus_rho_log_rho, tol)


def sp_analytic(params: GupParams, n: int) -> float:
    """Closed-form S_p for the two lowest levels.

    The harmonic numbers appear at non-integer index and are taken as
    H_x = psi(x + 1) + gamma.
    """
    lam = params.lam
    log_sqrt_pi = 0.5 * math.log(math.pi)
    half_beta = 0.5 * math.log(params.beta)
    # H_a - H_b = psi(a + 1) - psi(b + 1); differenced directly to keep
    # precision when lam is large (small beta)
    if n == 0:
        return (
            lam * specfun.digamma_diff(lam + 0.5, 0.5)
            + log_sqrt_pi
            - (half_beta + math.log(lam) - specfun.ln_gamma_ratio(lam, 0.5))
        )
    if n == 1:
        return (
            (1.0 + lam) * specfun.digamma_diff(lam + 0.5, 1.5)
            + specfun.harmonic(lam - 0.5)
            + log_sqrt_pi
            - 2.0
            - (half_beta + specfun.ln_gamma_ratio(lam + 0.5, 1.5) - math.log(2.0))
        )
    raise NotImplementedError("analytic S_p is available for n = 0 and n = 1 only")


# ---------------------------------------------------------------------------
# position space


def _initial_radius(params: GupParams) -> float:
    return 10.0 * max(1.0, math.sqrt(params.hbar / (params.m * params.omega)))


def sx_numeric(wave: PositionWave, tol: float = 1e-8) -> QuadResult:
    """S_x = -int |psi|^2 ln |psi|^2 dx with a certified tail beyond the cut-off."""
    state = wave.state

    def minus_rho_log_rho(x):
        return -entropy_integrand(np.abs(wave(x)) ** 2)

    return integrate_tail_truncated(
        minus_rho_log_rho,
        tol,
        decay_hint=2.0 * wave.decay_exponent,
        even=True,
        x0=_initial_radius(state.params),
    )


def norm_x(wave: PositionWave, tol: float = 1e-8) -> QuadResult:
    """int |psi|^2 dx (Parseval check)."""
    return integrate_tail_truncated(
        lambda x: np.abs(wave(x)) ** 2,
        tol,
        decay_hint=2.0 * wave.decay_exponent,
        even=True,
        x0=_initial_radius(wave.state.params),
    )


def x_second_moment_position(wave: PositionWave, tol: float = 1e-8) -> QuadResult:
    """<X^2> = int x^2 |psi|^2 dx in position space.

    The integrand only decays like |x|^(-2 lam), so this is slow for lam near 1.
    :func:`dispersions` uses the momentum-space form instead.
    """
    d = 2.0 * wave.decay_exponent - 2.0
    if d <= 1.0:
        raise ValueError("second moment integrand is not integrable with a power tail")
    return integrate_tail_truncated(
        lambda x: x * x * np.abs(wave(x)) ** 2,
        tol,
        decay_hint=d,
        even=True,
        x0=_initial_radius(wave.state.params),
    )


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DensityProfiles:
    x: np.ndarray
    rho_x: np.ndarray
    rho_s_x: np.ndarray
    p: np.ndarray
    rho_p: np.ndarray
    rho_s_p: np.ndarray


def density_profiles(
    state: EigenState,
    wave: PositionWave | None,
    grid: GridSpec,
    p_grid: GridSpec | None = None,
) -> DensityProfiles:
    """Sampled densities and entropy densities rho ln rho in both spaces.

    The momentum grid defaults to the full band with the same point count.
    """
    if wave is None:
        wave = position_wave(state)
    if p_grid is None:
        pm = state.params.p_max
        p_grid = GridSpec(-pm, pm, grid.count)
    x = grid.points()
    p = p_grid.points()
    rho_x = np.abs(np.asarray(wave(x))) ** 2
    rho_p = np.asarray(phi_eval(state, p)) ** 2
    return DensityProfiles(x, rho_x, entropy_integrand(rho_x), p, rho_p, entropy_integrand(rho_p))


@dataclass(frozen=True)
class Dispersions:
    delta_X: float
    delta_P: float
    err_X: float
    err_P: float


def dispersions(state: EigenState, wave: PositionWave | None = None, tol: float = 1e-10) -> Dispersions:
    """Position and momentum spreads; first moments vanish by parity.

    <P^2> = int tan^2(sqrt(beta) p) / beta |phi|^2 dp, and <X^2> is taken as
    hbar^2 int |phi'(p)|^2 dp, which equals int x^2 |psi|^2 dx by Parseval
    (X acts as i hbar d/dp and phi phi' vanishes at the band edge). ``wave``
    is accepted for interface symmetry and is not needed.
    """
    params = state.params
    sb = params.sqrt_beta

    def p2_density(p):
        xi = sb * p
        log_rho = state.log_density(p)
        with np.errstate(divide="ignore", invalid="ignore"):
            out = np.exp(log_rho + 2.0 * np.log(np.abs(np.tan(xi))) - math.log(params.beta))
        return np.where(np.isfinite(out), out, 0.0)

    def dphi2(p):
        return state.derivative(p) ** 2

    p2 = _band_integral(state, p2_density, tol)
    x2 = _band_integral(state, dphi2, tol).scaled(params.hbar**2)
    dp = math.sqrt(p2.value)
    dx = math.sqrt(x2.value)
    return Dispersions(dx, dp, 0.5 * x2.err_estimate / dx, 0.5 * p2.err_estimate / dp)


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EntropyReport:
    n: int
    beta: float
    m: float
    omega: float
    hbar: float
    S_x: float
    S_p: float
    sum: float
    bbm_bound: float
    bbm_holds: bool
    delta_X: float
    delta_P: float
    gup_lhs: float
    gup_rhs: float
    gup_holds: bool
    min_length_holds: bool
    err_Sx: float
    err_Sp: float
    S_p_analytic: float | None
    numeric_only: bool

    def to_dict(self) -> dict:
        return asdict(self)


def _assemble(
    n, beta, m, omega, hbar, sx: QuadResult, sp: QuadResult, disp: Dispersions, sp_exact, numeric_only
) -> EntropyReport:
    bound = bbm_bound(hbar)
    total = sx.value + sp.value
    holds = total >= bound - sx.err_estimate - sp.err_estimate
    lhs = disp.delta_X * disp.delta_P
    rhs = 0.5 * hbar * (1.0 + beta * disp.delta_P**2)
    # error-aware, like the entropy verdict
    slack = disp.err_X * disp.delta_P + disp.err_P * disp.delta_X + hbar * beta * disp.delta_P * disp.err_P
    min_dx = hbar * math.sqrt(beta)
    return EntropyReport(
        n=n,
        beta=beta,
        m=m,
        omega=omega,
        hbar=hbar,
        S_x=sx.value,
        S_p=sp.value,
        sum=total,
        bbm_bound=bound,
        bbm_holds=bool(holds),
        delta_X=disp.delta_X,
        delta_P=disp.delta_P,
        gup_lhs=lhs,
        gup_rhs=rhs,
        gup_holds=bool(lhs >= rhs - slack),
        min_length_holds=bool(disp.delta_X >= min_dx - disp.err_X),
        err_Sx=sx.err_estimate,
        err_Sp=sp.err_estimate,
        S_p_analytic=sp_exact,
        numeric_only=numeric_only,
    )


def bbm_report(params: GupParams, n: int, tol: float = 1e-8) -> EntropyReport:
    """Entropies, spreads and verdicts for level ``n`` of the deformed oscillator."""
    state = EigenState(params, n)
    wave = position_wave(state)
    sx = sx_numeric(wave, tol)
    sp = sp_numeric(state, min(tol, 1e-10) * 1e-2)
    disp = dispersions(state, wave, min(tol, 1e-10))
    sp_exact = sp_analytic(params, n) if n in (0, 1) else None
    return _assemble(n, params.beta, params.m, params.omega, params.hbar, sx, sp, disp, sp_exact, sp_exact is None)


def ordinary_report(n: int, m: float = 1.0, omega: float = 1.0, hbar: float = 1.0, tol: float = 1e-8) -> EntropyReport:
    """The beta = 0 report, from the undeformed Hermite-Gauss eigenfunctions."""
    length = math.sqrt(hbar / (m * omega))

    def entropy_of(fn, scale):
        return integrate_tail_truncated(
            lambda y: -entropy_integrand(fn(y) ** 2), tol, decay_hint=60.0, even=True, x0=10.0 * max(1.0, scale)
        )

    sx = entropy_of(lambda x: ordinary_psi(n, x, m, omega, hbar), length)
    sp = entropy_of(lambda p: ordinary_phi(n, p, m, omega, hbar), math.sqrt(hbar * m * omega))
    dx = math.sqrt(hbar * (n + 0.5) / (m * omega))
    dp = math.sqrt(hbar * m * omega * (n + 0.5))
    sp_exact = {0: GROUND_LIMIT, 1: FIRST_LIMIT}.get(n) if (m == omega == hbar == 1.0) else None
    return _assemble(n, 0.0, m, omega, hbar, sx, sp, Dispersions(dx, dp, 0.0, 0.0), sp_exact, sp_exact is None)
