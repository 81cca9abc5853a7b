"""Harmonic oscillator under [X, P] = i hbar (1 + beta P^2).

Works in the representation X = x, P = tan(sqrt(beta) p) / sqrt(beta), where
momentum wave functions live on the band |p| < pi / (2 sqrt(beta)) with a
flat measure. With xi = sqrt(beta) p the eigenfunctions are

    phi_n(p) = N_n C_n^lam(sin xi) cos(xi)^lam

and vanish identically outside the band.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import specfun


@dataclass(frozen=True)
class GupParams:
    """Physical constants and deformation strength; defaults are m = hbar = omega = 1."""

    beta: float
    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        for name in ("beta", "m", "omega", "hbar"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise ValueError(f"{name} must be positive and finite, got {v!r}")

    @property
    def eta(self) -> float:
        return self.m * self.beta * self.hbar * self.omega

    @property
    def V(self) -> float:
        return 1.0 / self.eta**2

    @property
    def lam(self) -> float:
        return lambda_param(self)

    @property
    def sqrt_beta(self) -> float:
        return math.sqrt(self.beta)

    @property
    def p_max(self) -> float:
        """Half-width of the momentum band."""
        return 0.5 * math.pi / math.sqrt(self.beta)

    @property
    def min_dx(self) -> float:
        """Smallest attainable position uncertainty, hbar sqrt(beta)."""
        return self.hbar * math.sqrt(self.beta)


def lambda_param(params: GupParams) -> float:
    """Larger root of lam (lam - 1) = 1 / (m beta hbar omega)^2."""
    return 0.5 + math.sqrt(0.25 + params.V)


def energy(params: GupParams, n: int) -> float:
    """E_n = hbar omega [(n + 1/2)(sqrt(1 + eta^2/4) + eta/2) + eta n^2 / 2]."""
    if n < 0:
        raise ValueError("quantum number must be non-negative")
    eta = params.eta
    return params.hbar * params.omega * (
        (n + 0.5) * (math.sqrt(1.0 + 0.25 * eta * eta) + 0.5 * eta) + 0.5 * eta * n * n
    )


def ln_norm_const(params: GupParams, n: int) -> float:
    # Gamma(2 lam) folded with the duplication formula so that only the
    # well-conditioned ratio Gamma(lam + 1/2) / Gamma(lam) remains
    lam = params.lam
    rising = math.fsum(math.log(2.0 * lam + k) for k in range(n))
    return 0.5 * (
        0.5 * math.log(params.beta)
        + math.lgamma(n + 1.0)
        + math.log(n + lam)
        - 0.5 * math.log(math.pi)
        - specfun.ln_gamma_ratio(lam, 0.5)
        - rising
    )


def norm_const(params: GupParams, n: int) -> float:
    """N_n fixed by int |phi_n|^2 dp = 1 over the band (via the Gegenbauer norm integral)."""
    if n < 0:
        raise ValueError("quantum number must be non-negative")
    return math.exp(ln_norm_const(params, n))


def _log_cos(xi: np.ndarray) -> np.ndarray:
    # ln cos xi = ln(1 - 2 sin^2(xi/2)); accurate near xi = 0 where lam is huge
    h = np.sin(0.5 * xi)
    return np.log1p(-2.0 * h * h)


@dataclass(frozen=True)
class EigenState:
    """Level ``n`` of the deformed oscillator."""

    params: GupParams
    n: int
    energy: float = field(init=False)
    norm_const: float = field(init=False)
    ln_norm: float = field(init=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("quantum number must be non-negative")
        object.__setattr__(self, "energy", energy(self.params, self.n))
        object.__setattr__(self, "ln_norm", ln_norm_const(self.params, self.n))
        object.__setattr__(self, "norm_const", math.exp(self.ln_norm))

    @property
    def lam(self) -> float:
        return self.params.lam

    @property
    def parity(self) -> int:
        return -1 if self.n % 2 else 1

    def __call__(self, p):
        return phi_eval(self, p)

    def log_density(self, p):
        """ln |phi(p)|^2 on the open band (-inf at nodes of the polynomial)."""
        xi = self.params.sqrt_beta * np.asarray(p, dtype=float)
        with np.errstate(divide="ignore"):
            lc = np.abs(specfun.gegenbauer(self.n, self.lam, np.sin(xi)))
            return 2.0 * (self.ln_norm + self.lam * _log_cos(xi) + np.log(lc))

    def derivative(self, p):
        """d phi / dp, using d/ds C_n^lam = 2 lam C_{n-1}^{lam+1}."""
        lam, n = self.lam, self.n
        p = np.asarray(p, dtype=float)
        xi = self.params.sqrt_beta * p
        inside = np.abs(xi) < 0.5 * math.pi
        xi = np.where(inside, xi, 0.0)
        s, c = np.sin(xi), np.cos(xi)
        dc = 2.0 * lam * specfun.gegenbauer(n - 1, lam + 1.0, s) if n > 0 else 0.0
        # cos^(lam-1) is the only factor singular-prone at the edge; lam > 1 keeps it finite
        core = dc * c * c - lam * s * specfun.gegenbauer(n, lam, s)
        out = self.params.sqrt_beta * self.norm_const * np.exp((lam - 1.0) * _log_cos(xi)) * core
        out = np.where(inside, out, 0.0)
        return out if out.ndim else float(out)

    def support_xi(self, log_cutoff: float = -120.0) -> float:
        """Half-width in xi beyond which |phi|^2 < exp(log_cutoff) everywhere.

        Uses |C_n^lam(s)| <= C_n^lam(1) on [-1, 1]. Returns pi/2 when the wave
        function is not negligible before the band edge.
        """
        lam, n = self.lam, self.n
        ln_c1 = math.lgamma(n + 2.0 * lam) - math.lgamma(2.0 * lam) - math.lgamma(n + 1.0)
        budget = 0.5 * log_cutoff - self.ln_norm - ln_c1
        if budget >= 0:
            return 0.5 * math.pi
        cos_edge = math.exp(budget / lam)
        return math.acos(cos_edge) if cos_edge > 0 else 0.5 * math.pi

    def support(self, log_cutoff: float = -120.0) -> float:
        """Effective momentum half-width (see :meth:`support_xi`)."""
        return self.support_xi(log_cutoff) / self.params.sqrt_beta


def make_state(params: GupParams, n: int) -> EigenState:
    return EigenState(params, n)


def phi_eval(state: EigenState, p):
    """phi_n(p) = N_n C_n^lam(sin sqrt(beta) p) cos^lam(sqrt(beta) p), zero off the band."""
    p = np.asarray(p, dtype=float)
    xi = state.params.sqrt_beta * p
    inside = np.abs(xi) < 0.5 * math.pi
    xi = np.where(inside, xi, 0.0)
    poly = specfun.gegenbauer(state.n, state.lam, np.sin(xi))
    with np.errstate(divide="ignore"):
        mag = np.exp(state.ln_norm + state.lam * _log_cos(xi) + np.log(np.abs(poly)))
    out = np.where(inside, np.sign(poly) * mag, 0.0)
    return out if out.ndim else float(out)


def phi_eval_relhermite(state: EigenState, p):
    """Same eigenfunction through the relativistic Hermite form.

    phi_n(p) = (N_n lam^(n/2) / n!) cos^(lam+n)(xi) H_n^lam(sqrt(lam) tan xi)
    """
    lam, n = state.lam, state.n
    p = np.asarray(p, dtype=float)
    xi = state.params.sqrt_beta * p
    inside = np.abs(xi) < 0.5 * math.pi
    xi = np.where(inside, xi, 0.0)
    poly = specfun.rel_hermite(n, lam, math.sqrt(lam) * np.tan(xi))
    log_pref = state.ln_norm + 0.5 * n * math.log(lam) - math.lgamma(n + 1.0)
    with np.errstate(divide="ignore"):
        mag = np.exp(log_pref + (lam + n) * _log_cos(xi) + np.log(np.abs(poly)))
    out = np.where(inside, np.sign(poly) * mag, 0.0)
    return out if out.ndim else float(out)


# ---------------------------------------------------------------------------
# ordinary oscillator (beta = 0)


def ordinary_energy(n: int, m: float = 1.0, omega: float = 1.0, hbar: float = 1.0) -> float:
    return hbar * omega * (n + 0.5)


def ordinary_psi(n: int, x, m: float = 1.0, omega: float = 1.0, hbar: float = 1.0):
    """Position eigenfunction of the undeformed oscillator (real)."""
    alpha = m * omega / hbar
    x = np.asarray(x, dtype=float)
    y = math.sqrt(alpha) * x
    log_pref = 0.25 * math.log(alpha / math.pi) - 0.5 * (n * math.log(2.0) + math.lgamma(n + 1.0))
    out = np.exp(log_pref - 0.5 * y * y) * specfun.hermite(n, y)
    return out if out.ndim else float(out)


def ordinary_phi(n: int, p, m: float = 1.0, omega: float = 1.0, hbar: float = 1.0):
    """Momentum eigenfunction of the undeformed oscillator, up to the phase (-i)^n."""
    return ordinary_psi(n, p, m=1.0 / (m * omega * omega), omega=omega, hbar=hbar)
