"""Special functions used by the deformed oscillator.

Scalars are plain floats; the polynomial families also accept numpy arrays
for the argument and broadcast over it.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

EULER_GAMMA = 0.57721566490153286061


class DomainError(ValueError):
    """Argument outside the domain where the function is defined."""


class PoleError(DomainError):
    """Argument sits on a pole of the function."""


def _check_finite(name: str, *values: float) -> None:
    for v in values:
        if not math.isfinite(v):
            raise DomainError(f"{name}: non-finite argument {v!r}")


# ---------------------------------------------------------------------------
# gamma family


def ln_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    _check_finite("ln_gamma", x)
    if x <= 0:
        raise DomainError(f"ln_gamma: x must be positive, got {x!r}")
    return math.lgamma(x)


def gamma_sign(x: float) -> int:
    """Sign of Gamma(x) for real x off the poles."""
    if x > 0:
        return 1
    if x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    return -1 if math.ceil(-x) % 2 else 1


def ln_abs_gamma(x: float) -> float:
    if x <= 0 and x == math.floor(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    return math.lgamma(x)


# Bernoulli-number coefficients B_{2k} / (2k) of the digamma asymptotic series
_DIGAMMA_ASYMP = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


def digamma(x: float) -> float:
    """psi(x) = d/dx ln Gamma(x) for x > 0.

    Shifts the argument up to x >= 8 with psi(x) = psi(x + 1) - 1/x and then
    uses the asymptotic expansion in 1/x^2.
    """
    _check_finite("digamma", x)
    if x <= 0:
        raise DomainError(f"digamma: x must be positive, got {x!r}")
    shift = []
    while x < 8.0:
        shift.append(1.0 / x)
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    for c in reversed(_DIGAMMA_ASYMP):
        series = series * inv2 + c
    value = math.log(x) - 0.5 / x - series * inv2
    return value - math.fsum(shift)


def harmonic(x: float) -> float:
    """Harmonic number H_x = psi(x + 1) + gamma, extended to real x >= 0."""
    _check_finite("harmonic", x)
    if x < 0:
        raise DomainError(f"harmonic: x must be non-negative, got {x!r}")
    if x == 0:
        return 0.0
    return digamma(x + 1.0) + EULER_GAMMA


# Stirling series coefficients B_{2k} / (2k (2k - 1)) of ln Gamma
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
)
_ASYMPTOTIC_FROM = 10.0


def ln_gamma_ratio(x: float, a: float) -> float:
    """ln Gamma(x + a) - ln Gamma(x) without cancellation for large x.

    For x >= 10 (and x + a >= 10) the Stirling series is differenced term by
    term; the leading part is written as a ln x + (x + a - 1/2) log1p(a/x) - a.
    """
    if x <= 0 or x + a <= 0:
        raise DomainError("ln_gamma_ratio needs x > 0 and x + a > 0")
    if min(x, x + a) < _ASYMPTOTIC_FROM:
        return math.lgamma(x + a) - math.lgamma(x)
    y = x + a
    value = a * math.log(x) + (y - 0.5) * math.log1p(a / x) - a
    for k, c in enumerate(_STIRLING):
        power = 2 * k + 1
        value += c * (y**-power - x**-power)
    return value


def digamma_diff(x: float, a: float) -> float:
    """psi(x + a) - psi(x) without cancellation for large x."""
    if x <= 0 or x + a <= 0:
        raise DomainError("digamma_diff needs x > 0 and x + a > 0")
    if min(x, x + a) < _ASYMPTOTIC_FROM:
        return digamma(x + a) - digamma(x)
    y = x + a
    value = math.log1p(a / x) - 0.5 * (1.0 / y - 1.0 / x)
    for k, c in enumerate(_DIGAMMA_ASYMP):
        power = 2 * k + 2
        value -= c * (y**-power - x**-power)
    return value


# ---------------------------------------------------------------------------
# orthogonal polynomials


def gegenbauer(n: int, lam: float, s):
    """Gegenbauer polynomial C_n^lam(s) by the three-term recurrence in n.

    (k + 1) C_{k+1} = 2 (k + lam) s C_k - (k + 2 lam - 1) C_{k-1}
    """
    if n < 0:
        raise DomainError("polynomial order must be non-negative")
    s = np.asarray(s, dtype=float)
    prev = np.ones_like(s)
    if n == 0:
        return prev if s.ndim else float(prev)
    cur = 2.0 * lam * s
    for k in range(1, n):
        prev, cur = cur, (2.0 * (k + lam) * s * cur - (k + 2.0 * lam - 1.0) * prev) / (k + 1)
    return cur if s.ndim else float(cur)


def gegenbauer_sum(n: int, lam: float, s):
    """C_n^lam(s) from the explicit finite sum over k <= n/2.

    Independent of :func:`gegenbauer`. The sum alternates and cancels badly
    near roots, so it is evaluated exactly in rational arithmetic at the given
    float inputs and rounded once; slow, meant as a reference.
    """
    if n < 0:
        raise DomainError("polynomial order must be non-negative")
    lam_q = Fraction(lam)
    coeffs = []
    for k in range(n // 2 + 1):
        rising = Fraction(1)
        for j in range(n - k):
            rising *= lam_q + j
        coeffs.append((-1) ** k * rising / (math.factorial(k) * math.factorial(n - 2 * k)))

    def one(x: float) -> float:
        two_s = 2 * Fraction(x)
        return float(sum(c * two_s ** (n - 2 * k) for k, c in enumerate(coeffs)))

    s = np.asarray(s, dtype=float)
    if not s.ndim:
        return one(float(s))
    return np.array([one(x) for x in s.ravel()]).reshape(s.shape)


def gegenbauer_norm(n: int, nu: float) -> float:
    """int_{-1}^{1} (1 - x^2)^(nu - 1/2) [C_n^nu(x)]^2 dx in closed form.

    Evaluated as pi 2^(1-2nu) Gamma(n+2nu) / (n! (n+nu) Gamma(nu)^2) in log space.
    """
    if n < 0:
        raise DomainError("polynomial order must be non-negative")
    if not nu > -0.5:
        raise DomainError(f"gegenbauer_norm: need nu > -1/2, got {nu!r}")
    if nu == 0:
        raise DomainError("gegenbauer_norm: nu = 0 is degenerate (C_n^0 vanishes)")
    sign = gamma_sign(n + 2 * nu) * (1 if n + nu > 0 else -1)
    log_value = (
        math.log(math.pi)
        + (1.0 - 2.0 * nu) * math.log(2.0)
        + ln_abs_gamma(n + 2.0 * nu)
        - math.lgamma(n + 1.0)
        - math.log(abs(n + nu))
        - 2.0 * ln_abs_gamma(nu)
    )
    return sign * math.exp(log_value)


def rel_hermite(n: int, lam: float, z):
    """Relativistic Hermite polynomial H_n^lam(z).

    Uses the recurrence obtained by pushing the Gegenbauer recurrence through
    H_n^lam(sqrt(lam) u) = n! lam^(-n/2) (1+u^2)^(n/2) C_n^lam(u / sqrt(1+u^2)):

        H_{k+1} = 2 z (1 + k/lam) H_k - k (2 + (k-1)/lam) (1 + z^2/lam) H_{k-1}

    which reduces to the ordinary Hermite recurrence as lam -> infinity.
    """
    if n < 0:
        raise DomainError("polynomial order must be non-negative")
    z = np.asarray(z, dtype=float)
    prev = np.ones_like(z)
    if n == 0:
        return prev if z.ndim else float(prev)
    cur = 2.0 * z
    damp = 1.0 + z * z / lam
    for k in range(1, n):
        prev, cur = cur, 2.0 * z * (1.0 + k / lam) * cur - k * (2.0 + (k - 1) / lam) * damp * prev
    return cur if z.ndim else float(cur)


def hermite(n: int, z):
    """Physicists' Hermite polynomial H_n(z)."""
    if n < 0:
        raise DomainError("polynomial order must be non-negative")
    z = np.asarray(z, dtype=float)
    prev = np.ones_like(z)
    if n == 0:
        return prev if z.ndim else float(prev)
    cur = 2.0 * z
    for k in range(1, n):
        prev, cur = cur, 2.0 * z * cur - 2.0 * k * prev
    return cur if z.ndim else float(cur)


# ---------------------------------------------------------------------------
# Gauss hypergeometric function at unit argument


def _nonpositive_integer(x: float) -> bool:
    return x <= 0 and x == math.floor(x)


def hyp2f1_gauss(a: float, b: float, c: float) -> float:
    """2F1(a, b; c; 1) from Gauss's summation theorem.

    Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)), valid for c - a - b > 0.
    """
    if _nonpositive_integer(c):
        raise PoleError(f"2F1 has a pole at c = {c!r}")
    if not c - a - b > 0:
        raise DomainError("Gauss summation needs c - a - b > 0")
    # a reciprocal Gamma at a pole is zero
    if _nonpositive_integer(c - a) or _nonpositive_integer(c - b):
        return 0.0
    sign = gamma_sign(c) * gamma_sign(c - a - b) * gamma_sign(c - a) * gamma_sign(c - b)
    log_value = (
        ln_abs_gamma(c) + ln_abs_gamma(c - a - b) - ln_abs_gamma(c - a) - ln_abs_gamma(c - b)
    )
    return sign * math.exp(log_value)


def _series_terms(a: float, b: float, c: float, count: int) -> np.ndarray:
    k = np.arange(count - 1, dtype=float)
    ratio = (a + k) * (b + k) / ((c + k) * (k + 1.0))
    return np.concatenate(([1.0], np.cumprod(ratio)))


def hyp2f1_unit(
    a: float,
    b: float,
    c: float,
    *,
    levels: int = 8,
    max_terms: int = 1_000_000,
    full_output: bool = False,
):
    """2F1(a, b; c; 1) by direct summation of the hypergeometric series.

    Terminating series (a or b a non-positive integer) are summed exactly.
    Otherwise the series converges only algebraically: the remainder after K
    terms behaves as K^-(c-a-b) times a power series in 1/K. Partial sums at
    K0, 2 K0, 4 K0, ... are Richardson-extrapolated with those known
    exponents. K0 is placed past the region where the terms can still grow.

    With ``full_output`` the result is ``(value, err_estimate, terms_used)``.
    """
    _check_finite("hyp2f1_unit", a, b, c)
    if _nonpositive_integer(c):
        raise PoleError(f"2F1 has a pole at c = {c!r}")
    for p in (a, b):
        if _nonpositive_integer(p) and -p < 1e7:
            count = int(-p) + 1
            terms = _series_terms(a, b, c, count)
            value = math.fsum(terms)
            return (value, 0.0, count) if full_output else value
    s = c - a - b
    if not s > 0:
        raise DomainError(f"2F1(a, b; c; 1) diverges for c - a - b = {s!r} <= 0")

    k0 = int(16 + 4 * max(abs(a), abs(b), abs(c)))
    count = k0 * 2 ** (levels - 1)
    if count > max_terms:
        raise DomainError(f"2F1 series needs {count} terms, cap is {max_terms}")
    terms = _series_terms(a, b, c, count)
    partial = np.cumsum(terms)
    # fast exit when the tail is already negligible at K0
    tail_scale = abs(terms[k0 - 1]) * k0 / s
    if tail_scale < 1e-17 * abs(partial[k0 - 1]):
        value = math.fsum(terms[:k0])
        return (value, tail_scale, k0) if full_output else value

    column = [float(partial[k0 * 2**i - 1]) for i in range(levels)]
    previous = column
    for j in range(levels - 1):
        g = 2.0 ** (s + j)
        previous, column = column, [
            (g * column[i + 1] - column[i]) / (g - 1.0) for i in range(len(column) - 1)
        ]
    value = column[0]
    err = abs(value - previous[-1]) + 16 * np.finfo(float).eps * float(np.sum(np.abs(terms)))
    return (value, err, count) if full_output else value
