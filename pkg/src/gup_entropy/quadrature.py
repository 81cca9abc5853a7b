"""One-dimensional quadrature with error control.

The workhorse is a priority-driven adaptive Gauss-Kronrod (7/15) integrator.
Node and weight constants are generated on first use, Gauss nodes by Newton
iteration on Legendre polynomials and Kronrod extension nodes as the roots of
the associated Stieltjes polynomial, so no tables are copied in.

Integrands are called with a 1-D ``numpy`` array of abscissae and must return
an array of the same shape.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np
from numpy.polynomial import legendre as L

Integrand = Callable[[np.ndarray], np.ndarray]

_EPS = np.finfo(float).eps
# densities below this are treated as exactly zero in rho*ln(rho)
RHO_FLOOR = 1e-300


class QuadratureError(RuntimeError):
    """Raised when an integral cannot be brought within tolerance.

    The best available :class:`QuadResult` is attached as ``result``.
    """

    def __init__(self, message: str, result: "QuadResult"):
        super().__init__(f"{message} (value={result.value!r}, err_estimate={result.err_estimate:.3e})")
        self.result = result


@dataclass(frozen=True)
class QuadResult:
    value: float
    err_estimate: float
    evaluations: int

    def __add__(self, other: "QuadResult") -> "QuadResult":
        return QuadResult(
            self.value + other.value,
            self.err_estimate + other.err_estimate,
            self.evaluations + other.evaluations,
        )

    def scaled(self, factor: float) -> "QuadResult":
        return QuadResult(self.value * factor, self.err_estimate * abs(factor), self.evaluations)


# ---------------------------------------------------------------------------
# rule generation


def _legendre_and_derivative(n: int, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    p0 = np.ones_like(x)
    p1 = x.copy()
    if n == 0:
        return p0, np.zeros_like(x)
    for k in range(2, n + 1):
        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
    dp = n * (x * p1 - p0) / (x * x - 1.0)
    return p1, dp


@lru_cache(maxsize=None)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Nodes (ascending) and weights of the n-point Gauss-Legendre rule on [-1, 1]."""
    if n < 1:
        raise ValueError("need at least one node")
    i = np.arange(1, n + 1)
    x = np.cos(np.pi * (i - 0.25) / (n + 0.5))
    for _ in range(100):
        p, dp = _legendre_and_derivative(n, x)
        dx = p / dp
        x -= dx
        if np.max(np.abs(dx)) < 1e-16:
            break
    p, dp = _legendre_and_derivative(n, x)
    w = 2.0 / ((1.0 - x * x) * dp * dp)
    order = np.argsort(x)
    x, w = x[order], w[order]
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


@lru_cache(maxsize=None)
def gauss_kronrod(n: int = 7) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(2n+1)-point Kronrod extension of the n-point Gauss rule.

    Returns ``(nodes, kronrod_weights, gauss_weights)`` where ``gauss_weights``
    is zero on the Kronrod-only nodes.
    """
    xg, wg = gauss_legendre(n)
    # Stieltjes polynomial E_{n+1} = sum c_k P_k, orthogonal to P_j (j <= n)
    # under the sign-changing weight P_n.
    xq, wq = gauss_legendre(3 * n + 4)
    eye = np.eye(n + 2)
    basis = np.array([L.legval(xq, eye[k]) for k in range(n + 2)])
    pn = basis[n]
    m = (basis[: n + 1] * pn * wq) @ basis.T  # m[j, k] = int P_j P_n P_k
    coef = np.linalg.solve(m[:, : n + 1], -m[:, n + 1])
    coef = np.append(coef, 1.0)
    xk = np.sort(L.legroots(coef).real)
    dcoef = L.legder(coef)
    for _ in range(10):
        xk = xk - L.legval(xk, coef) / L.legval(xk, dcoef)
    nodes = np.sort(np.concatenate([xg, xk]))
    vander = L.legvander(nodes, 2 * n).T
    rhs = np.zeros(2 * n + 1)
    rhs[0] = 2.0
    wk = np.linalg.solve(vander, rhs)
    gw = np.zeros_like(nodes)
    for x, w in zip(xg, wg):
        gw[np.argmin(np.abs(nodes - x))] = w
    for arr in (nodes, wk, gw):
        arr.setflags(write=False)
    return nodes, wk, gw


# ---------------------------------------------------------------------------
# adaptive integration


def _panel(f: Integrand, a: float, b: float) -> tuple[float, float, float]:
    nodes, wk, wg = gauss_kronrod(7)
    half = 0.5 * (b - a)
    center = 0.5 * (a + b)
    fx = np.asarray(f(center + half * nodes), dtype=float)
    if not np.all(np.isfinite(fx)):
        raise ValueError(f"integrand not finite on [{a}, {b}]")
    k15 = half * float(wk @ fx)
    g7 = half * float(wg @ fx)
    absint = abs(half) * float(wk @ np.abs(fx))
    err = max(abs(k15 - g7), 50.0 * _EPS * absint)
    return k15, err, absint


def integrate(
    f: Integrand,
    a: float,
    b: float,
    tol: float = 1e-10,
    *,
    breakpoints=(),
    max_panels: int = 20000,
) -> QuadResult:
    """Adaptive Gauss-Kronrod integral of ``f`` over ``[a, b]``.

    The panel with the largest error estimate is bisected until the summed
    estimate drops below ``tol``. The per-panel estimate is ``|K15 - G7|``,
    floored at a roundoff level. Optional ``breakpoints`` seed the initial
    partition.
    """
    if not (math.isfinite(a) and math.isfinite(b)) or not a < b:
        raise ValueError(f"need finite a < b, got [{a}, {b}]")
    if tol <= 0:
        raise ValueError("tol must be positive")
    edges = [a] + sorted(x for x in breakpoints if a < x < b) + [b]
    heap: list[tuple[float, float, float, float, float]] = []
    total = 0.0
    total_err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        val, err, _ = _panel(f, lo, hi)
        heapq.heappush(heap, (-err, lo, hi, val, err))
        total += val
        total_err += err
    evaluated = len(heap)
    while True:
        if total_err <= tol:
            # confirm against drift from the incremental updates
            total = math.fsum(item[3] for item in heap)
            total_err = math.fsum(item[4] for item in heap)
            if total_err <= tol:
                break
        if evaluated >= max_panels:
            raise QuadratureError(
                "panel limit reached", QuadResult(total, total_err, 15 * evaluated)
            )
        _, lo, hi, val, err = heapq.heappop(heap)
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            raise QuadratureError(
                "interval exhausted at floating-point resolution",
                QuadResult(total, total_err, 15 * evaluated),
            )
        v1, e1, _ = _panel(f, lo, mid)
        v2, e2, _ = _panel(f, mid, hi)
        heapq.heappush(heap, (-e1, lo, mid, v1, e1))
        heapq.heappush(heap, (-e2, mid, hi, v2, e2))
        evaluated += 2
        total += v1 + v2 - val
        total_err += e1 + e2 - err
    return QuadResult(total, total_err, 15 * evaluated)


def entropy_integrand(rho):
    """rho * ln(rho) with 0 ln 0 = 0; densities below ``RHO_FLOOR`` give exactly 0."""
    r = np.asarray(rho, dtype=float)
    if np.any(r < 0) or np.any(np.isnan(r)):
        raise ValueError("density must be non-negative")
    out = np.zeros_like(r)
    mask = r >= RHO_FLOOR
    out[mask] = r[mask] * np.log(r[mask])
    if np.ndim(rho) == 0:
        return float(out)
    return out


def _log_power_tail(log_m: float, x: float, d: float) -> float:
    """Bound on int_x^inf m t^-d ln(t) dt for x > e, d > 1, with m = exp(log_m)."""
    if log_m == -math.inf:
        return 0.0
    log_bound = log_m + (1.0 - d) * math.log(x) + math.log(math.log(x) / (d - 1.0) + 1.0 / (d - 1.0) ** 2)
    return math.exp(min(log_bound, 700.0))


def integrate_tail_truncated(
    f: Integrand,
    tol: float,
    decay_hint: float,
    *,
    even: bool = True,
    x0: float = 10.0,
    max_radius: float = 1e7,
    samples_per_annulus: int = 4001,
) -> QuadResult:
    """Integral of ``f`` over the real line for a power-law decaying integrand.

    Integrates over ``[-X, X]`` (or ``2 * [0, X]`` when ``even``), doubling
    ``X`` from ``x0``. Stops once the newest annulus contributed less than
    ``tol / 10`` and the remainder bound beyond ``X`` is below ``tol / 10``.

    ``decay_hint`` is the exponent ``d`` in ``|f(x)| <~ x**-d * ln|x|``. The
    envelope constant is fitted as the maximum of ``|f| x**d / ln x`` over a
    dense sample of the last annulus, then doubled. Works in logs so very
    large ``d`` (near-Gaussian tails) cannot overflow.
    """
    if decay_hint <= 1:
        raise ValueError("decay_hint must exceed 1 for an integrable tail")
    sides = (1,) if even else (1, -1)
    scale = 2.0 if even else 1.0
    radius = max(x0, 3.0)
    inner = QuadResult(0.0, 0.0, 0)
    for s in sides:
        g = (lambda x, s=s: f(s * x))
        inner = inner + integrate(g, 0.0, radius, tol / (4 * len(sides) * scale))
    while True:
        new_radius = 2.0 * radius
        annulus = QuadResult(0.0, 0.0, 0)
        log_env = -math.inf
        xs = np.linspace(radius, new_radius, samples_per_annulus)
        for s in sides:
            g = (lambda x, s=s: f(s * x))
            annulus = annulus + integrate(g, radius, new_radius, tol / (4 * len(sides) * scale))
            fx = np.abs(np.asarray(g(xs), dtype=float))
            with np.errstate(divide="ignore"):
                log_fx = np.log(fx) + decay_hint * np.log(xs) - np.log(np.log(xs))
            log_env = max(log_env, float(np.max(log_fx)))
        inner = inner + annulus
        radius = new_radius
        tail = len(sides) * _log_power_tail(log_env + math.log(2.0), radius, decay_hint)
        small_annulus = abs(annulus.value) * scale < tol / 10
        if small_annulus and tail * scale < tol / 10:
            total = inner.scaled(scale)
            return QuadResult(total.value, total.err_estimate + tail * scale, total.evaluations)
        if radius > max_radius:
            total = inner.scaled(scale)
            raise QuadratureError(
                "tail does not decay as hinted",
                QuadResult(total.value, total.err_estimate + tail * scale, total.evaluations),
            )
