"""Shannon entropies of the harmonic oscillator with a minimal length.

The oscillator obeys [X, P] = i hbar (1 + beta P^2), represented with X = x
and P = tan(sqrt(beta) p) / sqrt(beta) on a finite momentum band, so the
position and momentum wave functions remain a Fourier pair.
"""

__version__ = "0.1.0"

from .entropy import EntropyReport, bbm_bound, bbm_report, sp_analytic, sp_numeric, sx_numeric
from .oscillator import EigenState, GupParams, energy, lambda_param, norm_const, phi_eval
from .quadrature import QuadResult, integrate
from .transform import GridSpec, position_wave, psi0_closed, psi1_closed, psi_numeric

__all__ = [
    "EigenState",
    "EntropyReport",
    "GridSpec",
    "GupParams",
    "QuadResult",
    "bbm_bound",
    "bbm_report",
    "energy",
    "integrate",
    "lambda_param",
    "norm_const",
    "phi_eval",
    "position_wave",
    "psi0_closed",
    "psi1_closed",
    "psi_numeric",
    "sp_analytic",
    "sp_numeric",
    "sx_numeric",
]
