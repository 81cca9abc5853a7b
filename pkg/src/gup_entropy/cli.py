"""Command-line front end.

    gup-entropy energies --beta 0 --n 0..4
    gup-entropy wavefunction --beta 0.5 --n 0,1 --x-min -6 --x-max 6 --count 241
    gup-entropy densities --beta 1 --n 0 --x-min -6 --x-max 6 --count 241
    gup-entropy entropy --beta 1e-6 --n 0 --format json
    gup-entropy table1

Exit codes: 0 success, 2 invalid arguments, 3 numerical failure, 4 an
entropic uncertainty (BBM) check failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from . import __version__
from .entropy import bbm_report, density_profiles, ordinary_report
from .oscillator import EigenState, GupParams, energy, ordinary_energy, ordinary_phi, ordinary_psi
from .quadrature import QuadratureError, entropy_integrand
from .specfun import DomainError
from .transform import GridSpec, TransformError, position_wave

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NUMERIC = 3
EXIT_BBM = 4

COMMANDS = ("energies", "wavefunction", "densities", "entropy", "table1")
ENTROPY_HEADER = ["n", "beta", "S_x", "S_p", "sum", "bound", "bbm_holds"]
TABLE1_BETAS = "0.1,0.5,1.0"
TABLE1_LEVELS = "0,1"


class UsageError(ValueError):
    pass


@dataclass(frozen=True)
class RunConfig:
    command: str
    beta: tuple[float, ...]
    n: tuple[int, ...]
    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    tol: float = 1e-8
    grid: GridSpec | None = None
    method: str = "numeric_synthesis"
    format: str = "csv"
    output: str | None = None
    digits: int = 6

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        for name in ("m", "omega", "hbar", "tol"):
            if not getattr(self, name) > 0:
                raise UsageError(f"--{name} must be positive")
        if any(b < 0 for b in self.beta):
            raise UsageError("--beta must be non-negative (0 selects the undeformed limit)")
        if any(k < 0 for k in self.n):
            raise UsageError("--n must be non-negative")
        if not 3 <= self.digits <= 15:
            raise UsageError("--digits must lie in [3, 15]")
        if self.command in ("wavefunction", "densities") and self.grid is None:
            raise UsageError("--x-min, --x-max and --count are required for this command")


def parse_int_list(text: str) -> tuple[int, ...]:
    """'0..4' (inclusive), '0,2,5' or a mix such as '0..2,7'."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
            if hi_i < lo_i:
                raise UsageError(f"empty range {part!r}")
            out.extend(range(lo_i, hi_i + 1))
        else:
            out.append(int(part))
    return tuple(out)


def parse_float_list(text: str) -> tuple[float, ...]:
    return tuple(float(part) for part in text.split(","))


def _threads() -> int:
    raw = os.environ.get("GUP_ENTROPY_THREADS", "0")
    try:
        count = int(raw)
    except ValueError:
        raise UsageError(f"GUP_ENTROPY_THREADS must be an integer, got {raw!r}")
    if count < 0:
        raise UsageError("GUP_ENTROPY_THREADS must be >= 0")
    return count or (os.cpu_count() or 1)


def _map(fn, items):
    items = list(items)
    workers = min(_threads(), len(items)) or 1
    if workers == 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))


# ---------------------------------------------------------------------------
# formatting


def _fmt(value, digits: int) -> str:
    if isinstance(value, (bool, np.bool_)):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if value is None:
        return ""
    if isinstance(value, str):
        return value
    return format(float(value), f".{digits}g")


def _json_value(value, digits: int):
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if value is None or isinstance(value, str):
        return value
    return float(format(float(value), f".{digits}g"))


def _emit_csv(header: list[str], rows: list[list], digits: int) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v, digits) for v in row])
    return buf.getvalue()


def _emit_json(records: list[dict], digits: int) -> str:
    clean = [{k: _json_value(v, digits) for k, v in rec.items()} for rec in records]
    return json.dumps(clean, indent=2) + "\n"


def _emit(header: list[str], rows: list[list], config: RunConfig, records: list[dict] | None = None) -> str:
    if config.format == "json":
        if records is None:
            records = [dict(zip(header, row)) for row in rows]
        return _emit_json(records, config.digits)
    return _emit_csv(header, rows, config.digits)


# ---------------------------------------------------------------------------
# commands


def _params(config: RunConfig, beta: float) -> GupParams:
    return GupParams(beta=beta, m=config.m, omega=config.omega, hbar=config.hbar)


def _cases(config: RunConfig) -> list[tuple[float, int]]:
    return [(b, k) for b in config.beta for k in config.n]


def _energies(config: RunConfig) -> tuple[str, bool]:
    header = ["n", "beta", "energy"]
    rows = []
    for beta, n in _cases(config):
        if beta == 0:
            e = ordinary_energy(n, config.m, config.omega, config.hbar)
        else:
            e = energy(_params(config, beta), n)
        rows.append([n, beta, e])
    return _emit(header, rows, config), True


def _wave_rows(config: RunConfig, case: tuple[float, int]) -> list[list]:
    beta, n = case
    x = config.grid.points()
    if beta == 0:
        psi = np.asarray(ordinary_psi(n, x, config.m, config.omega, config.hbar), dtype=complex)
        # synthesis from a real momentum eigenfunction carries the phase i^n
        psi = psi * (1j) ** n
    else:
        wave = position_wave(EigenState(_params(config, beta), n), config.method)
        psi = np.asarray(wave(x), dtype=complex)
    return [[n, beta, xi, v.real, v.imag, abs(v) ** 2] for xi, v in zip(x, psi)]


def _wavefunction(config: RunConfig) -> tuple[str, bool]:
    header = ["n", "beta", "x", "re_psi", "im_psi", "abs2"]
    chunks = _map(lambda case: _wave_rows(config, case), _cases(config))
    return _emit(header, [row for chunk in chunks for row in chunk], config), True


def _density_rows(config: RunConfig, case: tuple[float, int]) -> list[list]:
    beta, n = case
    grid = config.grid
    if beta == 0:
        x = grid.points()
        scale = np.sqrt(config.hbar * config.m * config.omega)
        p = np.linspace(-6 * scale * np.sqrt(n + 1), 6 * scale * np.sqrt(n + 1), grid.count)
        rho_x = np.asarray(ordinary_psi(n, x, config.m, config.omega, config.hbar)) ** 2
        rho_p = np.asarray(ordinary_phi(n, p, config.m, config.omega, config.hbar)) ** 2
        x_part = zip(x, rho_x, entropy_integrand(rho_x))
        p_part = zip(p, rho_p, entropy_integrand(rho_p))
    else:
        prof = density_profiles(EigenState(_params(config, beta), n), None, grid)
        x_part = zip(prof.x, prof.rho_x, prof.rho_s_x)
        p_part = zip(prof.p, prof.rho_p, prof.rho_s_p)
    rows = [[n, beta, "x", c, d, s] for c, d, s in x_part]
    rows += [[n, beta, "p", c, d, s] for c, d, s in p_part]
    return rows


def _densities(config: RunConfig) -> tuple[str, bool]:
    header = ["n", "beta", "space", "coord", "density", "entropy_density"]
    chunks = _map(lambda case: _density_rows(config, case), _cases(config))
    return _emit(header, [row for chunk in chunks for row in chunk], config), True


def _report(config: RunConfig, case: tuple[float, int]):
    beta, n = case
    if beta == 0:
        return ordinary_report(n, config.m, config.omega, config.hbar, config.tol)
    return bbm_report(_params(config, beta), n, config.tol)


def _entropy(config: RunConfig) -> tuple[str, bool]:
    reports = _map(lambda case: _report(config, case), _cases(config))
    rows = [[r.n, r.beta, r.S_x, r.S_p, r.sum, r.bbm_bound, r.bbm_holds] for r in reports]
    ok = all(r.bbm_holds for r in reports)
    return _emit(ENTROPY_HEADER, rows, config, [r.to_dict() for r in reports]), ok


_HANDLERS = {
    "energies": _energies,
    "wavefunction": _wavefunction,
    "densities": _densities,
    "entropy": _entropy,
    "table1": _entropy,
}


def run(config: RunConfig) -> tuple[int, str]:
    """Execute ``config``; returns (exit code, rendered output)."""
    try:
        text, ok = _HANDLERS[config.command](config)
    except (QuadratureError, TransformError, DomainError) as exc:
        return EXIT_NUMERIC, f"numerical failure: {exc}\n"
    return (EXIT_OK if ok else EXIT_BBM), text


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gup-entropy",
        description="Entropic uncertainty for the minimal-length harmonic oscillator.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, beta_default=None, n_default=None):
        p.add_argument("--beta", required=beta_default is None, default=beta_default,
                       help="deformation parameter(s), comma separated; 0 = undeformed limit")
        p.add_argument("--n", required=n_default is None, default=n_default,
                       help="quantum number(s): '0,1' or inclusive range '0..4'")
        p.add_argument("--m", type=float, default=1.0)
        p.add_argument("--omega", type=float, default=1.0)
        p.add_argument("--hbar", type=float, default=1.0)
        p.add_argument("--tol", type=float, default=1e-8, help="target absolute error of S_x")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--output", "-o", default=None, help="file path (default stdout)")
        p.add_argument("--digits", type=int, default=6, help="significant digits, 3..15")

    def grid(p: argparse.ArgumentParser):
        p.add_argument("--x-min", type=float)
        p.add_argument("--x-max", type=float)
        p.add_argument("--count", type=int)

    common(sub.add_parser("energies", help="energy spectrum E_n"))
    wf = sub.add_parser("wavefunction", help="position-space wave function samples")
    common(wf)
    grid(wf)
    wf.add_argument("--method", choices=("numeric_synthesis", "closed_form"), default="numeric_synthesis")
    dens = sub.add_parser("densities", help="probability and entropy densities in x and p")
    common(dens)
    grid(dens)
    common(sub.add_parser("entropy", help="entropies, spreads and BBM verdict"))
    common(sub.add_parser("table1", help="reproduce the beta/n entropy table"),
           beta_default=TABLE1_BETAS, n_default=TABLE1_LEVELS)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    grid = None
    if getattr(args, "x_min", None) is not None or getattr(args, "count", None) is not None:
        if args.x_min is None or args.x_max is None or args.count is None:
            raise UsageError("--x-min, --x-max and --count go together")
        grid = GridSpec(args.x_min, args.x_max, args.count)
    try:
        betas = parse_float_list(args.beta)
        levels = parse_int_list(args.n)
    except ValueError as exc:
        raise UsageError(str(exc))
    return RunConfig(
        command=args.command,
        beta=betas,
        n=levels,
        m=args.m,
        omega=args.omega,
        hbar=args.hbar,
        tol=args.tol,
        grid=grid,
        method=getattr(args, "method", "numeric_synthesis"),
        format=args.format,
        output=args.output,
        digits=args.digits,
    )


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = config_from_args(args)
        code, text = run(config)
    except (UsageError, ValueError) as exc:
        print(f"gup-entropy: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if code == EXIT_NUMERIC:
        sys.stderr.write(text)
        return code
    if config.output:
        with open(config.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if code == EXIT_BBM:
        print("gup-entropy: entropic uncertainty bound violated", file=sys.stderr)
    return code


def entry() -> None:
    sys.exit(main())
