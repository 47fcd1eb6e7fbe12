"""Sextic Landau free energy and the inverse equation of state ``u(f)``.

``F(u) = -f u + a u^2/2 + b u^4/4 + c u^6/6``.  Stationary points solve the
depressed quintic ``u^5 + (b/c) u^3 + (a/c) u - f/c = 0``; the equilibrium is
the real stationary point of lowest free energy.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .core import DepressedQuintic, deflate, solve_quadratic
from .exceptions import QuinticError, SeriesError, ZeroSexticCoefficient
from .oracle import find_all_roots, match_multisets
from .series import normalize_trinomial, trinomial_radius, trinomial_root
from .tschirnhaus import PipelineOptions, solve_pipeline

__all__ = [
    "LandauParams",
    "StationaryPoint",
    "EquilibriumResult",
    "SweepCell",
    "to_depressed_quintic",
    "free_energy",
    "free_energy_curvature",
    "state_residual",
    "equilibrium",
    "critical_isotherm",
    "sweep",
    "linear_temperature_coefficient",
]

logger = logging.getLogger(__name__)

REAL_TOL = 1e-8
TIE_TOL = 1e-12
_MERGE_TOL = 1e-7
_POLISH_STEPS = 3


@dataclass(frozen=True)
class LandauParams:
    a: float
    b: float
    c: float
    f: float

    def __post_init__(self):
        for name in ("a", "b", "c", "f"):
            v = float(getattr(self, name))
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite")
            object.__setattr__(self, name, v)


@dataclass(frozen=True)
class StationaryPoint:
    u: float
    F: float
    stable: bool


@dataclass(frozen=True)
class EquilibriumResult:
    u_eq: float
    all_stationary: tuple[StationaryPoint, ...]
    method: str
    degenerate: bool
    margin: float | None = None
    terms_used: int | None = None
    tied: tuple[float, ...] = ()
    residual: float = 0.0


def linear_temperature_coefficient(slope: float, temperature: float, critical: float) -> float:
    """``a = slope * (T - Tc)``."""
    return slope * (temperature - critical)


def to_depressed_quintic(p: LandauParams) -> DepressedQuintic:
    if p.c == 0:
        raise ZeroSexticCoefficient("c == 0: the state equation is not a quintic")
    return DepressedQuintic(p.b / p.c, p.a / p.c, -p.f / p.c)


def free_energy(p: LandauParams, u: float) -> float:
    u2 = u * u
    return -p.f * u + u2 * (p.a / 2 + u2 * (p.b / 4 + u2 * p.c / 6))


def free_energy_curvature(p: LandauParams, u: float) -> float:
    """Second derivative ``a + 3 b u^2 + 5 c u^4``."""
    u2 = u * u
    return p.a + u2 * (3 * p.b + 5 * p.c * u2)


def _force(p: LandauParams, u: float) -> float:
    u2 = u * u
    return u * (p.a + u2 * (p.b + p.c * u2)) - p.f


def state_residual(p: LandauParams, u: float) -> float:
    """``|a u + b u^3 + c u^5 - f|``."""
    return abs(_force(p, u))


def _polish(p: LandauParams, u: float) -> float:
    for _ in range(_POLISH_STEPS):
        d = free_energy_curvature(p, u)
        if d == 0:
            break
        step = _force(p, u) / d
        if not math.isfinite(step):
            break
        cand = u - step
        if abs(_force(p, cand)) > abs(_force(p, u)):
            break
        u = cand
    return u


def _real_stationary(p: LandauParams, roots) -> list[float]:
    reals = []
    for r in roots:
        if abs(r.imag) < REAL_TOL:
            reals.append(_polish(p, r.real))
    reals.sort()
    merged: list[float] = []
    for u in reals:
        if merged and abs(u - merged[-1]) <= _MERGE_TOL * max(1.0, abs(u)):
            continue
        merged.append(u)
    return merged


def _select(p: LandauParams, roots, method: str, margin=None, terms_used=None) -> EquilibriumResult:
    reals = _real_stationary(p, roots)
    # an odd-degree real polynomial always has a real root
    assert reals, f"no real stationary point for {p}; solver bug"
    points = tuple(StationaryPoint(u, free_energy(p, u), free_energy_curvature(p, u) > 0) for u in reals)
    fmin = min(s.F for s in points)
    tied = tuple(s.u for s in points if s.F - fmin <= TIE_TOL)
    u_eq = max(tied) if len(tied) > 1 else tied[0]
    return EquilibriumResult(
        u_eq=u_eq,
        all_stationary=points,
        method=method,
        degenerate=len(tied) > 1,
        margin=margin,
        terms_used=terms_used,
        tied=tied,
        residual=state_residual(p, u_eq),
    )


def critical_isotherm(p: LandauParams, opts: PipelineOptions = PipelineOptions()) -> EquilibriumResult:
    """Equilibrium at ``a = 0`` from the trinomial ``c u^5 + b u^3 - f = 0``.

    The three roots near the small-coupling limit come from the trinomial
    series (one per branch); the remaining two from deflating those out and
    solving the leftover quadratic.  When the normalised coupling lies
    outside the series' radius, or the series roots disagree with the
    oracle, the oracle roots are used and ``method`` says so.
    """
    if p.a != 0:
        raise ValueError("critical_isotherm needs a == 0")
    if p.b == 0 or p.f == 0 or not p.c > 0:
        raise ValueError("critical_isotherm needs b != 0, f != 0 and c > 0")
    q = to_depressed_quintic(p)
    oracle = find_all_roots(q.coeffs, opts.oracle)
    tri, lam = normalize_trinomial(-p.f, p.b, p.c, 3, 5)
    if abs(tri.a) < trinomial_radius(3, 5):
        try:
            roots, used = [], 0
            for branch in range(3):
                r = trinomial_root(type(tri)(3, 5, tri.a, branch), opts.rel_tol)
                roots.append(r.value / lam)
                used += r.terms_used
            rest = q.coeffs
            for r in roots:
                rest = deflate(rest, r, opts.deflate_tol)
            roots.extend(solve_quadratic(rest[2], rest[1], rest[0]).roots)
            if match_multisets(roots, oracle.roots, opts.pipeline_tol).success:
                return _select(p, roots, "trinomial_series", terms_used=used)
            logger.warning("trinomial series disagrees with oracle for %s", p)
        except (SeriesError, QuinticError) as exc:
            logger.info("trinomial series unavailable for %s: %s", p, exc)
    return _select(p, oracle.roots, "oracle")


def equilibrium(p: LandauParams, opts: PipelineOptions = PipelineOptions()) -> EquilibriumResult:
    """Global free-energy minimiser among the real stationary points.

    ``a == 0`` with ``b, f != 0`` goes through :func:`critical_isotherm`;
    everything else through the Tschirnhaus pipeline, whose own fallbacks
    decide between the series and the oracle.  Exact ties in ``F`` (e.g.
    ``f == 0`` with two symmetric wells) set ``degenerate`` and return the
    largest tied ``u``.
    """
    if not p.c > 0:
        raise ZeroSexticCoefficient("c must be positive for a bounded free energy")
    if p.a == 0 and p.b != 0 and p.f != 0:
        return critical_isotherm(p, opts)
    report = solve_pipeline(to_depressed_quintic(p), opts)
    method = "oracle" if report.fallback_used else "pipeline"
    used = report.series_root.terms_used if report.series_root is not None else None
    return _select(p, report.recovered_roots.roots, method, report.margin, used)


@dataclass(frozen=True)
class SweepCell:
    a: float
    f: float
    result: EquilibriumResult | None
    error: str | None = None


def _cell(a: float, f: float, b: float, c: float, opts: PipelineOptions) -> SweepCell:
    try:
        return SweepCell(a, f, equilibrium(LandauParams(a, b, c, f), opts))
    except Exception as exc:  # recorded per cell, never aborts the sweep
        return SweepCell(a, f, None, f"{type(exc).__name__}: {exc}")


def sweep(
    a_values,
    f_values,
    b: float,
    c: float,
    opts: PipelineOptions = PipelineOptions(),
    workers: int = 1,
) -> list[SweepCell]:
    """Equilibria on the grid ``a_values x f_values``, a-major order."""
    a_values = [float(v) for v in a_values]
    f_values = [float(v) for v in f_values]
    if not a_values or not f_values:
        raise ValueError("sweep needs at least one a and one f value")
    if not c > 0:
        raise ValueError("c must be positive")
    grid = [(a, f) for a in a_values for f in f_values]
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda af: _cell(af[0], af[1], b, c, opts), grid))
    return [_cell(a, f, b, c, opts) for a, f in grid]
