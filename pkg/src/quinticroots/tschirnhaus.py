"""Quadratic Tschirnhaus reduction and the four-step solution pipeline.

A depressed quintic ``x^5 + a3 x^3 + a1 x + a0`` is mapped by
``y = x^2 + alpha x + beta`` onto a principal quintic
``y^5 + b2 y^2 + b1 y + b0``.  The map parameters follow from requiring the
first two power sums of the mapped roots to vanish, and the new coefficients
from the next three power sums, all expressed through the power sums of the
original roots.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from .core import (
    DepressedQuintic,
    PrincipalQuintic,
    RootSet,
    as_complex,
    deflate,
    eval_poly,
    poly_mul,
    residual,
    solve_quartic,
)
from .exceptions import (
    DeflationResidualTooLarge,
    DegenerateMap,
    NoConvergence,
    NoPreimageWithinTolerance,
    SeriesError,
    ZeroConstantTerm,
    ZeroLinearTerm,
)
from .oracle import DEFAULT_CONFIG, OracleConfig, find_all_roots, match_multisets
from .series import (
    DEFAULT_REL_TOL,
    SeriesResult,
    convergence_margin,
    in_convergence_domain,
    passare_tsikh_root,
)

__all__ = [
    "PowerSums",
    "TschirnhausMap",
    "PipelineOptions",
    "PipelineReport",
    "power_sums",
    "mapped_power_sum",
    "reduce_to_principal",
    "rescale",
    "invert_map",
    "solve_pipeline",
]


@dataclass(frozen=True)
class PowerSums:
    """``S[n] = sum_k x_k**n`` for n = 0..10 over the five roots."""

    sums: tuple[complex, ...]

    def __getitem__(self, n: int) -> complex:
        return self.sums[n]

    def __len__(self):
        return len(self.sums)


def power_sums(q: DepressedQuintic, count: int = 10) -> PowerSums:
    """Newton's identities for a monic quintic, ``S_0`` through ``S_count``."""
    c = q.coeffs  # c[5] == 1
    S = [5 + 0j]
    for n in range(1, count + 1):
        acc = -n * c[5 - n] if n <= 5 else 0j
        for j in range(1, min(n - 1, 5) + 1):
            acc -= c[5 - j] * S[n - j]
        S.append(acc)
    if S[1] != 0 or S[3] != 0:
        raise AssertionError("odd low-order power sums of a depressed quintic must vanish")
    return PowerSums(tuple(S))


def _map_power_coeffs(alpha: complex, beta: complex, n: int) -> tuple[complex, ...]:
    out: tuple[complex, ...] = (1 + 0j,)
    for _ in range(n):
        out = poly_mul(out, (beta, alpha, 1 + 0j))
    return out


def mapped_power_sum(S: PowerSums, alpha, beta, n: int) -> complex:
    """``sum_k (x_k^2 + alpha x_k + beta)**n`` from the power sums of the x_k."""
    coeffs = _map_power_coeffs(as_complex(alpha), as_complex(beta), n)
    if len(coeffs) > len(S):
        raise ValueError(f"need power sums up to S_{len(coeffs) - 1}")
    return sum(c * S[p] for p, c in enumerate(coeffs))


@dataclass(frozen=True)
class TschirnhausMap:
    """``y = x^2 + alpha x + beta`` and the principal quintic it produces.

    ``identity`` marks the a3 == 0 case, where the input is already principal
    and ``y = x``.
    """

    alpha: complex
    beta: complex
    b2: complex
    b1: complex
    b0: complex
    identity: bool = False

    @property
    def principal_coeffs(self) -> tuple[complex, ...]:
        return (self.b0, self.b1, self.b2, 0j, 0j, 1 + 0j)

    def apply(self, x) -> complex:
        x = as_complex(x)
        if self.identity:
            return x
        return x * x + self.alpha * x + self.beta


def _map_from_alpha(S: PowerSums, alpha: complex, beta: complex) -> TschirnhausMap:
    b2 = -mapped_power_sum(S, alpha, beta, 3) / 3
    b1 = -mapped_power_sum(S, alpha, beta, 4) / 4
    b0 = -mapped_power_sum(S, alpha, beta, 5) / 5
    return TschirnhausMap(alpha, beta, b2, b1, b0)


def _map_check(tmap: TschirnhausMap, roots, tol: float) -> str | None:
    ys = [tmap.apply(x) for x in roots]
    scale = max(1.0, max(abs(y) for y in ys))
    s1 = sum(ys)
    s2 = sum(y * y for y in ys)
    if abs(s1) > tol * scale or abs(s2) > tol * scale * scale:
        return f"mapped power sums do not vanish (|S1|={abs(s1):.2e}, |S2|={abs(s2):.2e})"
    xscale = max(1.0, max(abs(x) for x in roots))
    for i in range(len(ys)):
        for j in range(i + 1, len(ys)):
            if abs(roots[i] - roots[j]) > tol * xscale and abs(ys[i] - ys[j]) <= tol * scale:
                return "map sends two distinct roots to the same image"
    return None


def reduce_to_principal(
    q: DepressedQuintic,
    roots=None,
    tol: float = 1e-9,
    cfg: OracleConfig = DEFAULT_CONFIG,
) -> TschirnhausMap:
    """Quadratic Tschirnhaus map taking ``q`` to principal form.

    ``beta = -S2/5`` and ``alpha**2 = -(S4 + 2 beta S2 + 5 beta**2) / S2``.
    The principal square root is tried first and the opposite sign second;
    each candidate is accepted only if the images of the oracle roots (or of
    ``roots`` when supplied) have vanishing first and second power sums and
    stay pairwise distinct.

    Returns the identity map when ``a3 == 0``.

    Raises
    ------
    DegenerateMap
        When neither sign of ``alpha`` passes the check.
    """
    if q.a3 == 0:
        return TschirnhausMap(0j, 0j, 0j, q.a1, q.a0, identity=True)
    S = power_sums(q)
    beta = -S[2] / 5
    alpha = cmath.sqrt(-(S[4] + 2 * beta * S[2] + 5 * beta * beta) / S[2])
    if roots is None:
        roots = find_all_roots(q.coeffs, cfg).roots
    roots = list(roots)
    problems = []
    for a in (alpha, -alpha) if alpha != 0 else (alpha,):
        tmap = _map_from_alpha(S, a, beta)
        problem = _map_check(tmap, roots, tol)
        if problem is None:
            return tmap
        problems.append(problem)
    raise DegenerateMap("; ".join(problems))


def rescale(b2, b1, b0) -> tuple[PrincipalQuintic, complex]:
    """Substitute ``z = (b0/b1) w`` into ``z^5 + b2 z^2 + b1 z + b0``.

    Returns ``(PrincipalQuintic(A, B), b0/b1)`` with ``A = b0 b2 / b1^2`` and
    ``B = b0^4 / b1^5``.
    """
    b2, b1, b0 = as_complex(b2), as_complex(b1), as_complex(b0)
    if b0 == 0:
        raise ZeroConstantTerm("b0 == 0: z = 0 is a root; deflate it first")
    if b1 == 0:
        raise ZeroLinearTerm("b1 == 0: the normalised form is unreachable")
    return PrincipalQuintic(b0 * b2 / b1**2, b0**4 / b1**5), b0 / b1


def invert_map(tmap: TschirnhausMap, y, original: DepressedQuintic, tol: float = 1e-7) -> complex:
    """Preimage of ``y`` under the map that solves ``original``.

    Both roots of ``x^2 + alpha x + beta - y`` are tried and the one with the
    smaller residual on the original quintic wins (near-ties go to the
    smaller imaginary part, then the smaller real part).

    Raises
    ------
    NoPreimageWithinTolerance
        When the better residual exceeds ``tol * (1 + max|a_i|)``.
    """
    y = as_complex(y)
    bound = tol * (1 + max(abs(original.a3), abs(original.a1), abs(original.a0)))
    if tmap.identity:
        r = abs(eval_poly(original, y))
        if r > bound:
            raise NoPreimageWithinTolerance(y, (r, r), bound)
        return y
    alpha, c0 = tmap.alpha, tmap.beta - y
    disc = cmath.sqrt(alpha * alpha - 4 * c0)
    big = -(alpha + disc) / 2 if (alpha.conjugate() * disc).real >= 0 else -(alpha - disc) / 2
    cands = [big, c0 / big] if big != 0 else [0j, 0j]
    res = [abs(eval_poly(original, x)) for x in cands]
    if abs(res[0] - res[1]) <= 1e-12:
        best = min(cands, key=lambda x: (x.imag, x.real))
        best_res = min(res)
    else:
        i = 0 if res[0] < res[1] else 1
        best, best_res = cands[i], res[i]
    if best_res > bound:
        raise NoPreimageWithinTolerance(y, tuple(res), bound)
    return best


@dataclass(frozen=True)
class PipelineOptions:
    rel_tol: float = DEFAULT_REL_TOL
    # near the domain boundary the series needs thousands of shells
    max_shells: int = 5000
    pipeline_tol: float = 1e-7
    map_tol: float = 1e-9
    deflate_tol: float = 1e-8
    oracle: OracleConfig = DEFAULT_CONFIG


@dataclass(frozen=True)
class PipelineReport:
    input: DepressedQuintic
    map: TschirnhausMap | None
    scaled: PrincipalQuintic | None
    scale: complex | None
    series_root: SeriesResult | None
    recovered_roots: RootSet
    fallback_used: bool
    diagnostics: dict = field(default_factory=dict)

    @property
    def margin(self) -> float | None:
        return self.diagnostics.get("margin")

    @property
    def series_used(self) -> bool:
        return not self.fallback_used


def solve_pipeline(q: DepressedQuintic, opts: PipelineOptions = PipelineOptions()) -> PipelineReport:
    """All five roots of ``q`` by reduction, rescaling, series and deflation.

    1. map ``q`` to a principal quintic in ``z``;
    2. rescale to ``B w^5 + A w^2 + w + 1``;
    3. sum the series root when ``(A, B)`` is inside the convergence domain;
    4. deflate that root, solve the remaining quartic in closed form, and
       pull all five ``z`` back through the map.

    If the series is not applicable the oracle solves the principal quintic
    instead (``fallback_used``).  If pulling back still fails, the oracle
    roots of ``q`` are returned and ``diagnostics['final_fallback']`` says
    why.  No error escapes.
    """
    diag: dict = {}
    oracle = find_all_roots(q.coeffs, opts.oracle)
    diag["oracle_max_residual"] = oracle.max_residual

    def give_up(reason, tmap=None, scaled=None, scale=None, series=None):
        diag["final_fallback"] = reason
        return PipelineReport(q, tmap, scaled, scale, series, oracle, True, diag)

    try:
        tmap = reduce_to_principal(q, oracle.roots, opts.map_tol, opts.oracle)
    except DegenerateMap as exc:
        return give_up(f"reduction: {exc}")
    diag["alpha"], diag["beta"] = tmap.alpha, tmap.beta
    diag["b2"], diag["b1"], diag["b0"] = tmap.b2, tmap.b1, tmap.b0
    principal = tmap.principal_coeffs

    scaled = scale = None
    try:
        scaled, scale = rescale(tmap.b2, tmap.b1, tmap.b0)
        diag["A"], diag["B"] = scaled.A, scaled.B
        diag["margin"] = convergence_margin(scaled)
    except (ZeroConstantTerm, ZeroLinearTerm) as exc:
        diag["fallback_reason"] = str(exc)

    series = None
    zs = None
    if scaled is not None and in_convergence_domain(scaled):
        try:
            series = passare_tsikh_root(scaled, opts.rel_tol, opts.max_shells)
            z5 = scale * series.value
            diag["series_residual"] = residual(principal, z5)
            quartic = deflate(principal, z5, opts.deflate_tol)
            rest = solve_quartic(quartic[3], quartic[2], quartic[1], quartic[0])
            diag["quartic_max_residual"] = rest.max_residual
            zs = [z5, *rest.roots]
        except (SeriesError, DeflationResidualTooLarge) as exc:
            diag["fallback_reason"] = f"{type(exc).__name__}: {exc}"
            series = None
    elif scaled is not None:
        diag["fallback_reason"] = "outside the series convergence domain"

    fallback = zs is None
    if fallback:
        try:
            zs = list(find_all_roots(principal, opts.oracle).roots)
        except NoConvergence as exc:
            return give_up(f"oracle on principal form: {exc}", tmap, scaled, scale, series)

    try:
        xs = [invert_map(tmap, z, q, opts.pipeline_tol) for z in zs]
    except NoPreimageWithinTolerance as exc:
        return give_up(f"inverse map: {exc}", tmap, scaled, scale, series)

    recovered = RootSet.build(q, xs, "pipeline")
    diag["pipeline_max_residual"] = recovered.max_residual
    match = match_multisets(recovered.roots, oracle.roots, opts.pipeline_tol)
    diag["oracle_max_distance"] = match.max_distance
    if not match.success or recovered.max_residual > opts.pipeline_tol:
        return give_up("recovered roots disagree with the oracle", tmap, scaled, scale, series)
    return PipelineReport(q, tmap, scaled, scale, series, recovered, fallback, diag)
