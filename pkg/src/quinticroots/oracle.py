"""Independent root finder used as ground truth.

Weierstrass / Durand-Kerner simultaneous iteration in plain complex
arithmetic.  It shares nothing with the series and closed-form code paths
beyond Horner evaluation, which is what makes it usable as a check on them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .core import RootSet, as_complex, coefficients, eval_poly
from .exceptions import CardinalityMismatch, NoConvergence

__all__ = ["OracleConfig", "find_all_roots", "MatchReport", "match_multisets"]


@dataclass(frozen=True)
class OracleConfig:
    max_iters: int = 200
    tol: float = 1e-13
    seed_radius_factor: float = 1.0
    cluster_tol: float = 1e-7

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_iters < 1:
            raise ValueError("max_iters must be at least 1")
        if not self.seed_radius_factor > 0:
            raise ValueError("seed_radius_factor must be positive")


DEFAULT_CONFIG = OracleConfig()

_PHASE_OFFSET = 0.4


def _merge_clusters(roots, cluster_tol):
    """Average roots that sit within ``cluster_tol`` of each other.

    A root of multiplicity k leaves k iterates spread around it; their mean is
    a much better estimate than any single one.
    """
    n = len(roots)
    group = list(range(n))

    def find(i):
        while group[i] != i:
            group[i] = group[group[i]]
            i = group[i]
        return i

    for i in range(n):
        for j in range(i + 1, n):
            scale = max(1.0, abs(roots[i]), abs(roots[j]))
            if abs(roots[i] - roots[j]) <= cluster_tol * scale:
                group[find(i)] = find(j)

    members: dict[int, list[int]] = {}
    for i in range(n):
        members.setdefault(find(i), []).append(i)
    out = list(roots)
    mult = [1] * n
    for idx in members.values():
        if len(idx) > 1:
            mean = sum(roots[i] for i in idx) / len(idx)
            for i in idx:
                out[i] = mean
                mult[i] = len(idx)
    return out, mult


def find_all_roots(coeffs, cfg: OracleConfig = DEFAULT_CONFIG) -> RootSet:
    """Every root of a monic polynomial of degree 1 to 5.

    Parameters
    ----------
    coeffs : sequence of complex, lowest degree first, leading entry 1
    cfg : OracleConfig

    Raises
    ------
    NoConvergence
        If the iteration budget runs out while residuals are still above
        ``1e-10 * (1 + max|c_i|)``.
    """
    c = coefficients(coeffs)
    d = len(c) - 1
    if d < 1:
        raise ValueError("need a polynomial of degree >= 1")
    if c[-1] != 1:
        raise ValueError("find_all_roots expects a monic polynomial")
    if d == 1:
        return RootSet.build(c, [-c[0]], "oracle")

    cmax = max(abs(v) for v in c[:-1])
    radius = (1.0 + cmax) * cfg.seed_radius_factor
    z = [radius * cmath.exp(1j * (2 * math.pi * k / d + _PHASE_OFFSET)) for k in range(d)]

    iterations = 0
    for iterations in range(1, cfg.max_iters + 1):
        moved = 0.0
        for i in range(d):
            denom = 1 + 0j
            zi = z[i]
            for j in range(d):
                if j != i:
                    denom *= zi - z[j]
            if denom == 0:
                # coincident iterates: nudge off the collision deterministically
                z[i] = zi + cfg.tol * (1 + abs(zi)) * cmath.exp(1j * (i + 1))
                moved = math.inf
                continue
            step = eval_poly(c, zi) / denom
            z[i] = zi - step
            moved = max(moved, abs(step) / max(1.0, abs(z[i])))
        if moved <= cfg.tol:
            break

    roots, mult = _merge_clusters(z, cfg.cluster_tol)
    bound = 1e-10 * (1.0 + cmax)
    worst = max(abs(eval_poly(c, r)) for r in roots)
    if worst > bound:
        raise NoConvergence(RootSet.build(c, roots, "oracle", mult), worst, iterations)
    return RootSet.build(c, roots, "oracle", mult)


@dataclass(frozen=True)
class MatchReport:
    success: bool
    pairs: tuple[tuple[int, int], ...]
    distances: tuple[float, ...]
    tol: float

    @property
    def max_distance(self) -> float:
        return max(self.distances, default=0.0)


def match_multisets(r1, r2, tol: float) -> MatchReport:
    """Greedy minimum-distance pairing of two equally sized multisets.

    Repeatedly takes the closest still-unpaired couple.  ``pairs`` hold
    indices into ``r1`` and ``r2``; the match succeeds when every paired
    distance is at most ``tol``.
    """
    a = [as_complex(v) for v in r1]
    b = [as_complex(v) for v in r2]
    if len(a) != len(b):
        raise CardinalityMismatch(f"cannot match {len(a)} roots against {len(b)}")
    cand = sorted((abs(x - y), i, j) for i, x in enumerate(a) for j, y in enumerate(b))
    used_a, used_b = set(), set()
    pairs, dists = [], []
    for dist, i, j in cand:
        if i in used_a or j in used_b:
            continue
        used_a.add(i)
        used_b.add(j)
        pairs.append((i, j))
        dists.append(dist)
    order = sorted(range(len(pairs)), key=lambda k: pairs[k])
    pairs = tuple(pairs[k] for k in order)
    dists = tuple(dists[k] for k in order)
    return MatchReport(all(d <= tol for d in dists), pairs, dists, tol)

