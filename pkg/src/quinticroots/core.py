"""Domain types and closed-form polynomial helpers.

Polynomials are plain coefficient sequences ordered lowest degree first,
``(c0, c1, ..., cd)``, the same convention as :mod:`numpy.polynomial`.  The
quintic dataclasses below expose the same view through their ``coeffs``
property, so every helper here accepts either form.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .exceptions import DeflationResidualTooLarge, DegenerateLeadingCoefficient

__all__ = [
    "as_complex",
    "coefficients",
    "monic",
    "Quintic",
    "DepressedQuintic",
    "PrincipalQuintic",
    "RootSet",
    "eval_poly",
    "eval_derivative",
    "residual",
    "poly_mul",
    "poly_from_roots",
    "deflate",
    "solve_quadratic",
    "solve_cubic",
    "solve_quartic",
]


def as_complex(value) -> complex:
    """Coerce ``value`` to a finite complex number."""
    z = complex(value)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"non-finite value {value!r}")
    return z


def coefficients(p) -> tuple[complex, ...]:
    """Return the lowest-first coefficient tuple of ``p``.

    ``p`` may be any sequence of numbers or an object with a ``coeffs``
    attribute (the quintic types in this module).
    """
    raw = getattr(p, "coeffs", p)
    return tuple(as_complex(c) for c in raw)


@dataclass(frozen=True)
class Quintic:
    """General quintic ``c5 x^5 + ... + c0``."""

    coeffs: tuple[complex, ...]

    def __post_init__(self):
        c = tuple(as_complex(v) for v in self.coeffs)
        if len(c) != 6:
            raise ValueError(f"a quintic needs 6 coefficients, got {len(c)}")
        if c[5] == 0:
            raise DegenerateLeadingCoefficient("leading coefficient of a quintic is zero")
        object.__setattr__(self, "coeffs", c)

    @property
    def monic(self) -> bool:
        return self.coeffs[5] == 1

    def to_monic(self) -> "Quintic":
        return Quintic(monic(self.coeffs))


@dataclass(frozen=True)
class DepressedQuintic:
    """``x^5 + a3 x^3 + a1 x + a0 = 0``."""

    a3: complex
    a1: complex
    a0: complex

    def __post_init__(self):
        for name in ("a3", "a1", "a0"):
            object.__setattr__(self, name, as_complex(getattr(self, name)))

    @property
    def coeffs(self) -> tuple[complex, ...]:
        return (self.a0, self.a1, 0j, self.a3, 0j, 1 + 0j)

    @property
    def scale(self) -> float:
        return max(1.0, abs(self.a3), abs(self.a1), abs(self.a0))

    def scaled(self, s) -> "DepressedQuintic":
        """Quintic whose roots are ``s`` times the roots of this one."""
        s = as_complex(s)
        return DepressedQuintic(self.a3 * s**2, self.a1 * s**4, self.a0 * s**5)


@dataclass(frozen=True)
class PrincipalQuintic:
    """``B x^5 + A x^2 + x + 1 = 0``."""

    A: complex
    B: complex

    def __post_init__(self):
        object.__setattr__(self, "A", as_complex(self.A))
        object.__setattr__(self, "B", as_complex(self.B))

    @property
    def coeffs(self) -> tuple[complex, ...]:
        return (1 + 0j, 1 + 0j, self.A, 0j, 0j, self.B)

    def monic_coeffs(self) -> tuple[complex, ...]:
        """Monic coefficients after dropping vanishing leading terms.

        With ``B == 0`` the equation is the quadratic ``A x^2 + x + 1``, and
        with ``A == B == 0`` it is ``x + 1``.
        """
        return monic(self.coeffs)


def monic(p) -> tuple[complex, ...]:
    """Drop vanishing leading coefficients and divide through by the lead."""
    c = list(coefficients(p))
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    if len(c) == 1:
        raise DegenerateLeadingCoefficient("constant polynomial has no roots")
    lead = c[-1]
    return tuple(v / lead for v in c[:-1]) + (1 + 0j,)


def _sort_key(z: complex):
    return (z.real, z.imag)


@dataclass(frozen=True)
class RootSet:
    """Roots of one polynomial together with their residuals.

    Residuals are scale-free: ``|P(r)| / max(1, max|c_i|)``.  Roots are kept
    with multiplicity and sorted by (real, imag).
    """

    roots: tuple[complex, ...]
    residuals: tuple[float, ...]
    method: str
    multiplicities: tuple[int, ...] = field(default=())

    METHODS = ("series", "closed_form", "oracle", "pipeline")

    def __post_init__(self):
        if self.method not in self.METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if len(self.roots) != len(self.residuals):
            raise ValueError("roots and residuals differ in length")

    @classmethod
    def build(cls, p, roots: Iterable, method: str, multiplicities=None) -> "RootSet":
        """Sort ``roots`` and attach residuals computed against ``p``."""
        roots = [as_complex(r) for r in roots]
        mult = list(multiplicities) if multiplicities is not None else [1] * len(roots)
        order = sorted(range(len(roots)), key=lambda i: _sort_key(roots[i]))
        roots = tuple(roots[i] for i in order)
        mult = tuple(mult[i] for i in order)
        return cls(
            roots=roots,
            residuals=tuple(residual(p, r) for r in roots),
            method=method,
            multiplicities=mult,
        )

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)


def eval_poly(p, x) -> complex:
    """Horner evaluation of ``p`` at ``x``."""
    c = coefficients(p)
    x = complex(x)
    acc = 0j
    for ci in reversed(c):
        acc = acc * x + ci
    return acc


def eval_derivative(p, x) -> complex:
    c = coefficients(p)
    x = complex(x)
    acc = 0j
    for k in range(len(c) - 1, 0, -1):
        acc = acc * x + k * c[k]
    return acc


def residual(p, x) -> float:
    """Scale-free residual ``|P(x)| / max(1, max|c_i|)``."""
    c = coefficients(p)
    return abs(eval_poly(c, x)) / max(1.0, max(abs(v) for v in c))


def poly_mul(p, q) -> tuple[complex, ...]:
    a, b = coefficients(p), coefficients(q)
    out = [0j] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return tuple(out)


def poly_from_roots(roots: Iterable) -> tuple[complex, ...]:
    """Monic polynomial with the given roots."""
    out: tuple[complex, ...] = (1 + 0j,)
    for r in roots:
        out = poly_mul(out, (-as_complex(r), 1 + 0j))
    return out


def deflate(p, r, tol: float = 1e-8) -> tuple[complex, ...]:
    """Divide the monic polynomial ``p`` by ``(x - r)``.

    Returns the quotient, lowest degree first.  Raises
    :class:`DeflationResidualTooLarge` when ``r`` is not a root of ``p`` to
    within ``tol`` (scale-free residual).
    """
    c = coefficients(p)
    if len(c) < 2:
        raise ValueError("cannot deflate a constant")
    if c[-1] != 1:
        raise ValueError("deflate expects a monic polynomial")
    r = as_complex(r)
    res = residual(c, r)
    if res > tol:
        raise DeflationResidualTooLarge(res, tol)
    d = len(c) - 1
    q = [0j] * d
    acc = c[d]
    for k in range(d - 1, -1, -1):
        q[k] = acc
        acc = acc * r + c[k]
    return tuple(q)


def _stable_sqrt_sign(b: complex, disc_sqrt: complex) -> complex:
    # sign that avoids cancellation in -(b + s)/2
    return disc_sqrt if (b.conjugate() * disc_sqrt).real >= 0 else -disc_sqrt


def _quadratic_roots(a2: complex, a1: complex, a0: complex) -> tuple[complex, complex]:
    s = _stable_sqrt_sign(a1, cmath.sqrt(a1 * a1 - 4 * a2 * a0))
    q = -(a1 + s) / 2
    if q == 0:
        return 0j, 0j
    return q / a2, a0 / q


def solve_quadratic(a2, a1, a0) -> RootSet:
    """Both roots of ``a2 x^2 + a1 x + a0``.

    The larger-magnitude root comes from the cancellation-free branch and the
    other from Vieta's product, so neither loses digits.
    """
    a2, a1, a0 = as_complex(a2), as_complex(a1), as_complex(a0)
    if a2 == 0:
        raise DegenerateLeadingCoefficient("quadratic with zero leading coefficient")
    return RootSet.build((a0, a1, a2), _quadratic_roots(a2, a1, a0), "closed_form")


def _newton_polish(c: Sequence[complex], x: complex, steps: int = 2) -> complex:
    best, best_val = x, abs(eval_poly(c, x))
    for _ in range(steps):
        if best_val == 0:
            break
        d = eval_derivative(c, best)
        if d == 0:
            break
        cand = best - eval_poly(c, best) / d
        val = abs(eval_poly(c, cand))
        if not val < best_val:
            break
        best, best_val = cand, val
    return best


def _cbrt(z: complex) -> complex:
    if z == 0:
        return 0j
    return cmath.exp(cmath.log(z) / 3)


def solve_cubic(e2, e1, e0) -> tuple[complex, complex, complex]:
    """Roots of the monic cubic ``x^3 + e2 x^2 + e1 x + e0`` (Cardano)."""
    e2, e1, e0 = as_complex(e2), as_complex(e1), as_complex(e0)
    shift = e2 / 3
    P = e1 - e2 * e2 / 3
    Q = 2 * e2**3 / 27 - e2 * e1 / 3 + e0
    sq = cmath.sqrt((Q / 2) ** 2 + (P / 3) ** 3)
    u = -Q / 2 + sq
    v = -Q / 2 - sq
    C = _cbrt(u if abs(u) >= abs(v) else v)
    if C == 0:
        ts = [0j, 0j, 0j]
    else:
        omega = complex(-0.5, math.sqrt(3) / 2)
        ts = []
        for k in range(3):
            w = C * omega**k
            ts.append(w - P / (3 * w))
    cubic = (e0, e1, e2, 1 + 0j)
    return tuple(_newton_polish(cubic, t - shift) for t in ts)


def solve_quartic(c3, c2, c1, c0) -> RootSet:
    """All four roots of the monic quartic ``x^4 + c3 x^3 + c2 x^2 + c1 x + c0``.

    Ferrari's method: depress, pick the resolvent-cubic root that keeps the
    factorisation away from division by a small number, split into two
    quadratics, then take at most two guarded Newton steps per root.
    """
    c3, c2, c1, c0 = (as_complex(v) for v in (c3, c2, c1, c0))
    quartic = (c0, c1, c2, c3, 1 + 0j)
    shift = c3 / 4
    p = c2 - 3 * c3 * c3 / 8
    q = c1 - c2 * c3 / 2 + c3**3 / 8
    r = c0 - c1 * c3 / 4 + c2 * c3 * c3 / 16 - 3 * c3**4 / 256

    ms = solve_cubic(-p / 2, -r, p * r / 2 - q * q / 8)
    m = max(ms, key=lambda v: abs(2 * v - p))
    s2 = 2 * m - p
    if s2 == 0 or abs(s2) <= 1e-15 * max(1.0, abs(p), abs(m)):
        # biquadratic y^4 + p y^2 + r
        ys = []
        for Y in _quadratic_roots(1 + 0j, p, r):
            root = cmath.sqrt(Y)
            ys.extend((root, -root))
    else:
        s = cmath.sqrt(s2)
        h = q / (2 * s)
        ys = [*_quadratic_roots(1 + 0j, -s, m + h), *_quadratic_roots(1 + 0j, s, m - h)]
    roots = [_newton_polish(quartic, y - shift) for y in ys]
    return RootSet.build(quartic, roots, "closed_form")
