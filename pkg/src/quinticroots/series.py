"""Power-series roots of principal quintics and trinomial equations.

All series are summed from term-to-term ratios, never from factorials, so the
partial sums stay in floating-point range far past the point where ``(5k)!``
would overflow.  The exact-arithmetic helpers reuse the same ratios with
:class:`fractions.Fraction` and exist for coefficient checks.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import PrincipalQuintic, as_complex
from .exceptions import (
    DegenerateCoefficient,
    OutsideConvergenceDomain,
    SeriesDiverged,
    ShellBudgetExhausted,
    TermBudgetExhausted,
)

__all__ = [
    "SeriesResult",
    "Trinomial",
    "convergence_margin",
    "in_convergence_domain",
    "passare_tsikh_root",
    "passare_tsikh_coefficients",
    "trinomial_root",
    "trinomial_coefficients",
    "trinomial_radius",
    "normalize_trinomial",
    "hypergeometric_coefficient",
    "hypergeometric_pfq",
    "trinomic_quintic_root",
    "trinomic_quintic_coefficients",
    "DEFAULT_REL_TOL",
    "DEFAULT_MAX_SHELLS",
]

DEFAULT_REL_TOL = 1e-12
DEFAULT_MAX_SHELLS = 500
DEFAULT_MAX_TERMS = 2000

_CONVERGED_WINDOW = 3
_DIVERGED_WINDOW = 5


@dataclass(frozen=True)
class SeriesResult:
    value: complex
    terms_used: int
    converged: bool
    last_term_magnitude: float


class _StoppingRule:
    """Tracks successive increments (terms or shell sums) of one series.

    Converged once the last three increments are each below
    ``rel_tol * |partial|`` and the geometric tail they imply is too.
    Diverged after five increments in a row that grow in magnitude.
    """

    def __init__(self, rel_tol: float):
        self.rel_tol = rel_tol
        self.history: list[float] = []
        self.rising = 0

    def update(self, increment_mag: float, partial: complex) -> str | None:
        h = self.history
        if not math.isfinite(increment_mag):
            return "diverged"
        if h and increment_mag > h[-1]:
            self.rising += 1
        else:
            self.rising = 0
        h.append(increment_mag)
        if self.rising >= _DIVERGED_WINDOW:
            return "diverged"
        if len(h) < _CONVERGED_WINDOW:
            return None
        bound = self.rel_tol * abs(partial)
        if any(v > bound for v in h[-_CONVERGED_WINDOW:]):
            return None
        last = h[-1]
        if last == 0:
            return "converged"
        first = h[-_CONVERGED_WINDOW]
        ratio = 0.0 if first == 0 else (last / first) ** (1.0 / (_CONVERGED_WINDOW - 1))
        if ratio >= 1.0:
            return None
        if last * ratio / (1.0 - ratio) <= bound:
            return "converged"
        return None


# -- principal quintic -----------------------------------------------------


def convergence_margin(q) -> float:
    """Left-hand side of the convergence condition in ``(|A|, |B|)``.

    Negative means strictly inside the domain where the double series
    converges; zero or positive means boundary or outside.
    """
    A, B = _principal_ab(q)
    a, b = abs(A), abs(B)
    return (
        5**5 * b * b
        - 4**4 * b
        + 108 * a**5
        - 27 * a**4
        + 1600 * a * b
        - 2250 * a * a * b
    )


_NEAR_ORIGIN = 1e-3


def in_convergence_domain(q) -> bool:
    """True when the series is known to converge at ``q``.

    The margin polynomial vanishes at the origin, where the series is the
    single term ``-1``, so the origin is admitted explicitly.
    """
    A, B = _principal_ab(q)
    a, b = abs(A), abs(B)
    if a <= _NEAR_ORIGIN and b <= _NEAR_ORIGIN:
        # -27 a^4 - 256 b dominates here, but the float margin can underflow to 0
        return True
    return convergence_margin(q) < 0


def _principal_ab(q):
    if isinstance(q, PrincipalQuintic):
        return q.A, q.B
    A, B = q
    return as_complex(A), as_complex(B)


def _step_k(j, k):
    # |T(j, k+1) / T(j, k)| / |B|
    s = 2 * j + 5 * k
    num = (s + 1) * (s + 2) * (s + 3) * (s + 4) * (s + 5)
    t = j + 4 * k
    den = (k + 1) * (t + 2) * (t + 3) * (t + 4) * (t + 5)
    return num, den


def _step_j(j, k):
    # |T(j+1, k) / T(j, k)| / |A|
    s = 2 * j + 5 * k
    return (s + 1) * (s + 2), (j + 1) * (j + 4 * k + 2)


def passare_tsikh_coefficients(max_shell: int) -> dict[tuple[int, int], Fraction]:
    """Exact coefficients ``c[j, k]`` of ``A^j B^k`` in the series root.

    Produced by the same ratio recurrences as :func:`passare_tsikh_root`,
    sign included, for every ``j + k <= max_shell``.
    """
    out = {(0, 0): Fraction(-1)}
    for s in range(max_shell):
        for j in range(s + 1):
            k = s - j
            num, den = _step_k(j, k)
            out[(j, k + 1)] = -out[(j, k)] * Fraction(num, den)
        num, den = _step_j(s, 0)
        out[(s + 1, 0)] = out[(s, 0)] * Fraction(num, den)
    return out


def passare_tsikh_root(
    q,
    rel_tol: float = DEFAULT_REL_TOL,
    max_shells: int = DEFAULT_MAX_SHELLS,
    check_domain: bool = True,
) -> SeriesResult:
    """Series root of ``B x^5 + A x^2 + x + 1 = 0``.

    The double series over ``(j, k)`` is summed in anti-diagonal shells
    ``j + k = s``; each shell is one vectorised update of the previous one.

    Parameters
    ----------
    q : PrincipalQuintic or (A, B)
    rel_tol : float
        Relative size below which shell sums count as negligible.
    max_shells : int
        Shell budget.
    check_domain : bool
        Refuse points outside the convergence domain up front.  Switch off to
        let the divergence detector decide.

    Raises
    ------
    OutsideConvergenceDomain, SeriesDiverged, ShellBudgetExhausted
    """
    A, B = _principal_ab(q)
    if check_domain and not in_convergence_domain((A, B)):
        raise OutsideConvergenceDomain(
            f"(A, B) = ({A}, {B}) is outside the convergence domain "
            f"(margin {convergence_margin((A, B)):.6g})"
        )

    rule = _StoppingRule(rel_tol)
    terms = np.array([-1.0 + 0j])
    partial = -1.0 + 0j
    used = 1
    status = rule.update(1.0, partial)
    for s in range(max_shells):
        if status is not None:
            break
        # terms[j] holds T(j, s - j)
        j = np.arange(s + 1, dtype=float)
        num, den = _step_k(j, s - j)
        jnum, jden = _step_j(s, 0)
        with np.errstate(over="ignore", invalid="ignore"):
            tail = terms[-1] * A * (jnum / jden)
            terms = np.append(terms * (-B) * (num / den), tail)
            shell = complex(terms.sum())
        partial += shell
        used += s + 2
        status = rule.update(abs(shell), partial)

    last = rule.history[-1]
    if status == "converged":
        return SeriesResult(partial, used, True, last)
    if status == "diverged":
        raise SeriesDiverged(
            f"shell sums grew for {_DIVERGED_WINDOW} consecutive shells", partial, used
        )
    raise ShellBudgetExhausted(f"no convergence within {max_shells} shells", partial, used)


# -- general trinomial -----------------------------------------------------


def _unit_phase(half_turns: Fraction) -> complex:
    """``exp(i*pi*half_turns)`` with exact values on the axes."""
    r = half_turns % 2
    exact = {
        Fraction(0): 1 + 0j,
        Fraction(1, 2): 1j,
        Fraction(1): -1 + 0j,
        Fraction(3, 2): -1j,
    }
    if r in exact:
        return exact[r]
    return cmath.exp(1j * math.pi * float(r))


@dataclass(frozen=True)
class Trinomial:
    """``1 + x^m + a x^n = 0`` with ``n > m > 0``.

    ``branch`` picks the m-th root of -1 the series expands around:
    ``eps = exp(i*pi*(1 + 2*branch)/m)``.
    """

    m: int
    n: int
    a: complex
    branch: int = 0

    def __post_init__(self):
        if not (isinstance(self.m, int) and isinstance(self.n, int)):
            raise TypeError("m and n must be integers")
        if not self.n > self.m > 0:
            raise ValueError(f"need n > m > 0, got m={self.m}, n={self.n}")
        if not 0 <= self.branch < self.m:
            raise ValueError(f"branch must lie in [0, {self.m - 1}]")
        object.__setattr__(self, "a", as_complex(self.a))

    @property
    def epsilon(self) -> complex:
        return _unit_phase(Fraction(1 + 2 * self.branch, self.m))

    def eps_power(self, p: int) -> complex:
        return _unit_phase(Fraction((1 + 2 * self.branch) * p, self.m))

    @property
    def coeffs(self) -> tuple[complex, ...]:
        c = [0j] * (self.n + 1)
        c[0] += 1
        c[self.m] += 1
        c[self.n] += self.a
        return tuple(c)


def trinomial_radius(m: int, n: int) -> float:
    """Radius of convergence in ``|a|`` of the trinomial series."""
    r = n / m
    return (r - 1) ** (r - 1) / r**r


def trinomial_coefficients(m: int, n: int, count: int, verbatim: bool = False):
    """Magnitude factors of the first ``count`` series terms.

    Term ``k`` of the root is ``eps**(1 + n*k) * coef[k] * a**k``.  The
    default form is ``binom((n*k + 1)/m, k) / (n*k + 1)`` and is returned as
    exact fractions.  ``verbatim=True`` gives the gamma-ratio form
    ``Gamma(1 + n*k/m) / (Gamma(1 + (1 + (n - m)*k)/m) * k!)``; it is exact
    (integer factorials) only for ``m == 1`` and a float otherwise.
    """
    out = []
    for k in range(count):
        if verbatim:
            if m == 1:
                out.append(
                    Fraction(math.factorial(n * k), math.factorial(k) * math.factorial((n - 1) * k + 1))
                )
            else:
                out.append(math.exp(_log_verbatim(m, n, k)))
        else:
            x = Fraction(n * k + 1, m)
            c = Fraction(1)
            for i in range(k):
                c *= (x - i) / (i + 1)
            out.append(c / (n * k + 1))
    return out


def _log_verbatim(m, n, k):
    return math.lgamma(1 + n * k / m) - math.lgamma(1 + (1 + (n - m) * k) / m) - math.lgamma(k + 1)


def _repaired_term(t: Trinomial, k: int) -> complex:
    # eps * binom((nk+1)/m, k) / (nk+1) * (eps^n a)^k, built as one product
    z = t.eps_power(t.n) * t.a
    x = (t.n * k + 1) / t.m
    acc = t.epsilon / (t.n * k + 1)
    for i in range(k):
        acc *= (x - i) / (i + 1) * z
    return acc


def _verbatim_term(t: Trinomial, k: int) -> complex:
    if k == 0:
        return t.epsilon * math.exp(_log_verbatim(t.m, t.n, 0))
    if t.a == 0:
        return 0j
    mag = _log_verbatim(t.m, t.n, k) + k * math.log(abs(t.a))
    return t.eps_power(1 + t.n * k) * math.exp(mag) * cmath.exp(1j * k * cmath.phase(t.a))


def trinomial_root(
    t: Trinomial,
    rel_tol: float = DEFAULT_REL_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    verbatim: bool = False,
) -> SeriesResult:
    """Series root of ``1 + x^m + a x^n = 0`` near ``eps``.

    The default series comes from Lagrange inversion of
    ``x = eps * (1 + a x^n)^(1/m)`` and equals ``eps`` exactly at ``a = 0``.
    ``verbatim=True`` sums the gamma-ratio form instead; that form agrees
    with the default only for ``m == 1`` and is kept to show the mismatch.

    Raises
    ------
    SeriesDiverged, TermBudgetExhausted
    """
    term_fn = _verbatim_term if verbatim else _repaired_term
    rule = _StoppingRule(rel_tol)
    partial = 0j
    for k in range(max_terms):
        term = term_fn(t, k)
        partial += term
        status = rule.update(abs(term), partial)
        if status == "converged":
            return SeriesResult(partial, k + 1, True, abs(term))
        if status == "diverged":
            raise SeriesDiverged(
                f"terms grew for {_DIVERGED_WINDOW} consecutive steps", partial, k + 1
            )
    raise TermBudgetExhausted(f"no convergence within {max_terms} terms", partial, max_terms)


def normalize_trinomial(a0, am, an, m: int, n: int) -> tuple[Trinomial, complex]:
    """Bring ``a0 + am x^m + an x^n`` to the form ``1 + y^m + a y^n``.

    Returns the trinomial and the scale ``lam = (am/a0)^(1/m)`` (principal
    branch): ``x`` solves the original equation iff ``lam * x`` solves the
    normalised one.
    """
    a0, am, an = as_complex(a0), as_complex(am), as_complex(an)
    if a0 == 0:
        raise DegenerateCoefficient("constant coefficient is zero; x = 0 is a root")
    if am == 0:
        raise DegenerateCoefficient("middle coefficient is zero; the equation is a binomial")
    ratio = am / a0
    lam = ratio ** (1.0 / m) if m != 1 else ratio
    a = (an / a0) / lam**n
    return Trinomial(m, n, a), lam


# -- hypergeometric form of the trinomic quintic ---------------------------

_BRING_UPPER = (Fraction(1, 5), Fraction(2, 5), Fraction(3, 5), Fraction(4, 5))
_BRING_LOWER = (Fraction(1, 2), Fraction(3, 4), Fraction(5, 4))
_BRING_SCALE = Fraction(5**5, 4**4)


def hypergeometric_coefficient(upper, lower, k: int) -> Fraction:
    """Exact ``prod (a_i)_k / (prod (b_i)_k * k!)`` for rational parameters."""
    c = Fraction(1)
    for i in range(k):
        for a in upper:
            c *= Fraction(a) + i
        for b in lower:
            c /= Fraction(b) + i
        c /= i + 1
    return c


def hypergeometric_pfq(
    upper,
    lower,
    z,
    rel_tol: float = DEFAULT_REL_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
) -> SeriesResult:
    """Sum ``pFq(upper; lower; z)`` term by term via the Pochhammer ratio."""
    z = as_complex(z)
    upper = [float(a) for a in upper]
    lower = [float(b) for b in lower]
    rule = _StoppingRule(rel_tol)
    term = 1 + 0j
    partial = term
    rule.update(1.0, partial)
    for k in range(max_terms):
        ratio = z / (k + 1)
        for a in upper:
            ratio *= a + k
        for b in lower:
            ratio /= b + k
        term *= ratio
        partial += term
        status = rule.update(abs(term), partial)
        if status == "converged":
            return SeriesResult(partial, k + 2, True, abs(term))
        if status == "diverged":
            raise SeriesDiverged("hypergeometric terms kept growing", partial, k + 2)
    raise TermBudgetExhausted(f"no convergence within {max_terms} terms", partial, max_terms)


def trinomic_quintic_coefficients(count: int) -> list[Fraction]:
    """Coefficient of ``t^(4k+1)`` in ``t * 4F3(...; 5^5 t^4 / 4^4)``."""
    return [
        hypergeometric_coefficient(_BRING_UPPER, _BRING_LOWER, k) * _BRING_SCALE**k
        for k in range(count)
    ]


def trinomic_quintic_root(
    t,
    rel_tol: float = DEFAULT_REL_TOL,
    max_terms: int = DEFAULT_MAX_TERMS,
    check_domain: bool = True,
) -> SeriesResult:
    """The root ``t + t^5 + 5 t^9 + ...`` of ``x^5 - x + t = 0``.

    Negating ``t`` gives the matching root of ``x^5 - x - t = 0``, since the
    series is odd in ``t``.
    """
    t = as_complex(t)
    z = complex(_BRING_SCALE) * t**4
    if check_domain and not abs(z) < 1:
        raise OutsideConvergenceDomain(f"|5^5 t^4 / 4^4| = {abs(z):.6g} >= 1")
    r = hypergeometric_pfq(_BRING_UPPER, _BRING_LOWER, z, rel_tol, max_terms)
    return SeriesResult(t * r.value, r.terms_used, r.converged, abs(t) * r.last_term_magnitude)
