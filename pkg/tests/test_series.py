import cmath
import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quinticroots.core import PrincipalQuintic, eval_poly, monic
from quinticroots.exceptions import (
    OutsideConvergenceDomain,
    SeriesDiverged,
    SeriesError,
    TermBudgetExhausted,
)
from quinticroots.oracle import find_all_roots
from quinticroots.series import (
    Trinomial,
    convergence_margin,
    hypergeometric_coefficient,
    hypergeometric_pfq,
    in_convergence_domain,
    normalize_trinomial,
    passare_tsikh_coefficients,
    passare_tsikh_root,
    trinomial_coefficients,
    trinomial_radius,
    trinomial_root,
    trinomic_quintic_coefficients,
    trinomic_quintic_root,
)


def nearest(x, roots):
    return min(abs(x - r) for r in roots)


def test_factorial_oracle_for_double_series():
    coef = passare_tsikh_coefficients(12)
    for (j, k), c in coef.items():
        exact = Fraction(
            math.factorial(2 * j + 5 * k),
            math.factorial(j) * math.factorial(k) * math.factorial(j + 4 * k + 1),
        )
        assert c == -((-1) ** k) * exact


def test_origin_and_quadratic_case():
    assert passare_tsikh_root((0, 0)).value == -1
    r = passare_tsikh_root(PrincipalQuintic(-0.1, 0))
    assert abs(r.value + 0.916079783099616) < 1e-13


def test_pure_b_case():
    r = passare_tsikh_root((0, 0.01))
    assert abs(r.value + 0.9904676186) < 1e-9
    assert abs(0.01 * r.value**5 + r.value + 1) < 1e-10


def test_matches_oracle_inside():
    q = PrincipalQuintic(-0.05, 0.02)
    x = passare_tsikh_root(q).value
    assert nearest(x, find_all_roots(q.monic_coeffs()).roots) < 1e-9


def test_margin_examples():
    assert convergence_margin((0.25, 0)) == pytest.approx(0, abs=1e-15)
    assert convergence_margin((0, 0.04)) == pytest.approx(-5.24)
    assert convergence_margin((0, 0.1)) == pytest.approx(5.65)
    assert in_convergence_domain((0, 0))
    assert not in_convergence_domain((0.25, 0))


def test_refuses_outside():
    with pytest.raises(OutsideConvergenceDomain):
        passare_tsikh_root((0, 0.1))


def test_divergence_detected_when_forced():
    with pytest.raises(SeriesDiverged) as info:
        passare_tsikh_root((0, 0.5), check_domain=False)
    assert info.value.terms_used > 0


def test_budget_exhaustion():
    with pytest.raises(SeriesError):
        passare_tsikh_root((0.2, 0.001), max_shells=3)


@settings(max_examples=40, deadline=None)
@given(st.floats(0, 0.2), st.floats(0, 2 * np.pi))
def test_quadratic_closed_form(r, phase):
    A = r * cmath.exp(1j * phase)
    if A == 0:
        return
    x = passare_tsikh_root((A, 0)).value
    assert abs(x + 2 / (1 + cmath.sqrt(1 - 4 * A))) < 1e-11


# -- trinomial -------------------------------------------------------------


def test_trinomial_examples():
    assert trinomial_root(Trinomial(1, 2, 0)).value == -1
    assert trinomial_root(Trinomial(3, 5, 0, branch=1)).value == -1
    x = trinomial_root(Trinomial(2, 4, 0.01)).value
    assert abs(x - 1.0050896200520814j) < 1e-13
    assert nearest(x, find_all_roots(monic(Trinomial(2, 4, 0.01).coeffs)).roots) < 1e-12


def test_repaired_first_order_coefficient():
    # x = eps * (1 + a/2 + ...) for 1 + x^2 + a x^4
    assert trinomial_coefficients(2, 4, 2)[1] == Fraction(1, 2)


def test_catalan_case():
    cat = [Fraction(math.comb(2 * j, j), j + 1) for j in range(15)]
    assert trinomial_coefficients(1, 2, 15) == cat


def test_verbatim_equals_repaired_for_m1():
    for n in (2, 3, 5):
        assert trinomial_coefficients(1, n, 10) == trinomial_coefficients(1, n, 10, verbatim=True)


def test_verbatim_breaks_for_m2():
    # the gamma-ratio form does not even reproduce eps at a = 0
    assert trinomial_coefficients(2, 4, 1, verbatim=True)[0] != 1
    x = trinomial_root(Trinomial(2, 4, 0.01), verbatim=True).value
    assert abs(x - 1.0050896200520814j) > 1e-3


def test_trinomial_divergence():
    with pytest.raises((SeriesDiverged, TermBudgetExhausted)):
        trinomial_root(Trinomial(1, 2, 2.0))


def test_radius():
    assert trinomial_radius(1, 2) == pytest.approx(0.25)
    assert trinomial_radius(1, 5) == pytest.approx(4**4 / 5**5)


def test_normalize_examples():
    t, lam = normalize_trinomial(1, 1, 0.3, 1, 5)
    assert (t.a, lam) == (0.3, 1)
    t, lam = normalize_trinomial(2, 2, 4, 1, 2)
    assert (t.a, lam) == (2, 1)
    t, lam = normalize_trinomial(1, 4, 1, 2, 4)
    assert lam == 2 and t.a == pytest.approx(1 / 16)
    xs = find_all_roots(monic((1, 0, 4, 0, 1))).roots
    ys = find_all_roots(monic(t.coeffs)).roots
    for x in xs:
        assert nearest(lam * x, ys) < 1e-9


def test_normalized_root_solves_original():
    t, lam = normalize_trinomial(-0.01, 1, 1, 3, 5)
    for b in range(3):
        y = trinomial_root(Trinomial(3, 5, t.a, b)).value
        assert abs(eval_poly((-0.01, 0, 0, 1, 0, 1), y / lam)) < 1e-14


def test_normalize_rejects_degenerate():
    with pytest.raises(ValueError):
        normalize_trinomial(0, 1, 1, 1, 2)
    with pytest.raises(ValueError):
        normalize_trinomial(1, 0, 1, 1, 2)


# -- hypergeometric form ---------------------------------------------------


def test_trinomic_coefficients_integers():
    want = [Fraction(math.factorial(5 * k), math.factorial(k) * math.factorial(4 * k + 1)) for k in range(9)]
    assert trinomic_quintic_coefficients(9) == want


def test_trinomic_root_examples():
    assert trinomic_quintic_root(0).value == 0
    x = trinomic_quintic_root(0.1).value
    assert abs(x - 0.10001000500350284) < 1e-15
    assert abs(x**5 - x + 0.1) < 1e-12
    x = trinomic_quintic_root(0.2).value
    oracle = find_all_roots((0.2, -1, 0, 0, 0, 1)).roots
    assert nearest(x, oracle) < 1e-10
    with pytest.raises(OutsideConvergenceDomain):
        trinomic_quintic_root(1.0)


def test_pfq_reduces_to_exponential():
    assert abs(hypergeometric_pfq([], [], 1.0).value - math.e) < 1e-14
    assert hypergeometric_coefficient([1], [1], 3) == Fraction(1, 6)


def test_residual_inside_domain(rng):
    count = 0
    while count < 500:
        A = rng.uniform(0, 0.3) * cmath.exp(2j * np.pi * rng.uniform())
        B = rng.uniform(0, 0.09) * cmath.exp(2j * np.pi * rng.uniform())
        if convergence_margin((A, B)) >= -0.05:
            continue
        count += 1
        x = passare_tsikh_root((A, B), max_shells=20000).value
        assert abs(B * x**5 + A * x**2 + x + 1) < 1e-9
