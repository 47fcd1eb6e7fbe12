import cmath

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from quinticroots.core import (
    DepressedQuintic,
    PrincipalQuintic,
    Quintic,
    RootSet,
    deflate,
    eval_poly,
    monic,
    poly_from_roots,
    residual,
    solve_cubic,
    solve_quadratic,
    solve_quartic,
)
from quinticroots.exceptions import DeflationResidualTooLarge, DegenerateLeadingCoefficient
from quinticroots.oracle import find_all_roots, match_multisets

from conftest import unit_disc

small = st.floats(-3, 3, allow_nan=False)
cplx = st.builds(complex, small, small)


def close_sets(a, b, tol):
    return match_multisets(list(a), list(b), tol).success


def test_eval_poly_examples():
    assert eval_poly((-1, 0, 0, 0, 0, 1), 1) == 0
    assert eval_poly((1, 1), -1) == 0
    assert eval_poly((2, 0, 0, 1, 0, 1), 1) == 4


def test_quintic_types():
    with pytest.raises(DegenerateLeadingCoefficient):
        Quintic((1, 2, 3, 4, 5, 0))
    q = Quintic((2, 0, 0, 0, 0, 2)).to_monic()
    assert q.monic and q.coeffs[0] == 1
    assert DepressedQuintic(1, 2, 3).coeffs == (3, 2, 0, 1, 0, 1)
    assert PrincipalQuintic(0.5, 0).monic_coeffs() == (2, 2, 1)
    assert PrincipalQuintic(0, 0).monic_coeffs() == (1, 1)


def test_monic_rejects_constant():
    with pytest.raises(DegenerateLeadingCoefficient):
        monic((3, 0, 0))


def test_rootset_sorted_and_validated():
    rs = RootSet.build((-1, 0, 1), [1, -1], "closed_form")
    assert rs.roots == (-1, 1)
    assert rs.max_residual == 0
    with pytest.raises(ValueError):
        RootSet((1,), (0.0,), "guess")


def test_deflate_cyclotomic():
    q = deflate((-1, 0, 0, 0, 0, 1), 1)
    assert q == (1, 1, 1, 1, 1)


def test_deflate_fifth_root():
    a0 = 0.3 - 0.7j
    r = (-a0) ** 0.2
    q = deflate((a0, 0, 0, 0, 0, 1), r)
    assert abs(eval_poly(poly_from_roots([r]), 0) * q[0] - a0) < 1e-14


def test_deflate_rejects_non_root():
    with pytest.raises(DeflationResidualTooLarge):
        deflate((-1, 0, 1), 2)
    with pytest.raises(ValueError):
        deflate((-1, 0, 2), 1)


def test_solve_quadratic_examples():
    assert solve_quadratic(1, 0, -1).roots == (-1, 1)
    assert solve_quadratic(1, 2, 1).roots == (-1, -1)
    r = solve_quadratic(-0.1, 1, 1).roots
    assert min(abs(z + 0.916079783099616) for z in r) < 1e-14
    with pytest.raises(DegenerateLeadingCoefficient):
        solve_quadratic(0, 1, 1)


def test_solve_quartic_examples():
    r = solve_quartic(0, 0, 0, -1)
    assert close_sets(r.roots, [1, -1, 1j, -1j], 1e-14)
    r = solve_quartic(1, 1, 1, 1)
    prim = [cmath.exp(2j * cmath.pi * k / 5) for k in range(1, 5)]
    assert close_sets(r.roots, prim, 1e-14)
    # biquadratic with repeated roots
    r = solve_quartic(0, -2, 0, 1)
    assert close_sets(r.roots, [1, 1, -1, -1], 1e-7)


def test_solve_cubic_triple_root():
    r = solve_cubic(-3, 3, -1)
    assert all(abs(z - 1) < 1e-5 for z in r)


def test_quartic_matches_oracle_random(rng):
    for _ in range(200):
        c = [unit_disc(rng, 3) for _ in range(4)]
        got = solve_quartic(*c)
        ref = find_all_roots((c[3], c[2], c[1], c[0], 1))
        assert close_sets(got.roots, ref.roots, 1e-9)


@settings(max_examples=100, deadline=None)
@given(st.lists(cplx, min_size=1, max_size=5))
def test_poly_from_roots_reconstructs(roots):
    p = poly_from_roots(roots)
    assert len(p) == len(roots) + 1 and p[-1] == 1
    for r in roots:
        assert residual(p, r) < 1e-10


@settings(max_examples=100, deadline=None)
@given(cplx, cplx, cplx)
def test_quadratic_vieta(a2, a1, a0):
    if abs(a2) < 1e-3:
        return
    x1, x2 = solve_quadratic(a2, a1, a0).roots
    scale = max(1.0, abs(a1 / a2), abs(a0 / a2))
    assert abs(x1 + x2 + a1 / a2) < 1e-9 * scale
    assert abs(x1 * x2 - a0 / a2) < 1e-9 * scale


def test_residual_is_scale_free():
    assert residual((2e6, 0, 1), 0) == pytest.approx(1.0)
    assert np.isclose(residual((0.5, 1), 0), 0.5)
