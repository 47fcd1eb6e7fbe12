import numpy as np
import pytest

from quinticroots.eos import (
    LandauParams,
    critical_isotherm,
    equilibrium,
    free_energy,
    linear_temperature_coefficient,
    state_residual,
    sweep,
    to_depressed_quintic,
)
from quinticroots.exceptions import ZeroSexticCoefficient
from quinticroots.oracle import find_all_roots


def test_to_depressed_examples():
    q = to_depressed_quintic(LandauParams(1, 2, 2, 4))
    assert (q.a3, q.a1, q.a0) == (1, 0.5, -2)
    q = to_depressed_quintic(LandauParams(0, 0, 1, 0))
    assert (q.a3, q.a1, q.a0) == (0, 0, 0)
    with pytest.raises(ZeroSexticCoefficient):
        to_depressed_quintic(LandauParams(1, 1, 0, 1))


def test_free_energy_examples():
    assert free_energy(LandauParams(1, 1, 1, 1), 0) == 0
    assert free_energy(LandauParams(-1, 0, 1, 0), 1) == pytest.approx(-1 / 3)
    assert free_energy(LandauParams(0, 0, 6, 0), 1) == pytest.approx(1)


def test_params_validated():
    with pytest.raises(ValueError):
        LandauParams(float("nan"), 0, 1, 0)


def test_equilibrium_examples():
    assert equilibrium(LandauParams(0, 0, 1, 32)).u_eq == pytest.approx(2, abs=1e-12)
    r = equilibrium(LandauParams(1, 0, 1, 2))
    assert r.u_eq == pytest.approx(1, abs=1e-12)
    assert not r.degenerate


def test_first_order_tie():
    r = equilibrium(LandauParams(-1, 0, 1, 0))
    assert r.degenerate and r.u_eq == 1
    assert r.tied == (-1, 1)
    assert sorted(s.u for s in r.all_stationary) == [-1, 0, 1]
    stable = {s.u: s.stable for s in r.all_stationary}
    assert stable == {-1: True, 0: False, 1: True}


def test_critical_isotherm_examples():
    r = equilibrium(LandauParams(0, 2, 1, 3))
    assert r.u_eq == pytest.approx(1, abs=1e-12)
    r = critical_isotherm(LandauParams(0, 1, 1, 0.01))
    assert r.method == "trinomial_series"
    oracle = find_all_roots(to_depressed_quintic(LandauParams(0, 1, 1, 0.01)).coeffs).roots
    assert min(abs(r.u_eq - x) for x in oracle) < 1e-9


def test_critical_isotherm_small_field_scaling():
    r = critical_isotherm(LandauParams(0, 1, 1, 1e-6))
    assert abs(r.u_eq**3 / 1e-6 - 1) < 0.01


def test_critical_isotherm_large_coupling_uses_oracle():
    r = critical_isotherm(LandauParams(0, 1, 1, 50))
    assert r.method == "oracle"
    assert state_residual(LandauParams(0, 1, 1, 50), r.u_eq) < 1e-9


def test_critical_isotherm_validates():
    with pytest.raises(ValueError):
        critical_isotherm(LandauParams(1, 1, 1, 1))
    with pytest.raises(ValueError):
        critical_isotherm(LandauParams(0, 0, 1, 1))


def test_negative_c_rejected():
    with pytest.raises(ZeroSexticCoefficient):
        equilibrium(LandauParams(0, 0, -1, 1))


def test_temperature_coefficient():
    assert linear_temperature_coefficient(2.0, 310.0, 300.0) == 20.0


def test_sweep_order_and_errors():
    cells = sweep([-1, 1], [0, 0.5], b=0, c=1)
    assert [(c.a, c.f) for c in cells] == [(-1, 0), (-1, 0.5), (1, 0), (1, 0.5)]
    assert all(c.error is None for c in cells)
    with pytest.raises(ValueError):
        sweep([], [0], 0, 1)


def test_sweep_workers_deterministic():
    a = np.linspace(-1, 1, 5)
    f = np.linspace(-1, 1, 5)
    serial = sweep(a, f, b=-0.5, c=1)
    threaded = sweep(a, f, b=-0.5, c=1, workers=4)
    assert [c.result.u_eq for c in serial] == [c.result.u_eq for c in threaded]


def test_monotone_in_field_above_transition():
    us = [equilibrium(LandauParams(0.5, 0.2, 1, f)).u_eq for f in np.linspace(-2, 2, 21)]
    assert all(u2 > u1 for u1, u2 in zip(us, us[1:]))
