import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from quinticroots.estimators import DepressedQuinticSolver, LandauEquationOfState
from quinticroots.oracle import find_all_roots, match_multisets


def test_eos_predict_matches_examples():
    est = LandauEquationOfState(a=1, b=0, c=1).fit([[0.0]])
    assert est.predict([[2.0]])[0] == pytest.approx(1, abs=1e-12)
    est.set_params(a=-1)
    assert est.predict([[0.0]])[0] == 1


def test_eos_params_and_clone():
    est = LandauEquationOfState(a=-0.5, b=0.1, c=2)
    assert est.get_params() == {"a": -0.5, "b": 0.1, "c": 2, "max_shells": 5000}
    assert clone(est).get_params() == est.get_params()


def test_eos_validation():
    with pytest.raises(NotFittedError):
        LandauEquationOfState().predict([[0.0]])
    with pytest.raises(ValueError):
        LandauEquationOfState(c=0).fit([[0.0]])
    with pytest.raises(ValueError):
        LandauEquationOfState().fit([[0.0, 1.0]])
    with pytest.raises(ValueError):
        LandauEquationOfState().fit([[np.nan]])


def test_eos_odd_in_field():
    f = np.linspace(0.1, 1, 7).reshape(-1, 1)
    est = LandauEquationOfState(a=-0.3, b=0.2, c=1).fit(f)
    assert np.allclose(est.predict(f), -est.predict(-f), atol=1e-12)


def test_eos_score_on_own_predictions():
    f = np.linspace(-1, 1, 9).reshape(-1, 1)
    est = LandauEquationOfState(a=0.5, c=1).fit(f)
    assert est.score(f, est.predict(f)) == 1.0


def test_solver_transform_matches_oracle(rng):
    X = rng.uniform(-1, 1, size=(10, 3))
    roots = DepressedQuinticSolver().fit_transform(X)
    assert roots.shape == (10, 5) and roots.dtype == np.complex128
    for row, r in zip(X, roots):
        ref = find_all_roots((row[2], row[1], 0, row[0], 0, 1)).roots
        assert match_multisets(list(r), ref, 1e-7).success


def test_solver_in_pipeline():
    pipe = make_pipeline(DepressedQuinticSolver())
    out = pipe.fit_transform([[0.0, 0.0, -1.0]])
    assert np.allclose(np.abs(out), 1)


def test_solver_shape_checks():
    with pytest.raises(ValueError):
        DepressedQuinticSolver().fit(np.zeros((2, 2)))
    s = DepressedQuinticSolver().fit(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        s.transform(np.zeros((2, 4)))
