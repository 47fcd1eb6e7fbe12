"""scikit-learn style wrappers.

``LandauEquationOfState`` maps external field values to equilibrium order
parameters; ``DepressedQuinticSolver`` maps rows ``(a3, a1, a0)`` to the five
roots of ``x^5 + a3 x^3 + a1 x + a0``.  Both are stateless apart from
validation, so ``fit`` only records the input width.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, RegressorMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .core import DepressedQuintic
from .eos import LandauParams, equilibrium
from .tschirnhaus import PipelineOptions, solve_pipeline

__all__ = ["LandauEquationOfState", "DepressedQuinticSolver"]


class LandauEquationOfState(RegressorMixin, BaseEstimator):
    """Equilibrium ``u`` for the free energy ``-f u + a u^2/2 + b u^4/4 + c u^6/6``.

    ``X`` holds one column of field values ``f``.  ``y`` is accepted and
    ignored so the estimator drops into pipelines and ``score``.
    """

    def __init__(self, a=0.0, b=0.0, c=1.0, max_shells=5000):
        self.a = a
        self.b = b
        self.c = c
        self.max_shells = max_shells

    def _check_params(self):
        for name in ("a", "b", "c"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if not self.c > 0:
            raise ValueError("c must be positive")
        if int(self.max_shells) < 1:
            raise ValueError("max_shells must be >= 1")

    def fit(self, X, y=None):
        self._check_params()
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != 1:
            raise ValueError(f"expected a single column of field values, got {X.shape[1]}")
        self.n_features_in_ = 1
        return self

    def predict(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        opts = PipelineOptions(max_shells=int(self.max_shells))
        return np.array(
            [equilibrium(LandauParams(self.a, self.b, self.c, f), opts).u_eq for f in X[:, 0]]
        )


class DepressedQuinticSolver(TransformerMixin, BaseEstimator):
    """Rows ``(a3, a1, a0)`` to a ``(n, 5)`` complex array of roots.

    Roots in each row are sorted by real then imaginary part.  Coefficients
    are real here because sklearn's validators reject complex arrays; use
    :func:`quinticroots.tschirnhaus.solve_pipeline` directly for complex input.
    """

    def __init__(self, max_shells=5000, pipeline_tol=1e-7):
        self.max_shells = max_shells
        self.pipeline_tol = pipeline_tol

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != 3:
            raise ValueError(f"expected columns (a3, a1, a0), got {X.shape[1]} columns")
        self.n_features_in_ = 3
        return self

    def transform(self, X):
        check_is_fitted(self, "n_features_in_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"X has {X.shape[1]} features, expected {self.n_features_in_}")
        opts = PipelineOptions(max_shells=int(self.max_shells), pipeline_tol=float(self.pipeline_tol))
        out = np.empty((X.shape[0], 5), dtype=np.complex128)
        for i, (a3, a1, a0) in enumerate(X):
            out[i] = solve_pipeline(DepressedQuintic(a3, a1, a0), opts).recovered_roots.roots
        return out
