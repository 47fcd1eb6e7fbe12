"""Series and Tschirnhaus-reduction solvers for quintic equations.

The public surface is re-exported here; see the submodules for details.
"""

from .core import (
    DepressedQuintic,
    PrincipalQuintic,
    Quintic,
    RootSet,
    deflate,
    eval_poly,
    solve_quadratic,
    solve_quartic,
)
from .eos import LandauParams, critical_isotherm, equilibrium, sweep
from .oracle import OracleConfig, find_all_roots, match_multisets
from .series import (
    Trinomial,
    convergence_margin,
    normalize_trinomial,
    passare_tsikh_root,
    trinomial_root,
    trinomic_quintic_root,
)
from .tschirnhaus import PipelineOptions, reduce_to_principal, rescale, solve_pipeline

__version__ = "0.1.0"

__all__ = [
    "DepressedQuintic",
    "PrincipalQuintic",
    "Quintic",
    "RootSet",
    "deflate",
    "eval_poly",
    "solve_quadratic",
    "solve_quartic",
    "LandauParams",
    "critical_isotherm",
    "equilibrium",
    "sweep",
    "OracleConfig",
    "find_all_roots",
    "match_multisets",
    "Trinomial",
    "convergence_margin",
    "normalize_trinomial",
    "passare_tsikh_root",
    "trinomial_root",
    "trinomic_quintic_root",
    "PipelineOptions",
    "reduce_to_principal",
    "rescale",
    "solve_pipeline",
]
