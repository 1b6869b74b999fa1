"""Exact and asymptotic positive crank/rank moments of overpartitions.

Exact layer: big-integer q-series (`series`, `genfunc`), a combinatorial
enumeration oracle (`combinat`), and moment algebra (`moments`).  Numeric
layer: asymptotic constants and residual checks (`asympt`) and circle-method
coefficient recovery (`circle`).  The `cli` module drives batch jobs.
"""

from .combinat import (
    Overpartition,
    StatTable,
    build_table,
    enumerate_overpartitions,
    rank,
    residual_crank_weights,
)
from .errors import (
    Inconclusive,
    NonConvergent,
    NonUnitConstantTerm,
    OutOfRange,
    OversizeRequest,
    OvermomentsError,
    PrecisionLoss,
    QuadratureFailure,
)
from .genfunc import (
    ZLaurentSeries,
    crank_binomial_series,
    crank_symmetrized_series,
    crank_two_variable,
    rank_binomial_series,
    rank_symmetrized_series,
    rank_two_variable,
)
from .moments import (
    BasisChange,
    basis_change,
    ospt,
    ospt_values,
    positive_moment,
    positive_moment_values,
    symmetrized_positive_moment,
    symmetrized_moment_values,
)
from .series import (
    PowerSeries,
    RationalSeries,
    lambert_term,
    overpartition_gf,
    pochhammer_q,
)

__version__ = "0.1.0"

__all__ = [
    "Overpartition",
    "StatTable",
    "build_table",
    "enumerate_overpartitions",
    "rank",
    "residual_crank_weights",
    "PowerSeries",
    "RationalSeries",
    "lambert_term",
    "overpartition_gf",
    "pochhammer_q",
    "ZLaurentSeries",
    "crank_binomial_series",
    "crank_symmetrized_series",
    "crank_two_variable",
    "rank_binomial_series",
    "rank_symmetrized_series",
    "rank_two_variable",
    "BasisChange",
    "basis_change",
    "ospt",
    "ospt_values",
    "positive_moment",
    "positive_moment_values",
    "symmetrized_positive_moment",
    "symmetrized_moment_values",
    "OvermomentsError",
    "NonUnitConstantTerm",
    "OversizeRequest",
    "OutOfRange",
    "NonConvergent",
    "PrecisionLoss",
    "QuadratureFailure",
    "Inconclusive",
]
