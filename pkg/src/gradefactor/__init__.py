"""Decompose matrices of ordinal grades into formal-concept factors.

The library works on finite equidistant chains of grades with a residuated
t-norm, represents matrices exactly as integer levels, and factors them as
the sup-t-norm product of an object-factor and a factor-attribute matrix
whose factors are formal concepts of the input.
"""

from .concepts import (
    BudgetExceededError,
    FormalConcept,
    close_intent,
    concept_from_intent,
    covers,
    down,
    enumerate_concepts,
    graded_singleton,
    up,
)
from .data import (
    ColumnRange,
    RawTable,
    discretize,
    random_factorizable,
    read_csv,
    read_fimi,
    read_ranges_csv,
    read_raw_csv,
    write_csv,
)
from .factorization import (
    DEFAULT_TIE_BREAK,
    TIE_BREAK_POLICIES,
    CoverUniverse,
    FactorSet,
    coverage_curve,
    factor_matrices,
    find_factors,
    gain,
    optimal_factorization,
)
from .matrix import (
    LEVEL_DTYPE,
    FuzzySet,
    GradedMatrix,
    compose,
    equal_fraction,
    leq,
    rectangle,
    superpose,
)
from .scale import Grade, PARSE_TOLERANCE, Scale, TNORM_KINDS

__version__ = "0.1.0"

__all__ = [
    "BudgetExceededError",
    "ColumnRange",
    "CoverUniverse",
    "DEFAULT_TIE_BREAK",
    "FactorSet",
    "FormalConcept",
    "FuzzySet",
    "Grade",
    "GradedMatrix",
    "LEVEL_DTYPE",
    "PARSE_TOLERANCE",
    "RawTable",
    "Scale",
    "TIE_BREAK_POLICIES",
    "TNORM_KINDS",
    "close_intent",
    "compose",
    "concept_from_intent",
    "coverage_curve",
    "covers",
    "discretize",
    "down",
    "enumerate_concepts",
    "equal_fraction",
    "factor_matrices",
    "find_factors",
    "gain",
    "graded_singleton",
    "leq",
    "optimal_factorization",
    "random_factorizable",
    "read_csv",
    "read_fimi",
    "read_ranges_csv",
    "read_raw_csv",
    "rectangle",
    "superpose",
    "up",
    "write_csv",
]
