"""Exact monodromy of the Kaneko-Zagier equation and the rational-weight classification."""

from .cyclotomic import CycNum, FieldContext, arith, make_field, root
from .spectral import Weight, cap_k_rs, cap_k_t, spectral_params
from .connection import (
    GradedMatrix,
    a_matrix,
    generators,
    graded_mul,
    m_matrix,
    n_matrix,
    word_representation,
)
from .commute import CommuteVerdict, commutator, thmnc_classify, thnnc_classify
from .search import ClassificationResult, Witness, classify_weight

__all__ = [
    "ClassificationResult",
    "CommuteVerdict",
    "CycNum",
    "FieldContext",
    "GradedMatrix",
    "Weight",
    "a_matrix",
    "arith",
    "cap_k_rs",
    "cap_k_t",
    "classify_weight",
    "commutator",
    "generators",
    "graded_mul",
    "m_matrix",
    "make_field",
    "n_matrix",
    "root",
    "spectral_params",
    "thmnc_classify",
    "thnnc_classify",
    "word_representation",
    "Witness",
]

__version__ = "0.1.0"
