"""Exact weight distributions of two ternary cyclic codes via quadratic-form exponential sums."""

from .census import RankCensus, census_closed_form, run_census, sample_census
from .codes import (c1_distribution, c1_spec, c2_distribution, c2_spec, codeword_weight,
                    cyclotomic_coset, sample_verify, table2_rows)
from .errors import CyclicWeightsError
from .expsum import CyclotomicInteger, r_value, rprime_value, s_brute, s_value
from .gf import FieldCtx, make_field
from .quadform import ExpSumClass, classify, diagonalize, gram_matrix, linear_shift

__all__ = [
    "CyclicWeightsError", "CyclotomicInteger", "ExpSumClass", "FieldCtx", "RankCensus",
    "c1_distribution", "c1_spec", "c2_distribution", "c2_spec", "census_closed_form",
    "classify", "codeword_weight", "cyclotomic_coset", "diagonalize", "gram_matrix",
    "linear_shift", "make_field", "r_value", "rprime_value", "run_census", "s_brute",
    "s_value", "sample_census", "sample_verify", "table2_rows",
]
