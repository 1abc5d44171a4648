"""Series truncadas (Taylor, Laurent en ∞, bivariadas) y sus operaciones."""

from src.series.base_series import EXACT, FLOAT, BaseSeries
from src.series.bivariate import BivariateTruncated
from src.series.laurent import TruncatedLaurentInf
from src.series.operations import (
    arithmetic,
    class_s_rescale,
    compose,
    debranges_check,
    invert_at_infinity,
    normalize_class_s,
    reciprocal_coeffs,
    reciprocal_recursion,
    reversion,
    schwarzian,
    transition_function,
)
from src.series.taylor import TruncatedTaylor

__all__ = [
    "EXACT", "FLOAT", "BaseSeries", "BivariateTruncated", "TruncatedLaurentInf",
    "TruncatedTaylor", "arithmetic", "class_s_rescale", "compose", "debranges_check",
    "invert_at_infinity", "normalize_class_s", "reciprocal_coeffs",
    "reciprocal_recursion", "reversion", "schwarzian", "transition_function",
]
