"""Representaciones de Witt y Virasoro en coordenadas de coeficientes."""

from src.virasoro.fields import lie_field, neretin_cocycle, witt_vector_field
from src.virasoro.operators import (
    VIRASORO_BRACKET,
    BasisAction,
    LinearCoeffOperator,
    action,
    commutator,
    dual_pairing,
    kernel_solve,
    level_two_singular_vector,
    lie_bracket,
    virasoro_central_term,
    virasoro_op,
    witt_op,
)
from src.virasoro.polynomial import DISC, INFINITY, CoeffPolynomial, monomial_basis

__all__ = [
    "DISC", "INFINITY", "VIRASORO_BRACKET", "BasisAction", "CoeffPolynomial",
    "LinearCoeffOperator", "action", "commutator", "dual_pairing", "kernel_solve",
    "level_two_singular_vector", "lie_bracket", "lie_field", "monomial_basis",
    "neretin_cocycle", "virasoro_central_term", "virasoro_op", "witt_op",
    "witt_vector_field",
]
