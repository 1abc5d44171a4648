"""Flujos de Loewner radiales y cordales, SLE y la jerarquía de coeficientes."""

from src.loewner.chordal import (
    BoundaryEnsemble,
    ChordalPoint,
    SleTrace,
    chordal_closed_form,
    chordal_map,
    simulate_boundary_point,
    sle_trace,
)
from src.loewner.driving import Driving, HerglotzMeasure
from src.loewner.hierarchy import (
    SleEnsemble,
    SlePath,
    coeff_hierarchy,
    hormander_bracket,
    one_point_exponents,
    one_point_generator,
    simulate_ensemble,
    sle_generator,
    sle_generator_parts,
)
from src.loewner.radial import (
    RadialFlow,
    boundary_variation,
    lie_expansion_check,
    loewner_kufarev_rhs,
    radial_flow,
    radial_loewner_rhs,
)

__all__ = [
    "BoundaryEnsemble", "ChordalPoint", "Driving", "HerglotzMeasure", "RadialFlow",
    "SleEnsemble", "SlePath", "SleTrace", "boundary_variation", "chordal_closed_form",
    "chordal_map", "coeff_hierarchy", "hormander_bracket", "lie_expansion_check",
    "loewner_kufarev_rhs", "one_point_exponents", "one_point_generator", "radial_flow",
    "radial_loewner_rhs", "simulate_boundary_point", "simulate_ensemble", "sle_generator",
    "sle_generator_parts", "sle_trace",
]
