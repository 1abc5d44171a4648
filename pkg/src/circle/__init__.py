"""Análisis de Fourier en la circunferencia: I, J, cociclos y Polyakov–Alvarez."""

from src.circle.cocycle import CentralParams, kahler_form, kahler_metric_coeff, omega_ch
from src.circle.fourier import FourierField, bracket, complex_structure_J, hilbert_transform, inner
from src.circle.polyakov import PolyakovReport, polyakov_alvarez, polyakov_alvarez_map

__all__ = [
    "CentralParams", "FourierField", "PolyakovReport", "bracket", "complex_structure_J",
    "hilbert_transform", "inner", "kahler_form", "kahler_metric_coeff", "omega_ch",
    "polyakov_alvarez", "polyakov_alvarez_map",
]
