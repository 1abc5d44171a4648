"""Matrices de Grunsky, polinomios de Faber y el disco de Siegel."""

from src.grunsky.faber import FaberSet, faber, faber_identity_residuals
from src.grunsky.matrices import (
    is_symmetric,
    GrunskyData,
    grunsky_generating_function,
    grunsky_pair,
    grunsky_single,
    inversion_grunsky_check,
)
from src.grunsky.siegel import SiegelPoint, SiegelReport, residue_operator, siegel_check, yk_embedding

__all__ = [
    "FaberSet", "GrunskyData", "SiegelPoint", "SiegelReport", "faber",
    "faber_identity_residuals", "grunsky_generating_function", "grunsky_pair",
    "grunsky_single", "inversion_grunsky_check", "is_symmetric", "residue_operator", "siegel_check",
    "yk_embedding",
]
