"""
Cociclo de Gelfand–Fuks extendido y la familia de métricas de Kähler
w_{c,h}(v₁, v₂) = ω_{c,h}(v₁, J v₂) sobre Diff(S¹)/S¹.
"""
import logging
from dataclasses import dataclass

from src.circle.fourier import FourierField, complex_structure_J, inner

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CentralParams:
    c: float
    h: float

    def to_dict(self) -> dict:
        return {"c": self.c, "h": self.h}


def omega_ch(v1: FourierField, v2: FourierField, p: CentralParams) -> float:
    """
    ω_{c,h}(v₁, v₂) = (1/2π)∫ ((2h − c/12)v₁′ − (c/12)v₁‴)·v₂ dt.

    Se evalúa por ortogonalidad, sin cuadratura.
    """
    first = v1.derivative(1) * (2.0 * p.h - p.c / 12.0)
    third = v1.derivative(3) * (p.c / 12.0)
    return inner(first - third, v2)


def kahler_form(v1: FourierField, v2: FourierField, p: CentralParams) -> float:
    """w_{c,h}(v₁, v₂) = ω_{c,h}(v₁, J v₂); v₂ debe tener media nula."""
    return omega_ch(v1, complex_structure_J(v2), p)


def kahler_metric_coeff(k: int, p: CentralParams) -> float:
    """
    Coeficiente diagonal de la métrica en el origen f₀ ≡ z:
    2hk + (c/12)(k³ − k), igual a 2·w_{c,h}(cos kt, cos kt).
    """
    if k < 1:
        raise ValueError("El índice de la métrica debe ser k ≥ 1.")
    return 2.0 * p.h * k + (p.c / 12.0) * (k ** 3 - k)
