"""
Relación de Polyakov–Alvarez para dominios f(𝔻):

  log det(Δ_f)/det(Δ_𝔻) = −(1/6π) ∮ (½ φ ∗dφ + φ |dz|),   φ = log|f′|

∗dφ se realiza con el multiplicador de Fourier |k| (derivada normal de la
extensión armónica). Por ortogonalidad el exponente queda
E = −(1/12) Σ_k k (a_k² + b_k²) − a₀/3.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from src.circle.fourier import FourierField
from src.errors import InsufficientResolution
from src.series.base_series import FLOAT, to_backend
from src.series.taylor import TruncatedTaylor

logger = logging.getLogger(__name__)

MIN_GRID = 256
NYQUIST_ENERGY_THRESHOLD = 1e-8


@dataclass
class PolyakovReport:
    exponent: float
    det_ratio: float
    partition_ratio: float
    grid_size: int
    field: FourierField

    def to_dict(self) -> dict:
        return {
            "exponent": self.exponent,
            "det_ratio": self.det_ratio,
            "partition_ratio": self.partition_ratio,
            "grid_size": self.grid_size,
            "phi": self.field.to_dict(),
        }


def polyakov_alvarez(phi_boundary: FourierField) -> float:
    """Exponente E del cociente de determinantes a partir de φ en Fourier."""
    k = np.arange(phi_boundary.M + 1)
    energy = float(np.sum(k * (phi_boundary.a ** 2 + phi_boundary.b ** 2)))
    return -energy / 12.0 - phi_boundary.a[0] / 3.0


def default_grid_size(order: int) -> int:
    """Potencia de dos ≥ 4N, nunca menor que MIN_GRID."""
    target = max(4 * order, 1)
    return max(MIN_GRID, 1 << (target - 1).bit_length())


def boundary_log_derivative(f: TruncatedTaylor, grid_size: int | None = None) -> tuple[FourierField, int]:
    """
    Muestrea φ(t) = log|f′(e^{it})| en una grilla uniforme y lo lleva a Fourier.

    Returns:
        (campo con los modos k ≤ n/4, tamaño n de la grilla).

    Raises:
        InsufficientResolution: si la energía por encima de n/4 supera el
            umbral relativo, o si f′ se anula sobre la grilla.
    """
    n = grid_size or default_grid_size(f.order)
    t = 2.0 * math.pi * np.arange(n) / n
    derivative = to_backend(f.derivative().coeffs, FLOAT)
    values = np.abs(np.polyval(derivative[::-1], np.exp(1j * t)))
    if np.any(values == 0) or not np.all(np.isfinite(values)):
        raise InsufficientResolution("f′ se anula o diverge sobre la circunferencia muestreada.")
    phi = np.log(values)

    spectrum = np.fft.rfft(phi) / n
    cutoff = n // 4
    total = float(np.sum(np.abs(spectrum) ** 2))
    tail = float(np.sum(np.abs(spectrum[cutoff + 1:]) ** 2))
    if total > 0 and tail / total > NYQUIST_ENERGY_THRESHOLD:
        raise InsufficientResolution(
            f"Energía relativa {tail / total:.2e} por encima de n/4 con n = {n}; aumentar la grilla."
        )
    kept = spectrum[:cutoff + 1]
    a = np.concatenate([[kept[0].real], 2.0 * kept[1:].real])
    b = -2.0 * kept[1:].imag
    return FourierField(a, b), n


def polyakov_alvarez_map(f: TruncatedTaylor, grid_size: int | None = None) -> PolyakovReport:
    """
    Exponente, cociente de determinantes e^{E} y cociente de funciones de
    partición Z_f/Z_𝔻 = e^{−E} para el dominio f(𝔻).
    """
    field, n = boundary_log_derivative(f, grid_size)
    exponent = polyakov_alvarez(field)
    logger.info(f"Polyakov–Alvarez: E = {exponent:.12g} (grilla {n})")
    return PolyakovReport(
        exponent=exponent,
        det_ratio=math.exp(exponent),
        partition_ratio=math.exp(-exponent),
        grid_size=n,
        field=field,
    )
