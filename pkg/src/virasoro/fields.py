"""
Acción infinitesimal de campos en S¹ sobre Aut₊(𝒪) y el cociclo de Neretin.
"""
import logging
from collections.abc import Mapping
from fractions import Fraction

import numpy as np

from src.circle.cocycle import CentralParams
from src.circle.fourier import FourierField
from src.series.base_series import FLOAT, to_backend
from src.series.operations import schwarzian
from src.series.taylor import TruncatedTaylor

logger = logging.getLogger(__name__)

FieldSymbol = FourierField | Mapping


def _symbol(v: FieldSymbol, n: int):
    """v̂_n de un campo dado como FourierField o como {n: coeficiente}."""
    if isinstance(v, FourierField):
        if abs(n) > v.M:
            return 0.0
        return complex(v.complex_coeffs()[v.M + n])
    return v.get(n, 0)


def witt_vector_field(k: int) -> dict[int, Fraction]:
    """
    Símbolo de Fourier del campo −cos kt (−1 para k = 0), cuya acción es
    ℒ_k f = z^{k+1} f′.
    """
    if k < 0:
        raise ValueError("Los campos de Witt holomorfos en el disco tienen k ≥ 0.")
    if k == 0:
        return {0: Fraction(-1)}
    return {k: Fraction(-1, 2), -k: Fraction(-1, 2)}


def lie_field(v: FieldSymbol, f: TruncatedTaylor) -> TruncatedTaylor:
    """
    ℒ_v f = −z f′(z)·(v̂₀ + 2 Σ_{n≥1} v̂_n zⁿ), el núcleo de Schwarz de v
    multiplicado por −z f′. El resultado conserva el orden de f.

    Args:
        v: Campo real (FourierField) o símbolo {n: v̂_n}.
        f: Serie de Taylor con f(0) = 0.

    Returns:
        TruncatedTaylor exacta si f y el símbolo lo son; compleja si no.
    """
    N = f.order
    kernel = [_symbol(v, 0)] + [2 * _symbol(v, n) for n in range(1, N + 1)]
    schwarz = TruncatedTaylor(kernel)
    z_derivative = f.derivative().multiply_by_z()
    return -(z_derivative * schwarz)


def _pairing(series: TruncatedTaylor, v: FieldSymbol) -> complex:
    """Término constante de F(w)·v(w) sobre |w| = 1: Σ F_n v̂_{−n}."""
    values = to_backend(series.coeffs, FLOAT)
    return complex(sum(values[n] * complex(_symbol(v, -n)) for n in range(len(values))))


def neretin_cocycle(f: TruncatedTaylor, v: FieldSymbol, p: CentralParams, tau: float = 0.0) -> complex:
    """
    Ψ_f(v) = h·(1/2πi)∮ (wf′/f)² v dw/w + (c/12)(1/2πi)∮ w² S(f) v dw/w + iτc.

    Los dos residuos se calculan como términos constantes, así que sólo
    intervienen los modos v̂_{−n}, n ≤ orden(f) − 1.
    """
    z_log_derivative = f.derivative() / f.divide_by_z()
    first = _pairing(z_log_derivative * z_log_derivative, v)
    second = _pairing(schwarzian(f).multiply_by_z(2), v)
    value = p.h * first + (p.c / 12.0) * second + 1j * tau * p.c
    logger.debug(f"Cociclo de Neretin: {value}")
    return complex(np.complex128(value))
