"""
Flujos radiales de Loewner–Kufarev sobre coeficientes truncados.

Convención: cadenas decrecientes, f′_t(0) = e^{−t}·f′₀(0) para ν de masa 1.
"""
import logging
from collections.abc import Callable
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from src.circle.fourier import FourierField
from src.errors import StepRejected
from src.loewner.driving import HerglotzMeasure
from src.series.base_series import FLOAT, to_backend
from src.series.operations import compose
from src.series.taylor import TruncatedTaylor
from src.virasoro.fields import lie_field

logger = logging.getLogger(__name__)

MeasureFlow = HerglotzMeasure | Callable[[float], HerglotzMeasure]


def _measure_at(nu: MeasureFlow, t: float) -> HerglotzMeasure:
    return nu if isinstance(nu, HerglotzMeasure) else nu(t)


def _herglotz_series(nu: HerglotzMeasure, order: int) -> TruncatedTaylor:
    return TruncatedTaylor(nu.herglotz_coeffs(order), backend=FLOAT)


# ── Lados derechos ──────────────────────────────────────────────────────────

def loewner_kufarev_rhs(f: TruncatedTaylor, nu: HerglotzMeasure) -> TruncatedTaylor:
    """∂f/∂t = −z f′(z)·p(z), la acción de Lie del símbolo de ν."""
    return lie_field(nu.symbol(f.order), f)


def radial_loewner_rhs(f: TruncatedTaylor, nu: HerglotzMeasure) -> TruncatedTaylor:
    """Forma directa ∂f/∂t = f·p(f) para la uniformización del dominio sobre 𝔻."""
    return f * compose(_herglotz_series(nu, f.order), f)


def lie_expansion_check(f: TruncatedTaylor, u: float, N_terms: int) -> float:
    """
    Norma máxima coeficiente a coeficiente de
    [−z f′ (e^{iu}+z)/(e^{iu}−z)] − [ℒ₀f + 2 Σ_{n≤N_terms} e^{−inu} ℒ_n f],
    con ℒ_n el campo de Lie de cos nt. Se anula cuando N_terms ≥ orden(f).
    """
    exact = loewner_kufarev_rhs(f, HerglotzMeasure.dirac(u))
    expansion = lie_field(FourierField.constant(1.0), f)
    for n in range(1, N_terms + 1):
        expansion = expansion + lie_field(FourierField.cos(n), f) * (2.0 * np.exp(-1j * n * u))
    return exact.max_abs_difference(expansion)


def boundary_variation(fC: TruncatedTaylor, delta_star: FourierField, eps_scale: float = 1.0) -> TruncatedTaylor:
    """
    Variación de frontera a primer orden:
    f_C̃ = f_C·(1 + ε·(1/2π)∫ (e^{iθ}+f_C)/(e^{iθ}−f_C) δ*(θ) dθ).
    """
    symbol = delta_star.complex_coeffs()[delta_star.M:]
    kernel = np.zeros(fC.order + 1, dtype=complex)
    kernel[0] = symbol[0]
    upto = min(fC.order, delta_star.M)
    kernel[1:upto + 1] = 2.0 * symbol[1:upto + 1]
    schwarz = compose(TruncatedTaylor(kernel * eps_scale, backend=FLOAT), fC)
    return fC * (schwarz + 1.0)


# ── Integración ─────────────────────────────────────────────────────────────

@dataclass
class RadialFlow:
    times: np.ndarray
    coeffs: np.ndarray

    def at(self, index: int) -> TruncatedTaylor:
        return TruncatedTaylor(self.coeffs[index], backend=FLOAT)

    @property
    def final(self) -> TruncatedTaylor:
        return self.at(-1)

    def to_dict(self) -> dict:
        return {
            "times": self.times.tolist(),
            "coeffs": [[[float(v.real), float(v.imag)] for v in row] for row in self.coeffs],
        }


def radial_flow(f0: TruncatedTaylor, nu: MeasureFlow, T: float, dt: float,
                rtol: float = 1e-10, atol: float = 1e-12) -> RadialFlow:
    """
    Integra ∂a_k/∂t = −Σ_j p_j(t)·(k−j)·a_{k−j} con Runge–Kutta adaptativo
    (DOP853) y devuelve los coeficientes sobre la grilla 0, dt, …, T.

    Args:
        f0: Condición inicial (en Aut₊(𝒪) o Aut(𝒪)).
        nu: Medida fija o función t ↦ HerglotzMeasure.
        T: Horizonte.
        dt: Paso de la grilla de salida (el integrador elige sus pasos).

    Raises:
        StepRejected: si el control de paso no logra completar [0, T].
        NonpositiveMeasure: si ν_t deja de ser positiva.
    """
    N = f0.order
    k = np.arange(N + 1)
    n = max(1, int(round(T / dt)))
    grid = np.linspace(0.0, T, n + 1)
    y0 = to_backend(f0.coeffs, FLOAT)

    def rhs(t, a):
        p = _measure_at(nu, t).herglotz_coeffs(N)
        return -np.convolve(p, k * a)[:N + 1]

    logger.info(f"Flujo radial: N = {N}, T = {T}, {n} nodos de salida")
    sol = solve_ivp(rhs, (0.0, T), y0, method="DOP853", t_eval=grid, rtol=rtol, atol=atol)
    if not sol.success:
        raise StepRejected(f"Integración radial interrumpida en t = {sol.t[-1]:.6g}: {sol.message}")
    return RadialFlow(times=sol.t, coeffs=sol.y.T.copy())
