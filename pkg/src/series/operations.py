"""
Operaciones sobre series truncadas: aritmética genérica, composición,
reversión, inversión en infinito, recíprocos, derivada schwarziana y la
cota de Bieberbach–de Branges.

Todas las funciones son puras: reciben series inmutables y devuelven series
nuevas con el orden mínimo compartido.
"""
import logging
import math
from fractions import Fraction

import numpy as np

from src.errors import InsufficientOrder, NonzeroConstantTerm, ZeroLeadingCoefficient
from src.series.base_series import BaseSeries, series_inverse, zeros
from src.series.bivariate import BivariateTruncated
from src.series.laurent import TruncatedLaurentInf
from src.series.taylor import TruncatedTaylor

logger = logging.getLogger(__name__)

ARITHMETIC_KINDS = ("mul", "div", "log", "exp", "derivative")


# ── Aritmética ──────────────────────────────────────────────────────────────

def arithmetic(f: BaseSeries, g: BaseSeries | None = None, kind: str = "mul") -> BaseSeries:
    """
    Despacha la operación pedida sobre series de Taylor o bivariadas.

    Args:
        f: Primer operando.
        g: Segundo operando (sólo para 'mul' y 'div').
        kind: Una de ARITHMETIC_KINDS.

    Returns:
        La serie resultante, truncada al orden común.

    Raises:
        ZeroLeadingCoefficient: división o log de una serie con parte unitaria nula.
        SectorMismatch: producto de series bivariadas de sectores distintos.
    """
    if kind not in ARITHMETIC_KINDS:
        raise ValueError(f"Operación desconocida: {kind!r}")
    if kind in ("mul", "div") and g is None:
        raise ValueError(f"'{kind}' necesita dos operandos.")

    if isinstance(f, BivariateTruncated):
        if kind == "mul":
            return f * g
        if kind == "log":
            return f.log()
        raise TypeError(f"'{kind}' no está definida para series bivariadas.")

    if not isinstance(f, TruncatedTaylor):
        raise TypeError(f"'{kind}' no está definida para {type(f).__name__}.")
    if kind == "mul":
        return f * g
    if kind == "div":
        if g.coeffs[0] == 0:
            raise ZeroLeadingCoefficient("El denominador tiene término constante nulo.")
        return f / g
    if kind == "log":
        return f.log()
    if kind == "exp":
        return f.exp()
    return f.derivative()


# ── Composición y reversión ────────────────────────────────────────────────

def compose(f: TruncatedTaylor, g: TruncatedTaylor) -> TruncatedTaylor:
    """
    f∘g por Horner, truncada a min(orden f, orden g).

    Raises:
        NonzeroConstantTerm: si g(0) ≠ 0.
    """
    if g.coeffs[0] != 0:
        raise NonzeroConstantTerm("La serie interior de una composición debe anularse en 0.")
    n = min(f.order, g.order)
    inner = g.truncate(n)
    a = f.coeffs
    result = TruncatedTaylor.from_polynomial([a[n]], n, f.backend)
    for k in range(n - 1, -1, -1):
        result = result * inner + a[k]
    return result


def reversion(f: TruncatedTaylor) -> TruncatedTaylor:
    """
    Inversa composicional h con f∘h = h∘f = id hasta el orden de f.

    Cada pasada de h ← (z − (f∘h − a₁h))/a₁ fija un coeficiente más.

    Raises:
        NonzeroConstantTerm: si f(0) ≠ 0.
        ZeroLeadingCoefficient: si a₁ = 0.
    """
    if f.coeffs[0] != 0:
        raise NonzeroConstantTerm("Sólo se revierten series con f(0) = 0.")
    a1 = f.coeffs[1] if f.order >= 1 else 0
    if a1 == 0:
        raise ZeroLeadingCoefficient("La reversión necesita a₁ ≠ 0.")
    z = TruncatedTaylor.identity(f.order, f.backend)
    h = z / a1
    for _ in range(f.order):
        nonlinear = compose(f, h) - h * a1
        h = (z - nonlinear) / a1
    return h


# ── Inversión en infinito y recíprocos ──────────────────────────────────────

def invert_at_infinity(f: TruncatedTaylor | TruncatedLaurentInf):
    """
    Aplica la inversión f ↦ 1/f(1/z) entre Aut(𝒪) y Aut(𝒪_∞).

    Una serie de Taylor de orden N produce una de Laurent de orden N − 2
    y viceversa, de modo que la ida y vuelta devuelve el orden original.

    Raises:
        NonzeroConstantTerm: si la serie de Taylor no se anula en 0.
        ZeroLeadingCoefficient: si el coeficiente principal es nulo.
        InsufficientOrder: si una serie de Taylor tiene orden < 2.
    """
    if isinstance(f, TruncatedLaurentInf):
        if f.lead == 0:
            raise ZeroLeadingCoefficient("g(z) = bz + … con b = 0 no es invertible.")
        return f.unit_series().reciprocal().multiply_by_z()
    if f.coeffs[0] != 0:
        raise NonzeroConstantTerm("La inversión requiere f(0) = 0.")
    if f.order < 2:
        raise InsufficientOrder("La inversión de una serie de Taylor necesita orden ≥ 2.")
    quotient = f.divide_by_z()
    quotient.unit_check()
    return TruncatedLaurentInf.from_unit_series(quotient.reciprocal())


def reciprocal_recursion(b, n: int) -> list:
    """
    Coeficientes p_k de 1/(z + b₀ + b₁z⁻¹ + …) = Σ p_k z⁻ᵏ, k = 0..n.

    p₁ = 1 y p_k = −Σ_{i=0}^{k−2} b_i p_{k−1−i}. Los b_i pueden ser números,
    símbolos o arreglos de trayectorias; sólo se usan sumas y productos.
    """
    if n < 1:
        raise ValueError("Se necesita n ≥ 1.")
    if len(b) < n - 1:
        raise InsufficientOrder(f"p_{n} necesita b₀..b_{n - 2}, hay {len(b)} coeficientes.")
    p = [0, 1]
    for k in range(2, n + 1):
        acc = 0
        for i in range(k - 1):
            acc = acc + b[i] * p[k - 1 - i]
        p.append(-acc)
    return p


def reciprocal_coeffs(f: TruncatedTaylor | TruncatedLaurentInf) -> np.ndarray:
    """
    Coeficientes del recíproco 1/f.

    Returns:
        Para f de Taylor con f(0) = 0: q con 1/f = Σ_j q_j z^{j−1}.
        Para g de Laurent: p con 1/g = Σ_{n≥1} p_n z⁻ⁿ (p₀ = 0).

    Raises:
        ZeroLeadingCoefficient: coeficiente principal nulo.
    """
    if isinstance(f, TruncatedLaurentInf):
        unit = f.unit_series()
        unit.unit_check()
        q = series_inverse(unit.coeffs, unit.order)
        return np.concatenate([zeros(1, f.backend), q])
    quotient = f.divide_by_z()
    quotient.unit_check()
    return series_inverse(quotient.coeffs, quotient.order)


# ── Invariantes diferenciales ──────────────────────────────────────────────

def schwarzian(f: TruncatedTaylor, N: int | None = None) -> TruncatedTaylor:
    """
    Derivada schwarziana S(f) = f‴/f′ − (3/2)(f″/f′)².

    Args:
        f: Serie de Taylor de orden ≥ 3.
        N: Orden pedido; a lo sumo orden(f) − 3.

    Raises:
        ZeroLeadingCoefficient: si f′(0) = 0.
        InsufficientOrder: si N excede lo que determinan los coeficientes de f.
    """
    available = f.order - 3
    if available < 0:
        raise InsufficientOrder("La schwarziana necesita una serie de orden ≥ 3.")
    if N is None:
        N = available
    if N > available:
        raise InsufficientOrder(f"S(f) sólo es conocida hasta orden {available}, se pidió {N}.")
    d1 = f.derivative()
    if d1.coeffs[0] == 0:
        raise ZeroLeadingCoefficient("f′(0) = 0: la schwarziana no es holomorfa en 0.")
    d2 = d1.derivative()
    d3 = d2.derivative()
    ratio = d2 / d1
    return (d3 / d1 - ratio * ratio * _three_halves(f)).truncate(N)


def _three_halves(f: TruncatedTaylor):
    return Fraction(3, 2) if f.is_exact else 1.5


def debranges_check(f: TruncatedTaylor) -> list[int]:
    """Índices n con |c_n| > n + 1 (c_n = a_{n+1}); lista vacía si no hay violaciones."""
    violated = []
    for n, c in enumerate(f.affine_coords(), start=1):
        if abs(c) > n + 1:
            violated.append(n)
    if violated:
        logger.info(f"Cota de de Branges violada en n = {violated}")
    return violated


# ── Clase S y cadenas de subordinación ─────────────────────────────────────

def normalize_class_s(f: TruncatedTaylor) -> TruncatedTaylor:
    """f/a₁, el representante de f en Aut₊(𝒪)."""
    if f.coeffs[0] != 0:
        raise NonzeroConstantTerm("Un elemento de Aut(𝒪) se anula en 0.")
    if f.order < 1 or f.coeffs[1] == 0:
        raise ZeroLeadingCoefficient("a₁ = 0: f no pertenece a Aut(𝒪).")
    return f / f.coeffs[1]


def class_s_rescale(f_t: TruncatedTaylor, t: float) -> TruncatedTaylor:
    """e^{t}·f_t: lleva un miembro de la cadena con f′_t(0) = e^{−t} a la clase S."""
    if t == 0:
        return f_t
    return f_t * math.exp(t)


def transition_function(f_s: TruncatedTaylor, f_t: TruncatedTaylor) -> TruncatedTaylor:
    """
    Función de transición w = f_t⁻¹∘f_s de una cadena de subordinación.

    Para s ≤ t se cumple w(0) = 0 y w′(0) = f′_s(0)/f′_t(0).
    """
    w = compose(reversion(f_t), f_s)
    logger.debug(f"Transición con w′(0) = {w.coeffs[1]}")
    return w
