"""
Clase base para todas las series truncadas.
Define la interfaz común y utilidades compartidas: selección de backend
(racional exacto / complejo doble), recursiones triangulares genéricas
(producto de Cauchy, inverso, log, exp) y serialización a JSON.
"""
import cmath
import logging
from abc import ABC, abstractmethod
from fractions import Fraction
from numbers import Number

import numpy as np
import sympy

from src.errors import InexactOperation, ZeroLeadingCoefficient

logger = logging.getLogger(__name__)

EXACT = "exact"
FLOAT = "float"
BACKENDS = (EXACT, FLOAT)


# ── Backend de coeficientes ─────────────────────────────────────────────────

def _exact_scalar(value):
    """Normaliza un coeficiente al backend exacto (Fraction o expresión sympy)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (bool, int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, sympy.Basic):
        if value.is_Rational:
            return Fraction(int(value.p), int(value.q))
        return value
    raise InexactOperation(
        f"Coeficiente no exacto {value!r}: usar backend '{FLOAT}'"
    )


def _float_scalar(value) -> complex:
    if isinstance(value, sympy.Basic):
        return complex(value.evalf())
    return complex(value)


def detect_backend(values) -> str:
    """Deduce el backend a partir de los coeficientes recibidos."""
    for v in np.ravel(np.asarray(values, dtype=object)):
        if isinstance(v, (float, complex, np.floating, np.complexfloating)):
            return FLOAT
    return EXACT


def to_backend(values, backend: str) -> np.ndarray:
    """Convierte una secuencia (1D o 2D) de coeficientes al backend pedido."""
    if backend not in BACKENDS:
        raise ValueError(f"Backend desconocido: {backend}")
    raw = np.asarray(values, dtype=object)
    if backend == FLOAT:
        out = np.empty(raw.shape, dtype=complex)
        for idx, v in np.ndenumerate(raw):
            out[idx] = _float_scalar(v)
        return out
    out = np.empty(raw.shape, dtype=object)
    for idx, v in np.ndenumerate(raw):
        out[idx] = _exact_scalar(v)
    return out


def backend_of(array: np.ndarray) -> str:
    return EXACT if array.dtype == object else FLOAT


def zeros(shape, backend: str) -> np.ndarray:
    if backend == FLOAT:
        return np.zeros(shape, dtype=complex)
    out = np.empty(shape, dtype=object)
    out.fill(Fraction(0))
    return out


def zero(backend: str):
    return Fraction(0) if backend == EXACT else 0j


def one(backend: str):
    return Fraction(1) if backend == EXACT else 1.0 + 0j


def is_scalar(value) -> bool:
    return isinstance(value, (Number, np.number, sympy.Basic))


# ── Recursiones triangulares genéricas ──────────────────────────────────────
# Todas trabajan sobre arreglos de longitud ≥ n + 1 y devuelven n + 1 términos.

def cauchy_product(a: np.ndarray, b: np.ndarray, n: int) -> np.ndarray:
    """Producto de Cauchy truncado: c_k = Σ a_i b_{k−i}, k ≤ n."""
    if a.dtype != object and b.dtype != object:
        return np.convolve(a[:n + 1], b[:n + 1])[:n + 1]
    out = zeros(n + 1, EXACT)
    for k in range(n + 1):
        acc = Fraction(0)
        for i in range(k + 1):
            acc += a[i] * b[k - i]
        out[k] = acc
    return out


def series_inverse(a: np.ndarray, n: int) -> np.ndarray:
    """Inverso multiplicativo 1/a truncado a orden n."""
    a0 = a[0]
    if a0 == 0:
        raise ZeroLeadingCoefficient("La serie a invertir tiene término constante nulo.")
    backend = backend_of(a)
    q = zeros(n + 1, backend)
    q[0] = one(backend) / a0
    for k in range(1, n + 1):
        acc = zero(backend)
        for j in range(1, k + 1):
            acc += a[j] * q[k - j]
        q[k] = -acc * q[0]
    return q


def series_log(a: np.ndarray, n: int) -> np.ndarray:
    """
    Logaritmo truncado por la recursión k·L_k = k·u_k − Σ_{j<k} j·L_j·u_{k−j}.

    Raises:
        ZeroLeadingCoefficient: si a₀ = 0.
        InexactOperation: en backend exacto con a₀ ≠ 1.
    """
    a0 = a[0]
    if a0 == 0:
        raise ZeroLeadingCoefficient("log de una serie con parte unitaria nula.")
    backend = backend_of(a)
    out = zeros(n + 1, backend)
    if backend == EXACT:
        if a0 != 1:
            raise InexactOperation(f"log({a0}) no es racional.")
        u = a
    else:
        out[0] = cmath.log(a0)
        u = a / a0
    for k in range(1, n + 1):
        acc = zero(backend)
        for j in range(1, k):
            acc += j * out[j] * u[k - j]
        out[k] = u[k] - acc / k
    return out


def series_exp(a: np.ndarray, n: int) -> np.ndarray:
    """Exponencial truncada por k·E_k = Σ_{j≤k} j·a_j·E_{k−j}."""
    backend = backend_of(a)
    out = zeros(n + 1, backend)
    if backend == EXACT:
        if a[0] != 0:
            raise InexactOperation(f"exp({a[0]}) no es racional.")
        out[0] = Fraction(1)
    else:
        out[0] = cmath.exp(a[0])
    for k in range(1, n + 1):
        acc = zero(backend)
        for j in range(1, k + 1):
            acc += j * a[j] * out[k - j]
        out[k] = acc / k
    return out


def series_derivative(a: np.ndarray) -> np.ndarray:
    backend = backend_of(a)
    if len(a) == 1:
        return zeros(1, backend)
    out = zeros(len(a) - 1, backend)
    for k in range(1, len(a)):
        out[k - 1] = k * a[k]
    return out


def to_pairs(array: np.ndarray) -> list[list[float]]:
    """Serializa coeficientes como pares [re, im] en punto flotante."""
    values = to_backend(array, FLOAT)
    return [[float(v.real), float(v.imag)] for v in values]


def from_pairs(pairs) -> list[complex]:
    return [complex(re, im) for re, im in pairs]


class BaseSeries(ABC):
    """Interfaz común de las series truncadas (inmutables tras construirse)."""

    kind = ""

    def __init__(self, coeffs, backend: str | None = None):
        backend = backend or detect_backend(coeffs)
        array = to_backend(coeffs, backend)
        if array.ndim == 0 or array.size == 0:
            raise ValueError("Una serie necesita al menos un coeficiente.")
        array.flags.writeable = False
        self._coeffs = array
        self.backend = backend

    @property
    def coeffs(self) -> np.ndarray:
        return self._coeffs

    @property
    def is_exact(self) -> bool:
        return self.backend == EXACT

    @property
    @abstractmethod
    def order(self) -> int:
        raise NotImplementedError

    @abstractmethod
    def evaluate(self, z):
        raise NotImplementedError

    @abstractmethod
    def truncate(self, order: int) -> "BaseSeries":
        raise NotImplementedError

    @abstractmethod
    def to_dict(self) -> dict:
        raise NotImplementedError

    def to_float(self) -> "BaseSeries":
        if self.backend == FLOAT:
            return self
        return self._rebuild(to_backend(self._coeffs, FLOAT), FLOAT)

    # ------------------------------------------------------------------ #
    #  Helpers compartidos                                                #
    # ------------------------------------------------------------------ #

    def _rebuild(self, array: np.ndarray, backend: str) -> "BaseSeries":
        """Construye una serie del mismo tipo a partir de un arreglo interno."""
        clone = object.__new__(type(self))
        clone.__dict__.update(self.__dict__)
        array = np.array(array, dtype=array.dtype)
        array.flags.writeable = False
        clone._coeffs = array
        clone.backend = backend
        return clone

    def _promote(self, other: "BaseSeries") -> tuple[np.ndarray, np.ndarray, str]:
        """Lleva ambos operandos a un backend común (exacto sólo si ambos lo son)."""
        if self.backend == other.backend:
            return self._coeffs, other._coeffs, self.backend
        logger.debug("Mezcla de backends: se promueve a punto flotante.")
        return (to_backend(self._coeffs, FLOAT),
                to_backend(other._coeffs, FLOAT), FLOAT)

    def max_abs_difference(self, other: "BaseSeries") -> float:
        """Máxima diferencia coeficiente a coeficiente sobre el orden común."""
        a = to_backend(self._coeffs, FLOAT).ravel()
        b = to_backend(other._coeffs, FLOAT).ravel()
        n = min(len(a), len(b))
        if n == 0:
            return 0.0
        return float(np.max(np.abs(a[:n] - b[:n])))

    def allclose(self, other: "BaseSeries", tol: float = 1e-12) -> bool:
        return self.max_abs_difference(other) < tol

    def __eq__(self, other) -> bool:
        if not isinstance(other, BaseSeries):
            return NotImplemented
        if type(self) is not type(other) or self._coeffs.shape != other._coeffs.shape:
            return False
        if self.backend == EXACT and other.backend == EXACT:
            return all(x == y for x, y in zip(self._coeffs.ravel(), other._coeffs.ravel()))
        return self.max_abs_difference(other) == 0.0

    __hash__ = None

    def __repr__(self) -> str:
        return f"{type(self).__name__}(order={self.order}, backend={self.backend})"
