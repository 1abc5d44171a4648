"""
Series de Taylor truncadas a₀ + a₁z + … + a_N z^N.

Representan elementos de Aut(𝒪) (a₀ = 0, a₁ ≠ 0) y de Aut₊(𝒪) (a₁ = 1).
Toda operación trunca al mínimo de los órdenes de los operandos; el orden
nunca se extiende en silencio (para rellenar con ceros hay que declararlo
con `from_polynomial`).
"""
import logging
from fractions import Fraction

import numpy as np

from src.errors import InsufficientOrder, NonzeroConstantTerm, ZeroLeadingCoefficient
from src.series.base_series import (
    EXACT,
    FLOAT,
    BaseSeries,
    backend_of,
    cauchy_product,
    from_pairs,
    is_scalar,
    series_derivative,
    series_exp,
    series_inverse,
    series_log,
    to_backend,
    to_pairs,
    zeros,
)

logger = logging.getLogger(__name__)


def _is_inexact(value) -> bool:
    return isinstance(value, (float, complex, np.floating, np.complexfloating))


class TruncatedTaylor(BaseSeries):
    kind = "taylor"

    # ------------------------------------------------------------------ #
    #  Constructores                                                      #
    # ------------------------------------------------------------------ #

    @classmethod
    def from_polynomial(cls, coeffs, order: int, backend: str | None = None) -> "TruncatedTaylor":
        """
        Declara explícitamente un polinomio exacto como serie de orden `order`
        (los coeficientes ausentes son ceros verdaderos, no desconocidos).
        """
        coeffs = list(coeffs)
        if len(coeffs) > order + 1:
            if any(c != 0 for c in coeffs[order + 1:]):
                raise ValueError("El polinomio tiene grado mayor al orden pedido.")
            coeffs = coeffs[:order + 1]
        return cls(coeffs + [0] * (order + 1 - len(coeffs)), backend=backend)

    @classmethod
    def identity(cls, order: int, backend: str = EXACT) -> "TruncatedTaylor":
        return cls.from_polynomial([0, 1], order, backend)

    @classmethod
    def dilation(cls, r, order: int, backend: str | None = None) -> "TruncatedTaylor":
        return cls.from_polynomial([0, r], order, backend)

    @classmethod
    def koebe(cls, order: int, backend: str = EXACT) -> "TruncatedTaylor":
        """k(z) = z(1 − z)⁻² = Σ n zⁿ."""
        return cls(list(range(order + 1)), backend=backend)

    @classmethod
    def from_dict(cls, data: dict) -> "TruncatedTaylor":
        if data.get("kind", cls.kind) != cls.kind:
            raise ValueError(f"Se esperaba kind='{cls.kind}', llegó {data.get('kind')!r}")
        coeffs = from_pairs(data["coeffs"])
        order = int(data.get("order", len(coeffs) - 1))
        if len(coeffs) != order + 1:
            raise ValueError(f"order={order} no coincide con {len(coeffs)} coeficientes.")
        return cls(coeffs, backend=FLOAT)

    # ------------------------------------------------------------------ #
    #  Acceso                                                             #
    # ------------------------------------------------------------------ #

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    def coefficient(self, k: int):
        if k > self.order:
            raise InsufficientOrder(f"a_{k} no está disponible a orden {self.order}.")
        return self._coeffs[k]

    def affine_coords(self) -> np.ndarray:
        """Coordenadas afines c_n := a_{n+1}, n = 1..N−1."""
        return self._coeffs[2:].copy()

    def in_aut(self) -> bool:
        return self.order >= 1 and self._coeffs[0] == 0 and self._coeffs[1] != 0

    def in_aut_plus(self) -> bool:
        return self.order >= 1 and self._coeffs[0] == 0 and self._coeffs[1] == 1

    def evaluate(self, z):
        values = to_backend(self._coeffs, FLOAT)
        return np.polyval(values[::-1], np.asarray(z, dtype=complex))

    def truncate(self, order: int) -> "TruncatedTaylor":
        if order > self.order:
            raise InsufficientOrder(f"No se puede extender de orden {self.order} a {order}.")
        return TruncatedTaylor(self._coeffs[:order + 1], backend=self.backend)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "order": self.order, "coeffs": to_pairs(self._coeffs)}

    # ------------------------------------------------------------------ #
    #  Aritmética                                                         #
    # ------------------------------------------------------------------ #

    def _binary(self, other: "TruncatedTaylor") -> tuple[np.ndarray, np.ndarray, int, str]:
        a, b, backend = self._promote(other)
        n = min(self.order, other.order)
        return a, b, n, backend

    def _scalar_array(self, value) -> np.ndarray:
        if self.backend == EXACT and not _is_inexact(value):
            return self._coeffs * to_backend([value], EXACT)[0]
        return to_backend(self._coeffs, FLOAT) * complex(value)

    def __add__(self, other):
        if is_scalar(other):
            other = TruncatedTaylor.from_polynomial([other], self.order, None)
        if not isinstance(other, TruncatedTaylor):
            return NotImplemented
        a, b, n, backend = self._binary(other)
        return TruncatedTaylor(a[:n + 1] + b[:n + 1], backend=backend)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedTaylor(-self._coeffs, backend=self.backend)

    def __sub__(self, other):
        if is_scalar(other):
            return self + (-other)
        if not isinstance(other, TruncatedTaylor):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other):
            array = self._scalar_array(other)
            return TruncatedTaylor(array, backend=backend_of(array))
        if not isinstance(other, TruncatedTaylor):
            return NotImplemented
        a, b, n, backend = self._binary(other)
        return TruncatedTaylor(cauchy_product(a, b, n), backend=backend)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if is_scalar(other):
            if other == 0:
                raise ZeroDivisionError("División de una serie por cero.")
            if self.backend == EXACT and not _is_inexact(other):
                return self * (Fraction(1) / to_backend([other], EXACT)[0])
            return self * (1 / complex(other))
        if not isinstance(other, TruncatedTaylor):
            return NotImplemented
        a, b, n, backend = self._binary(other)
        return TruncatedTaylor(cauchy_product(a, series_inverse(b, n), n), backend=backend)

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("Sólo se admiten potencias enteras no negativas.")
        result = TruncatedTaylor.from_polynomial([1], self.order, self.backend)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def reciprocal(self) -> "TruncatedTaylor":
        """1/f para f con a₀ ≠ 0."""
        return TruncatedTaylor(series_inverse(self._coeffs, self.order), backend=self.backend)

    def derivative(self) -> "TruncatedTaylor":
        return TruncatedTaylor(series_derivative(self._coeffs), backend=self.backend)

    def log(self) -> "TruncatedTaylor":
        return TruncatedTaylor(series_log(self._coeffs, self.order), backend=self.backend)

    def exp(self) -> "TruncatedTaylor":
        return TruncatedTaylor(series_exp(self._coeffs, self.order), backend=self.backend)

    def divide_by_z(self) -> "TruncatedTaylor":
        """f/z para f(0) = 0; el orden baja en uno."""
        if self._coeffs[0] != 0:
            raise NonzeroConstantTerm("f/z requiere f(0) = 0.")
        if self.order < 1:
            raise InsufficientOrder("f/z necesita orden ≥ 1.")
        return TruncatedTaylor(self._coeffs[1:], backend=self.backend)

    def multiply_by_z(self, power: int = 1) -> "TruncatedTaylor":
        """z^k·f; el orden sube en k (los coeficientes nuevos son conocidos)."""
        head = zeros(power, self.backend)
        return TruncatedTaylor(np.concatenate([head, self._coeffs]), backend=self.backend)

    def unit_check(self) -> None:
        if self._coeffs[0] == 0:
            raise ZeroLeadingCoefficient("La serie tiene parte unitaria nula.")
