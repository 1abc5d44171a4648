"""
Series de Laurent en infinito: g(z) = bz + b₀ + b₁z⁻¹ + … + b_M z⁻ᴹ.

Internamente se guardan como serie de Taylor en u = 1/z de la parte unitaria
T(u) = b + b₀u + b₁u² + …, de modo que g = u⁻¹·T(u). Así toda la aritmética
se reduce a la de `TruncatedTaylor`.
"""
import logging

import numpy as np

from src.errors import InsufficientOrder
from src.series.base_series import EXACT, FLOAT, BaseSeries, from_pairs, is_scalar, to_backend, to_pairs
from src.series.taylor import TruncatedTaylor

logger = logging.getLogger(__name__)


class TruncatedLaurentInf(BaseSeries):
    kind = "laurent_inf"

    def __init__(self, lead, coeffs, backend: str | None = None):
        super().__init__([lead] + list(coeffs), backend=backend)

    @classmethod
    def from_unit_series(cls, unit: TruncatedTaylor) -> "TruncatedLaurentInf":
        """g = u⁻¹·T(u) a partir de la parte unitaria T."""
        if unit.order < 1:
            raise InsufficientOrder("La parte unitaria necesita orden ≥ 1 (al menos b₀).")
        values = unit.coeffs
        return cls(values[0], list(values[1:]), backend=unit.backend)

    @classmethod
    def from_polynomial(cls, lead, coeffs, order: int, backend: str | None = None) -> "TruncatedLaurentInf":
        """Declara explícitamente b_k = 0 para los índices ausentes hasta `order`."""
        coeffs = list(coeffs)
        if len(coeffs) > order + 1 and any(c != 0 for c in coeffs[order + 1:]):
            raise ValueError("Hay coeficientes no nulos más allá del orden pedido.")
        coeffs = coeffs[:order + 1] + [0] * max(0, order + 1 - len(coeffs))
        return cls(lead, coeffs, backend=backend)

    @classmethod
    def identity(cls, order: int, backend: str = EXACT) -> "TruncatedLaurentInf":
        return cls.from_polynomial(1, [], order, backend)

    @classmethod
    def from_dict(cls, data: dict) -> "TruncatedLaurentInf":
        if data.get("kind") != cls.kind:
            raise ValueError(f"Se esperaba kind='{cls.kind}', llegó {data.get('kind')!r}")
        lead = complex(*data.get("lead", [1.0, 0.0]))
        coeffs = from_pairs(data["coeffs"])
        order = int(data.get("order", len(coeffs) - 1))
        if len(coeffs) != order + 1:
            raise ValueError(f"order={order} no coincide con {len(coeffs)} coeficientes.")
        return cls(lead, coeffs, backend=FLOAT)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 2

    @property
    def lead(self):
        return self._coeffs[0]

    @property
    def laurent_coeffs(self) -> np.ndarray:
        """b₀, b₁, …, b_M."""
        return self._coeffs[1:]

    def unit_series(self) -> TruncatedTaylor:
        return TruncatedTaylor(self._coeffs, backend=self.backend)

    def in_aut_plus(self) -> bool:
        return self._coeffs[0] == 1

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        values = to_backend(self._coeffs, FLOAT)
        u = 1.0 / z
        return np.polyval(values[::-1], u) / u

    def truncate(self, order: int) -> "TruncatedLaurentInf":
        if order > self.order:
            raise InsufficientOrder(f"No se puede extender de orden {self.order} a {order}.")
        return TruncatedLaurentInf.from_unit_series(self.unit_series().truncate(order + 1))

    def to_dict(self) -> dict:
        lead = to_pairs(self._coeffs[:1])[0]
        return {"kind": self.kind, "order": self.order, "lead": lead,
                "coeffs": to_pairs(self._coeffs[1:])}

    def __add__(self, other):
        if is_scalar(other):
            shift = TruncatedTaylor.from_polynomial([0, other], self.order + 1)
            return TruncatedLaurentInf.from_unit_series(self.unit_series() + shift)
        if not isinstance(other, TruncatedLaurentInf):
            return NotImplemented
        return TruncatedLaurentInf.from_unit_series(self.unit_series() + other.unit_series())

    __radd__ = __add__

    def __neg__(self):
        return TruncatedLaurentInf.from_unit_series(-self.unit_series())

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not is_scalar(other):
            return NotImplemented
        return TruncatedLaurentInf.from_unit_series(self.unit_series() * other)

    __rmul__ = __mul__
