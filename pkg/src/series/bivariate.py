"""
Series bivariadas truncadas por grado total: Σ m_ij zⁱwʲ con i + j ≤ D.

El sector declara qué potencias representan los índices:
  '++' → zⁱ wʲ      (ambas variables cerca de 0)
  '--' → z⁻ⁱ w⁻ʲ    (ambas cerca de ∞)
  '+-' → zⁱ w⁻ʲ     (par complementario)
Los coeficientes con i + j > D no se conocen y se guardan como cero.
"""
import logging

import numpy as np

from src.errors import InsufficientOrder, SectorMismatch
from src.series.base_series import (
    BaseSeries,
    backend_of,
    cauchy_product,
    is_scalar,
    series_inverse,
    series_log,
    to_backend,
    to_pairs,
    zeros,
)

logger = logging.getLogger(__name__)

SECTORS = ("++", "--", "+-")


class BivariateTruncated(BaseSeries):
    kind = "bivariate"

    def __init__(self, coeffs, sector: str, backend: str | None = None):
        if sector not in SECTORS:
            raise ValueError(f"Sector desconocido: {sector!r}")
        super().__init__(coeffs, backend=backend)
        rows, cols = self._coeffs.shape
        if rows != cols:
            raise ValueError(f"Se esperaba una matriz cuadrada, llegó {rows}×{cols}.")
        self.sector = sector
        self._coeffs = _mask(self._coeffs, rows - 1)

    @classmethod
    def from_entries(cls, entries: dict, degree: int, sector: str,
                     backend: str) -> "BivariateTruncated":
        """Construye desde un dict {(i, j): valor}; lo no listado es cero."""
        array = zeros((degree + 1, degree + 1), backend)
        for (i, j), value in entries.items():
            if i + j <= degree:
                array[i, j] = to_backend([value], backend)[0]
        return cls(array, sector, backend=backend)

    @property
    def order(self) -> int:
        return self.degree

    @property
    def degree(self) -> int:
        return self._coeffs.shape[0] - 1

    def coefficient(self, i: int, j: int):
        if i + j > self.degree:
            raise InsufficientOrder(f"m_{i}{j} excede el grado total {self.degree}.")
        return self._coeffs[i, j]

    def block(self, n: int) -> np.ndarray:
        """Bloque (n+1)×(n+1) de coeficientes, todos dentro del grado conocido."""
        if 2 * n > self.degree:
            raise InsufficientOrder(
                f"El bloque {n}×{n} necesita grado total {2 * n}, hay {self.degree}."
            )
        return self._coeffs[:n + 1, :n + 1].copy()

    def evaluate(self, z, w):
        z = complex(z)
        w = complex(w)
        zp = z if self.sector[0] == "+" else 1 / z
        wp = w if self.sector[1] == "+" else 1 / w
        values = to_backend(self._coeffs, "float")
        total = 0j
        for (i, j), value in np.ndenumerate(values):
            total += value * zp ** i * wp ** j
        return total

    def truncate(self, order: int) -> "BivariateTruncated":
        if order > self.degree:
            raise InsufficientOrder(f"No se puede extender de grado {self.degree} a {order}.")
        return BivariateTruncated(self._coeffs[:order + 1, :order + 1], self.sector,
                                  backend=self.backend)

    def transpose(self) -> "BivariateTruncated":
        return BivariateTruncated(self._coeffs.T, self.sector[::-1], backend=self.backend)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "sector": self.sector, "order": self.degree,
                "coeffs": [to_pairs(row) for row in self._coeffs]}

    # ------------------------------------------------------------------ #
    #  Aritmética                                                         #
    # ------------------------------------------------------------------ #

    def _check_sector(self, other: "BivariateTruncated") -> None:
        if self.sector != other.sector:
            raise SectorMismatch(f"Sectores incompatibles: {self.sector} vs {other.sector}")

    def _pair(self, other: "BivariateTruncated"):
        self._check_sector(other)
        a, b, backend = self._promote(other)
        n = min(self.degree, other.degree)
        return a[:n + 1, :n + 1], b[:n + 1, :n + 1], n, backend

    def __add__(self, other):
        if not isinstance(other, BivariateTruncated):
            return NotImplemented
        a, b, _, backend = self._pair(other)
        return BivariateTruncated(a + b, self.sector, backend=backend)

    def __neg__(self):
        return BivariateTruncated(-self._coeffs, self.sector, backend=self.backend)

    def __sub__(self, other):
        if not isinstance(other, BivariateTruncated):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if is_scalar(other):
            return BivariateTruncated(self._coeffs * other, self.sector)
        if not isinstance(other, BivariateTruncated):
            return NotImplemented
        a, b, n, backend = self._pair(other)
        out = zeros((n + 1, n + 1), backend)
        for i in range(n + 1):
            for k in range(i + 1):
                out[i] = out[i] + cauchy_product(a[k], b[i - k], n)
        return BivariateTruncated(out, self.sector, backend=backend)

    __rmul__ = __mul__

    def log(self) -> "BivariateTruncated":
        """
        Logaritmo bivariado por filas: con Q = Σ qᵢ(w) zⁱ, L = log Q cumple
        i·ℓᵢ·q₀ = i·qᵢ − Σ_{k<i} k·ℓ_k·q_{i−k}, con ℓ₀ = log q₀ (univariado).

        Raises:
            ZeroLeadingCoefficient: si el término constante es nulo.
        """
        D = self.degree
        rows = self._coeffs
        backend = backend_of(rows)
        inverse_q0 = series_inverse(rows[0], D)
        logs = [series_log(rows[0], D)]
        for i in range(1, D + 1):
            acc = i * rows[i]
            for k in range(1, i):
                acc = acc - k * cauchy_product(logs[k], rows[i - k], D)
            logs.append(cauchy_product(acc, inverse_q0, D) / i)
        return BivariateTruncated(np.array(logs, dtype=rows.dtype), self.sector, backend=backend)


def _mask(array: np.ndarray, degree: int) -> np.ndarray:
    """Anula (como desconocidos) los coeficientes con i + j > degree."""
    backend = backend_of(array)
    out = np.array(array, dtype=array.dtype)
    zero = zeros(1, backend)[0]
    for i in range(degree + 1):
        for j in range(degree + 1 - i, degree + 1):
            out[i, j] = zero
    out.flags.writeable = False
    return out
