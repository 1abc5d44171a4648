"""
Matrices de Grunsky de una función univalente o de un par complementario.

  log[(f(z) − f(w))/(z − w)] = −ΣΣ c_mn zᵐwⁿ        (|z|, |w| < 1)
  log[(g(z) − g(w))/(z − w)] = −ΣΣ d_mn z⁻ᵐw⁻ⁿ      (|z|, |w| > 1)
  log[(f(z) − g(w))/(z − w)] = −ΣΣ e_mn zᵐw⁻ⁿ       (|z| < 1 < |w|)

El cociente en la diagonal se arma primero como polinomio bivariado
(división sintética exacta) y después se toma un único log bivariado.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from src.errors import DegenerateDiagonal, InsufficientOrder
from src.series.base_series import EXACT, FLOAT, to_backend, to_pairs
from src.series.bivariate import BivariateTruncated
from src.series.laurent import TruncatedLaurentInf
from src.series.operations import invert_at_infinity
from src.series.taylor import TruncatedTaylor

logger = logging.getLogger(__name__)


@dataclass
class GrunskyData:
    """Bloques c, d, e (los ausentes quedan en None) y radios principales."""

    N: int
    backend: str
    c: np.ndarray | None = None
    d: np.ndarray | None = None
    e: np.ndarray | None = None
    r: float | None = None
    R: float | None = None

    def b(self, m: int, n: int):
        """
        Notación unificada (R = 1):
          b_{−m,−n} = c_mn (m, n ≥ 0),  b_mn = d_mn (m, n ≥ 1),
          b_{n,−m} = b_{−m,n} = e_mn + δ_mn/n (n ≥ 1, m ≥ 0).
        """
        if m <= 0 and n <= 0:
            return _entry(self.c, "c", -m, -n)
        if m >= 1 and n >= 1:
            return _entry(self.d, "d", m, n)
        positive, other = (m, -n) if m >= 1 else (n, -m)
        value = _entry(self.e, "e", other, positive)
        if other == positive:
            value = value + _unit_fraction(positive, self.backend)
        return value

    def block(self, name: str) -> np.ndarray:
        matrix = getattr(self, name)
        if matrix is None:
            raise KeyError(f"El bloque '{name}' no fue calculado.")
        return matrix

    def block_dict(self, name: str) -> dict:
        """Exporta un bloque como {"N", "block", "entries"} en orden fila por fila."""
        matrix = self.block(name)
        return {"N": self.N, "block": name, "entries": to_pairs(matrix.ravel())}


def _entry(matrix: np.ndarray | None, name: str, i: int, j: int):
    if matrix is None:
        raise KeyError(f"El bloque '{name}' no fue calculado.")
    if i >= matrix.shape[0] or j >= matrix.shape[1]:
        raise InsufficientOrder(f"{name}_{i}{j} está fuera del bloque calculado.")
    return matrix[i, j]


def _unit_fraction(n: int, backend: str):
    return Fraction(1, n) if backend == EXACT else 1.0 / n


def _common_backend(*series) -> str:
    return EXACT if all(s.backend == EXACT for s in series) else FLOAT


def _as_backend(series, backend: str) -> np.ndarray:
    return series.coeffs if series.backend == backend else to_backend(series.coeffs, backend)


# ── Núcleos bivariados ──────────────────────────────────────────────────────

def taylor_kernel(f: TruncatedTaylor, degree: int) -> BivariateTruncated:
    """(f(z) − f(w))/(z − w) = Σ a_{i+j+1} zⁱwʲ, sector '++'."""
    if f.order < degree + 1:
        raise InsufficientOrder(f"El núcleo de grado {degree} necesita f de orden {degree + 1}.")
    a = f.coeffs
    entries = {(i, j): a[i + j + 1] for i in range(degree + 1) for j in range(degree + 1 - i)}
    return BivariateTruncated.from_entries(entries, degree, "++", f.backend)


def laurent_kernel(g: TruncatedLaurentInf, degree: int) -> BivariateTruncated:
    """(g(z) − g(w))/(z − w) en u = 1/z, v = 1/w: b − Σ b_{p+q−1} uᵖv^q, sector '--'."""
    if g.order + 1 < degree:
        raise InsufficientOrder(f"El núcleo de grado {degree} necesita g de orden {degree - 1}.")
    b = g.laurent_coeffs
    entries = {(0, 0): g.lead}
    for p in range(1, degree + 1):
        for q in range(1, degree + 1 - p):
            entries[(p, q)] = -b[p + q - 1]
    return BivariateTruncated.from_entries(entries, degree, "--", g.backend)


def mixed_kernel(f: TruncatedTaylor, g: TruncatedLaurentInf, degree: int) -> BivariateTruncated:
    """
    v·g(w) − v·f(z) con v = 1/w, sector '+-'. Cumple
    (f(z) − g(w))/(z − w) = núcleo/(1 − zv).
    """
    if f.order + 1 < degree or g.order + 1 < degree:
        raise InsufficientOrder(f"El núcleo mixto de grado {degree} excede los órdenes dados.")
    backend = _common_backend(f, g)
    a = _as_backend(f, backend)
    unit = _as_backend(g, backend)
    entries = {(0, k): unit[k] for k in range(degree + 1)}
    for i in range(1, degree):
        entries[(i, 1)] = -a[i]
    return BivariateTruncated.from_entries(entries, degree, "+-", backend)


# ── Operaciones ─────────────────────────────────────────────────────────────

def grunsky_generating_function(f: TruncatedTaylor | TruncatedLaurentInf, N: int) -> BivariateTruncated:
    """ΣΣ c_mn zᵐwⁿ (o ΣΣ d_mn z⁻ᵐw⁻ⁿ) hasta grado total 2N."""
    if N < 1:
        raise ValueError("N debe ser ≥ 1.")
    if isinstance(f, TruncatedLaurentInf):
        kernel = laurent_kernel(f, 2 * N)
    else:
        kernel = taylor_kernel(f, 2 * N)
    if kernel.coefficient(0, 0) == 0:
        raise DegenerateDiagonal("El cociente en la diagonal tiene parte unitaria nula.")
    return -kernel.log()


def grunsky_single(f: TruncatedTaylor | TruncatedLaurentInf, N: int) -> GrunskyData:
    """
    Bloque c (para f de Taylor) o d (para g de Laurent) de tamaño (N+1)×(N+1).

    Args:
        f: Función de la clase correspondiente.
        N: Índice máximo de los coeficientes pedidos (N ≥ 1).

    Returns:
        GrunskyData con sólo el bloque correspondiente.

    Raises:
        InsufficientOrder: si f no tiene orden ≥ 2N + 1 (o g orden ≥ 2N − 1).
        DegenerateDiagonal: si el cociente en la diagonal tiene parte unitaria nula.
    """
    generating = grunsky_generating_function(f, N)
    if isinstance(f, TruncatedLaurentInf):
        name, radius = "d", {"R": float(abs(complex(f.lead)))}
    else:
        name, radius = "c", {"r": float(abs(complex(f.coeffs[1])))}
    matrix = generating.block(N)
    logger.debug(f"Bloque {name} de Grunsky calculado con N = {N}")
    return GrunskyData(N=N, backend=generating.backend, **{name: matrix}, **radius)


def grunsky_pair(f: TruncatedTaylor, g: TruncatedLaurentInf, N: int) -> GrunskyData:
    """
    Los tres bloques de un par complementario (f, g).

    La disjunción de las imágenes no es verificable con series truncadas y
    queda a cargo de quien llama.
    """
    single_f = grunsky_single(f, N)
    single_g = grunsky_single(g, N)
    kernel = mixed_kernel(f, g, 2 * N)
    if kernel.coefficient(0, 0) == 0:
        raise DegenerateDiagonal("El núcleo mixto tiene parte unitaria nula (R = 0).")
    e = (-kernel.log()).block(N)
    for n in range(1, N + 1):
        e[n, n] = e[n, n] - _unit_fraction(n, kernel.backend)
    backend = _common_backend(f, g)
    c = single_f.c if backend == single_f.backend else to_backend(single_f.c, backend)
    d = single_g.d if backend == single_g.backend else to_backend(single_g.d, backend)
    logger.info(f"Matrices de Grunsky del par calculadas (N = {N}, backend = {backend})")
    return GrunskyData(N=N, backend=backend, c=c, d=d, e=e, r=single_f.r, R=single_g.R)


def is_symmetric(matrix: np.ndarray, tol: float = 1e-12) -> bool:
    if matrix.dtype == object:
        return all(matrix[i, j] == matrix[j, i]
                   for i in range(matrix.shape[0]) for j in range(i))
    return bool(np.max(np.abs(matrix - matrix.T), initial=0.0) < tol)


def inversion_grunsky_check(f: TruncatedTaylor, N: int) -> float:
    """
    max |d(g)_mn − c(f)_mn| sobre 1 ≤ m, n ≤ N, con g = 1/f(1/z).

    Ambos caminos deben coincidir exactamente: es la misma identidad leída
    en las dos cartas.
    """
    c = grunsky_single(f, N).c
    d = grunsky_single(invert_at_infinity(f), N).d
    diff = to_backend(c[1:, 1:], FLOAT) - to_backend(d[1:, 1:], FLOAT)
    return float(np.max(np.abs(diff), initial=0.0))


