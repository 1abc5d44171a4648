"""
Polinomios de Faber y las identidades de Faber–Grunsky.

  log[(g(z) − w)/(Rz)] = −Σ G_n(w)/n z⁻ⁿ
  log[(w − f(z))/w]    = log[f(z)/(rz)] − Σ F_n(w)/n zⁿ

G_n es un polinomio de grado n en w; F_n lo es en s = 1/w. Cada uno se
guarda como vector de coeficientes [p₀, p₁, …, p_n].
"""
import logging
from dataclasses import dataclass, field

import numpy as np

from src.errors import InsufficientOrder
from src.grunsky.matrices import GrunskyData, grunsky_pair
from src.series.base_series import EXACT, FLOAT, one, to_backend
from src.series.bivariate import BivariateTruncated
from src.series.laurent import TruncatedLaurentInf
from src.series.taylor import TruncatedTaylor

logger = logging.getLogger(__name__)


@dataclass
class FaberSet:
    G: list[np.ndarray] = field(default_factory=list)
    F: list[np.ndarray] = field(default_factory=list)

    def G_n(self, n: int) -> np.ndarray:
        return self.G[n - 1]

    def F_n(self, n: int) -> np.ndarray:
        return self.F[n - 1]


def faber(series: TruncatedTaylor | TruncatedLaurentInf, N: int) -> FaberSet:
    """
    Polinomios G₁..G_N (si se recibe g de Laurent) o F₁..F_N (si se recibe f).

    Raises:
        InsufficientOrder: si la serie no determina los N polinomios.
        ZeroLeadingCoefficient: coeficiente principal nulo.
    """
    if N < 1:
        raise ValueError("N debe ser ≥ 1.")
    if isinstance(series, TruncatedLaurentInf):
        return FaberSet(G=_faber_G(series, N))
    return FaberSet(F=_faber_F(series, N))


def _faber_G(g: TruncatedLaurentInf, N: int) -> list[np.ndarray]:
    # Serie en (u, w) = (1/z, w). La fila n del log sólo depende de b₀..b_{n−1}.
    if g.order + 1 < N:
        raise InsufficientOrder(f"G_{N} necesita g de orden ≥ {N - 1}.")
    degree = 2 * N
    backend = g.backend
    lead = g.lead
    b = g.laurent_coeffs
    entries = {(0, 0): one(backend), (1, 1): -one(backend) / lead}
    for k in range(min(len(b), degree)):
        entries[(k + 1, 0)] = b[k] / lead
    logs = BivariateTruncated.from_entries(entries, degree, "++", backend).log()
    return [-n * logs.coeffs[n, :n + 1] for n in range(1, N + 1)]


def _faber_F(f: TruncatedTaylor, N: int) -> list[np.ndarray]:
    # Fila n usa a₁..a_n; la corrección log(f/(a₁z)) necesita a_{n+1}.
    if f.order < N + 1:
        raise InsufficientOrder(f"F_{N} necesita f de orden ≥ {N + 1}.")
    degree = 2 * N
    backend = f.backend
    a = f.coeffs
    entries = {(0, 0): one(backend)}
    for i in range(1, min(f.order, degree - 1) + 1):
        entries[(i, 1)] = -a[i]
    logs = BivariateTruncated.from_entries(entries, degree, "++", backend).log()
    quotient = f.divide_by_z()
    correction = (quotient / quotient.coeffs[0]).log().coeffs
    polys = []
    for n in range(1, N + 1):
        row = np.array(logs.coeffs[n, :n + 1], dtype=logs.coeffs.dtype)
        row[0] = row[0] - correction[n]
        polys.append(-n * row)
    return polys


# ── Evaluación en composiciones ─────────────────────────────────────────────

def homogeneous_horner(poly: np.ndarray, base: TruncatedTaylor, shift: TruncatedTaylor) -> TruncatedTaylor:
    """Σ_j p_j·shift^{n−j}·base^j para el polinomio p de grado n."""
    n = len(poly) - 1
    result = TruncatedTaylor.from_polynomial([poly[n]], base.order, base.backend)
    power = TruncatedTaylor.from_polynomial([1], base.order, base.backend)
    for j in range(n - 1, -1, -1):
        power = power * shift
        result = result * base + power * poly[j]
    return result


def _compose_powers(poly: np.ndarray, base: TruncatedTaylor) -> TruncatedTaylor:
    """Σ_j p_j·base^j (Horner)."""
    result = TruncatedTaylor.from_polynomial([poly[-1]], base.order, base.backend)
    for coefficient in poly[-2::-1]:
        result = result * base + coefficient
    return result


def faber_identity_residuals(f: TruncatedTaylor, g: TruncatedLaurentInf, N: int,
                             data: GrunskyData | None = None) -> dict[str, float]:
    """
    Residuos máximos de las cuatro identidades de composición (r = R = 1):

      G_n(g(w)) = wⁿ + n Σ_{m≥1} b_nm w⁻ᵐ
      G_n(f(w)) = n Σ_{m≥0} b_{n,−m} wᵐ
      F_n(g(w)) = −n b_{−n,0} + n Σ_{m≥1} b_{m,−n} w⁻ᵐ
      F_n(f(w)) = w⁻ⁿ + n Σ_{m≥1} b_{−n,−m} wᵐ

    Se comparan los coeficientes de índice ≤ N (incluidos los que deben
    anularse). En backend exacto los residuos son exactamente cero.
    """
    data = data or grunsky_pair(f, g, N)
    G = faber(g, N).G
    F = faber(f, N).F
    backend = data.backend
    f, g = _align(f, backend), _align(g, backend)
    T = g.unit_series()
    u = TruncatedTaylor.identity(T.order, backend)
    inverse_T = T.reciprocal()
    Q = f.divide_by_z().reciprocal()
    z_f = TruncatedTaylor.identity(Q.order, backend)

    residuals = {"G_of_g": 0.0, "G_of_f": 0.0, "F_of_g": 0.0, "F_of_f": 0.0}
    for n in range(1, N + 1):
        # G_n(g(w)) = u⁻ⁿ·Σ p_j u^{n−j} T^j
        s = homogeneous_horner(_align_poly(G[n - 1], backend), T, u).coeffs
        expected = [1] + [0] * n + [n * data.b(n, m) for m in range(1, N + 1)]
        residuals["G_of_g"] = max(residuals["G_of_g"], _max_gap(s, expected))
        # G_n(f(w)) como serie de Taylor
        s = _compose_powers(_align_poly(G[n - 1], backend), f).coeffs
        expected = [n * data.b(n, -m) for m in range(0, N + 1)]
        residuals["G_of_f"] = max(residuals["G_of_f"], _max_gap(s, expected))
        # F_n(g(w)) = Σ p_j u^j (1/T)^j
        s = _compose_powers(_align_poly(F[n - 1], backend), u * inverse_T).coeffs
        expected = [-n * data.b(-n, 0)] + [n * data.b(m, -n) for m in range(1, N + 1)]
        residuals["F_of_g"] = max(residuals["F_of_g"], _max_gap(s, expected))
        # F_n(f(w)) = z⁻ⁿ·Σ p_j z^{n−j} Q^j
        s = homogeneous_horner(_align_poly(F[n - 1], backend), Q, z_f).coeffs
        expected = [1] + [0] * n + [n * data.b(-n, -m) for m in range(1, N + 1)]
        residuals["F_of_f"] = max(residuals["F_of_f"], _max_gap(s, expected))
    logger.debug(f"Residuos de Faber–Grunsky: {residuals}")
    return residuals


def _align(series, backend: str):
    return series if series.backend == backend else series.to_float()


def _align_poly(poly: np.ndarray, backend: str) -> np.ndarray:
    return poly if backend == EXACT else to_backend(poly, FLOAT)


def _max_gap(values: np.ndarray, expected: list) -> float:
    if len(values) < len(expected):
        raise InsufficientOrder("La composición no alcanza los coeficientes a comparar.")
    gap = to_backend(values[:len(expected)], FLOAT) - to_backend(expected, FLOAT)
    return float(np.max(np.abs(gap)))
