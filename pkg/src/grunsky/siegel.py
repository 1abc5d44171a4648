"""
Embedding de Yur'ev–Krichever en el disco de Siegel infinito.

A cada f de la clase S se le asocia el subespacio generado por
w_n(z) = F_n(f(z)) = z⁻ⁿ + n Σ_m b_{−n,−m} zᵐ y el operador truncado
Z_nm = √(nm)·b_{−n,−m}. Con esa ponderación la desigualdad de Grunsky es
la cota ‖Z‖ ≤ 1 y el potencial de Kähler es −tr log(1 − Z*Z).
"""
import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from src.errors import InsufficientOrder, NotInDisc, SectorMismatch
from src.grunsky.faber import homogeneous_horner, faber
from src.grunsky.matrices import grunsky_single, is_symmetric
from src.series.base_series import FLOAT, to_backend
from src.series.bivariate import BivariateTruncated
from src.series.taylor import TruncatedTaylor

logger = logging.getLogger(__name__)

SIEGEL_WEIGHTING = "sqrt(nm)"

# Sector del núcleo → espacio donde vive h
# '++' : h(w⁻¹) ∈ H₊ → T h ∈ H₋   (núcleo holomorfo en (0, 0))
# '--' : h(w) ∈ H₋   → T h ∈ H₊
# '+-' : h(w) ∈ H₋   → T h ∈ H₋
SECTOR_DOMAINS = {"++": "H+", "--": "H-", "+-": "H-"}


@dataclass
class SiegelPoint:
    Z: np.ndarray
    f_source: TruncatedTaylor | None = None
    weighting: str = SIEGEL_WEIGHTING

    @property
    def N(self) -> int:
        return self.Z.shape[0]


@dataclass
class YKEmbedding:
    """Punto de Siegel y vectores w_n (coeficientes de z¹..z^N de la parte regular)."""

    point: SiegelPoint
    vectors: list[np.ndarray] = field(default_factory=list)
    route_residual: float = 0.0


@dataclass
class SiegelReport:
    symmetric: bool
    spectral_gap: float
    kahler_potential: float
    weighting: str = SIEGEL_WEIGHTING

    def to_dict(self) -> dict:
        return {"symmetric": self.symmetric, "spectral_gap": self.spectral_gap,
                "kahler_potential": self.kahler_potential, "weighting": self.weighting}


def siegel_matrix(c: np.ndarray) -> np.ndarray:
    """Z_nm = √(nm)·c_nm para n, m ≥ 1."""
    N = c.shape[0] - 1
    weights = np.sqrt(np.arange(1, N + 1, dtype=float))
    block = to_backend(c[1:, 1:], FLOAT)
    return weights[:, None] * block * weights[None, :]


def yk_embedding(f: TruncatedTaylor, N: int, tol: float = 1e-10) -> YKEmbedding:
    """
    Vectores w_n por dos caminos (fila de Grunsky y composición F_n∘f) y el
    punto Z del disco de Siegel.

    Raises:
        InsufficientOrder: si f no tiene orden ≥ 2N + 1.
    """
    c = grunsky_single(f, N).c
    polys = faber(f, N).F
    Q = f.divide_by_z().reciprocal()
    z = TruncatedTaylor.identity(Q.order, f.backend)

    vectors = []
    residual = 0.0
    for n in range(1, N + 1):
        from_row = n * c[n, 1:]
        composed = homogeneous_horner(polys[n - 1], Q, z).coeffs
        from_composition = composed[n + 1:n + N + 1]
        if len(from_composition) < N:
            raise InsufficientOrder(f"F_{n}∘f no alcanza el coeficiente z^{N}.")
        gap = to_backend(from_row, FLOAT) - to_backend(from_composition, FLOAT)
        residual = max(residual, float(np.max(np.abs(gap))))
        vectors.append(from_row)
    if residual > tol:
        logger.warning(f"[VALIDATION_ERROR] Los dos caminos de w_n difieren en {residual:.3e}")
    point = SiegelPoint(Z=siegel_matrix(c), f_source=f)
    logger.info(f"Embedding de Yur'ev–Krichever calculado (N = {N})")
    return YKEmbedding(point=point, vectors=vectors, route_residual=residual)


def residue_operator(kernel: BivariateTruncated, h, domain: str) -> np.ndarray:
    """
    Aplica el operador T asociado a un núcleo bivariado: extrae el término
    en w⁰ de núcleo(z, w)·h y devuelve sus coeficientes en z.

    Args:
        kernel: Núcleo con coeficientes m_ab.
        h: Coeficientes h_b del vector de entrada (h_b acompaña a la potencia
            que cancela la de w en el núcleo).
        domain: 'H+' o 'H-', el espacio en el que vive h.

    Returns:
        Vector o con o_a = Σ_b m_ab h_b.

    Raises:
        SectorMismatch: si el núcleo no actúa sobre `domain`.
    """
    expected = SECTOR_DOMAINS[kernel.sector]
    if domain != expected:
        raise SectorMismatch(
            f"Un núcleo de sector '{kernel.sector}' actúa sobre {expected}, no sobre {domain}."
        )
    matrix = kernel.coeffs
    h = np.asarray(h, dtype=matrix.dtype)
    width = min(len(h), matrix.shape[1])
    return matrix[:, :width].dot(h[:width])


def siegel_check(point: SiegelPoint, tol: float = 1e-12) -> SiegelReport:
    """
    Simetría, gap espectral 1 − λ_max(Z*Z) y potencial −tr log(1 − Z*Z).

    Raises:
        NotInDisc: si el gap espectral es ≤ tol (el potencial no está definido).
    """
    Z = np.asarray(point.Z, dtype=complex)
    symmetric = is_symmetric(Z)
    eigenvalues = linalg.eigvalsh(Z.conj().T @ Z)
    gap = 1.0 - float(np.max(eigenvalues, initial=0.0))
    if gap <= tol:
        raise NotInDisc(f"Z no pertenece al disco de Siegel: gap espectral {gap:.3e}")
    potential = -float(np.sum(np.log1p(-eigenvalues)))
    logger.info(f"Chequeo de Siegel: gap = {gap:.6f}, potencial = {potential:.6e}")
    return SiegelReport(symmetric=symmetric, spectral_gap=gap, kahler_potential=potential)
