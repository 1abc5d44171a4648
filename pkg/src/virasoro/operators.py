"""
Operadores diferenciales lineales sobre polinomios en las coordenadas de
coeficientes: representación de Witt, representación de Virasoro en la
carta del disco y utilidades (conmutadores sobre bases graduadas, núcleos,
apareamiento dual, vector singular de nivel 2).

Convención de conmutadores implementada y verificada por los tests:

  [L_m, L_n] = (m − n)·L_{m+n} + (c/12)(m³ − m)·δ_{m+n,0}
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

import numpy as np
import sympy

from src.circle.cocycle import CentralParams
from src.errors import ChartMismatch, UnsupportedLevel
from src.series.base_series import series_inverse
from src.virasoro.polynomial import (
    DISC,
    CoeffPolynomial,
    as_sympy,
    chart_variables,
    index_range,
    monomial_basis,
    variable,
)

logger = logging.getLogger(__name__)

VIRASORO_BRACKET = "[L_m, L_n] = (m - n) L_{m+n} + (c/12)(m^3 - m) delta_{m+n,0}"


# ── Operador ────────────────────────────────────────────────────────────────

class LinearCoeffOperator:
    """
    A = Σ_α q_α(x)·∂^α, con α una tupla ordenada de índices de variables
    (α = () es el término de multiplicación).

    Args:
        chart: 'disc' o 'infinity'.
        N: Cantidad de coordenadas (c₁..c_N o b₀..b_N).
        terms: {α: coeficiente polinomial (sympy)}.
        level: Corrimiento de peso, peso(A·P) ≤ peso(P) − level.
        name: Etiqueta para logs y exportación.
    """

    def __init__(self, chart: str, N: int, terms: dict, level: int = 0, name: str = ""):
        self.chart = chart
        self.N = N
        self.level = level
        self.name = name
        valid = set(index_range(chart, N))
        clean = {}
        for alpha, q in terms.items():
            alpha = tuple(sorted(alpha))
            if any(k not in valid for k in alpha):
                continue
            q = sympy.expand(as_sympy(q))
            if q == 0:
                continue
            clean[alpha] = sympy.expand(clean.get(alpha, 0) + q)
        self.terms = {alpha: q for alpha, q in clean.items() if q != 0}

    @property
    def order(self) -> int:
        return max((len(alpha) for alpha in self.terms), default=0)

    def apply(self, P: CoeffPolynomial) -> CoeffPolynomial:
        if P.chart != self.chart:
            raise ChartMismatch(f"Operador en carta {self.chart}, polinomio en {P.chart}")
        N = max(self.N, P.N)
        gens = chart_variables(self.chart, N)
        result = sympy.Poly(0, *gens)
        source = sympy.Poly(P.expr, *gens)
        for alpha, q in self.terms.items():
            derived = source
            for k in alpha:
                derived = derived.diff(variable(self.chart, k))
            if derived.is_zero:
                continue
            result = result + sympy.Poly(q, *gens) * derived
        return CoeffPolynomial.from_poly(result, self.chart, N)

    # ── Álgebra lineal de operadores ─────────────────────────────────────

    def _check(self, other: "LinearCoeffOperator") -> None:
        if self.chart != other.chart:
            raise ChartMismatch(f"Cartas distintas: {self.chart} vs {other.chart}")

    def __add__(self, other: "LinearCoeffOperator") -> "LinearCoeffOperator":
        self._check(other)
        terms = dict(self.terms)
        for alpha, q in other.terms.items():
            terms[alpha] = terms.get(alpha, 0) + q
        return LinearCoeffOperator(self.chart, max(self.N, other.N), terms,
                                   min(self.level, other.level))

    def __neg__(self) -> "LinearCoeffOperator":
        return self * -1

    def __sub__(self, other: "LinearCoeffOperator") -> "LinearCoeffOperator":
        return self + (-other)

    def __mul__(self, scalar) -> "LinearCoeffOperator":
        s = as_sympy(scalar)
        return LinearCoeffOperator(self.chart, self.N,
                                   {alpha: s * q for alpha, q in self.terms.items()},
                                   self.level, self.name)

    __rmul__ = __mul__

    def to_dict(self) -> dict:
        names = {k: str(variable(self.chart, k)) for k in index_range(self.chart, self.N)}
        return {
            "name": self.name,
            "chart": self.chart,
            "level": self.level,
            "terms": [
                {"derivative": [names[k] for k in alpha], "coeff": str(q)}
                for alpha, q in sorted(self.terms.items())
            ],
        }

    def __repr__(self) -> str:
        return f"LinearCoeffOperator({self.name or '?'}, chart={self.chart}, N={self.N})"


# ── Acción sobre una base ───────────────────────────────────────────────────

@dataclass
class BasisAction:
    """Imágenes de una base de monomios bajo un operador (o combinación)."""

    domain: list[CoeffPolynomial]
    images: list[CoeffPolynomial]

    def matrix(self) -> tuple[sympy.Matrix, list[tuple[int, ...]]]:
        """Matriz columna a columna y la lista de monomios del codominio."""
        rows = sorted({m for image in self.images for m in image.terms()})
        index = {m: i for i, m in enumerate(rows)}
        M = sympy.zeros(len(rows), len(self.images))
        for j, image in enumerate(self.images):
            for m, coeff in image.terms().items():
                M[index[m], j] = coeff
        return M, rows

    @property
    def is_zero(self) -> bool:
        return all(image.is_zero for image in self.images)

    def _combine(self, other: "BasisAction", sign: int) -> "BasisAction":
        if len(self.domain) != len(other.domain):
            raise ValueError("Las acciones se evaluaron sobre bases distintas.")
        return BasisAction(self.domain, [a + b * sign for a, b in zip(self.images, other.images)])

    def __add__(self, other: "BasisAction") -> "BasisAction":
        return self._combine(other, 1)

    def __sub__(self, other: "BasisAction") -> "BasisAction":
        return self._combine(other, -1)

    def __mul__(self, scalar) -> "BasisAction":
        return BasisAction(self.domain, [image * as_sympy(scalar) for image in self.images])

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, BasisAction):
            return NotImplemented
        return (self - other).is_zero

    __hash__ = None

    def scalar_multiple(self):
        """Escalar s con image_i = s·domain_i para todo i, o None si no existe."""
        scalar = None
        for m, image in zip(self.domain, self.images):
            if image.is_zero:
                candidate = sympy.Integer(0)
            else:
                ratio = sympy.cancel(image.expr / m.expr)
                if ratio.free_symbols & set(m.gens):
                    return None
                candidate = ratio
            if scalar is None:
                scalar = candidate
            elif sympy.simplify(scalar - candidate) != 0:
                return None
        return scalar


def action(A: LinearCoeffOperator, W: int) -> BasisAction:
    basis = monomial_basis(A.chart, A.N, W)
    return BasisAction(basis, [A.apply(m) for m in basis])


def commutator(A: LinearCoeffOperator, B: LinearCoeffOperator, W: int) -> BasisAction:
    """
    [A, B] = AB − BA evaluado sobre la base de monomios de peso ≤ W.

    Con los operadores de witt_op y virasoro_op vale [L_m, L_n] = (m − n)L_{m+n}
    más el término central (VIRASORO_BRACKET), así que [L₁, L₂] = −L₃: los
    operadores actúan sobre funciones de f y el signo es el opuesto al de los
    campos z^{k+1}∂_z.
    """
    A._check(B)
    basis = monomial_basis(A.chart, max(A.N, B.N), W)
    images = [A.apply(B.apply(m)) - B.apply(A.apply(m)) for m in basis]
    return BasisAction(basis, images)


def lie_bracket(A: LinearCoeffOperator, B: LinearCoeffOperator) -> LinearCoeffOperator:
    """
    Corchete simbólico de operadores de primer orden (más términos de
    multiplicación): [A, B] = Σ_j (A·b_j − B·a_j) ∂_j + (A·b₀ − B·a₀).

    Raises:
        ValueError: si alguno de los operadores es de orden ≥ 2.
    """
    A._check(B)
    if A.order > 1 or B.order > 1:
        raise ValueError("lie_bracket sólo admite operadores de primer orden.")
    N = max(A.N, B.N)
    A1 = LinearCoeffOperator(A.chart, N, {key: q for key, q in A.terms.items() if key})
    B1 = LinearCoeffOperator(A.chart, N, {key: q for key, q in B.terms.items() if key})
    terms = {}
    for alpha in set(A.terms) | set(B.terms):
        a = CoeffPolynomial(A.terms.get(alpha, 0), A.chart, N)
        b = CoeffPolynomial(B.terms.get(alpha, 0), A.chart, N)
        terms[alpha] = (A1.apply(b) - B1.apply(a)).expr
    return LinearCoeffOperator(A.chart, N, terms, A.level + B.level,
                               f"[{A.name}, {B.name}]")


# ── Witt y Virasoro en la carta del disco ───────────────────────────────────

def _c(k: int, N: int):
    # c₀ = a₁ = 1; coordenadas fuera de la truncación valen 0
    if k == 0:
        return sympy.Integer(1)
    if 1 <= k <= N:
        return variable(DISC, k)
    return sympy.Integer(0)


def witt_op(k: int, N: int) -> LinearCoeffOperator:
    """L_k = ∂_k + Σ_{n≥1} (n+1)·c_n·∂_{n+k}, k ≥ 1."""
    if k < 1:
        raise ValueError("witt_op sólo cubre k ≥ 1.")
    terms = {(k,): 1}
    for n in range(1, N - k + 1):
        terms[(n + k,)] = (n + 1) * variable(DISC, n)
    return LinearCoeffOperator(DISC, N, terms, level=k, name=f"L{k}")


def _reciprocal_unit(N: int) -> list:
    """q_j de 1/(f/z) = Σ q_j z^j con coeficientes simbólicos c_j."""
    length = N + 3
    unit = np.empty(length, dtype=object)
    unit[0] = Fraction(1)
    for j in range(1, length):
        unit[j] = _c(j, N)
    q = series_inverse(unit, length - 1)
    return [sympy.expand(value) for value in q]


def virasoro_op(n: int, p: CentralParams, N: int) -> LinearCoeffOperator:
    """
    Generadores de Virasoro en coordenadas c₁..c_N.

      L₀  = h + Σ k c_k ∂_k
      L₋₁ = Σ ((k+2)c_{k+1} − 2c₁c_k) ∂_k + 2h c₁
      L₋₂ = Σ ((k+3)c_{k+2} − (4c₂ − c₁²)c_k − a_k) ∂_k
            + h(4c₂ − c₁²) + (c/2)(c₂ − c₁²)

    con a_k el coeficiente de z^{k+1} en 1/f. Para n ≥ 1 coincide con witt_op.

    Raises:
        UnsupportedLevel: si n < −2.
    """
    if n < -2:
        raise UnsupportedLevel(f"L_{n}: sólo hay forma cerrada para n ≥ −2.")
    if n >= 1:
        return witt_op(n, N)

    c, h = as_sympy(p.c), as_sympy(p.h)
    c1, c2 = _c(1, N), _c(2, N)
    terms: dict = {}
    if n == 0:
        terms[()] = h
        for k in range(1, N + 1):
            terms[(k,)] = k * variable(DISC, k)
    elif n == -1:
        terms[()] = 2 * h * c1
        for k in range(1, N + 1):
            terms[(k,)] = (k + 2) * _c(k + 1, N) - 2 * c1 * variable(DISC, k)
    else:
        q = _reciprocal_unit(N)
        schwarz = 4 * c2 - c1 ** 2
        terms[()] = h * schwarz + (c / 2) * (c2 - c1 ** 2)
        for k in range(1, N + 1):
            terms[(k,)] = (k + 3) * _c(k + 2, N) - schwarz * variable(DISC, k) - q[k + 2]
    return LinearCoeffOperator(DISC, N, terms, level=n, name=f"L{n}")


def virasoro_central_term(m: int, n: int, p: CentralParams):
    """Término central (c/12)(m³ − m)δ_{m+n,0} de la convención implementada."""
    if m + n != 0:
        return sympy.Integer(0)
    return as_sympy(p.c) * (m ** 3 - m) / 12


# ── Dualidad y núcleos ──────────────────────────────────────────────────────

def dual_pairing(P: CoeffPolynomial, Q: CoeffPolynomial):
    """⟨P, Q⟩ = Σ_α p_α q_α α!, que hace de ∂_k el adjunto de la multiplicación por x_k."""
    if P.chart != Q.chart:
        raise ChartMismatch(f"Cartas distintas: {P.chart} vs {Q.chart}")
    N = max(P.N, Q.N)
    left = CoeffPolynomial(P.expr, P.chart, N).terms()
    right = CoeffPolynomial(Q.expr, Q.chart, N).terms()
    total = sympy.Integer(0)
    for alpha, p_alpha in left.items():
        q_alpha = right.get(alpha)
        if q_alpha is None:
            continue
        weight = 1
        for e in alpha:
            weight *= factorial(e)
        total += p_alpha * q_alpha * weight
    return total


def kernel_solve(A: LinearCoeffOperator, W: int) -> list[CoeffPolynomial]:
    """
    Base del núcleo de A restringido a los polinomios de peso ≤ W.

    Los vectores salen de la forma escalonada reducida: cada uno tiene
    coeficiente 1 en un monomio libre y los monomios pivote precedentes
    en el orden de `monomial_basis`.
    """
    acting = action(A, W)
    M, _ = acting.matrix()
    if M.rows == 0:
        return list(acting.domain)
    kernel = []
    for vector in M.nullspace():
        poly = CoeffPolynomial(0, A.chart, A.N)
        for coeff, m in zip(vector, acting.domain):
            if coeff != 0:
                poly = poly + m * coeff
        kernel.append(poly)
    logger.info(f"Núcleo de {A.name or 'A'} en peso ≤ {W}: dimensión {len(kernel)}")
    return kernel


# ── Vector singular de nivel 2 ──────────────────────────────────────────────

@dataclass
class SingularVectorReport:
    chi: CoeffPolynomial
    L1_chi: CoeffPolynomial
    L2_chi: CoeffPolynomial

    @property
    def is_singular(self) -> bool:
        return self.L1_chi.is_zero and self.L2_chi.is_zero

    def to_dict(self) -> dict:
        return {
            "chi": self.chi.to_dict(),
            "L1_chi": self.L1_chi.to_dict(),
            "L2_chi": self.L2_chi.to_dict(),
            "is_singular": self.is_singular,
        }


def level_two_singular_vector(kappa, p: CentralParams, N: int = 4) -> SingularVectorReport:
    """
    χ = ((κ/2)L₋₁² − 2L₋₂)·1 y sus imágenes por L₁ y L₂.

    Ambas se anulan exactamente cuando (c, h) es el par asociado a κ.
    """
    if N < 3:
        raise ValueError("El vector de nivel 2 necesita N ≥ 3.")
    kappa = as_sympy(kappa)
    vacuum = CoeffPolynomial.one(DISC, N)
    L_1 = virasoro_op(-1, p, N)
    L_2 = virasoro_op(-2, p, N)
    chi = L_1.apply(L_1.apply(vacuum)) * (kappa / 2) - L_2.apply(vacuum) * 2
    report = SingularVectorReport(
        chi=chi,
        L1_chi=witt_op(1, N).apply(chi),
        L2_chi=witt_op(2, N).apply(chi),
    )
    logger.info(f"Vector singular (κ = {kappa}): singular = {report.is_singular}")
    return report
