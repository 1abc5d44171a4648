"""
Polinomios en las coordenadas afines del cuerpo de coeficientes.

Dos cartas:
  'disc'     → variables c₁..c_N (c_n = a_{n+1}), peso de c_k = k
  'infinity' → variables b₀..b_N,                 peso de b_k = k + 1

Los coeficientes son exactos (sympy.Poly sobre QQ) salvo que se pasen
flotantes explícitamente.
"""
import logging
from fractions import Fraction
from functools import lru_cache

import sympy

from src.errors import ChartMismatch

logger = logging.getLogger(__name__)

DISC = "disc"
INFINITY = "infinity"
CHARTS = (DISC, INFINITY)


# ── Variables y pesos ────────────────────────────────────────────────────────

def _check_chart(chart: str) -> None:
    if chart not in CHARTS:
        raise ValueError(f"Carta desconocida: {chart!r}")


def index_range(chart: str, N: int) -> range:
    _check_chart(chart)
    return range(1, N + 1) if chart == DISC else range(0, N + 1)


def variable(chart: str, k: int) -> sympy.Symbol:
    _check_chart(chart)
    return sympy.Symbol(f"c{k}" if chart == DISC else f"b{k}")


@lru_cache(maxsize=None)
def chart_variables(chart: str, N: int) -> tuple[sympy.Symbol, ...]:
    return tuple(variable(chart, k) for k in index_range(chart, N))


def variable_weight(chart: str, k: int) -> int:
    return k if chart == DISC else k + 1


def as_sympy(value):
    """Convierte escalares (Fraction, int, float, sympy) a sympy sin perder exactitud."""
    if isinstance(value, Fraction):
        return sympy.Rational(value.numerator, value.denominator)
    return sympy.sympify(value)


# ── Polinomio ────────────────────────────────────────────────────────────────

class CoeffPolynomial:

    def __init__(self, expr, chart: str, N: int):
        _check_chart(chart)
        self.chart = chart
        self.N = N
        self.gens = chart_variables(chart, N)
        if isinstance(expr, sympy.Poly):
            expr = expr.as_expr()
        self.poly = sympy.Poly(as_sympy(expr), *self.gens)

    @classmethod
    def from_poly(cls, poly: sympy.Poly, chart: str, N: int) -> "CoeffPolynomial":
        obj = cls.__new__(cls)
        obj.chart, obj.N = chart, N
        obj.gens = chart_variables(chart, N)
        obj.poly = poly
        return obj

    @classmethod
    def one(cls, chart: str, N: int) -> "CoeffPolynomial":
        return cls(1, chart, N)

    @classmethod
    def monomial(cls, chart: str, N: int, exponents: tuple[int, ...]) -> "CoeffPolynomial":
        expr = sympy.Mul(*[g ** e for g, e in zip(chart_variables(chart, N), exponents)])
        return cls(expr, chart, N)

    # ── Acceso ───────────────────────────────────────────────────────────

    @property
    def expr(self) -> sympy.Expr:
        return self.poly.as_expr()

    def terms(self) -> dict[tuple[int, ...], object]:
        return {monom: coeff for monom, coeff in self.poly.terms() if coeff != 0}

    def monomial_weight(self, exponents: tuple[int, ...]) -> int:
        indices = index_range(self.chart, self.N)
        return sum(variable_weight(self.chart, k) * e for k, e in zip(indices, exponents))

    @property
    def weight(self) -> int:
        """Peso máximo de los términos; −1 para el polinomio nulo."""
        terms = self.terms()
        if not terms:
            return -1
        return max(self.monomial_weight(m) for m in terms)

    @property
    def is_zero(self) -> bool:
        return self.poly.is_zero

    def coefficient(self, exponents: tuple[int, ...]):
        return self.terms().get(tuple(exponents), sympy.Integer(0))

    def diff(self, k: int) -> "CoeffPolynomial":
        if k not in index_range(self.chart, self.N):
            return CoeffPolynomial(0, self.chart, self.N)
        return CoeffPolynomial.from_poly(self.poly.diff(variable(self.chart, k)), self.chart, self.N)

    def evaluate(self, values: dict[int, object]):
        """Evalúa con {índice: valor}; los índices ausentes valen 0."""
        subs = {variable(self.chart, k): as_sympy(values.get(k, 0))
                for k in index_range(self.chart, self.N)}
        return self.expr.subs(subs)

    def to_dict(self) -> dict:
        names = [str(g) for g in self.gens]
        return {
            "chart": self.chart,
            "terms": [
                {"monomial": {name: e for name, e in zip(names, monom) if e},
                 "coeff": str(coeff)}
                for monom, coeff in sorted(self.terms().items())
            ],
        }

    # ── Aritmética ───────────────────────────────────────────────────────

    def _same_chart(self, other: "CoeffPolynomial") -> None:
        if self.chart != other.chart:
            raise ChartMismatch(f"Cartas distintas: {self.chart} vs {other.chart}")

    def _lift(self, other) -> "CoeffPolynomial":
        if isinstance(other, CoeffPolynomial):
            self._same_chart(other)
            if other.N != self.N:
                N = max(self.N, other.N)
                return CoeffPolynomial(other.expr, self.chart, N)
            return other
        return CoeffPolynomial(other, self.chart, self.N)

    def __add__(self, other) -> "CoeffPolynomial":
        other = self._lift(other)
        N = max(self.N, other.N)
        return CoeffPolynomial(self.expr + other.expr, self.chart, N)

    __radd__ = __add__

    def __neg__(self) -> "CoeffPolynomial":
        return CoeffPolynomial.from_poly(-self.poly, self.chart, self.N)

    def __sub__(self, other) -> "CoeffPolynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "CoeffPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "CoeffPolynomial":
        other = self._lift(other)
        N = max(self.N, other.N)
        return CoeffPolynomial(sympy.expand(self.expr * other.expr), self.chart, N)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, (CoeffPolynomial, int, Fraction, sympy.Basic)):
            return NotImplemented
        try:
            return sympy.expand((self - other).expr) == 0
        except ChartMismatch:
            return False

    __hash__ = None

    def __repr__(self) -> str:
        return f"CoeffPolynomial({self.expr}, chart={self.chart})"


# ── Bases graduadas ──────────────────────────────────────────────────────────

def _exponent_tuples(weights: list[int], budget: int):
    if not weights:
        yield ()
        return
    head, rest = weights[0], weights[1:]
    for e in range(budget // head + 1):
        for tail in _exponent_tuples(rest, budget - e * head):
            yield (e,) + tail


def monomial_basis(chart: str, N: int, W: int) -> list[CoeffPolynomial]:
    """
    Monomios de peso ≤ W ordenados por (peso, exponentes en orden descendente):
    c₁² precede a c₂ y b₀² precede a b₁.
    """
    weights = [variable_weight(chart, k) for k in index_range(chart, N)]
    exps = list(_exponent_tuples(weights, W))
    exps.sort(key=lambda e: (sum(w * x for w, x in zip(weights, e)), tuple(-x for x in e)))
    return [CoeffPolynomial.monomial(chart, N, e) for e in exps]
