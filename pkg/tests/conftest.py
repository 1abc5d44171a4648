"""
Fixtures compartidos: funciones univalentes de referencia (Koebe y
polinomios de la clase S con coeficientes racionales), semillas fijas y la
grilla de valores de κ usada en las pruebas de la relación κ ↦ (c, h).
"""

import random
from fractions import Fraction

import pytest

from src.series import TruncatedTaylor


@pytest.fixture
def koebe():
    """k(z) = z/(1 − z)² hasta orden 9, backend exacto."""
    return TruncatedTaylor.koebe(9)


@pytest.fixture
def univalente():
    """z + z²/4: univalente en el disco (|a₂| < 1/2)."""
    return TruncatedTaylor.from_polynomial([0, 1, Fraction(1, 4)], 9)


@pytest.fixture
def clase_s_aleatoria():
    """
    Fábrica de polinomios z + Σ a_k z^k con Σ k|a_k| < 1 (univalentes por el
    criterio de la derivada), coeficientes racionales reproducibles.
    """
    def _fabricar(seed: int, order: int = 12, grado: int = 5) -> TruncatedTaylor:
        rng = random.Random(seed)
        coeffs = [0, 1]
        for k in range(2, grado + 1):
            coeffs.append(Fraction(rng.randint(-8, 8), 8 * k * grado))
        return TruncatedTaylor.from_polynomial(coeffs, order)

    return _fabricar


@pytest.fixture
def seed():
    return 20240611


@pytest.fixture(params=[Fraction(2), Fraction(8, 3), Fraction(4), Fraction(6)],
                ids=["k2", "k8_3", "k4", "k6"])
def kappa(request):
    return request.param
