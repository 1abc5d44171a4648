"""
Tests del núcleo de series truncadas: aritmética, composición, reversión,
inversión en infinito, recíprocos, schwarziana y clase S.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.errors import InexactOperation, InsufficientOrder, NonzeroConstantTerm, ZeroLeadingCoefficient
from src.series import (
    FLOAT,
    TruncatedLaurentInf,
    TruncatedTaylor,
    arithmetic,
    class_s_rescale,
    compose,
    debranges_check,
    invert_at_infinity,
    normalize_class_s,
    reciprocal_coeffs,
    reciprocal_recursion,
    reversion,
    schwarzian,
    transition_function,
)


# ── Construcción y pertenencia ───────────────────────────────────────────────

class TestTruncatedTaylor:
    def test_koebe_coeficientes(self, koebe):
        assert list(koebe.coeffs) == list(range(10))
        assert koebe.order == 9

    def test_backend_exacto_por_defecto(self, univalente):
        assert univalente.is_exact
        assert univalente.coeffs[2] == Fraction(1, 4)

    def test_pertenencia_aut_plus(self, koebe):
        assert koebe.in_aut_plus()
        assert not (koebe * 2).in_aut_plus()
        assert (koebe * 2).in_aut()

    def test_from_dict_recupera_flotante(self, univalente):
        restored = TruncatedTaylor.from_dict(univalente.to_dict())
        assert restored.backend == FLOAT
        assert restored.allclose(univalente)

    def test_from_polynomial_rechaza_grado_mayor(self):
        with pytest.raises(ValueError):
            TruncatedTaylor.from_polynomial([0, 1, 0, 1], 2)

    def test_truncate_no_extiende(self, koebe):
        with pytest.raises(InsufficientOrder):
            koebe.truncate(12)


# ── Aritmética ───────────────────────────────────────────────────────────────

class TestArithmetic:
    def test_log_de_uno_mas_z(self):
        f = TruncatedTaylor([1, 1, 0, 0, 0])
        result = arithmetic(f, kind="log")
        assert list(result.coeffs) == [0, 1, Fraction(-1, 2), Fraction(1, 3), Fraction(-1, 4)]

    def test_exp_de_log_es_identidad(self, univalente):
        unit = univalente.divide_by_z()
        assert arithmetic(arithmetic(unit, kind="log"), kind="exp") == unit

    @pytest.mark.parametrize("kind", ["log", "exp", "inv"])
    def test_backend_exacto_conserva_fracciones(self, kind):
        if kind == "log":
            result = arithmetic(TruncatedTaylor([1, 1, 0, 0]), kind="log")
        elif kind == "exp":
            result = arithmetic(TruncatedTaylor([0, 1, 0, 0]), kind="exp")
        else:
            result = arithmetic(TruncatedTaylor([1, 0, 0, 0]), TruncatedTaylor([1, 1, 0, 0]), kind="div")
        assert result.is_exact
        assert all(isinstance(v, Fraction) for v in result.coeffs)

    def test_division_por_serie_sin_termino_constante(self, koebe):
        with pytest.raises(ZeroLeadingCoefficient):
            arithmetic(koebe, koebe, kind="div")

    def test_log_exacto_requiere_a0_uno(self):
        with pytest.raises(InexactOperation):
            arithmetic(TruncatedTaylor([2, 1, 0]), kind="log")

    def test_log_flotante_admite_a0_arbitrario(self):
        result = arithmetic(TruncatedTaylor([2.0, 0.0, 0.0]), kind="log")
        assert abs(result.coeffs[0] - np.log(2.0)) < 1e-15

    def test_operacion_desconocida(self, koebe):
        with pytest.raises(ValueError):
            arithmetic(koebe, kind="sqrt")

    def test_producto_trunca_al_orden_menor(self, koebe):
        assert (koebe * koebe.truncate(4)).order == 4

    def test_mezcla_de_backends_promueve_a_flotante(self, koebe):
        assert (koebe * koebe.to_float()).backend == FLOAT


# ── Composición y reversión ─────────────────────────────────────────────────

class TestCompose:
    def test_composicion_con_identidad(self, koebe):
        z = TruncatedTaylor.identity(9)
        assert compose(koebe, z) == koebe
        assert compose(z, koebe) == koebe

    def test_interior_con_termino_constante(self, koebe):
        with pytest.raises(NonzeroConstantTerm):
            compose(koebe, TruncatedTaylor([1, 1, 0]))

    def test_orden_minimo(self, koebe, univalente):
        assert compose(koebe, univalente.truncate(5)).order == 5


class TestReversion:
    def test_koebe_catalan_alternado(self, koebe):
        inverse = reversion(koebe)
        assert list(inverse.coeffs[:6]) == [0, 1, -2, 5, -14, 42]

    def test_ida_y_vuelta_exacta(self, clase_s_aleatoria):
        z = TruncatedTaylor.identity(12)
        for seed in range(20):
            f = clase_s_aleatoria(seed)
            h = reversion(f)
            assert compose(f, h) == z
            assert compose(h, f) == z

    def test_ida_y_vuelta_flotante(self, clase_s_aleatoria):
        z = TruncatedTaylor.identity(12, FLOAT)
        for seed in range(20):
            f = clase_s_aleatoria(seed).to_float()
            assert compose(f, reversion(f)).max_abs_difference(z) < 1e-12

    def test_sin_termino_lineal(self):
        with pytest.raises(ZeroLeadingCoefficient):
            reversion(TruncatedTaylor([0, 0, 1]))


# ── Inversión en infinito y recíprocos ──────────────────────────────────────

class TestInvertAtInfinity:
    def test_koebe_es_z_menos_2_mas_1_sobre_z(self, koebe):
        g = invert_at_infinity(koebe)
        assert isinstance(g, TruncatedLaurentInf)
        assert g.order == 7
        assert g.lead == 1
        assert list(g.laurent_coeffs) == [-2, 1] + [0] * 6

    def test_ida_y_vuelta(self, clase_s_aleatoria):
        for seed in range(20):
            f = clase_s_aleatoria(seed)
            assert invert_at_infinity(invert_at_infinity(f)) == f

    def test_orden_insuficiente(self):
        with pytest.raises(InsufficientOrder):
            invert_at_infinity(TruncatedTaylor([0, 1]))

    def test_laurent_con_lider_nulo(self):
        with pytest.raises(ZeroLeadingCoefficient):
            invert_at_infinity(TruncatedLaurentInf(0, [1, 0, 0]))


class TestReciprocal:
    def test_recursion_numerica(self):
        assert reciprocal_recursion([2, 3], 3) == [0, 1, -2, 1]

    def test_recursion_sobre_arreglos(self):
        b0 = np.array([1.0, -1.0])
        b1 = np.array([2.0, 0.5])
        p = reciprocal_recursion([b0, b1], 3)
        assert np.allclose(p[3], b0 ** 2 - b1)

    def test_recursion_pide_coeficientes_suficientes(self):
        with pytest.raises(InsufficientOrder):
            reciprocal_recursion([1], 4)

    def test_reciproco_de_la_identidad_en_infinito(self):
        p = reciprocal_coeffs(TruncatedLaurentInf.identity(4))
        assert list(p) == [0, 1, 0, 0, 0, 0, 0]

    def test_coincide_con_la_recursion(self):
        g = TruncatedLaurentInf(1, [Fraction(1, 2), Fraction(-1, 3), 2, 0])
        p = reciprocal_coeffs(g)
        assert list(p[:5]) == reciprocal_recursion(list(g.laurent_coeffs), 4)

    def test_reciproco_taylor(self):
        # 1/(z + z²) = z⁻¹(1 − z + z² − …)
        q = reciprocal_coeffs(TruncatedTaylor([0, 1, 1, 0, 0]))
        assert list(q) == [1, -1, 1, -1]


# ── Schwarziana y de Branges ────────────────────────────────────────────────

class TestSchwarzian:
    def test_perturbacion_cuadratica(self):
        eps = Fraction(1, 3)
        S = schwarzian(TruncatedTaylor.from_polynomial([0, 1, eps], 6))
        assert S.order == 3
        assert S.coeffs[0] == -6 * eps ** 2
        assert S.coeffs[1] == 24 * eps ** 3

    def test_mobius_tiene_schwarziana_nula(self):
        mobius = TruncatedTaylor([0] + [1] * 8)
        assert all(c == 0 for c in schwarzian(mobius).coeffs)

    def test_koebe_termino_constante(self, koebe):
        assert schwarzian(koebe).coeffs[0] == -6

    def test_orden_pedido_mayor_al_disponible(self, koebe):
        with pytest.raises(InsufficientOrder):
            schwarzian(koebe, N=7)

    def test_derivada_nula_en_el_origen(self):
        with pytest.raises(ZeroLeadingCoefficient):
            schwarzian(TruncatedTaylor([0, 0, 1, 0, 0]))


class TestDeBranges:
    def test_koebe_no_viola(self, koebe):
        assert debranges_check(koebe) == []

    def test_detecta_violacion(self):
        assert debranges_check(TruncatedTaylor([0, 1, 3, 0])) == [1]


# ── Clase S y subordinación ─────────────────────────────────────────────────

class TestClassS:
    def test_normalizacion(self):
        f = normalize_class_s(TruncatedTaylor([0, 2, 1, 0]))
        assert list(f.coeffs) == [0, 1, Fraction(1, 2), 0]

    def test_reescalado(self):
        f_t = TruncatedTaylor([0.0, np.exp(-0.7), 0.1, 0.0])
        assert abs(class_s_rescale(f_t, 0.7).coeffs[1] - 1.0) < 1e-14

    def test_transicion_entre_dilataciones(self):
        f_s = TruncatedTaylor.dilation(np.exp(-0.2), 6, FLOAT)
        f_t = TruncatedTaylor.dilation(np.exp(-0.5), 6, FLOAT)
        w = transition_function(f_s, f_t)
        assert abs(w.coeffs[0]) < 1e-15
        assert abs(w.coeffs[1] - np.exp(0.3)) < 1e-12
