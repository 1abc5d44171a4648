"""
Tests de matrices de Grunsky, polinomios de Faber y el disco de Siegel.
La función de Koebe da la forma cerrada c_nn = 1/n, c_m0 = −2/m.
"""

from fractions import Fraction

import numpy as np
import pytest

from src.errors import DegenerateDiagonal, InsufficientOrder, NotInDisc, SectorMismatch
from src.grunsky import (
    SiegelPoint,
    faber,
    faber_identity_residuals,
    grunsky_pair,
    grunsky_single,
    inversion_grunsky_check,
    is_symmetric,
    residue_operator,
    siegel_check,
    yk_embedding,
)
from src.grunsky.matrices import taylor_kernel
from src.series.base_series import to_backend
from src.series import FLOAT, TruncatedLaurentInf, TruncatedTaylor, invert_at_infinity


# ── Matrices de Grunsky ──────────────────────────────────────────────────────

class TestGrunskyKoebe:
    N = 6

    @pytest.fixture
    def c(self):
        return grunsky_single(TruncatedTaylor.koebe(2 * self.N + 1), self.N).c

    def test_diagonal_uno_sobre_n(self, c):
        for n in range(1, self.N + 1):
            assert c[n, n] == Fraction(1, n)

    def test_primera_columna(self, c):
        assert c[0, 0] == 0
        for m in range(1, self.N + 1):
            assert c[m, 0] == Fraction(-2, m)
            assert c[0, m] == Fraction(-2, m)

    def test_fuera_de_la_diagonal_nulo(self, c):
        for m in range(1, self.N + 1):
            for n in range(1, self.N + 1):
                if m != n:
                    assert c[m, n] == 0

    def test_simetria_exacta(self, c):
        assert is_symmetric(c)

    def test_entradas_racionales(self, c):
        assert all(isinstance(v, Fraction) for v in c.ravel())

    def test_flotante_coincide(self, c):
        c_float = grunsky_single(TruncatedTaylor.koebe(2 * self.N + 1, FLOAT), self.N).c
        assert np.max(np.abs(c_float - to_backend(c, FLOAT))) < 1e-12


class TestGrunskySingle:
    def test_polinomio_cuadratico(self, univalente):
        c = grunsky_single(univalente, 4).c
        assert c[1, 0] == Fraction(-1, 4)
        assert c[1, 1] == Fraction(1, 16)

    def test_orden_insuficiente(self):
        with pytest.raises(InsufficientOrder):
            grunsky_single(TruncatedTaylor.koebe(6), 4)

    def test_diagonal_degenerada(self):
        with pytest.raises(DegenerateDiagonal):
            grunsky_single(TruncatedTaylor([0, 0, 1, 0, 0, 0, 0]), 2)

    def test_block_dict(self):
        data = grunsky_single(TruncatedTaylor.koebe(5), 2)
        exported = data.block_dict("c")
        assert exported["N"] == 2
        assert exported["block"] == "c"
        assert len(exported["entries"]) == 9
        with pytest.raises(KeyError):
            data.block("d")

    def test_inversion_coincide_con_la_carta_de_infinito(self, clase_s_aleatoria):
        for seed in range(5):
            assert inversion_grunsky_check(clase_s_aleatoria(seed, order=9), 4) == 0.0

    def test_laurent_produce_bloque_d(self, koebe):
        data = grunsky_single(invert_at_infinity(koebe), 3)
        assert data.d is not None and data.c is None
        assert data.R == 1.0


class TestGrunskyPair:
    N = 3

    def test_par_identidad(self):
        f = TruncatedTaylor.identity(2 * self.N + 1)
        g = TruncatedLaurentInf.identity(2 * self.N + 1)
        data = grunsky_pair(f, g, self.N)
        assert all(v == 0 for v in data.e.ravel())
        # notación unificada: b_{n,−n} = e_nn + 1/n
        assert data.b(2, -2) == Fraction(1, 2)
        assert data.b(-1, -1) == 0

    def test_simetria_de_los_bloques(self, univalente):
        g = TruncatedLaurentInf.from_polynomial(1, [0, Fraction(-1, 8)], 2 * self.N + 1)
        data = grunsky_pair(univalente, g, self.N)
        assert is_symmetric(data.c)
        assert is_symmetric(data.d)


# ── Polinomios de Faber ─────────────────────────────────────────────────────

class TestFaber:
    N = 4

    def test_identidades_de_composicion(self, univalente):
        g = TruncatedLaurentInf.from_polynomial(1, [Fraction(1, 3), Fraction(-1, 8)], 2 * self.N + 1)
        f = univalente.truncate(2 * self.N + 1)
        residuals = faber_identity_residuals(f, g, self.N)
        assert set(residuals) == {"G_of_g", "G_of_f", "F_of_g", "F_of_f"}
        assert all(value < 1e-12 for value in residuals.values())

    def test_identidades_sobre_polinomios_aleatorios(self, clase_s_aleatoria):
        g = TruncatedLaurentInf.identity(2 * self.N + 1)
        for seed in range(5):
            f = clase_s_aleatoria(seed, order=2 * self.N + 1)
            residuals = faber_identity_residuals(f, g, self.N)
            assert max(residuals.values()) < 1e-10

    def test_cantidad_de_polinomios(self, koebe):
        polys = faber(koebe, self.N)
        assert len(polys.F) == self.N
        assert polys.G == []
        assert len(polys.F_n(2)) == 3

    def test_faber_de_laurent(self):
        g = TruncatedLaurentInf.identity(2 * self.N)
        polys = faber(g, self.N)
        assert len(polys.G) == self.N and polys.F == []

    def test_orden_insuficiente(self):
        with pytest.raises(InsufficientOrder):
            faber(TruncatedTaylor.koebe(3), self.N)

    def test_n_invalido(self, koebe):
        with pytest.raises(ValueError):
            faber(koebe, 0)


# ── Disco de Siegel ─────────────────────────────────────────────────────────

class TestSiegel:
    def test_polinomio_cuadratico_dentro_del_disco(self, univalente):
        embedding = yk_embedding(univalente, 4)
        assert embedding.route_residual < 1e-12
        report = siegel_check(embedding.point)
        assert report.symmetric
        assert 0 < report.spectral_gap <= 1
        assert report.kahler_potential > 0
        assert report.weighting == "sqrt(nm)"

    def test_identidad_en_el_origen(self):
        embedding = yk_embedding(TruncatedTaylor.identity(9), 4)
        report = siegel_check(embedding.point)
        assert abs(report.spectral_gap - 1.0) < 1e-15
        assert report.kahler_potential == 0.0

    def test_koebe_en_la_frontera(self, koebe):
        embedding = yk_embedding(koebe, 4)
        assert np.allclose(embedding.point.Z, np.eye(4))
        with pytest.raises(NotInDisc):
            siegel_check(embedding.point)

    def test_punto_fuera_del_disco(self):
        with pytest.raises(NotInDisc):
            siegel_check(SiegelPoint(Z=np.diag([2.0, 0.1])))


class TestResidueOperator:
    def test_sector_incompatible(self, univalente):
        kernel = taylor_kernel(univalente, 4)
        with pytest.raises(SectorMismatch):
            residue_operator(kernel, [1, 0, 0], "H-")

    def test_aplica_la_matriz(self, univalente):
        kernel = taylor_kernel(univalente, 4)
        out = residue_operator(kernel, [1, 0, 0, 0, 0], "H+")
        assert list(out) == list(kernel.coeffs[:, 0])
