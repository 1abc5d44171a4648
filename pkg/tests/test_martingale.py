"""
Tests del laboratorio de martingalas: relación κ ↦ (c, h), reporte de
deriva, calibración, suite del núcleo del generador, observables del punto
de frontera y el reporte de densidad de Radon–Nikodym.
"""

from fractions import Fraction

import numpy as np
import pytest
import sympy

from src.errors import InsufficientPaths, PathSwallowed
from src.loewner import simulate_ensemble
from src.martingale import (
    alpha_from_beta,
    central_charge_duality,
    ch_from_kappa,
    companion_exponent,
    drift_test,
    exact_kappa,
    kernel_martingale_suite,
    observable_drift_test,
    rn_density_report,
)
from src.martingale.lab import CONSISTENT, DRIFT_DETECTED, calibrate, drift_report, evaluate_polynomial
from src.virasoro import DISC, INFINITY, CoeffPolynomial
from src.virasoro.polynomial import variable

b0, b1, b3 = (variable(INFINITY, k) for k in (0, 1, 3))


# ── κ ↦ (c, h) ──────────────────────────────────────────────────────────────

class TestCentralCharge:
    @pytest.mark.parametrize("kappa,c,h", [
        (6, 0, 0),
        (Fraction(8, 3), 0, Fraction(5, 8)),
        (4, 1, Fraction(1, 4)),
        (2, -2, 1),
    ])
    def test_tabla_exacta(self, kappa, c, h):
        p = ch_from_kappa(kappa)
        assert p.c == c and p.h == h

    def test_flotante(self):
        p = ch_from_kappa(2.0)
        assert isinstance(p.c, float)
        assert abs(p.c + 2.0) < 1e-15 and abs(p.h - 1.0) < 1e-15

    def test_sympy_racional(self):
        assert ch_from_kappa(sympy.Rational(8, 3)).h == Fraction(5, 8)

    def test_kappa_no_positivo(self):
        with pytest.raises(ValueError):
            ch_from_kappa(0)

    def test_dualidad(self):
        assert central_charge_duality() == 0

    def test_kappa_exacto(self):
        assert exact_kappa(8 / 3) == sympy.Rational(8, 3)
        assert exact_kappa(Fraction(8, 3)) == sympy.Rational(8, 3)

    def test_exponentes(self):
        assert alpha_from_beta(2, 2) == 3
        assert alpha_from_beta(-1, 2) == 0
        assert abs(companion_exponent(8 / 3, 5 / 8) - 0.75) < 1e-12
        beta = companion_exponent(2.0, 1.0)
        assert abs(alpha_from_beta(beta, 2.0) - 1.0) < 1e-12


# ── Reporte de deriva ───────────────────────────────────────────────────────

class TestDriftReport:
    TIMES = np.array([0.0, 0.5, 1.0])

    def test_pocas_trayectorias(self):
        with pytest.raises(InsufficientPaths):
            drift_report("x", np.ones((1, 3)), self.TIMES, {})

    def test_constante_es_consistente(self):
        report = drift_report("const", np.full((20, 3), 2.5), self.TIMES, {"seed": 1})
        assert report.max_abs_z == 0.0
        assert report.verdict == CONSISTENT
        assert report.consistent

    def test_deriva_determinista(self):
        values = np.tile(self.TIMES, (10, 1))
        report = drift_report("t", values, self.TIMES, {})
        assert report.max_abs_z == np.inf
        assert report.verdict == DRIFT_DETECTED

    def test_tamano_de_efecto_no_resoluble(self):
        values = np.random.default_rng(0).standard_normal((100, 3))
        with pytest.raises(InsufficientPaths):
            drift_report("ruido", values, self.TIMES, {}, effect_size=0.01)

    def test_exportacion(self):
        report = drift_report("const", np.zeros((5, 3)), self.TIMES, {"kappa": 2.0})
        assert report.to_dict()["metadata"] == {"kappa": 2.0}
        assert list(report.to_frame().columns) == ["observable", "t", "mean", "se", "z"]


# ── Jerarquía de coeficientes ───────────────────────────────────────────────

class TestHierarchyDrift:
    def test_calibracion(self, seed):
        ens = simulate_ensemble(2.0, 1, T=1.0, dt=0.01, paths=5000, seed=seed, checkpoints=2)
        result = calibrate(ens)
        assert result["b1_exact"] and result["calibrated"]
        ens.b[:, :, 1] += 1e-3
        assert not calibrate(ens)["b1_exact"]

    def test_polinomio_en_otra_carta(self, seed):
        ens = simulate_ensemble(2.0, 1, T=0.1, dt=0.01, paths=10, seed=seed)
        with pytest.raises(ValueError):
            evaluate_polynomial(CoeffPolynomial(variable(DISC, 1), DISC, 1), ens)
        with pytest.raises(ValueError):
            evaluate_polynomial(CoeffPolynomial(b3, INFINITY, 3), ens)

    def test_martingala_de_nivel_dos(self, seed):
        P = CoeffPolynomial(b1 - b0 ** 2 / 2, INFINITY, 1)
        report = drift_test(P, 4.0, T=1.0, paths=2000, dt=0.01, seed=seed)
        assert report.consistent
        assert report.calibration["calibrated"]

    def test_b0_cuadrado_tiene_deriva(self, seed):
        report = drift_test(CoeffPolynomial(b0 ** 2, INFINITY, 1), 4.0, T=1.0, paths=2000, dt=0.01, seed=seed)
        assert report.verdict == DRIFT_DETECTED

    def test_suite_del_nucleo(self, seed):
        suite = kernel_martingale_suite(4, 2, paths=2000, T=1.0, dt=1e-2, seed=seed)
        assert len(suite.kernel) == 3
        assert all(r.consistent for r in suite.reports)
        assert suite.perturbed.verdict == DRIFT_DETECTED
        assert suite.perturbed.max_abs_z > 8
        assert suite.passed
        assert suite.to_dict()["passed"] is True
        assert len(suite.to_frame()) == 4 * len(suite.reports[0].times)


# ── Punto de frontera ───────────────────────────────────────────────────────

class TestBoundaryObservables:
    COMMON = dict(x=1.0, kappa=2.0, T=0.2, paths=20_000, dt=1e-3)

    def test_observable_predicha(self, seed):
        report = observable_drift_test(3.0, 2.0, seed=seed, **self.COMMON)
        assert report.metadata["predicted_martingale"]
        assert report.consistent
        assert report.swallowed_fraction == 0.0

    def test_exponente_desplazado(self, seed):
        report = observable_drift_test(3.5, 2.0, seed=seed, **self.COMMON)
        assert not report.metadata["predicted_martingale"]
        assert report.verdict == DRIFT_DETECTED

    def test_inversa_lejos_del_origen(self, seed):
        params = dict(self.COMMON, x=3.0)
        report = observable_drift_test(0.0, -1.0, seed=seed, **params)
        assert report.consistent

    def test_demasiadas_absorciones(self, seed):
        with pytest.raises(PathSwallowed) as info:
            observable_drift_test(1.0, 1.0, x=0.1, kappa=8.0, T=1.0, paths=200, dt=1e-2, seed=seed)
        assert info.value.fraction > 0.01


class TestRadonNikodym:
    def test_kappa_6_sin_factor(self, seed):
        report = rn_density_report(6.0, 5.0, T=0.2, paths=2000, dt=1e-2, seed=seed)
        assert report.log_m_identically_zero
        assert report.companion is None and report.companion_beta is None
        assert report.to_dict()["x_B"] == "infinity"

    def test_kappa_8_tercios_con_companero(self, seed):
        report = rn_density_report(8 / 3, 2.0, T=0.2, paths=20_000, dt=1e-3, seed=seed)
        assert abs(report.params.h - 0.625) < 1e-12
        assert abs(report.companion_beta - 0.75) < 1e-12
        assert report.companion.consistent
        assert not report.log_m_identically_zero
        assert report.schwarzian_integrand[0] == 0.0
        assert list(report.to_frame().columns)[0] == "t"


# ── Escala completa (10⁵ trayectorias) ─────────────────────────────────────

@pytest.mark.slow
class TestEscalaCompleta:
    @pytest.mark.parametrize("kappa", [Fraction(2), Fraction(8, 3), Fraction(6)], ids=["k2", "k8_3", "k6"])
    def test_suite_del_nucleo_peso_tres(self, kappa, seed):
        suite = kernel_martingale_suite(kappa, 3, paths=100_000, T=1.0, dt=1e-3, seed=seed)
        assert len(suite.kernel) == 5
        assert all(r.consistent for r in suite.reports)
        assert suite.perturbed.max_abs_z >= 5
        assert suite.passed

    @pytest.mark.parametrize("beta,kappa,x", [
        (-1.0, 2.0, 3.0),   # β = 1 − 4/κ; 1/X es martingala local estricta, lejos del origen
        (2.0, 2.0, 1.0),
        (2.0, 8 / 3, 1.0),
    ])
    def test_familia_de_observables(self, beta, kappa, x, seed):
        alpha = alpha_from_beta(beta, kappa)
        common = dict(x=x, kappa=kappa, T=0.2, paths=100_000, dt=1e-3, seed=seed)
        report = observable_drift_test(alpha, beta, **common)
        assert report.consistent
        assert report.swallowed_fraction == 0.0
        shifted = observable_drift_test(alpha + 0.5, beta, **common)
        assert shifted.verdict == DRIFT_DETECTED
