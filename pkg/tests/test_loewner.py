"""
Tests de los flujos de Loewner: medidas de Herglotz, flujo radial sobre
coeficientes, mapa cordal puntual, traza SLE y el ensamble de un punto de
la frontera.
"""

import math

import numpy as np
import pytest
from scipy import linalg

from src.circle import FourierField
from src.errors import NonpositiveMeasure
from src.loewner import (
    ChordalPoint,
    Driving,
    HerglotzMeasure,
    boundary_variation,
    chordal_closed_form,
    chordal_map,
    lie_expansion_check,
    loewner_kufarev_rhs,
    radial_flow,
    radial_loewner_rhs,
    simulate_boundary_point,
    sle_trace,
)
from src.loewner.driving import checkpoint_steps, chunk_sizes
from src.series import FLOAT, TruncatedTaylor
from src.series.base_series import to_backend


# ── Medidas y conducciones ──────────────────────────────────────────────────

class TestHerglotzMeasure:
    def test_momentos_de_una_delta(self):
        nu = HerglotzMeasure.dirac(0.5, 2.0)
        assert abs(nu.moment(3) - 2.0 * np.exp(-1.5j)) < 1e-15
        assert nu.total_mass == 2.0

    def test_coeficientes_de_herglotz(self):
        assert np.allclose(HerglotzMeasure.dirac(0.0).herglotz_coeffs(3), [1, 2, 2, 2])
        assert np.allclose(HerglotzMeasure.uniform(3.0).herglotz_coeffs(3), [3, 0, 0, 0])

    def test_densidad_con_modos(self):
        nu = HerglotzMeasure(density=FourierField([1.0, 0.5]))
        assert abs(nu.moment(1) - 0.25) < 1e-15
        assert nu.moment(2) == 0

    def test_masa_negativa(self):
        with pytest.raises(NonpositiveMeasure):
            HerglotzMeasure.dirac(0.0, -1.0)

    def test_densidad_negativa(self):
        with pytest.raises(NonpositiveMeasure):
            HerglotzMeasure(density=FourierField([0.5, 1.0]))

    def test_to_dict(self):
        nu = HerglotzMeasure(atoms=[(1.0, 0.5)], density=FourierField([1.0, 0.2]))
        restored = HerglotzMeasure.from_dict(nu.to_dict())
        assert restored.atoms == nu.atoms
        assert abs(restored.moment(1) - nu.moment(1)) < 1e-15

    def test_medida_nula(self):
        assert HerglotzMeasure.zero().total_mass == 0


class TestDriving:
    def test_determinista(self):
        driving = Driving.deterministic(lambda t: t, T=1.0, dt=0.25)
        assert np.allclose(driving.sample(), [0, 0.25, 0.5, 0.75, 1.0])

    def test_browniano_reproducible(self):
        first = Driving.brownian(2.0, seed=7, T=1.0, dt=0.01).sample()
        second = Driving.brownian(2.0, seed=7, T=1.0, dt=0.01).sample()
        assert np.array_equal(first, second)
        assert first[0] == 0.0

    def test_interpolacion(self):
        driving = Driving.brownian(2.0, seed=7, T=1.0, dt=0.5)
        W = driving.sample()
        assert abs(driving.value(0.25) - W[1] / 2) < 1e-15

    @pytest.mark.parametrize("kwargs", [
        {"kind": "levy", "T": 1.0, "dt": 0.1},
        {"kind": "deterministic", "T": 1.0, "dt": 0.0},
        {"kind": "brownian", "T": 1.0, "dt": 0.1, "kappa": -1.0},
    ])
    def test_parametros_invalidos(self, kwargs):
        with pytest.raises(ValueError):
            Driving(**kwargs)

    def test_puntos_de_control(self):
        marks = checkpoint_steps(10, 4)
        assert marks[0] == 0 and marks[-1] == 10
        assert len(marks) == 5

    def test_bloques(self):
        assert chunk_sizes(25, 10) == [10, 10, 5]
        with pytest.raises(ValueError):
            chunk_sizes(0, 10)


# ── Flujo radial ────────────────────────────────────────────────────────────

class TestRadialFlow:
    def test_medida_uniforme_contrae_exponencialmente(self, univalente):
        f0 = univalente.truncate(5)
        flow = radial_flow(f0, HerglotzMeasure.uniform(), T=1.0, dt=0.1)
        a0 = to_backend(f0.coeffs, FLOAT)
        k = np.arange(6)
        assert np.allclose(flow.times, np.linspace(0, 1, 11))
        assert np.max(np.abs(flow.final.coeffs - a0 * np.exp(-k))) < 1e-8

    def test_delta_contra_exponencial_de_matriz(self, univalente):
        f0 = univalente.truncate(5)
        T = 0.8
        flow = radial_flow(f0, HerglotzMeasure.dirac(0.0), T=T, dt=0.2)
        p = HerglotzMeasure.dirac(0.0).herglotz_coeffs(5).real
        M = np.zeros((6, 6))
        for k in range(6):
            for i in range(k + 1):
                M[k, i] = -p[k - i] * i
        expected = linalg.expm(M * T) @ to_backend(f0.coeffs, FLOAT)
        assert np.max(np.abs(flow.final.coeffs - expected)) < 1e-8
        assert abs(flow.final.coeffs[1] - math.exp(-T)) < 1e-9

    def test_medida_dependiente_del_tiempo(self):
        f0 = TruncatedTaylor.identity(4, FLOAT)
        flow = radial_flow(f0, lambda t: HerglotzMeasure.uniform(2.0), T=0.5, dt=0.5)
        assert abs(flow.final.coeffs[1] - math.exp(-1.0)) < 1e-9

    def test_lado_derecho_uniforme(self, univalente):
        rhs = loewner_kufarev_rhs(univalente, HerglotzMeasure.uniform())
        expected = -univalente.derivative().multiply_by_z()
        assert rhs.allclose(expected)

    def test_forma_directa_uniforme(self, univalente):
        assert radial_loewner_rhs(univalente, HerglotzMeasure.uniform()).allclose(univalente)

    def test_expansion_de_lie(self, univalente):
        assert lie_expansion_check(univalente, 0.7, univalente.order) < 1e-13
        assert lie_expansion_check(univalente, 0.7, 2) > 0.5

    def test_variacion_de_frontera_constante(self):
        f = TruncatedTaylor.identity(4, FLOAT)
        varied = boundary_variation(f, FourierField.constant(0.1))
        assert varied.allclose(TruncatedTaylor.dilation(1.1, 4, FLOAT))

    def test_serializacion(self):
        flow = radial_flow(TruncatedTaylor.identity(2, FLOAT), HerglotzMeasure.uniform(), T=0.1, dt=0.1)
        data = flow.to_dict()
        assert len(data["times"]) == 2
        assert data["coeffs"][0][1] == [1.0, 0.0]


# ── Loewner cordal ──────────────────────────────────────────────────────────

class TestChordal:
    @pytest.mark.parametrize("z", [0.5 + 0.5j, -1 + 2j, 2 + 0.1j, 3j, 1.0])
    def test_forma_cerrada(self, z):
        driving = Driving.constant(0.0, T=1.0, dt=0.01)
        point = chordal_map(z, driving)
        assert not point.swallowed
        assert abs(point.value - complex(chordal_closed_form(z, 1.0))) < 1e-6

    def test_rama_de_la_raiz(self):
        assert abs(complex(chordal_closed_form(-1.0, 0.0)) + 1.0) < 1e-15
        assert complex(chordal_closed_form(0.5j, 0.01)).imag > 0

    def test_semiplano_inferior(self):
        with pytest.raises(ValueError):
            chordal_map(1 - 1j, Driving.constant(0.0, T=1.0, dt=0.1))

    def test_punto_igual_a_w0(self):
        with pytest.raises(ValueError):
            chordal_map(0.5, Driving.constant(0.5, T=1.0, dt=0.1))

    def test_to_dict(self):
        point = ChordalPoint(z=1j, value=2j, t_final=1.0, tau=None)
        assert point.to_dict() == {"z": [0.0, 1.0], "g": [0.0, 2.0], "t_final": 1.0, "tau": None}


class TestSleTrace:
    def test_kappa_cero_es_segmento_vertical(self):
        driving = Driving.constant(0.0, T=1.0, dt=0.01)
        trace = sle_trace(driving)
        assert np.allclose(trace.points, 2j * np.sqrt(trace.times), atol=1e-12)

    def test_traza_en_el_semiplano_superior(self, seed):
        trace = sle_trace(Driving.brownian(2.0, seed=seed, T=1.0, dt=0.01))
        assert np.all(trace.points.imag >= 0)
        assert trace.points[0] == 0

    def test_grilla_explicita(self):
        trace = sle_trace(Driving.constant(0.0, T=1.0, dt=0.5), T=2.0, n_steps=4)
        assert len(trace.points) == 5
        assert abs(trace.points[-1] - 2j * math.sqrt(2.0)) < 1e-12

    def test_tabla(self):
        frame = sle_trace(Driving.constant(0.0, T=1.0, dt=0.25)).to_frame()
        assert list(frame.columns) == ["step", "t", "re", "im"]
        assert len(frame) == 5


# ── Punto de la frontera ────────────────────────────────────────────────────

class TestBoundaryPoint:
    def test_kappa_cero_contra_forma_cerrada(self):
        ens = simulate_boundary_point(1.0, 0.0, T=1.0, dt=1e-4, paths=4, seed=1, checkpoints=1)
        assert np.allclose(ens.times, [0.0, 1.0])
        assert np.max(np.abs(ens.X[:, -1] - math.sqrt(5.0))) < 1e-3
        assert np.max(np.abs(ens.log_dg[:, -1] + 0.5 * math.log(5.0))) < 1e-3
        assert np.max(np.abs(ens.d2g[:, -1] - 4.0 / 5.0 ** 1.5)) < 1e-3
        assert np.max(np.abs(ens.d3g[:, -1] + 12.0 / 5.0 ** 2.5)) < 1e-3
        assert ens.swallowed_fraction == 0.0

    def test_schwarziana_inicial_nula(self):
        ens = simulate_boundary_point(1.0, 2.0, T=0.1, dt=0.01, paths=10, seed=3, checkpoints=2)
        assert np.all(ens.schwarzian()[:, 0] == 0.0)

    @pytest.mark.parametrize("kappa", [2.0, 8 / 3, 4.0])
    def test_sin_absorciones_para_kappa_hasta_4(self, kappa):
        ens = simulate_boundary_point(1.0, kappa, T=1.0, dt=1e-3, paths=20_000, seed=3)
        assert ens.swallowed_fraction == 0.0
        assert np.all(ens.X > 0)
        assert ens.metadata["scheme"] == "bessel_exact"

    def test_segundo_momento_exacto(self, seed):
        # d(X²) = (4 + κ) dt + martingala
        kappa, T = 2.0, 1.0
        ens = simulate_boundary_point(1.0, kappa, T=T, dt=1e-2, paths=20_000, seed=seed, checkpoints=1)
        assert abs(float(np.mean(ens.X[:, -1] ** 2)) - (1.0 + (4.0 + kappa) * T)) < 0.2

    def test_kappa_8_absorbe(self, seed):
        ens = simulate_boundary_point(0.1, 8.0, T=1.0, dt=1e-3, paths=500, seed=seed)
        assert ens.swallowed_fraction > 0.5

    def test_independiente_de_los_hilos(self, seed):
        kwargs = dict(x=1.0, kappa=3.0, T=0.2, dt=1e-2, paths=300, seed=seed, chunk_size=64)
        one = simulate_boundary_point(threads=1, **kwargs)
        many = simulate_boundary_point(threads=3, **kwargs)
        assert np.array_equal(one.X, many.X)
        assert np.array_equal(one.swallowed, many.swallowed)

    def test_punto_no_positivo(self):
        with pytest.raises(ValueError):
            simulate_boundary_point(0.0, 2.0, T=1.0, dt=0.1, paths=10, seed=1)
