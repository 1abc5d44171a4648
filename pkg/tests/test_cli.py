"""
Tests de la CLI: códigos de salida, artefactos escritos sólo ante éxito y
reproducibilidad byte a byte de corridas con la misma configuración.
"""

import json
import os

import pandas as pd
import pytest

import src.main
from src import __version__
from src.config import COMMANDS, build_config
from src.errors import ArtifactError
from src.export import JSON, Artifact, write_artifacts
from src.main import COMMAND_REGISTRY, build_parser, main, run


def _leer_json(path):
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def _leer_bytes(path):
    with open(path, "rb") as fh:
        return fh.read()


@pytest.fixture
def salida(tmp_path):
    return str(tmp_path / "out")


@pytest.fixture
def documento(tmp_path):
    """Escribe un documento de configuración JSON y devuelve su ruta."""
    def _escribir(contenido: dict) -> str:
        path = tmp_path / "config.json"
        path.write_text(json.dumps(contenido), encoding="utf-8")
        return str(path)

    return _escribir


# ── Registro y parser ───────────────────────────────────────────────────────

class TestRegistro:
    def test_todos_los_comandos_registrados(self):
        assert set(COMMAND_REGISTRY) == set(COMMANDS)

    def test_kappa_racional(self):
        args = build_parser().parse_args(["kernel", "--kappa", "8/3"])
        assert str(args.kappa) == "8/3"

    def test_kappa_entero_y_flotante(self):
        assert build_parser().parse_args(["kernel", "--kappa", "4"]).kappa == 4
        assert build_parser().parse_args(["kernel", "--kappa", "2.5"]).kappa == 2.5


# ── Corridas exitosas ───────────────────────────────────────────────────────

class TestCorridasExitosas:
    def test_series_por_defecto(self, salida):
        assert main(["series", "--N", "5", "--output-dir", salida]) == 0
        data = _leer_json(os.path.join(salida, "series.json"))
        assert data["metadata"]["version"] == __version__
        assert data["metadata"]["config"]["command"] == "series"
        assert data["result"]["in_aut_plus"] is True
        assert "schwarzian" in data["result"]

    def test_series_desde_documento(self, salida, documento):
        path = documento({"inputs": {"f": [0, 1, "1/4"]}, "backend": "exact"})
        assert main(["series", "--config", path, "--output-dir", salida]) == 0
        data = _leer_json(os.path.join(salida, "series.json"))
        assert data["metadata"]["config"]["backend"] == "exact"
        assert "inverse_at_infinity" in data["result"]
        assert "schwarzian" not in data["result"]

    def test_grunsky_exacto(self, salida):
        assert main(["grunsky", "--N", "3", "--backend", "exact", "--output-dir", salida]) == 0
        data = _leer_json(os.path.join(salida, "grunsky.json"))
        assert data["result"]["symmetric"]["c"] is True
        assert data["result"]["backend"] == "exact"
        with open(os.path.join(salida, "grunsky.csv"), encoding="utf-8") as fh:
            header, columns = fh.readline(), fh.readline().strip()
        assert header.startswith("# ")
        assert columns == "block,m,n,re,im"

    def test_kernel_con_kappa_racional(self, salida):
        assert main(["kernel", "--kappa", "8/3", "--weight", "2", "--output-dir", salida]) == 0
        data = _leer_json(os.path.join(salida, "kernel.json"))
        assert data["result"]["kappa"] == "8/3"
        assert data["result"]["dimension"] == 3
        assert data["metadata"]["config"]["kappa"] == "8/3"

    def test_sle_trace_determinista_sin_semilla(self, salida):
        assert main(["sle-trace", "--kappa", "0", "--T", "1", "--dt", "0.25", "--output-dir", salida]) == 0
        data = _leer_json(os.path.join(salida, "sle_trace.json"))
        assert data["result"]["steps"] == 4
        re, im = data["result"]["tip"]
        assert abs(re) < 1e-12 and abs(im - 2.0) < 1e-12

    def test_sle_coeff(self, salida):
        argv = ["sle-coeff", "--kappa", "2", "--seed", "3", "--N", "2", "--T", "0.1", "--dt", "0.01",
                "--paths", "50", "--checkpoints", "2", "--output-dir", salida]
        assert main(argv) == 0
        assert sorted(os.listdir(salida)) == ["sle_coeff.csv", "sle_coeff_path.json"]
        data = _leer_json(os.path.join(salida, "sle_coeff_path.json"))
        assert data["result"]["calibration"]["b1_exact"] is True

    def test_radial(self, salida):
        assert main(["radial", "--N", "4", "--T", "0.5", "--dt", "0.1", "--output-dir", salida]) == 0
        assert os.path.isfile(os.path.join(salida, "radial.csv"))


# ── Reproducibilidad ────────────────────────────────────────────────────────

class TestReproducibilidad:
    def test_sle_trace_identico_byte_a_byte(self, salida):
        argv = ["sle-trace", "--kappa", "2", "--seed", "11", "--T", "0.5", "--dt", "0.01",
                "--output-dir", salida]
        archivos = ("sle_trace.json", "sle_trace.csv")
        assert main(argv) == 0
        primera = [_leer_bytes(os.path.join(salida, a)) for a in archivos]
        assert main(argv) == 0
        segunda = [_leer_bytes(os.path.join(salida, a)) for a in archivos]
        assert primera == segunda

    def test_semilla_distinta_cambia_la_traza(self, tmp_path):
        dirs = [str(tmp_path / "a"), str(tmp_path / "b")]
        for s, d in zip(("1", "2"), dirs):
            assert main(["sle-trace", "--kappa", "2", "--seed", s, "--T", "0.5", "--dt", "0.01",
                         "--output-dir", d]) == 0
        tips = [_leer_json(os.path.join(d, "sle_trace.json"))["result"]["tip"] for d in dirs]
        assert tips[0] != tips[1]


# ── Errores ─────────────────────────────────────────────────────────────────

class TestCodigosDeSalida:
    def test_kappa_faltante(self, salida):
        assert main(["kernel", "--output-dir", salida]) == 2
        assert not os.path.exists(salida)

    def test_kappa_nulo_en_comando_estocastico(self, salida):
        assert main(["martingale", "--kappa", "0", "--seed", "1", "--output-dir", salida]) == 2
        assert not os.path.exists(salida)

    def test_semilla_faltante(self, salida):
        assert main(["sle-coeff", "--kappa", "2", "--output-dir", salida]) == 2
        assert not os.path.exists(salida)

    def test_clave_desconocida(self, salida, documento):
        path = documento({"kappa": 2, "semilla": 4})
        assert main(["kernel", "--config", path, "--output-dir", salida]) == 2
        assert not os.path.exists(salida)

    def test_dt_mayor_que_t(self, salida):
        assert main(["radial", "--T", "0.1", "--dt", "0.5", "--output-dir", salida]) == 2

    def test_documento_inexistente(self, tmp_path, salida):
        missing = str(tmp_path / "no_existe.json")
        assert main(["series", "--config", missing, "--output-dir", salida]) == 2

    def test_serie_invalida(self, salida, documento):
        path = documento({"inputs": {"f": [0, 1, [1, 2, 3]]}})
        assert main(["series", "--config", path, "--output-dir", salida]) == 2
        assert not os.path.exists(salida)

    def test_koebe_fuera_del_disco_de_siegel(self, salida, documento):
        path = documento({"inputs": {"f": [0, 1, 2, 3, 4, 5]}})
        assert main(["embed", "--config", path, "--N", "2", "--output-dir", salida]) == 3
        assert not os.path.exists(salida)

    def test_absorcion_excesiva(self, salida, documento):
        path = documento({"inputs": {"x_A": 0.1}})
        argv = ["report", "--config", path, "--kappa", "8", "--seed", "5", "--T", "1", "--dt", "0.01",
                "--paths", "200", "--output-dir", salida]
        assert main(argv) == 4
        assert not os.path.exists(salida)


# ── Escritura de artefactos ─────────────────────────────────────────────────

class TestEscrituraDeArtefactos:
    @pytest.fixture
    def config(self, salida):
        return build_config("series", overrides={"output_dir": salida})

    def test_contenido_no_serializable_no_deja_archivos(self, config, salida):
        artifacts = [Artifact("primero", JSON, {"ok": 1}), Artifact("segundo", JSON, {"malo": object()})]
        with pytest.raises(ArtifactError):
            write_artifacts(artifacts, config)
        assert not os.path.exists(salida)

    def test_tipo_desconocido(self, config):
        with pytest.raises(ArtifactError):
            write_artifacts([Artifact("x", "xlsx", {})], config)

    def test_sin_temporales_tras_el_exito(self, config, salida):
        written = write_artifacts([Artifact("a", JSON, {"v": 1}), Artifact("b", JSON, {"v": 2})], config)
        assert sorted(os.listdir(salida)) == ["a.json", "b.json"]
        assert [os.path.basename(p) for p in written] == ["a.json", "b.json"]

    def test_error_de_escritura_limpia_temporales(self, config, salida, monkeypatch):
        def falla(src, dst):
            raise OSError("disco lleno")

        monkeypatch.setattr(os, "replace", falla)
        with pytest.raises(OSError):
            write_artifacts([Artifact("a", JSON, {"v": 1}), Artifact("b", JSON, {"v": 2})], config)
        assert os.listdir(salida) == []

    def test_run_devuelve_uno_si_no_serializa(self, config, salida, monkeypatch):
        monkeypatch.setitem(COMMAND_REGISTRY, "series",
                            lambda cfg: [Artifact("series", JSON, {}), Artifact("extra", JSON, object())])
        assert run(config) == 1
        assert not os.path.exists(salida)


class TestSuiteDeMartingalas:
    class _SuiteFallida:
        passed = False

        def to_dict(self):
            return {"passed": False}

        def to_frame(self):
            return pd.DataFrame({"observable": ["b0**2"], "z": [9.0]})

    def test_suite_no_aprobada_devuelve_cuatro(self, salida, monkeypatch):
        monkeypatch.setattr(src.main, "kernel_martingale_suite", lambda *args: self._SuiteFallida())
        argv = ["martingale", "--kappa", "4", "--seed", "1", "--output-dir", salida]
        assert main(argv) == 4
        data = _leer_json(os.path.join(salida, "martingale.json"))
        assert data["result"]["passed"] is False
        assert os.path.isfile(os.path.join(salida, "martingale.csv"))
