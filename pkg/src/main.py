"""
Laboratorio de geometría universal de Loewner/SLE — ejecutor principal.

Cada subcomando lee su configuración (defaults < documento JSON < flags),
calcula en memoria y recién al terminar sin errores escribe sus artefactos
JSON/CSV en el directorio de salida.

Códigos de salida: 0 éxito, 2 configuración inválida, 3 error numérico,
4 error estadístico o suite de martingalas no aprobada (con artefactos).
"""

import argparse
import logging
import os
import sys
from fractions import Fraction
from typing import Callable

import numpy as np
import pandas as pd
import sympy

from src.circle import (
    CentralParams,
    FourierField,
    bracket,
    complex_structure_J,
    hilbert_transform,
    kahler_form,
    kahler_metric_coeff,
    omega_ch,
    polyakov_alvarez_map,
)
from src.config import COMMANDS, build_config, load_document, parse_laurent, parse_taylor
from src.errors import ConfigInvalid, LabError, StatisticalError
from src.export import CSV, JSON, Artifact, write_artifacts
from src.grunsky import (
    faber,
    faber_identity_residuals,
    grunsky_pair,
    grunsky_single,
    inversion_grunsky_check,
    is_symmetric,
    siegel_check,
    yk_embedding,
)
from src.loewner import (
    Driving,
    HerglotzMeasure,
    coeff_hierarchy,
    hormander_bracket,
    one_point_exponents,
    radial_flow,
    simulate_ensemble,
    sle_generator,
    sle_trace,
)
from src.martingale import ch_from_kappa, exact_kappa, kernel_martingale_suite, rn_density_report
from src.martingale.lab import calibrate
from src.series import (
    compose,
    debranges_check,
    invert_at_infinity,
    reciprocal_coeffs,
    reversion,
    schwarzian,
)
from src.series.base_series import EXACT, FLOAT
from src.series.taylor import TruncatedTaylor
from src.virasoro import (
    VIRASORO_BRACKET,
    action,
    commutator,
    kernel_solve,
    level_two_singular_vector,
    virasoro_central_term,
    virasoro_op,
)

logger = logging.getLogger(__name__)

LOG_DIR = "logs"
LOG_FILE = "loewner_lab.log"
LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s — %(message)s"


# ── Configuración de logging ────────────────────────────────────────────────

def configurar_logging(log_dir: str = LOG_DIR, level: int = logging.INFO) -> None:
    os.makedirs(log_dir, exist_ok=True)
    logging.basicConfig(
        level=level,
        format=LOG_FORMAT,
        handlers=[
            logging.FileHandler(os.path.join(log_dir, LOG_FILE), encoding="utf-8"),
            logging.StreamHandler(),
        ],
    )


# ── Utilidades de entrada/salida ────────────────────────────────────────────

def _entries(matrix: np.ndarray) -> list:
    """Entradas fila por fila: racionales como texto, flotantes como [re, im]."""
    if matrix.dtype == object:
        return [[str(v) for v in row] for row in matrix]
    return [[[float(v.real), float(v.imag)] for v in row] for row in matrix]


def _matrix_frame(blocks: dict[str, np.ndarray]) -> pd.DataFrame:
    rows = []
    for name, matrix in blocks.items():
        values = matrix.astype(complex) if matrix.dtype == object else matrix
        for (m, n), v in np.ndenumerate(values):
            rows.append({"block": name, "m": m, "n": n, "re": float(v.real), "im": float(v.imag)})
    return pd.DataFrame(rows, columns=["block", "m", "n", "re", "im"])


def _taylor_input(config, key: str, default: Callable[[], TruncatedTaylor]) -> TruncatedTaylor:
    if key in config.inputs:
        return parse_taylor(config.inputs[key], key, config.backend)
    return default()


def _field_input(config, key: str, default: FourierField) -> FourierField:
    if key not in config.inputs:
        return default
    try:
        return FourierField.from_dict(config.inputs[key])
    except (KeyError, TypeError, ValueError) as e:
        raise ConfigInvalid(f"inputs.{key}", f"campo inválido: {e}") from e


def _rational(value, field_name: str) -> Fraction:
    try:
        return Fraction(str(value))
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigInvalid(f"inputs.{field_name}", f"valor inválido {value!r}") from e


def _central_params(config) -> CentralParams:
    """(c, h) explícitos en inputs, o los asociados a κ; (0, 0) en ausencia de ambos."""
    if "c" in config.inputs or "h" in config.inputs:
        return CentralParams(c=_rational(config.inputs.get("c", 0), "c"),
                             h=_rational(config.inputs.get("h", 0), "h"))
    if config.kappa:
        return ch_from_kappa(exact_kappa(config.kappa))
    return CentralParams(c=Fraction(0), h=Fraction(0))


def _require_positive_kappa(config) -> None:
    if not config.kappa:
        raise ConfigInvalid("kappa", f"el comando '{config.command}' requiere κ > 0")


# ── Comandos ────────────────────────────────────────────────────────────────

def cmd_series(config) -> list[Artifact]:
    f = _taylor_input(config, "f", lambda: TruncatedTaylor.koebe(config.N, config.backend))
    result = {
        "f": f.to_dict(),
        "in_aut_plus": bool(f.in_aut_plus()),
        "reversion": reversion(f).to_dict(),
        "reciprocal": reciprocal_coeffs(f),
        "debranges_violations": debranges_check(f),
    }
    if f.order >= 2:
        result["inverse_at_infinity"] = invert_at_infinity(f).to_dict()
    if f.order >= 3:
        result["schwarzian"] = schwarzian(f).to_dict()
    if "g" in config.inputs:
        result["composition"] = compose(f, parse_taylor(config.inputs["g"], "g", config.backend)).to_dict()
    return [Artifact("series", JSON, result)]


def cmd_grunsky(config) -> list[Artifact]:
    N = config.N
    f = _taylor_input(config, "f", lambda: TruncatedTaylor.koebe(2 * N + 1, config.backend))
    if "g" in config.inputs:
        data = grunsky_pair(f, parse_laurent(config.inputs["g"], "g", config.backend), N)
        names = ("c", "d", "e")
    else:
        data = grunsky_single(f, N)
        names = ("c",)
    blocks = {name: data.block(name) for name in names}
    result = {
        "N": N,
        "backend": data.backend,
        "blocks": {name: _entries(matrix) for name, matrix in blocks.items()},
        "symmetric": {name: is_symmetric(blocks[name]) for name in names if name != "e"},
        "inversion_residual": inversion_grunsky_check(f, N),
    }
    return [Artifact("grunsky", JSON, result), Artifact("grunsky", CSV, _matrix_frame(blocks))]


def cmd_faber(config) -> list[Artifact]:
    N = config.N
    result: dict = {"N": N}
    f = _taylor_input(config, "f", lambda: TruncatedTaylor.koebe(2 * N + 1, config.backend))
    result["F"] = [np.asarray(poly).tolist() for poly in faber(f, N).F]
    if "g" in config.inputs:
        g = parse_laurent(config.inputs["g"], "g", config.backend)
        result["G"] = [np.asarray(poly).tolist() for poly in faber(g, N).G]
        result["identity_residuals"] = faber_identity_residuals(f, g, N)
    return [Artifact("faber", JSON, result)]


def cmd_embed(config) -> list[Artifact]:
    N = config.N
    f = _taylor_input(config, "f", lambda: TruncatedTaylor.from_polynomial(
        [0, 1, Fraction(1, 4)], 2 * N + 1, config.backend))
    embedding = yk_embedding(f, N)
    result = {
        "N": N,
        "Z": embedding.point.Z,
        "weighting": embedding.point.weighting,
        "vectors": [np.asarray(v).tolist() for v in embedding.vectors],
        "route_residual": embedding.route_residual,
        "siegel": siegel_check(embedding.point).to_dict(),
    }
    return [Artifact("embed", JSON, result)]


def cmd_circle(config) -> list[Artifact]:
    p = _central_params(config)
    v1 = _field_input(config, "v1", FourierField([0.0, 1.0, 0.0], [0.0, 0.5]))
    v2 = _field_input(config, "v2", FourierField.cos(2))
    result: dict = {
        "c": p.c, "h": p.h,
        "hilbert_v1": hilbert_transform(v1).to_dict(),
        "bracket": bracket(v1, v2).to_dict(),
        "omega": omega_ch(v1, v2, p),
        "metric_coeffs": [kahler_metric_coeff(k, p) for k in range(1, config.N + 1)],
    }
    if v1.has_zero_mean:
        result["J_v1"] = complex_structure_J(v1).to_dict()
    if v2.has_zero_mean:
        result["kahler_form"] = kahler_form(v1, v2, p)
    if "v3" in config.inputs:
        v3 = _field_input(config, "v3", FourierField.constant(0.0))
        result["cocycle_residual"] = (omega_ch(bracket(v1, v2), v3, p) + omega_ch(bracket(v2, v3), v1, p)
                                      + omega_ch(bracket(v3, v1), v2, p))
    if "f" in config.inputs:
        result["polyakov"] = polyakov_alvarez_map(parse_taylor(config.inputs["f"], "f", FLOAT)).to_dict()
    return [Artifact("circle", JSON, result)]


def cmd_virasoro(config) -> list[Artifact]:
    p = _central_params(config)
    W = config.weight
    N = W + 4
    checks = []
    for m in range(-2, 3):
        for n in range(m + 1, 3):
            if m + n < -2:
                continue
            defect = commutator(virasoro_op(m, p, N), virasoro_op(n, p, N), W) \
                - action(virasoro_op(m + n, p, N), W) * (m - n)
            scalar = defect.scalar_multiple()
            expected = virasoro_central_term(m, n, p)
            checks.append({
                "m": m, "n": n,
                "central": None if scalar is None else str(scalar),
                "expected": str(expected),
                "ok": scalar is not None and sympy.simplify(scalar - expected) == 0,
            })
    result = {"bracket": VIRASORO_BRACKET, "c": p.c, "h": p.h, "weight": W, "truncation": N,
              "checks": checks}
    if config.kappa:
        result["singular_vector"] = level_two_singular_vector(exact_kappa(config.kappa), p).to_dict()
    logger.info(f"Relaciones de Virasoro: {sum(c['ok'] for c in checks)}/{len(checks)} verificadas")
    return [Artifact("virasoro", JSON, result)]


def cmd_kernel(config) -> list[Artifact]:
    _require_positive_kappa(config)
    W = config.weight
    N = max(W - 1, 1)
    kappa = exact_kappa(config.kappa)
    kernel = kernel_solve(sle_generator(kappa, N), W)
    exponents = sorted(one_point_exponents(kappa), key=lambda e: float(e))
    result = {
        "kappa": kappa,
        "weight": W,
        "dimension": len(kernel),
        "kernel": [str(P.expr) for P in kernel],
        "hormander_bracket": hormander_bracket(max(N, 2)).to_dict(),
        "one_point_exponents": [str(e) for e in exponents],
    }
    return [Artifact("kernel", JSON, result)]


def cmd_radial(config) -> list[Artifact]:
    f0 = _taylor_input(config, "f0", lambda: TruncatedTaylor.identity(config.N, FLOAT))
    try:
        measure = HerglotzMeasure.from_dict(config.inputs["measure"]) if "measure" in config.inputs \
            else HerglotzMeasure.uniform()
    except (KeyError, TypeError) as e:
        raise ConfigInvalid("inputs.measure", f"medida inválida: {e}") from e
    flow = radial_flow(f0, measure, config.T, config.dt)
    coeffs = flow.coeffs
    steps, width = coeffs.shape
    frame = pd.DataFrame({
        "t": np.repeat(flow.times, width),
        "k": np.tile(np.arange(width), steps),
        "re": coeffs.real.ravel(),
        "im": coeffs.imag.ravel(),
    })
    result = {"measure": measure.to_dict(), "f0": f0.to_dict(), "final": flow.final.to_dict()}
    return [Artifact("radial", JSON, result), Artifact("radial", CSV, frame)]


def cmd_sle_trace(config) -> list[Artifact]:
    if config.kappa:
        driving = Driving.brownian(float(config.kappa), config.seed, config.T, config.dt)
    else:
        driving = Driving.constant(0.0, config.T, config.dt)
    trace = sle_trace(driving)
    result = {"driving": driving.to_dict(), "steps": trace.points.size - 1, "tip": trace.points[-1]}
    return [Artifact("sle_trace", JSON, result), Artifact("sle_trace", CSV, trace.to_frame())]


def cmd_sle_coeff(config) -> list[Artifact]:
    kappa = float(config.kappa)
    ensemble = simulate_ensemble(kappa, config.N, config.T, config.dt, config.paths, config.seed,
                                 config.checkpoints, config.chunk_size, config.threads)
    calibration = calibrate(ensemble, config.z_crit)
    means = ensemble.b.mean(axis=0)
    se = ensemble.b.std(axis=0, ddof=1) / np.sqrt(ensemble.paths)
    ckpts, width = means.shape
    frame = pd.DataFrame({
        "t": np.repeat(ensemble.times, width),
        "k": np.tile(np.arange(width), ckpts),
        "mean": means.ravel(),
        "se": se.ravel(),
    })
    path = coeff_hierarchy(Driving.brownian(kappa, config.seed, config.T, config.dt), config.N)
    result = {"kappa": kappa, "seed": config.seed, "dt": config.dt, "b": path.b,
              "calibration": calibration, "ensemble": ensemble.metadata}
    return [Artifact("sle_coeff", CSV, frame), Artifact("sle_coeff_path", JSON, result)]


def cmd_martingale(config) -> list[Artifact]:
    suite = kernel_martingale_suite(config.kappa, config.weight, config.paths, config.T, config.dt,
                                    config.seed, config.checkpoints, config.z_crit,
                                    config.chunk_size, config.threads)
    failed = not suite.passed
    if failed:
        logger.warning(f"[VALIDATION_ERROR] La suite de martingalas no fue aprobada (κ = {config.kappa})")
    return [Artifact("martingale", JSON, suite.to_dict(), failed_check=failed),
            Artifact("martingale", CSV, suite.to_frame())]


def cmd_report(config) -> list[Artifact]:
    x_A = config.inputs.get("x_A", 1.0)
    if isinstance(x_A, bool) or not isinstance(x_A, (int, float)) or x_A <= 0:
        raise ConfigInvalid("inputs.x_A", f"debe ser un número positivo, llegó {x_A!r}")
    report = rn_density_report(float(config.kappa), float(x_A), config.T, config.paths, config.dt,
                               config.seed, config.checkpoints, config.z_crit,
                               config.chunk_size, config.threads)
    return [Artifact("report", JSON, report.to_dict()), Artifact("report", CSV, report.to_frame())]


COMMAND_REGISTRY: dict[str, Callable] = {
    "series": cmd_series,
    "grunsky": cmd_grunsky,
    "faber": cmd_faber,
    "embed": cmd_embed,
    "circle": cmd_circle,
    "virasoro": cmd_virasoro,
    "kernel": cmd_kernel,
    "radial": cmd_radial,
    "sle-trace": cmd_sle_trace,
    "sle-coeff": cmd_sle_coeff,
    "martingale": cmd_martingale,
    "report": cmd_report,
}


# ── Ejecución ───────────────────────────────────────────────────────────────

def run(config) -> int:
    """
    Ejecuta el comando y escribe sus artefactos sólo si terminó sin errores.
    Un reporte con un chequeo fallido se escribe igual y termina con código 4.

    Returns:
        Código de salida del proceso.
    """
    handler = COMMAND_REGISTRY[config.command]
    logger.info(f"Iniciando '{config.command}' (backend = {config.backend}, semilla = {config.seed})")
    try:
        artifacts = handler(config)
        written = write_artifacts(artifacts, config)
    except LabError as e:
        logger.error(f"{e.tag} {config.command}: {type(e).__name__}: {e}")
        return e.exit_code
    except OSError as e:
        logger.error(f"[IO_ERROR] No se pudieron escribir los artefactos: {e}")
        return 1
    if any(a.failed_check for a in artifacts):
        logger.error(f"[STATISTICAL_ERROR] '{config.command}': el reporte registra un chequeo fallido")
        return StatisticalError.exit_code
    logger.info(f"'{config.command}' finalizado — artefactos: {len(written)}")
    return 0


def _kappa_arg(text: str):
    if "/" in text:
        return Fraction(text)
    try:
        return int(text)
    except ValueError:
        return float(text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Documento JSON de configuración")
    common.add_argument("--kappa", type=_kappa_arg, help="κ ≥ 0; admite racionales como 8/3")
    common.add_argument("--N", type=int)
    common.add_argument("--T", type=float)
    common.add_argument("--dt", type=float)
    common.add_argument("--paths", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--weight", type=int)
    common.add_argument("--checkpoints", type=int)
    common.add_argument("--z-crit", dest="z_crit", type=float)
    common.add_argument("--chunk-size", dest="chunk_size", type=int)
    common.add_argument("--threads", type=int)
    common.add_argument("--backend", choices=(EXACT, FLOAT))
    common.add_argument("--output-dir", dest="output_dir")

    parser = argparse.ArgumentParser(prog="loewner-lab", description=__doc__.strip().splitlines()[0])
    subparsers = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        subparsers.add_parser(name, parents=[common])
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    overrides = {key: value for key, value in vars(args).items() if key not in ("command", "config")}
    try:
        document = load_document(args.config) if args.config else None
        config = build_config(args.command, document, overrides)
    except ConfigInvalid as e:
        logger.error(f"{e.tag} {e}")
        return e.exit_code
    return run(config)


if __name__ == "__main__":
    configurar_logging()
    sys.exit(main())
