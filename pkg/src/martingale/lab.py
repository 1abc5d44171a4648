"""
Laboratorio de martingalas: pruebas de deriva por puntos de control sobre
ensambles de la jerarquía SLE y del punto de frontera, y la relación entre
κ y el par (c, h).

Criterio: una observable es consistente con una martingala (local) si
max_i |Ê[X_{t_i} − X_0]| / SE_i ≤ z_crit en todos los puntos de control.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
import pandas as pd
import sympy

from src.circle.cocycle import CentralParams
from src.errors import InsufficientPaths, PathSwallowed
from src.loewner.chordal import BoundaryEnsemble, simulate_boundary_point
from src.loewner.hierarchy import SleEnsemble, simulate_ensemble, sle_generator
from src.virasoro.operators import kernel_solve
from src.virasoro.polynomial import INFINITY, CoeffPolynomial, as_sympy, chart_variables, variable

logger = logging.getLogger(__name__)

CONSISTENT = "consistent"
DRIFT_DETECTED = "drift_detected"
DEFAULT_Z_CRIT = 4.0
MAX_SWALLOWED = 0.01


# ── (c, h) a partir de κ ────────────────────────────────────────────────────

def exact_kappa(kappa):
    if isinstance(kappa, (float, np.floating)):
        return sympy.nsimplify(float(kappa), tolerance=1e-12, rational=True)
    return as_sympy(kappa)


def ch_from_kappa(kappa) -> CentralParams:
    """
    c = (6 − κ)(3κ − 8)/(2κ),  h = (6 − κ)/(2κ).

    Exacto (Fraction) para κ entero o racional; flotante si κ es float.
    """
    if kappa <= 0:
        raise ValueError("κ debe ser positivo.")
    if isinstance(kappa, (float, np.floating)):
        k = float(kappa)
    elif isinstance(kappa, sympy.Basic):
        k = Fraction(int(kappa.p), int(kappa.q))
    else:
        k = Fraction(kappa)
    return CentralParams(c=(6 - k) * (3 * k - 8) / (2 * k), h=(6 - k) / (2 * k))


def central_charge_duality():
    """c(κ) − c(16/κ) simplificado simbólicamente (idénticamente 0)."""
    k = sympy.Symbol("kappa", positive=True)

    def c(value):
        return (6 - value) * (3 * value - 8) / (2 * value)

    return sympy.simplify(c(k) - c(16 / k))


def alpha_from_beta(beta: float, kappa: float) -> float:
    """α(β) = β + κβ(β − 1)/4: (g′)^α (g − W)^β es martingala local."""
    return beta + kappa * beta * (beta - 1) / 4.0


def companion_exponent(kappa: float, h: float) -> float:
    """Raíz mayor de α(β) = h, la que tiende a 0 cuando h → 0."""
    a = kappa / 4.0
    b = 1.0 - kappa / 4.0
    return (-b + math.sqrt(b * b + 4.0 * a * h)) / (2.0 * a)


# ── Reporte de deriva ───────────────────────────────────────────────────────

@dataclass
class DriftReport:
    observable: str
    times: np.ndarray
    means: np.ndarray
    std_errors: np.ndarray
    z_scores: np.ndarray
    max_abs_z: float
    verdict: str
    z_crit: float
    metadata: dict
    calibration: dict = field(default_factory=dict)
    swallowed_fraction: float = 0.0
    high_variance: bool = False

    @property
    def consistent(self) -> bool:
        return self.verdict == CONSISTENT

    def to_dict(self) -> dict:
        return {
            "observable": self.observable,
            "verdict": self.verdict,
            "max_abs_z": self.max_abs_z,
            "z_crit": self.z_crit,
            "times": self.times.tolist(),
            "means": self.means.tolist(),
            "std_errors": self.std_errors.tolist(),
            "z_scores": self.z_scores.tolist(),
            "metadata": self.metadata,
            "calibration": self.calibration,
            "swallowed_fraction": self.swallowed_fraction,
            "high_variance": self.high_variance,
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "observable": self.observable,
            "t": self.times,
            "mean": self.means,
            "se": self.std_errors,
            "z": self.z_scores,
        })


def drift_report(observable: str, values: np.ndarray, times: np.ndarray, metadata: dict,
                 z_crit: float = DEFAULT_Z_CRIT, effect_size: float | None = None) -> DriftReport:
    """
    Medias y errores estándar de X_{t_i} − X_0 por punto de control.

    Args:
        values: Arreglo (paths, checkpoints) con X en cada punto de control.
        effect_size: Tasa de deriva constante que la corrida debe poder
            resolver en el último punto (opcional).

    Raises:
        InsufficientPaths: con menos de dos trayectorias, o si
            effect_size·T ≤ z_crit·SE(T).
    """
    paths = values.shape[0]
    if paths < 2:
        raise InsufficientPaths("Se necesitan al menos dos trayectorias para estimar el error estándar.")
    diffs = values - values[:, :1]
    means = diffs.mean(axis=0)
    std_errors = diffs.std(axis=0, ddof=1) / math.sqrt(paths)
    with np.errstate(divide="ignore", invalid="ignore"):
        z = np.where(std_errors > 0, means / std_errors, np.where(means == 0, 0.0, np.inf))
    max_abs_z = float(np.max(np.abs(z[1:]))) if z.size > 1 else 0.0
    if effect_size is not None and not effect_size * times[-1] > z_crit * std_errors[-1]:
        raise InsufficientPaths(
            f"SE = {std_errors[-1]:.3e} no resuelve una deriva de tasa {effect_size} con z_crit = {z_crit}"
        )
    verdict = DRIFT_DETECTED if max_abs_z > z_crit else CONSISTENT
    logger.info(f"{observable}: max|z| = {max_abs_z:.3f} → {verdict}")
    return DriftReport(
        observable=observable, times=np.asarray(times), means=means, std_errors=std_errors,
        z_scores=z, max_abs_z=max_abs_z, verdict=verdict, z_crit=z_crit, metadata=dict(metadata),
    )


# ── Jerarquía de coeficientes ───────────────────────────────────────────────

def calibrate(ensemble: SleEnsemble, z_crit: float = DEFAULT_Z_CRIT) -> dict:
    """Compuertas de calibración: b₁ = 2t exacto y Ê[b₀(T)²] compatible con κT."""
    b1_exact = bool(np.array_equal(ensemble.coordinate(1),
                                   np.broadcast_to(2.0 * ensemble.times, ensemble.coordinate(1).shape)))
    squares = ensemble.coordinate(0)[:, -1] ** 2
    expected = ensemble.kappa * ensemble.times[-1]
    se = float(squares.std(ddof=1) / math.sqrt(ensemble.paths)) if ensemble.paths > 1 else 0.0
    gap = float(squares.mean() - expected)
    z = gap / se if se > 0 else (0.0 if gap == 0 else math.inf)
    calibrated = b1_exact and abs(z) <= z_crit
    if not calibrated:
        logger.warning(f"[VALIDATION_ERROR] Ensamble no calibrado: b₁ exacto = {b1_exact}, z(b₀²) = {z:.2f}")
    return {"b1_exact": b1_exact, "b0_sq_mean": float(squares.mean()),
            "b0_sq_expected": expected, "b0_sq_z": z, "calibrated": calibrated}


def evaluate_polynomial(P: CoeffPolynomial, ensemble: SleEnsemble) -> np.ndarray:
    """P(b(t)) sobre todas las trayectorias y puntos de control."""
    if P.chart != INFINITY:
        raise ValueError("drift_test trabaja en la carta de infinito (b₀..b_N).")
    if P.N > ensemble.N:
        needed = [k for k in range(ensemble.N + 1, P.N + 1) if P.expr.has(variable(INFINITY, k))]
        if needed:
            raise ValueError(f"El ensamble sólo simula b₀..b_{ensemble.N}; P usa b_{needed[-1]}.")
    gens = chart_variables(INFINITY, ensemble.N)
    func = sympy.lambdify(gens, P.expr, "numpy")
    values = func(*[ensemble.coordinate(k) for k in range(ensemble.N + 1)])
    return np.broadcast_to(np.asarray(values, dtype=float), ensemble.b.shape[:2]).copy()


def drift_on_ensemble(P: CoeffPolynomial, ensemble: SleEnsemble, z_crit: float = DEFAULT_Z_CRIT,
                      effect_size: float | None = None) -> DriftReport:
    report = drift_report(str(P.expr), evaluate_polynomial(P, ensemble), ensemble.times,
                          ensemble.metadata, z_crit, effect_size)
    report.calibration = calibrate(ensemble, z_crit)
    return report


def drift_test(P: CoeffPolynomial, kappa: float, T: float, paths: int, dt: float,
               checkpoints: int = 10, seed: int = 0, z_crit: float = DEFAULT_Z_CRIT,
               chunk_size: int = 10_000, threads: int = 1,
               effect_size: float | None = None) -> DriftReport:
    """
    Prueba de deriva de P(b(t)) − P(b(0)) sobre un ensamble de la jerarquía.

    Raises:
        InsufficientPaths: si el error estándar no resuelve `effect_size`.
    """
    ensemble = simulate_ensemble(float(kappa), max(P.N, 1), T, dt, paths, seed,
                                 checkpoints, chunk_size, threads)
    return drift_on_ensemble(P, ensemble, z_crit, effect_size)


@dataclass
class MartingaleSuite:
    kappa: float
    weight: int
    kernel: list[CoeffPolynomial]
    reports: list[DriftReport]
    perturbed: DriftReport | None

    @property
    def passed(self) -> bool:
        kernel_ok = all(r.consistent for r in self.reports)
        return kernel_ok and (self.perturbed is None or not self.perturbed.consistent)

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "weight": self.weight,
            "passed": self.passed,
            "kernel": [str(P.expr) for P in self.kernel],
            "reports": [r.to_dict() for r in self.reports],
            "perturbed": self.perturbed.to_dict() if self.perturbed else None,
        }

    def to_frame(self) -> pd.DataFrame:
        frames = [r.to_frame() for r in self.reports]
        if self.perturbed is not None:
            frames.append(self.perturbed.to_frame())
        return pd.concat(frames, ignore_index=True)


def kernel_martingale_suite(kappa, W: int, paths: int, T: float = 1.0, dt: float = 1e-3,
                            seed: int = 0, checkpoints: int = 10, z_crit: float = DEFAULT_Z_CRIT,
                            chunk_size: int = 10_000, threads: int = 1,
                            perturbation: float = 0.5) -> MartingaleSuite:
    """
    Resuelve ker Â∞ en peso ≤ W, somete cada elemento a drift_test sobre un
    único ensamble y agrega el control b₁ − (2/κ + perturbation)b₀², que debe
    detectarse (Â∞ lo envía a la constante −perturbation·κ).
    """
    k_exact = exact_kappa(kappa)
    N = max(W - 1, 1)
    kernel = kernel_solve(sle_generator(k_exact, N), W)
    ensemble = simulate_ensemble(float(kappa), N, T, dt, paths, seed, checkpoints, chunk_size, threads)
    reports = [drift_on_ensemble(P, ensemble, z_crit) for P in kernel]
    perturbed = None
    if W >= 2:
        b0, b1 = variable(INFINITY, 0), variable(INFINITY, 1)
        control = CoeffPolynomial(b1 - (2 / k_exact + as_sympy(perturbation)) * b0 ** 2, INFINITY, N)
        perturbed = drift_on_ensemble(control, ensemble, z_crit)
    suite = MartingaleSuite(float(kappa), W, kernel, reports, perturbed)
    logger.info(f"Suite de núcleo κ = {kappa}, W = {W}: {len(kernel)} elementos, aprobada = {suite.passed}")
    return suite


# ── Punto de frontera ───────────────────────────────────────────────────────

def _check_swallowed(ensemble: BoundaryEnsemble, max_swallowed: float) -> None:
    fraction = ensemble.swallowed_fraction
    if fraction > max_swallowed:
        message = f"{fraction:.2%} de trayectorias absorbidas (máximo {max_swallowed:.2%})"
        logger.error(f"[STATISTICAL_ERROR] {message}")
        raise PathSwallowed(message, fraction)


def observable_drift_test(alpha: float, beta: float, x: float, kappa: float, T: float, paths: int,
                          dt: float, seed: int = 0, checkpoints: int = 10,
                          z_crit: float = DEFAULT_Z_CRIT, chunk_size: int = 10_000, threads: int = 1,
                          max_swallowed: float = MAX_SWALLOWED,
                          ensemble: BoundaryEnsemble | None = None) -> DriftReport:
    """
    Deriva de M_t = (∂_x g_t(x))^α·(g_t(x) − W_t)^β. La predicción analítica
    es martingala local si y sólo si α = β + κβ(β − 1)/4.

    Raises:
        PathSwallowed: si la fracción de trayectorias absorbidas supera el máximo.
    """
    if ensemble is None:
        ensemble = simulate_boundary_point(x, kappa, T, dt, paths, seed, checkpoints, chunk_size, threads)
    _check_swallowed(ensemble, max_swallowed)
    values = np.exp(alpha * ensemble.log_dg + beta * np.log(ensemble.X))
    metadata = dict(ensemble.metadata, alpha=alpha, beta=beta,
                    predicted_martingale=abs(alpha - alpha_from_beta(beta, kappa)) < 1e-12)
    report = drift_report(f"(g')^{alpha}(g-W)^{beta} @ x={x}", values, ensemble.times, metadata, z_crit)
    report.swallowed_fraction = ensemble.swallowed_fraction
    start = abs(x ** beta)
    report.high_variance = bool(report.std_errors[-1] > 0.1 * start)
    if report.high_variance:
        logger.warning(f"Varianza alta en {report.observable}: SE = {report.std_errors[-1]:.3e}")
    return report


@dataclass
class RNDensityReport:
    kappa: float
    params: CentralParams
    x_A: float
    times: np.ndarray
    log_m_mean: np.ndarray
    log_m_se: np.ndarray
    m_mean: np.ndarray
    m_se: np.ndarray
    log_m_identically_zero: bool
    companion_beta: float | None
    companion: DriftReport | None
    schwarzian_integrand: np.ndarray
    swallowed_fraction: float
    metadata: dict

    def to_dict(self) -> dict:
        return {
            "kappa": self.kappa,
            "c": float(self.params.c),
            "h": float(self.params.h),
            "x_A": self.x_A,
            "x_B": "infinity",
            "times": self.times.tolist(),
            "log_m_mean": self.log_m_mean.tolist(),
            "log_m_se": self.log_m_se.tolist(),
            "m_mean": self.m_mean.tolist(),
            "m_se": self.m_se.tolist(),
            "log_m_identically_zero": self.log_m_identically_zero,
            "companion_beta": self.companion_beta,
            "companion": self.companion.to_dict() if self.companion else None,
            "schwarzian_integrand": self.schwarzian_integrand.tolist(),
            "swallowed_fraction": self.swallowed_fraction,
            "metadata": self.metadata,
        }

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "t": self.times,
            "log_m_mean": self.log_m_mean,
            "log_m_se": self.log_m_se,
            "m_mean": self.m_mean,
            "m_se": self.m_se,
            "schwarzian_integrand": self.schwarzian_integrand,
        })


def rn_density_report(kappa: float, x_A: float, T: float, paths: int, dt: float, seed: int = 0,
                      checkpoints: int = 10, z_crit: float = DEFAULT_Z_CRIT, chunk_size: int = 10_000,
                      threads: int = 1, max_swallowed: float = MAX_SWALLOWED) -> RNDensityReport:
    """
    Factor de frontera log M = h·log g′_t(x_A) con h = h(κ); el factor en
    B = ∞ vale 1 por la normalización hidrodinámica. El integrando
    schwarziano (c/12)·S(g_t)(x_A) se informa sin regularizar.

    Para κ ≤ 4 se agrega la prueba de deriva de (g′)^h (g − W)^β con β la
    raíz de α(β) = h.

    Raises:
        PathSwallowed: si la fracción de trayectorias absorbidas supera el máximo.
    """
    params = ch_from_kappa(kappa)
    h, c = float(params.h), float(params.c)
    ensemble = simulate_boundary_point(x_A, kappa, T, dt, paths, seed, checkpoints, chunk_size, threads)
    _check_swallowed(ensemble, max_swallowed)

    log_m = h * ensemble.log_dg
    m = np.exp(log_m)
    n = ensemble.paths
    companion_beta, companion = None, None
    if float(kappa) <= 4:
        companion_beta = companion_exponent(float(kappa), h)
        companion = observable_drift_test(h, companion_beta, x_A, float(kappa), T, paths, dt,
                                          z_crit=z_crit, max_swallowed=max_swallowed, ensemble=ensemble)
    report = RNDensityReport(
        kappa=float(kappa), params=params, x_A=float(x_A), times=ensemble.times,
        log_m_mean=log_m.mean(axis=0), log_m_se=log_m.std(axis=0, ddof=1) / math.sqrt(n),
        m_mean=m.mean(axis=0), m_se=m.std(axis=0, ddof=1) / math.sqrt(n),
        log_m_identically_zero=bool(np.all(log_m == 0)),
        companion_beta=companion_beta, companion=companion,
        schwarzian_integrand=(c / 12.0) * ensemble.schwarzian().mean(axis=0),
        swallowed_fraction=ensemble.swallowed_fraction,
        metadata=dict(ensemble.metadata),
    )
    logger.info(f"Densidad RN κ = {kappa}: h = {h:.6g}, c = {c:.6g}, β compañero = {companion_beta}")
    return report
