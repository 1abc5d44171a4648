"""
Jerarquía de EDEs de los coeficientes de h_t = g_t − W_t = z + b₀ + b₁/z + …

  db₀ = −√κ dB_t,   db_n = 2 p_n(b) dt  (n ≥ 1)

con 1/h_t = Σ p_k z^{−k}, y su generador hipoelíptico en la carta de infinito.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
import sympy

from src.loewner.driving import Driving, checkpoint_steps, run_chunked
from src.series.operations import reciprocal_recursion
from src.virasoro.operators import LinearCoeffOperator, lie_bracket
from src.virasoro.polynomial import INFINITY, as_sympy, chart_variables

logger = logging.getLogger(__name__)


def _p_array(b: list, N: int) -> list:
    # p₀ = 0, p₁ = 1, p_k para k ≤ N
    return reciprocal_recursion(b, N) if N >= 1 else [0]


def _euler_step(b: list[np.ndarray], N: int, step: float) -> list[np.ndarray]:
    """Actualiza b₂..b_N con el estado previo; b₀ y b₁ se tratan aparte."""
    p = _p_array(b, N)
    return [b[n] + 2.0 * p[n] * step for n in range(2, N + 1)]


# ── Trayectoria individual ──────────────────────────────────────────────────

@dataclass
class SlePath:
    times: np.ndarray
    W: np.ndarray
    b: np.ndarray

    @property
    def N(self) -> int:
        return self.b.shape[1] - 1

    def evaluate(self, z: complex, index: int = -1) -> complex:
        """g_t(z) ≈ W_t + z + Σ b_n z^{−n} con los coeficientes del nodo pedido."""
        powers = complex(z) ** -np.arange(self.N + 1, dtype=float)
        return complex(self.W[index] + z + self.b[index] @ powers)

    def to_dict(self) -> dict:
        return {"times": self.times.tolist(), "W": self.W.tolist(), "b": self.b.tolist()}


def coeff_hierarchy(driving: Driving, N: int, T: float | None = None, dt: float | None = None) -> SlePath:
    """
    Integra la jerarquía sobre la grilla de la conducción.

    b₀ = −W exactamente, b₁ = 2t exactamente (p₁ = 1) y b₂..b_N por
    Euler–Maruyama con el estado del paso anterior.
    """
    if N < 1:
        raise ValueError("La jerarquía necesita N ≥ 1.")
    if T is not None or dt is not None:
        driving = Driving(driving.kind, T or driving.T, dt or driving.dt,
                          u=driving.u, kappa=driving.kappa, seed=driving.seed)
    W = driving.sample()
    times = driving.times()
    step = times[1] - times[0]
    b = np.zeros((times.size, N + 1))
    b[:, 0] = -W
    b[:, 1] = 2.0 * times
    state = [b[0, n] for n in range(N + 1)]
    for k in range(times.size - 1):
        rest = _euler_step(state, N, step)
        state = [-W[k + 1], 2.0 * times[k + 1]] + rest
        b[k + 1, 2:] = rest
    return SlePath(times=times, W=np.asarray(W), b=b)


# ── Ensambles ───────────────────────────────────────────────────────────────

@dataclass
class SleEnsemble:
    """Coeficientes b₀..b_N en los puntos de control: arreglo (paths, checkpoints, N + 1)."""

    kappa: float
    times: np.ndarray
    b: np.ndarray
    metadata: dict

    @property
    def paths(self) -> int:
        return self.b.shape[0]

    @property
    def N(self) -> int:
        return self.b.shape[2] - 1

    def coordinate(self, k: int) -> np.ndarray:
        return self.b[:, :, k]


def simulate_ensemble(kappa: float, N: int, T: float, dt: float, paths: int, seed: int,
                      checkpoints: int = 10, chunk_size: int = 10_000, threads: int = 1) -> SleEnsemble:
    """
    Ensamble de la jerarquía con flujos de números aleatorios por bloque.

    Args:
        kappa: Parámetro κ ≥ 0.
        N: Último coeficiente simulado.
        T, dt: Horizonte y paso de Euler.
        paths: Cantidad de trayectorias.
        seed: Semilla maestra (SeedSequence).
        checkpoints: Cantidad de intervalos de registro.
        chunk_size: Tamaño de bloque; forma parte de la tupla de reproducibilidad.
        threads: Hilos; no altera el resultado.
    """
    if N < 1:
        raise ValueError("La jerarquía necesita N ≥ 1.")
    n = max(1, int(round(T / dt)))
    step = T / n
    marks = checkpoint_steps(n, checkpoints)
    sigma = math.sqrt(kappa * step)

    def worker(rng: np.random.Generator, m: int) -> dict[str, np.ndarray]:
        state = [np.zeros(m) for _ in range(N + 1)]
        out = np.empty((m, marks.size, N + 1))
        slot = 0
        for k in range(n + 1):
            if slot < marks.size and marks[slot] == k:
                for j in range(N + 1):
                    out[:, slot, j] = state[j]
                slot += 1
            if k == n:
                break
            noise = rng.standard_normal(m)
            rest = _euler_step(state, N, step)
            state = [state[0] - sigma * noise, np.full(m, 2.0 * (k + 1) * step)] + rest
        return {"b": out}

    logger.info(f"Ensamble SLE: κ = {kappa}, N = {N}, {paths} trayectorias, {n} pasos")
    data = run_chunked(seed, paths, chunk_size, threads, worker)
    times = marks * step
    b = data["b"]
    b[:, :, 1] = 2.0 * times
    return SleEnsemble(
        kappa=float(kappa), times=times, b=b,
        metadata={"kappa": float(kappa), "seed": seed, "paths": paths, "dt": step,
                  "chunk_size": chunk_size, "N": N},
    )


# ── Generador en la carta de infinito ───────────────────────────────────────

def p_polynomials(N: int) -> list:
    """p₀..p_N como expresiones sympy en b₀..b_N."""
    return [sympy.expand(value) for value in _p_array(list(chart_variables(INFINITY, N)), N)]


def sle_generator_parts(N: int) -> tuple[LinearCoeffOperator, LinearCoeffOperator]:
    """L₋₁^∞ = −∂/∂b₀ y L₋₂^∞ = −Σ_{k≥1} p_k ∂/∂b_k."""
    p = p_polynomials(N)
    first = LinearCoeffOperator(INFINITY, N, {(0,): -1}, level=1, name="L-1^inf")
    second = LinearCoeffOperator(INFINITY, N, {(k,): -p[k] for k in range(1, N + 1)},
                                 level=2, name="L-2^inf")
    return first, second


def sle_generator(kappa, N: int) -> LinearCoeffOperator:
    """Â∞ = (κ/2)(L₋₁^∞)² − 2L₋₂^∞ = (κ/2)∂²/∂b₀² + 2Σ p_k ∂/∂b_k."""
    if kappa is None or as_sympy(kappa) <= 0:
        raise ValueError("El generador necesita κ > 0.")
    p = p_polynomials(N)
    terms = {(0, 0): as_sympy(kappa) / 2}
    for k in range(1, N + 1):
        terms[(k,)] = 2 * p[k]
    return LinearCoeffOperator(INFINITY, N, terms, level=2, name="A^inf")


def hormander_bracket(N: int) -> LinearCoeffOperator:
    """[L₋₁^∞, L₋₂^∞] = Σ_k (∂p_k/∂b₀) ∂/∂b_k, primer orden y no nulo para N ≥ 2."""
    first, second = sle_generator_parts(N)
    return lie_bracket(first, second)


# ── Versión de un punto ─────────────────────────────────────────────────────

X_SYMBOL = sympy.Symbol("x", positive=True)


def one_point_generator(kappa):
    """
    Â = (κ/2)ℓ₋₁² − 2ℓ₋₂ con ℓ_n = −x^{n+1} d/dx, es decir
    φ ↦ (κ/2)φ″ + (2/x)φ′, sobre expresiones sympy en x.
    """
    k = as_sympy(kappa)

    def generator(expr):
        return sympy.simplify(k / 2 * sympy.diff(expr, X_SYMBOL, 2) + 2 / X_SYMBOL * sympy.diff(expr, X_SYMBOL))

    return generator


def one_point_exponents(kappa) -> set:
    """Exponentes a con Â xᵃ = 0: {0, 1 − 4/κ}."""
    a = sympy.Symbol("a")
    k = as_sympy(kappa)
    return set(sympy.solve(sympy.expand(k / 2 * a * (a - 1) + 2 * a), a))
