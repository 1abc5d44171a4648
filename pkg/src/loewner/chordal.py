"""
Ecuación de Loewner cordal ∂g/∂t = 2/(g − W_t) en el semiplano superior:
mapas puntuales con tiempo de absorción, traza por composición inversa de
rendijas y el ensamble de un punto de la frontera real.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd
from scipy.integrate import solve_ivp

from src.errors import StepRejected, SwallowTolUnreachable
from src.loewner.driving import Driving, checkpoint_steps, run_chunked

logger = logging.getLogger(__name__)

SWALLOW_TOL = 1e-6
STEP_FLOOR = 1e-12


# ── Rama de la raíz ─────────────────────────────────────────────────────────

def upper_sqrt(w, reference):
    """
    Raíz de w en el semiplano superior cerrado; sobre el eje real toma el
    signo de Re(reference).
    """
    w = np.asarray(w, dtype=complex)
    s = np.sqrt(w)
    flip = (s.imag < 0) | ((s.imag == 0) & (np.real(reference) < 0))
    return np.where(flip, -s, s)


def chordal_closed_form(z, t):
    """g_t(z) = √(z² + 4t) para W ≡ 0."""
    z = np.asarray(z, dtype=complex)
    return upper_sqrt(z * z + 4.0 * np.asarray(t, dtype=float), z)


# ── Mapa puntual ────────────────────────────────────────────────────────────

@dataclass(frozen=True)
class ChordalPoint:
    z: complex
    value: complex
    t_final: float
    tau: float | None

    @property
    def swallowed(self) -> bool:
        return self.tau is not None

    def to_dict(self) -> dict:
        return {
            "z": [self.z.real, self.z.imag],
            "g": [self.value.real, self.value.imag],
            "t_final": self.t_final,
            "tau": self.tau,
        }


def chordal_map(z: complex, driving: Driving, T: float | None = None,
                swallow_tol: float = SWALLOW_TOL, step_floor: float = STEP_FLOOR,
                rtol: float = 1e-10, atol: float = 1e-12) -> ChordalPoint:
    """
    Integra g_t(z) hasta T o hasta que |g − W| < swallow_tol (τ_z registrado).

    Args:
        z: Punto con Im z ≥ 0, distinto de W₀.
        driving: Conducción determinista o browniana.
        T: Horizonte (por defecto el de la conducción).

    Raises:
        ValueError: si Im z < 0 o z = W₀.
        SwallowTolUnreachable: si el paso cae bajo `step_floor` cerca de la
            singularidad sin alcanzar la tolerancia de absorción.
        StepRejected: ante cualquier otra falla del integrador.
    """
    z = complex(z)
    T = driving.T if T is None else T
    if z.imag < 0:
        raise ValueError(f"z = {z} no está en el semiplano superior cerrado.")
    if abs(z - driving.value(0.0)) == 0:
        raise ValueError("z coincide con W₀.")

    def rhs(t, g):
        return 2.0 / (g - driving.value(t))

    def swallow(t, g):
        return abs(g[0] - driving.value(t)) - swallow_tol

    swallow.terminal = True
    swallow.direction = -1

    max_step = driving.dt if driving.kind == "brownian" else np.inf
    sol = solve_ivp(rhs, (0.0, T), [z], method="DOP853", events=swallow,
                    rtol=rtol, atol=atol, max_step=max_step)
    if sol.status == -1:
        last_step = sol.t[-1] - sol.t[-2] if len(sol.t) > 1 else 0.0
        if last_step < step_floor:
            raise SwallowTolUnreachable(f"Paso {last_step:.2e} bajo el piso cerca de W en t = {sol.t[-1]:.6g}")
        raise StepRejected(f"Integración cordal interrumpida: {sol.message}")
    tau = float(sol.t_events[0][0]) if sol.status == 1 else None
    if tau is not None:
        logger.debug(f"z = {z} absorbido en τ = {tau:.6g}")
    return ChordalPoint(z=z, value=complex(sol.y[0, -1]), t_final=float(sol.t[-1]), tau=tau)


# ── Traza ───────────────────────────────────────────────────────────────────

@dataclass
class SleTrace:
    times: np.ndarray
    driving: np.ndarray
    points: np.ndarray

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame({
            "step": np.arange(self.points.size),
            "t": self.times,
            "re": self.points.real,
            "im": self.points.imag,
        })


def sle_trace(driving: Driving, T: float | None = None, n_steps: int | None = None) -> SleTrace:
    """
    Traza γ_{t_k} = g_{t_k}⁻¹(W_{t_k}) con conducción constante a trozos.

    En cada paso el mapa elemental es la rendija vertical
    g ↦ W_j + √((g − W_j)² + 4Δt); su inversa se compone en orden inverso,
    vectorizada sobre todos los puntos de la traza.
    """
    if T is not None and n_steps is not None:
        driving = Driving(driving.kind, T, T / n_steps, u=driving.u, kappa=driving.kappa, seed=driving.seed)
    W = driving.sample()
    times = driving.times()
    n = W.size - 1
    step = times[1] - times[0]

    points = np.empty(n + 1, dtype=complex)
    points[0] = W[0]
    tips = W[1:].astype(complex)
    for j in range(n, 0, -1):
        active = slice(j - 1, n)
        shifted = tips[active] - W[j]
        tips[active] = W[j] + upper_sqrt(shifted * shifted - 4.0 * step, shifted)
    points[1:] = tips
    logger.info(f"Traza: {n} pasos, extremo {points[-1]:.6g}")
    return SleTrace(times=times, driving=np.asarray(W), points=points)


# ── Punto de la frontera ────────────────────────────────────────────────────

@dataclass
class BoundaryEnsemble:
    """
    Muestras en los puntos de control de X = g_t(x) − W_t, log g′_t(x), g″, g‴
    para un punto real x > W₀. Las trayectorias absorbidas quedan congeladas
    en su último valor válido.
    """

    x: float
    kappa: float
    times: np.ndarray
    X: np.ndarray
    log_dg: np.ndarray
    d2g: np.ndarray
    d3g: np.ndarray
    swallowed: np.ndarray
    metadata: dict

    @property
    def paths(self) -> int:
        return self.X.shape[0]

    @property
    def swallowed_fraction(self) -> float:
        return float(np.mean(self.swallowed))

    def schwarzian(self) -> np.ndarray:
        """S(g_t)(x) = g‴/g′ − (3/2)(g″/g′)²."""
        dg = np.exp(self.log_dg)
        return self.d3g / dg - 1.5 * (self.d2g / dg) ** 2


def simulate_boundary_point(x: float, kappa: float, T: float, dt: float, paths: int, seed: int,
                            checkpoints: int = 10, chunk_size: int = 10_000,
                            threads: int = 1) -> BoundaryEnsemble:
    """
    Simula dX = 2/X dt − √κ dB junto con las ecuaciones de las derivadas
    espaciales de g_t en x:
      d(log g′) = −2/X² dt
      dg″ = (−2g″/X² + 4g′²/X³) dt
      dg‴ = (−2g‴/X² + 12g′g″/X³ − 12g′³/X⁴) dt

    Para 0 < κ ≤ 4, X²/κ es un Bessel cuadrado de dimensión 1 + 4/κ ≥ 2 que
    no alcanza el 0: se muestrea su transición exacta (χ² no central) y no
    hay absorciones. Para κ > 4 (y κ = 0) se usa Euler–Maruyama y una
    trayectoria queda absorbida en el primer paso con X ≤ 0. Las derivadas
    usan el factor exacto e^{−2h/X²} del término lineal.
    """
    if x <= 0:
        raise ValueError("El punto de frontera debe cumplir x > W₀ = 0.")
    n = max(1, int(round(T / dt)))
    step = T / n
    marks = checkpoint_steps(n, checkpoints)
    sigma = math.sqrt(kappa * step)
    exact_bessel = 0 < kappa <= 4
    dimension = 1.0 + 4.0 / kappa if kappa > 0 else math.inf

    def worker(rng: np.random.Generator, m: int) -> dict[str, np.ndarray]:
        X = np.full(m, float(x))
        log_dg = np.zeros(m)
        d2g = np.zeros(m)
        d3g = np.zeros(m)
        alive = np.ones(m, dtype=bool)
        out = {key: np.empty((m, marks.size)) for key in ("X", "log_dg", "d2g", "d3g")}
        out["swallowed"] = np.zeros(m, dtype=bool)
        slot = 0
        for k in range(n + 1):
            if slot < marks.size and marks[slot] == k:
                out["X"][:, slot] = X
                out["log_dg"][:, slot] = log_dg
                out["d2g"][:, slot] = d2g
                out["d3g"][:, slot] = d3g
                slot += 1
            if k == n:
                break
            inv = 1.0 / X
            dg = np.exp(log_dg)
            if exact_bessel:
                scale = kappa * step
                new_X = np.sqrt(scale * rng.noncentral_chisquare(dimension, X * X / scale))
            else:
                new_X = X + 2.0 * inv * step - sigma * rng.standard_normal(m)
            rate = 2.0 * inv ** 2 * step
            decay = np.exp(-rate)
            new_log = log_dg - rate
            new_d2 = d2g * decay + 4.0 * dg ** 2 * inv ** 3 * step
            new_d3 = d3g * decay + (12.0 * dg * d2g * inv ** 3 - 12.0 * dg ** 3 * inv ** 4) * step
            if not exact_bessel:
                alive &= new_X > 0
            X = np.where(alive, new_X, X)
            log_dg = np.where(alive, new_log, log_dg)
            d2g = np.where(alive, new_d2, d2g)
            d3g = np.where(alive, new_d3, d3g)
        out["swallowed"] = ~alive
        return out

    data = run_chunked(seed, paths, chunk_size, threads, worker)
    ensemble = BoundaryEnsemble(
        x=float(x), kappa=float(kappa), times=marks * step,
        X=data["X"], log_dg=data["log_dg"], d2g=data["d2g"], d3g=data["d3g"],
        swallowed=data["swallowed"],
        metadata={"kappa": float(kappa), "seed": seed, "paths": paths, "dt": step,
                  "chunk_size": chunk_size, "x": float(x),
                  "scheme": "bessel_exact" if exact_bessel else "euler"},
    )
    if ensemble.swallowed_fraction > 0:
        logger.warning(f"x = {x}: {ensemble.swallowed_fraction:.2%} de trayectorias absorbidas")
    return ensemble
