"""
Datos de entrada de los flujos de Loewner: medidas de Herglotz (caso radial),
funciones de conducción (caso cordal) y el reparto de ensambles Monte Carlo en
bloques con semillas independientes.
"""
import logging
import math
from collections.abc import Callable
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from src.circle.fourier import FourierField
from src.errors import NonpositiveMeasure

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * math.pi
DENSITY_GRID = 512


# ── Medidas de Herglotz ─────────────────────────────────────────────────────

class HerglotzMeasure:
    """
    Medida positiva ν = Σ_j m_j δ_{θ_j} + ρ(θ) dθ/2π sobre la circunferencia.

    Args:
        atoms: Pares (θ_j, m_j); θ se reduce a [0, 2π).
        density: Densidad ρ como campo de Fourier (opcional).

    Raises:
        NonpositiveMeasure: si alguna masa es negativa o ρ toma valores
            negativos sobre la grilla de control.
    """

    def __init__(self, atoms=(), density: FourierField | None = None):
        clean = []
        for theta, mass in atoms:
            if mass < 0:
                raise NonpositiveMeasure(f"Masa negativa {mass} en θ = {theta}")
            clean.append((float(theta) % TWO_PI, float(mass)))
        self.atoms = tuple(clean)
        self.density = density
        if density is not None:
            grid = TWO_PI * np.arange(DENSITY_GRID) / DENSITY_GRID
            lowest = float(np.min(density.evaluate(grid)))
            if lowest < -1e-12:
                raise NonpositiveMeasure(f"La densidad toma el valor {lowest:.3e} < 0")

    @classmethod
    def zero(cls) -> "HerglotzMeasure":
        return cls()

    @classmethod
    def dirac(cls, theta: float, mass: float = 1.0) -> "HerglotzMeasure":
        return cls(atoms=[(theta, mass)])

    @classmethod
    def uniform(cls, mass: float = 1.0) -> "HerglotzMeasure":
        return cls(density=FourierField.constant(mass))

    @classmethod
    def from_dict(cls, data: dict) -> "HerglotzMeasure":
        density = data.get("density")
        return cls(
            atoms=[tuple(pair) for pair in data.get("atoms", [])],
            density=FourierField.from_dict(density) if density else None,
        )

    @property
    def total_mass(self) -> float:
        mass = sum(m for _, m in self.atoms)
        if self.density is not None:
            mass += float(self.density.a[0])
        return mass

    def moment(self, n: int) -> complex:
        """∫ e^{−inθ} dν."""
        value = sum(m * complex(math.cos(n * t), -math.sin(n * t)) for t, m in self.atoms)
        if self.density is not None and abs(n) <= self.density.M:
            value += self.density.complex_coeffs()[self.density.M + n]
        return complex(value)

    def symbol(self, N: int) -> dict[int, complex]:
        """Símbolo de Fourier {n: ∫e^{−inθ}dν}, n = 0..N, apto para lie_field."""
        return {n: self.moment(n) for n in range(N + 1)}

    def herglotz_coeffs(self, N: int) -> np.ndarray:
        """p(z) = ν(S¹) + 2Σ_{n≥1} (∫e^{−inθ}dν) zⁿ hasta orden N."""
        p = np.array([self.moment(n) for n in range(N + 1)], dtype=complex)
        p[1:] *= 2.0
        return p

    def to_dict(self) -> dict:
        return {
            "atoms": [list(pair) for pair in self.atoms],
            "density": self.density.to_dict() if self.density is not None else None,
        }


# ── Funciones de conducción ─────────────────────────────────────────────────

@dataclass
class Driving:
    """
    W_t determinista (u(t)) o browniano (√κ·B_t) sobre [0, T] con paso dt.

    Para conducción browniana el camino se muestrea una sola vez por semilla y
    se interpola linealmente entre nodos cuando un integrador lo pide.
    """

    kind: str
    T: float
    dt: float
    u: Callable[[float], float] | None = None
    kappa: float = 0.0
    seed: int | None = None
    _samples: np.ndarray | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        if self.kind not in ("deterministic", "brownian"):
            raise ValueError(f"Tipo de conducción desconocido: {self.kind}")
        if self.dt <= 0 or self.T <= 0:
            raise ValueError("Se requiere T > 0 y dt > 0.")
        if self.kind == "brownian" and self.kappa < 0:
            raise ValueError("κ debe ser no negativo.")
        if self.kind == "deterministic" and self.u is None:
            self.u = lambda t: 0.0

    @classmethod
    def deterministic(cls, u: Callable[[float], float], T: float, dt: float) -> "Driving":
        return cls("deterministic", T, dt, u=u)

    @classmethod
    def constant(cls, value: float, T: float, dt: float) -> "Driving":
        return cls("deterministic", T, dt, u=lambda t: value)

    @classmethod
    def brownian(cls, kappa: float, seed: int, T: float, dt: float) -> "Driving":
        return cls("brownian", T, dt, kappa=kappa, seed=seed)

    @property
    def n_steps(self) -> int:
        return max(1, int(round(self.T / self.dt)))

    def times(self) -> np.ndarray:
        return np.linspace(0.0, self.T, self.n_steps + 1)

    def sample(self) -> np.ndarray:
        """W en los nodos de la grilla (W₀ = u(0) o 0)."""
        if self._samples is None:
            t = self.times()
            if self.kind == "deterministic":
                values = np.array([float(self.u(s)) for s in t])
            else:
                rng = np.random.default_rng(self.seed)
                step = self.T / self.n_steps
                increments = rng.standard_normal(self.n_steps) * math.sqrt(self.kappa * step)
                values = np.concatenate([[0.0], np.cumsum(increments)])
            values.flags.writeable = False
            self._samples = values
        return self._samples

    def value(self, t: float) -> float:
        if self.kind == "deterministic":
            return float(self.u(t))
        return float(np.interp(t, self.times(), self.sample()))

    def to_dict(self) -> dict:
        return {"kind": self.kind, "T": self.T, "dt": self.dt, "kappa": self.kappa, "seed": self.seed}


# ── Ensambles por bloques ───────────────────────────────────────────────────

def checkpoint_steps(n_steps: int, checkpoints: int) -> np.ndarray:
    """Índices de paso 0 = s₀ < s₁ < … < n_steps donde se registran muestras."""
    if checkpoints < 1:
        raise ValueError("Se necesita al menos un punto de control.")
    return np.unique(np.round(np.linspace(0, n_steps, checkpoints + 1)).astype(int))


def chunk_sizes(paths: int, chunk_size: int) -> list[int]:
    if paths < 1 or chunk_size < 1:
        raise ValueError("paths y chunk_size deben ser positivos.")
    full, rest = divmod(paths, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def run_chunked(seed: int, paths: int, chunk_size: int, threads: int,
                worker: Callable[[np.random.Generator, int], dict[str, np.ndarray]]) -> dict[str, np.ndarray]:
    """
    Ejecuta `worker(rng, m)` sobre bloques con flujos independientes derivados
    de SeedSequence(seed).spawn y concatena los resultados en orden de bloque.

    El resultado depende de (seed, paths, chunk_size) y no de `threads`.
    """
    sizes = chunk_sizes(paths, chunk_size)
    streams = np.random.SeedSequence(seed).spawn(len(sizes))
    tasks = [(np.random.default_rng(s), m) for s, m in zip(streams, sizes)]
    logger.debug(f"Ensamble: {paths} trayectorias en {len(sizes)} bloques, {threads} hilo(s)")
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda task: worker(*task), tasks))
    else:
        parts = [worker(rng, m) for rng, m in tasks]
    return {key: np.concatenate([part[key] for part in parts], axis=0) for key in parts[0]}
