"""
Configuración de corridas: valores por defecto, lectura del documento JSON y
validación campo por campo.

Precedencia (de menor a mayor): defaults < documento JSON < flags de la CLI.
"""
import json
import logging
import os
from dataclasses import asdict, dataclass, field, fields
from fractions import Fraction

from src.errors import ConfigInvalid
from src.series.base_series import BACKENDS, FLOAT
from src.series.laurent import TruncatedLaurentInf
from src.series.taylor import TruncatedTaylor

logger = logging.getLogger(__name__)

# ── Valores por defecto ──────────────────────────────────────────────────────
DEFAULT_N = 8
DEFAULT_T = 1.0
DEFAULT_DT = 1e-3
DEFAULT_PATHS = 10_000
DEFAULT_CHECKPOINTS = 10
DEFAULT_Z_CRIT = 4.0
DEFAULT_CHUNK_SIZE = 10_000
DEFAULT_THREADS = 1
DEFAULT_WEIGHT = 2
DEFAULT_BACKEND = FLOAT
DEFAULT_OUTPUT_DIR = "output"

COMMANDS = (
    "series", "grunsky", "faber", "embed", "circle", "virasoro", "kernel",
    "radial", "sle-trace", "sle-coeff", "martingale", "report",
)
KAPPA_REQUIRED = {"kernel", "sle-trace", "sle-coeff", "martingale", "report"}
ALWAYS_STOCHASTIC = {"sle-coeff", "martingale", "report"}


@dataclass
class RunConfig:
    command: str
    kappa: float | None = None
    N: int = DEFAULT_N
    T: float = DEFAULT_T
    dt: float = DEFAULT_DT
    paths: int = DEFAULT_PATHS
    seed: int | None = None
    weight: int = DEFAULT_WEIGHT
    checkpoints: int = DEFAULT_CHECKPOINTS
    z_crit: float = DEFAULT_Z_CRIT
    chunk_size: int = DEFAULT_CHUNK_SIZE
    threads: int = DEFAULT_THREADS
    backend: str = DEFAULT_BACKEND
    output_dir: str = DEFAULT_OUTPUT_DIR
    inputs: dict = field(default_factory=dict)

    @property
    def stochastic(self) -> bool:
        if self.command in ALWAYS_STOCHASTIC:
            return True
        return self.command == "sle-trace" and bool(self.kappa)

    def validate(self) -> "RunConfig":
        """
        Verifica tipos y rangos; el primer campo inválido corta la validación.

        Raises:
            ConfigInvalid: con el nombre del campo rechazado.
        """
        if self.command not in COMMANDS:
            raise ConfigInvalid("command", f"comando desconocido {self.command!r}")
        _integer(self, "N", minimum=1)
        _integer(self, "paths", minimum=2)
        _integer(self, "weight", minimum=0)
        _integer(self, "checkpoints", minimum=1)
        _integer(self, "chunk_size", minimum=1)
        _integer(self, "threads", minimum=1)
        _positive(self, "T")
        _positive(self, "dt")
        _positive(self, "z_crit")
        if self.dt > self.T:
            raise ConfigInvalid("dt", f"dt = {self.dt} mayor que T = {self.T}")
        if self.backend not in BACKENDS:
            raise ConfigInvalid("backend", f"debe ser uno de {BACKENDS}")
        if self.kappa is not None:
            if not _is_number(self.kappa) or self.kappa < 0:
                raise ConfigInvalid("kappa", "debe ser un número ≥ 0")
        if self.command in KAPPA_REQUIRED and self.kappa is None:
            raise ConfigInvalid("kappa", f"el comando '{self.command}' requiere κ")
        if self.command in ALWAYS_STOCHASTIC - {"sle-coeff"} and not self.kappa:
            raise ConfigInvalid("kappa", f"el comando '{self.command}' requiere κ > 0")
        if self.stochastic and self.seed is None:
            raise ConfigInvalid("seed", f"el comando '{self.command}' es estocástico y requiere semilla")
        if self.seed is not None:
            _integer(self, "seed", minimum=0)
        if not isinstance(self.inputs, dict):
            raise ConfigInvalid("inputs", "debe ser un objeto JSON")
        return self

    def to_dict(self) -> dict:
        return asdict(self)


def _is_number(value) -> bool:
    return isinstance(value, (int, float, Fraction)) and not isinstance(value, bool)


def _integer(config: RunConfig, name: str, minimum: int) -> None:
    value = getattr(config, name)
    if not isinstance(value, int) or isinstance(value, bool) or value < minimum:
        raise ConfigInvalid(name, f"debe ser un entero ≥ {minimum}, llegó {value!r}")


def _positive(config: RunConfig, name: str) -> None:
    value = getattr(config, name)
    if not _is_number(value) or value <= 0:
        raise ConfigInvalid(name, f"debe ser un número positivo, llegó {value!r}")


# ── Carga ────────────────────────────────────────────────────────────────────

def load_document(path: str) -> dict:
    """
    Lee el documento JSON de configuración.

    Raises:
        ConfigInvalid: si el archivo no existe o no es un objeto JSON válido.
    """
    if not os.path.isfile(path):
        raise ConfigInvalid("config", f"archivo no encontrado: {path}")
    try:
        with open(path, encoding="utf-8") as fh:
            document = json.load(fh)
    except json.JSONDecodeError as e:
        raise ConfigInvalid("config", f"JSON inválido en {path}: {e}") from e
    if not isinstance(document, dict):
        raise ConfigInvalid("config", "el documento debe ser un objeto JSON")
    return document


def build_config(command: str, document: dict | None = None, overrides: dict | None = None) -> RunConfig:
    """Combina defaults, documento y flags; las claves desconocidas se rechazan."""
    known = {f.name for f in fields(RunConfig)}
    values: dict = {}
    for source in (document or {}, overrides or {}):
        for key, value in source.items():
            if key not in known:
                raise ConfigInvalid(key, "campo desconocido")
            if value is not None:
                values[key] = value
    if command is not None:
        values["command"] = command
    if "command" not in values:
        raise ConfigInvalid("command", "falta el comando")
    if isinstance(values.get("kappa"), str):
        # κ racional escrito como "8/3"
        try:
            values["kappa"] = Fraction(values["kappa"])
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigInvalid("kappa", f"valor inválido {values['kappa']!r}") from e
    config = RunConfig(**values)
    logger.debug(f"Configuración efectiva: {config.to_dict()}")
    return config.validate()


# ── Entradas de series ───────────────────────────────────────────────────────

def _scalar(value):
    if isinstance(value, str):
        return Fraction(value)
    if isinstance(value, list):
        if len(value) != 2:
            raise ValueError(f"Un coeficiente complejo es [re, im], llegó {value!r}")
        return complex(value[0], value[1])
    return value


def parse_taylor(data, field_name: str = "f", backend: str | None = None) -> TruncatedTaylor:
    """
    Serie de Taylor desde la entrada JSON: lista de coeficientes (números,
    racionales como "1/3" o pares [re, im]) o {"kind": "taylor", "coeffs": …}.

    Raises:
        ConfigInvalid: si la entrada no describe una serie.
    """
    try:
        if isinstance(data, dict):
            return TruncatedTaylor.from_dict(data)
        series = TruncatedTaylor([_scalar(v) for v in data])
        return series.to_float() if backend == FLOAT else series
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise ConfigInvalid(f"inputs.{field_name}", f"serie inválida: {e}") from e


def parse_laurent(data, field_name: str = "g", backend: str | None = None) -> TruncatedLaurentInf:
    """Serie de Laurent en ∞: {"lead": …, "coeffs": [b₀, b₁, …]} o el dict exportado."""
    try:
        if data.get("kind") == TruncatedLaurentInf.kind:
            return TruncatedLaurentInf.from_dict(data)
        series = TruncatedLaurentInf(_scalar(data.get("lead", 1)), [_scalar(v) for v in data["coeffs"]])
        return series.to_float() if backend == FLOAT else series
    except (AttributeError, KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise ConfigInvalid(f"inputs.{field_name}", f"serie inválida: {e}") from e
