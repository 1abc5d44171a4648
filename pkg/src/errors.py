"""
Jerarquía de errores del laboratorio.

Tres familias, cada una con su código de salida en la CLI:
  - NumericError      → 3 (precondición numérica violada)
  - StatisticalError  → 4 (corrida Monte Carlo invalidada)
  - ConfigInvalid     → 2 (configuración rechazada)

ArtifactError (→ 1) cubre artefactos que no pueden serializarse.
"""


class LabError(Exception):
    """Raíz de todos los errores propios del laboratorio."""

    exit_code = 1
    tag = "[ERROR]"


# ── Errores numéricos ────────────────────────────────────────────────────────

class NumericError(LabError, ValueError):
    exit_code = 3
    tag = "[NUMERIC_ERROR]"


class ZeroLeadingCoefficient(NumericError):
    """La parte unitaria de una serie se anula (división, log, reversión)."""


class NonzeroConstantTerm(NumericError):
    """La serie interior de una composición tiene término constante."""


class SectorMismatch(NumericError):
    """Se combinaron series bivariadas (o dominios H±) de sectores distintos."""


class DegenerateDiagonal(NumericError):
    """(f(z) − f(w))/(z − w) tiene parte unitaria nula."""


class NotInDisc(NumericError):
    """El operador Z no está en el disco de Siegel (gap espectral ≤ 0)."""


class NonzeroMean(NumericError):
    """J sólo está definido sobre campos de media nula."""


class InsufficientResolution(NumericError):
    """La grilla de muestreo deja energía por encima del umbral de Nyquist."""


class InsufficientOrder(NumericError):
    """El orden de truncación no alcanza para el resultado pedido."""


class InexactOperation(NumericError):
    """La operación no tiene resultado racional (p. ej. log de a₀ ≠ 1)."""


class ChartMismatch(NumericError):
    """Polinomios u operadores de cartas distintas (disco / infinito)."""


class UnsupportedLevel(NumericError):
    """Nivel de Virasoro sin forma cerrada en coordenadas (n < −2)."""


class StepRejected(NumericError):
    """El integrador adaptativo no pudo completar el intervalo."""


class NonpositiveMeasure(NumericError):
    """La medida de Herglotz tiene masa o densidad negativa."""


class SwallowTolUnreachable(NumericError):
    """El paso del integrador cayó bajo el piso cerca de la singularidad."""


# ── Errores estadísticos ─────────────────────────────────────────────────────

class StatisticalError(LabError):
    exit_code = 4
    tag = "[STATISTICAL_ERROR]"


class InsufficientPaths(StatisticalError):
    """El error estándar no permite resolver el tamaño de efecto configurado."""


class PathSwallowed(StatisticalError):
    """La fracción de trayectorias tragadas supera el umbral permitido."""

    def __init__(self, message: str, fraction: float):
        super().__init__(message)
        self.fraction = fraction


# ── Configuración ────────────────────────────────────────────────────────────

class ConfigInvalid(LabError, ValueError):
    exit_code = 2
    tag = "[CONFIG_ERROR]"

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field


# ── Artefactos ───────────────────────────────────────────────────────────────

class ArtifactError(LabError):
    """Un artefacto no pudo serializarse; no se escribe ningún archivo."""

    exit_code = 1
    tag = "[IO_ERROR]"
