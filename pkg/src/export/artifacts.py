"""
Escritura de artefactos JSON y CSV.

Todo artefacto lleva la versión del paquete y el eco de la configuración
efectiva. No se registran fechas ni rutas absolutas, de modo que la misma
configuración produce archivos idénticos byte a byte.
"""
import json
import logging
import os
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
import pandas as pd
import sympy

from src import __version__
from src.errors import ArtifactError

logger = logging.getLogger(__name__)

JSON = "json"
CSV = "csv"
TMP_SUFFIX = ".tmp"


@dataclass
class Artifact:
    """
    Resultado pendiente de escribir: nombre de archivo sin extensión y
    contenido. failed_check marca un reporte cuyo veredicto es negativo.
    """

    name: str
    kind: str
    payload: object
    failed_check: bool = False


def metadata(config) -> dict:
    return {"version": __version__, "config": config.to_dict()}


def _default(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (complex, np.complexfloating)):
        return [float(value.real), float(value.imag)]
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, sympy.Basic):
        return str(value)
    raise TypeError(f"Tipo no serializable: {type(value).__name__}")


def to_json(payload, config) -> str:
    document = {"metadata": metadata(config), "result": payload}
    return json.dumps(document, sort_keys=True, indent=2, default=_default, ensure_ascii=False) + "\n"


def to_csv(frame: pd.DataFrame, config) -> str:
    header = "# " + json.dumps(metadata(config), sort_keys=True, default=_default, ensure_ascii=False)
    return header + "\n" + frame.to_csv(index=False, float_format="%.17g", lineterminator="\n")


def render(artifact: Artifact, config) -> str:
    """
    Texto final de un artefacto.

    Raises:
        ArtifactError: si el contenido no es serializable o el tipo es desconocido.
    """
    try:
        if artifact.kind == JSON:
            return to_json(artifact.payload, config)
        if artifact.kind == CSV:
            return to_csv(artifact.payload, config)
    except (TypeError, ValueError, AttributeError) as e:
        raise ArtifactError(f"{artifact.name}.{artifact.kind}: {e}") from e
    raise ArtifactError(f"Tipo de artefacto desconocido: {artifact.kind}")


def write_artifacts(artifacts: list[Artifact], config) -> list[str]:
    """
    Escribe los artefactos en config.output_dir y devuelve las rutas.

    Todos se serializan antes de tocar el disco y se escriben primero como
    temporales; sólo cuando todos quedaron escritos se renombran a su nombre
    final. Ante un error se eliminan los temporales.

    Raises:
        ArtifactError: si algún artefacto no es serializable.
        OSError: si el directorio de salida no es escribible.
    """
    rendered = [(os.path.join(config.output_dir, f"{a.name}.{a.kind}"), render(a, config))
                for a in artifacts]
    os.makedirs(config.output_dir, exist_ok=True)
    staged: list[tuple[str, str]] = []
    try:
        for path, text in rendered:
            temporary = path + TMP_SUFFIX
            staged.append((temporary, path))
            with open(temporary, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        for temporary, path in staged:
            os.replace(temporary, path)
    except OSError:
        for temporary, _ in staged:
            if os.path.exists(temporary):
                os.remove(temporary)
        raise
    written = [path for _, path in staged]
    for path in written:
        logger.info(f"Artefacto exportado: {path}")
    return written
