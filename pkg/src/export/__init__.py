from src.export.artifacts import CSV, JSON, Artifact, render, to_csv, to_json, write_artifacts

__all__ = ["CSV", "JSON", "Artifact", "render", "to_csv", "to_json", "write_artifacts"]
