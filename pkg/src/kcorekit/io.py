"""Edge-list parsing and deterministic CSV/JSON output with a run manifest."""
from __future__ import annotations

import hashlib
import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .graph import Graph, build_graph

MANIFEST_SCHEMA = 1


class EdgeListError(ValueError):
    def __init__(self, path, lineno: int, line: str):
        super().__init__(f"{path}:{lineno}: expected two tokens, got {line.strip()!r}")
        self.lineno = lineno


def parse_edge_lines(lines, source="<input>"):
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tok = line.split()
        if len(tok) != 2:
            raise EdgeListError(source, lineno, raw)
        yield tok[0], tok[1]


def load_edge_list(path) -> Graph:
    """Read a whitespace-separated edge list. Labels stay strings."""
    with open(path, encoding="utf-8") as fh:
        return build_graph(parse_edge_lines(fh, path))


def write_edge_list(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for a, b in g.labeled_edges():
            fh.write(f"{a} {b}\n")


def fmt(x) -> str:
    """Fixed textual form: ints as-is, floats to 9 significant digits."""
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if math.isnan(x):
            return "nan"
        return f"{x:.9g}"
    return str(x)


def write_csv(path, header: list[str], rows) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt(v) for v in row) + "\n")


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return None if math.isnan(x) or math.isinf(x) else float(fmt(x))
    if isinstance(obj, np.bool_):
        return bool(obj)
    return obj


def write_json(path, obj) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(_jsonable(obj), fh, indent=2, sort_keys=True)
        fh.write("\n")


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            h.update(chunk)
    return h.hexdigest()


@dataclass
class ExperimentManifest:
    command: list[str]
    config: dict
    seeds: list[int] = field(default_factory=list)
    inputs: dict[str, str] = field(default_factory=dict)   # path -> sha256
    outputs: dict[str, str] = field(default_factory=dict)  # path (relative to out dir) -> sha256
    stages: dict[str, float] = field(default_factory=dict)  # stage -> seconds
    version: str = __version__

    def as_dict(self) -> dict:
        return {
            "schema_version": MANIFEST_SCHEMA,
            "tool_version": self.version,
            "command": self.command,
            "config": self.config,
            "seeds": self.seeds,
            "inputs": self.inputs,
            "outputs": self.outputs,
            "wall_clock_seconds": self.stages,
        }


class OutputDir:
    """Collects files written by one command and produces its manifest."""

    def __init__(self, root, manifest: ExperimentManifest):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.manifest = manifest

    def path(self, name) -> Path:
        p = Path(name)
        return p if p.is_absolute() else self.root / p

    def csv(self, name, header, rows) -> Path:
        p = self.path(name)
        write_csv(p, header, rows)
        return self._record(p)

    def json(self, name, obj) -> Path:
        p = self.path(name)
        write_json(p, obj)
        return self._record(p)

    def edges(self, name, g: Graph) -> Path:
        p = self.path(name)
        write_edge_list(g, p)
        return self._record(p)

    def _record(self, p: Path) -> Path:
        try:
            key = p.relative_to(self.root)
        except ValueError:
            key = p
        self.manifest.outputs[os.fspath(key)] = file_digest(p)
        return p

    def finish(self, name: str) -> Path:
        p = self.path(name)
        write_json(p, self.manifest.as_dict())
        return p
