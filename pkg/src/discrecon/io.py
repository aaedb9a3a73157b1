"""JSON file formats: ``.dmap`` for maps, ``.dist`` for boundary matrices."""

from __future__ import annotations

import json
from pathlib import Path

from .boundary_metrics import DistanceMatrix
from .errors import BuildError
from .planar_map import DiscMap, MapKind, build_from_faces


class FormatError(ValueError):
    """A file could not be parsed into the expected structure."""


def map_to_json(m: DiscMap) -> str:
    return json.dumps(m.to_dict(), indent=1) + "\n"


def map_from_dict(data: dict) -> DiscMap:
    try:
        return build_from_faces(
            data["boundary"],
            data["faces"],
            vertex_count=data.get("vertex_count"),
            kind=data.get("kind"),
        )
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad map record: {exc}") from exc
    except BuildError as exc:
        raise FormatError(f"map record is not a disc map: {exc}") from exc


def matrix_to_json(D: DistanceMatrix) -> str:
    # one row per line keeps the files diffable
    rows = ",\n  ".join(json.dumps(r) for r in D.rows())
    kind = D.kind.value if D.kind is not None else "tri"
    return f'{{"n": {D.n}, "kind": "{kind}", "d": [\n  {rows}\n]}}\n'


def matrix_from_dict(data: dict) -> DistanceMatrix:
    try:
        d = data["d"]
        n = int(data.get("n", len(d)))
        kind = MapKind(data.get("kind", "tri"))
        D = DistanceMatrix(d, kind)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad distance record: {exc}") from exc
    if D.n != n:
        raise FormatError(f"declared n={n} but matrix has {D.n} rows")
    return D


def _load(path) -> dict:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from exc


def read_map(path) -> DiscMap:
    return map_from_dict(_load(path))


def write_map(m: DiscMap, path) -> None:
    Path(path).write_text(map_to_json(m), encoding="utf-8")


def read_matrix(path) -> DistanceMatrix:
    return matrix_from_dict(_load(path))


def write_matrix(D: DistanceMatrix, path) -> None:
    Path(path).write_text(matrix_to_json(D), encoding="utf-8")


def fixture_path(name: str):
    """Path of a checked-in fixture file shipped with the package."""
    from importlib.resources import files

    return files("discrecon") / "fixtures" / name
