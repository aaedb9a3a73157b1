"""Reconstruction traces and the subproblem driver shared by both reconstructors.

A reconstruction works on subproblems: a distance matrix together with the
global vertex ids of its boundary positions. Each reduction emits the faces
it has identified and hands back smaller subproblems. The trace records all
of this, so replaying it (:func:`reassemble`) rebuilds the map.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .boundary_metrics import DistanceMatrix, boundary_distances, validate_matrix
from .errors import BuildError, MalformedTrace, NotRealizable
from .planar_map import DiscMap, MapKind, build_from_faces, curvature_report


@dataclass
class TraceNode:
    config: dict
    labels: list[int]
    faces: list[list[int]] = field(default_factory=list)
    synthesized: list[int] = field(default_factory=list)
    children: list["TraceNode"] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "config": self.config,
            "labels": self.labels,
            "faces": self.faces,
            "synthesized": self.synthesized,
            "children": [c.to_dict() for c in self.children],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TraceNode":
        try:
            return cls(
                config=dict(data["config"]),
                labels=[int(v) for v in data["labels"]],
                faces=[[int(v) for v in f] for f in data.get("faces", [])],
                synthesized=[int(v) for v in data.get("synthesized", [])],
                children=[cls.from_dict(c) for c in data.get("children", [])],
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedTrace(f"bad trace node: {exc}") from exc

    def walk(self):
        stack = [self]
        while stack:
            node = stack.pop()
            yield node
            stack.extend(reversed(node.children))


@dataclass
class ReconstructionTrace:
    kind: MapKind
    n: int
    vertex_count: int
    root: TraceNode

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "n": self.n,
            "vertex_count": self.vertex_count,
            "root": self.root.to_dict(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ReconstructionTrace":
        try:
            return cls(
                MapKind(data["kind"]),
                int(data["n"]),
                int(data["vertex_count"]),
                TraceNode.from_dict(data["root"]),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise MalformedTrace(f"bad trace: {exc}") from exc

    def steps(self) -> list[str]:
        return [node.config["type"] for node in self.root.walk()]


def reassemble(trace: ReconstructionTrace) -> DiscMap:
    """Rebuild the map recorded in ``trace``."""
    root = trace.root
    if root.labels != list(range(trace.n)):
        raise MalformedTrace("root labels must be the boundary positions 0..n-1")
    seen_new: set[int] = set()
    faces = []
    for node in root.walk():
        for v in node.synthesized:
            if v in seen_new or v < trace.n or v >= trace.vertex_count:
                raise MalformedTrace(f"synthesized vertex {v} is out of range or repeated")
            seen_new.add(v)
        for child in node.children:
            if len(set(child.labels)) != len(child.labels):
                raise MalformedTrace("child labels must be injective")
            if len(child.labels) >= len(node.labels) and node.config["type"] != "chord":
                raise MalformedTrace("child subproblem is not smaller than its parent")
        faces.extend(node.faces)
    try:
        return build_from_faces(range(trace.n), faces, vertex_count=trace.vertex_count, kind=trace.kind)
    except BuildError as exc:
        raise MalformedTrace(f"trace does not assemble into a disc: {exc}") from exc


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

@dataclass
class Subproblem:
    d: np.ndarray
    labels: list[int]


@dataclass
class Step:
    """Outcome of reducing one subproblem.

    ``children`` hold matrices whose boundary positions are addressed by
    ``sources``: an int is a position of the parent, ``("new", j)`` the
    j-th vertex synthesized by this step.
    """

    config: dict
    faces: list[list] = field(default_factory=list)
    new_vertices: int = 0
    children: list[tuple[np.ndarray, list]] = field(default_factory=list)


class _Allocator:
    def __init__(self, start: int):
        self.next = start

    def take(self, k: int) -> list[int]:
        out = list(range(self.next, self.next + k))
        self.next += k
        return out


def check_child(d: np.ndarray, kind: MapKind) -> None:
    problems = validate_matrix(DistanceMatrix(d), kind)
    if problems:
        raise NotRealizable(f"derived distances are inconsistent: {problems[0]}")


def drive(
    D: DistanceMatrix,
    kind: MapKind,
    reduce: Callable[[np.ndarray], Step],
) -> tuple[DiscMap, ReconstructionTrace]:
    """Run ``reduce`` on subproblems until all are solved, then verify."""
    problems = validate_matrix(D, kind)
    if problems:
        raise NotRealizable(f"input is not a valid distance matrix: {problems[0]}")
    n = D.n
    alloc = _Allocator(n)
    root = TraceNode(config={}, labels=list(range(n)))
    stack = [(Subproblem(np.array(D.d), list(range(n))), root)]
    while stack:
        sub, node = stack.pop()
        step = reduce(sub.d)
        new = alloc.take(step.new_vertices)
        node.config = step.config
        node.synthesized = new

        def resolve(src):
            if isinstance(src, tuple):
                return new[src[1]]
            return sub.labels[src]

        node.faces = [[resolve(s) for s in f] for f in step.faces]
        for child_d, sources in step.children:
            check_child(child_d, kind)
            child = TraceNode(config={}, labels=[resolve(s) for s in sources])
            node.children.append(child)
        for (child_d, _), child in reversed(list(zip(step.children, node.children))):
            stack.append((Subproblem(child_d, child.labels), child))

    trace = ReconstructionTrace(kind, n, alloc.next, root)
    try:
        result = reassemble(trace)
    except MalformedTrace as exc:
        raise NotRealizable(f"reductions do not assemble into a disc: {exc}") from exc
    report = curvature_report(result, kind)
    if not report.all_admissible:
        raise NotRealizable(f"reassembled map has inadmissible vertices {report.inadmissible}")
    if boundary_distances(result) != D:
        raise NotRealizable("reassembled map does not realise the input distances")
    return result, trace
