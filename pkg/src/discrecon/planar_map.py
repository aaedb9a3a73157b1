"""Disc maps: plane graphs with a simple boundary cycle and faces of size 3 or 4.

A :class:`DiscMap` is built from its face list; the rotation system (cyclic
counterclockwise order of neighbours around every vertex) is derived and
cached. Maps are immutable, so every surgery below returns a new map.
"""

from __future__ import annotations

import enum
import json
from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import (
    BadFaceSize,
    BuildError,
    IncompatibleGluing,
    InconsistentOrientation,
    NonSimpleBoundary,
    NotAChord,
    NotADisc,
)

Face = tuple[int, ...]
Edge = tuple[int, int]


class MapKind(str, enum.Enum):
    TRIANGULATION = "tri"
    QUADRANGULATION = "quad"
    MIXED = "mixed"

    @classmethod
    def of_faces(cls, faces: Iterable[Sequence[int]]) -> "MapKind":
        sizes = {len(f) for f in faces}
        if sizes == {3}:
            return cls.TRIANGULATION
        if sizes == {4}:
            return cls.QUADRANGULATION
        return cls.MIXED

    def admits(self, sizes: set[int]) -> bool:
        if self is MapKind.TRIANGULATION:
            return sizes <= {3}
        if self is MapKind.QUADRANGULATION:
            return sizes <= {4}
        return sizes <= {3, 4}


def _edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def _rotate_min(face: Sequence[int]) -> Face:
    i = min(range(len(face)), key=face.__getitem__)
    return tuple(face[i:]) + tuple(face[:i])


class DiscMap:
    """An immutable disc map. Use :func:`build_from_faces` to construct one."""

    __slots__ = (
        "vertex_count",
        "boundary",
        "faces",
        "kind",
        "rotation",
        "_pos",
        "_edges",
        "_face_index",
    )

    def __init__(self, vertex_count, boundary, faces, kind, rotation, edges):
        self.vertex_count: int = vertex_count
        self.boundary: tuple[int, ...] = boundary
        self.faces: tuple[Face, ...] = faces
        self.kind: MapKind = kind
        self.rotation: tuple[tuple[int, ...], ...] = rotation
        self._edges: frozenset[Edge] = edges
        self._pos = {v: i for i, v in enumerate(boundary)}
        index: dict[tuple[int, int], int] = {}
        for fi, f in enumerate(faces):
            for a, b in zip(f, f[1:] + f[:1]):
                index[(a, b)] = fi
        self._face_index = index

    # -- basic queries -----------------------------------------------------
    @property
    def n(self) -> int:
        return len(self.boundary)

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    def is_boundary(self, v: int) -> bool:
        return v in self._pos

    def boundary_position(self, v: int) -> int:
        return self._pos[v]

    @property
    def internal_vertices(self) -> list[int]:
        return [v for v in range(self.vertex_count) if v not in self._pos]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.rotation[v]

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self._edges

    def face_left_of(self, u: int, v: int) -> Face | None:
        """The face containing the dart ``u -> v``, or None outside the disc."""
        fi = self._face_index.get((u, v))
        return None if fi is None else self.faces[fi]

    def boundary_edges(self) -> list[Edge]:
        b = self.boundary
        return [(b[i], b[(i + 1) % len(b)]) for i in range(len(b))]

    def adjacency(self) -> list[list[int]]:
        return [list(r) for r in self.rotation]

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "vertex_count": self.vertex_count,
            "boundary": list(self.boundary),
            "faces": [list(f) for f in self.faces],
        }

    def __eq__(self, other):
        if not isinstance(other, DiscMap):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self.boundary == other.boundary
            and sorted(self.faces) == sorted(other.faces)
        )

    def __hash__(self):
        return hash((self.vertex_count, self.boundary, tuple(sorted(self.faces))))

    def __repr__(self):
        return (
            f"DiscMap(kind={self.kind.value}, V={self.vertex_count}, "
            f"n={self.n}, F={len(self.faces)})"
        )


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def _orient_faces(faces: list[list[int]]) -> list[list[int]]:
    """Flip faces so that every shared edge is used in opposite directions."""
    by_edge: dict[Edge, list[int]] = defaultdict(list)
    for fi, f in enumerate(faces):
        for a, b in zip(f, f[1:] + f[:1]):
            by_edge[_edge(a, b)].append(fi)
    for e, fs in by_edge.items():
        if len(fs) > 2:
            raise NotADisc(f"edge {e} lies on {len(fs)} faces")

    def direction(fi: int, e: Edge) -> int:
        f = faces[fi]
        for a, b in zip(f, f[1:] + f[:1]):
            if (a, b) == e:
                return 1
            if (b, a) == e:
                return -1
        raise AssertionError

    flipped = [None] * len(faces)
    flipped[0] = False
    queue = deque([0])
    while queue:
        fi = queue.popleft()
        f = faces[fi]
        for a, b in zip(f, f[1:] + f[:1]):
            e = _edge(a, b)
            for gj in by_edge[e]:
                if gj == fi:
                    continue
                want_flip = (direction(gj, e) == direction(fi, e)) != flipped[fi]
                if flipped[gj] is None:
                    flipped[gj] = want_flip
                    queue.append(gj)
                elif flipped[gj] != want_flip:
                    raise InconsistentOrientation(
                        f"faces {faces[fi]} and {faces[gj]} cannot be oriented consistently"
                    )
    if any(x is None for x in flipped):
        raise NotADisc("faces do not form a connected surface")
    return [list(reversed(f)) if fl else list(f) for f, fl in zip(faces, flipped)]


def build_from_faces(
    boundary: Sequence[int],
    faces: Iterable[Sequence[int]],
    vertex_count: int | None = None,
    kind: MapKind | str | None = None,
) -> DiscMap:
    """Validate ``faces`` against ``boundary`` and return the disc map.

    Face orientations may be given in either sense; they are normalised so
    that the boundary, read in the given order, is counterclockwise.
    """
    boundary = tuple(int(v) for v in boundary)
    faces = [[int(v) for v in f] for f in faces]
    if len(boundary) < 3 or len(set(boundary)) != len(boundary):
        raise NonSimpleBoundary(f"boundary {list(boundary)} is not a simple cycle")
    if not faces:
        raise NotADisc("no faces")
    for f in faces:
        if len(f) not in (3, 4):
            raise BadFaceSize(f"face {f} has size {len(f)}")
        if len(set(f)) != len(f):
            raise NotADisc(f"face {f} repeats a vertex")
    used = {v for f in faces for v in f} | set(boundary)
    if vertex_count is None:
        vertex_count = max(used) + 1
    if min(used) < 0 or max(used) >= vertex_count:
        raise NotADisc("vertex ids out of range")
    if len({v for f in faces for v in f}) != vertex_count or not used <= set(range(vertex_count)):
        raise NotADisc("every vertex id 0..V-1 must lie on a face")
    sizes = {len(f) for f in faces}
    if kind is not None:
        kind = MapKind(kind)
        if not kind.admits(sizes):
            raise BadFaceSize(f"face sizes {sorted(sizes)} not allowed for kind {kind.value}")
    else:
        kind = MapKind.of_faces(faces)

    faces = _orient_faces(faces)

    darts: set[tuple[int, int]] = set()
    for f in faces:
        for a, b in zip(f, f[1:] + f[:1]):
            if (a, b) in darts:
                raise NotADisc(f"edge {a}-{b} used twice in the same direction")
            darts.add((a, b))
    border = {(a, b) for (a, b) in darts if (b, a) not in darts}
    bdarts = {(boundary[i], boundary[(i + 1) % len(boundary)]) for i in range(len(boundary))}
    rev = {(b, a) for (a, b) in bdarts}
    if border == rev:
        faces = [list(reversed(f)) for f in faces]
        darts = {(b, a) for (a, b) in darts}
        border = bdarts
    if border != bdarts:
        raise NonSimpleBoundary("the unpaired edges of the faces are not the given boundary cycle")

    edges = frozenset(_edge(a, b) for a, b in darts)
    if vertex_count - len(edges) + len(faces) != 1:
        raise NotADisc("Euler characteristic is not 1")

    # rotation system; checks that every vertex link is a single fan or cycle
    succ: list[dict[int, int]] = [dict() for _ in range(vertex_count)]
    for f in faces:
        k = len(f)
        for i in range(k):
            p, v, nx = f[i - 1], f[i], f[(i + 1) % k]
            if nx in succ[v]:
                raise NotADisc(f"vertex {v} is pinched")
            succ[v][nx] = p
    pos = {v: i for i, v in enumerate(boundary)}
    rotation = []
    for v in range(vertex_count):
        s = succ[v]
        if v in pos:
            i = pos[v]
            start, stop = boundary[(i + 1) % len(boundary)], boundary[i - 1]
            order = [start]
            while order[-1] != stop:
                nxt = s.get(order[-1])
                if nxt is None or len(order) > len(s) + 1:
                    raise NotADisc(f"link of boundary vertex {v} is not a path")
                order.append(nxt)
            expected = len(s) + 1
        else:
            start = min(s)
            order = [start]
            while True:
                nxt = s[order[-1]]
                if nxt == start:
                    break
                if len(order) > len(s):
                    raise NotADisc(f"link of vertex {v} is not a cycle")
                order.append(nxt)
            expected = len(s)
        if len(order) != expected or len(set(order)) != len(order):
            raise NotADisc(f"link of vertex {v} is not a single disc")
        rotation.append(tuple(order))

    faces_t = tuple(sorted(_rotate_min(f) for f in faces))
    return DiscMap(vertex_count, boundary, faces_t, kind, tuple(rotation), edges)


def boundary_from_faces(faces: Iterable[Sequence[int]], start: int | None = None) -> list[int]:
    """Read off the boundary cycle of a consistently oriented face list."""
    faces = [list(f) for f in faces]
    darts = {(a, b) for f in faces for a, b in zip(f, f[1:] + f[:1])}
    nxt: dict[int, int] = {}
    for a, b in darts:
        if (b, a) not in darts:
            if a in nxt:
                raise NonSimpleBoundary(f"boundary passes twice through {a}")
            nxt[a] = b
    if not nxt:
        raise NotADisc("faces have no boundary")
    if start is None or start not in nxt:
        start = min(nxt)
    cycle = [start]
    while nxt[cycle[-1]] != start:
        cycle.append(nxt[cycle[-1]])
        if len(cycle) > len(nxt):
            raise NonSimpleBoundary("boundary darts do not close up")
    if len(cycle) != len(nxt):
        raise NonSimpleBoundary("boundary has more than one component")
    return cycle


def relabel(faces: Iterable[Sequence[int]], boundary: Sequence[int]):
    """Dense relabelling: boundary -> 0..n-1 in order, remaining ids after.

    Returns ``(new_boundary, new_faces, mapping)``.
    """
    faces = [list(f) for f in faces]
    mapping = {v: i for i, v in enumerate(boundary)}
    rest = sorted({v for f in faces for v in f} - set(mapping))
    for v in rest:
        mapping[v] = len(mapping)
    return (
        list(range(len(boundary))),
        [[mapping[v] for v in f] for f in faces],
        mapping,
    )


def from_faces(faces: Iterable[Sequence[int]], start: int | None = None, kind=None) -> DiscMap:
    """Build a densely relabelled map whose boundary is inferred from ``faces``."""
    faces = _orient_faces([list(f) for f in faces])
    boundary = boundary_from_faces(faces, start)
    b, f, _ = relabel(faces, boundary)
    return build_from_faces(b, f, kind=kind)


def dense(m: DiscMap) -> DiscMap:
    """Relabel so that the boundary occupies ids 0..n-1 in cyclic order."""
    b, f, _ = relabel(m.faces, m.boundary)
    return build_from_faces(b, f, kind=m.kind)


def rotate_boundary(m: DiscMap, shift: int) -> DiscMap:
    """Same map, boundary read starting at position ``shift``; ids made dense."""
    k = shift % m.n
    b = m.boundary[k:] + m.boundary[:k]
    nb, f, _ = relabel(m.faces, b)
    return build_from_faces(nb, f, kind=m.kind)


def reflect(m: DiscMap) -> DiscMap:
    """Mirror image: boundary reversed (keeping position 0), faces reversed."""
    b = (m.boundary[0],) + tuple(reversed(m.boundary[1:]))
    nb, f, _ = relabel([tuple(reversed(x)) for x in m.faces], b)
    return build_from_faces(nb, f, kind=m.kind)


# ---------------------------------------------------------------------------
# curvature
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VertexCurvature:
    vertex: int
    degree: int
    t: int
    q: int
    admissible: bool


@dataclass(frozen=True)
class CurvatureReport:
    vertices: tuple[VertexCurvature, ...]

    @property
    def all_admissible(self) -> bool:
        return all(v.admissible for v in self.vertices)

    @property
    def inadmissible(self) -> list[int]:
        return [v.vertex for v in self.vertices if not v.admissible]


def curvature_report(m: DiscMap, kind: MapKind | str | None = None) -> CurvatureReport:
    """Per internal vertex: degree, triangle count t, quadrangle count q.

    Admissible means degree >= 6 for triangulations, >= 4 for
    quadrangulations and 2t + 3q >= 12 for mixed maps. For pure maps the
    three rules coincide.
    """
    kind = MapKind(kind) if kind is not None else m.kind
    t = [0] * m.vertex_count
    q = [0] * m.vertex_count
    for f in m.faces:
        counter = t if len(f) == 3 else q
        for v in f:
            counter[v] += 1
    out = []
    for v in m.internal_vertices:
        deg = m.degree(v)
        if kind is MapKind.TRIANGULATION:
            ok = deg >= 6 and q[v] == 0
        elif kind is MapKind.QUADRANGULATION:
            ok = deg >= 4 and t[v] == 0
        else:
            ok = 2 * t[v] + 3 * q[v] >= 12
        out.append(VertexCurvature(v, deg, t[v], q[v], ok))
    return CurvatureReport(tuple(out))


# ---------------------------------------------------------------------------
# chords and splitting
# ---------------------------------------------------------------------------

def chords(m: DiscMap) -> list[tuple[int, int]]:
    """Boundary position pairs ``(i, j)``, ``i < j``, joined by an internal edge."""
    n = m.n
    out = []
    for u, v in m.edges:
        if m.is_boundary(u) and m.is_boundary(v):
            i, j = sorted((m.boundary_position(u), m.boundary_position(v)))
            if j - i not in (1, n - 1):
                out.append((i, j))
    return sorted(out)


def _faces_on_side(m: DiscMap, seed_dart: tuple[int, int], cut: Edge) -> list[Face]:
    start = m.face_left_of(*seed_dart)
    seen = {start}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        for a, b in zip(f, f[1:] + f[:1]):
            if _edge(a, b) == cut:
                continue
            g = m.face_left_of(b, a)
            if g is not None and g not in seen:
                seen.add(g)
                queue.append(g)
    return sorted(seen)


def split_along_chord_with_maps(m: DiscMap, chord: tuple[int, int]):
    """Like :func:`split_along_chord` but also returns old->new id maps."""
    n = m.n
    i, j = sorted(chord)
    if not (0 <= i < j < n) or j - i in (1, n - 1):
        raise NotAChord(f"{chord} is not a pair of non-consecutive boundary positions")
    u, v = m.boundary[i], m.boundary[j]
    if not m.has_edge(u, v):
        raise NotAChord(f"boundary vertices at {i} and {j} are not adjacent")
    cut = _edge(u, v)
    parts = []
    for lo, hi in ((i, j), (j, i + n)):
        bnd = [m.boundary[k % n] for k in range(lo, hi + 1)]
        faces = _faces_on_side(m, (bnd[0], bnd[1]), cut)
        nb, nf, mapping = relabel(faces, bnd)
        parts.append((build_from_faces(nb, nf, kind=m.kind), mapping))
    return parts


def split_along_chord(m: DiscMap, chord: tuple[int, int]) -> tuple[DiscMap, DiscMap]:
    """Cut along the chord between boundary positions ``chord``.

    The first part has boundary ``v_i .. v_j``, the second ``v_j .. v_i``.
    """
    (a, _), (b, _) = split_along_chord_with_maps(m, chord)
    return a, b


# ---------------------------------------------------------------------------
# gluing
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Identification:
    """Glue ``path_a`` of part ``a`` to ``path_b`` of part ``b``.

    Both paths list consecutive boundary vertices in the counterclockwise
    order of their own part; they are identified in opposite directions,
    i.e. ``path_a[t]`` with ``path_b[-1 - t]``.
    """

    a: int
    path_a: tuple[int, ...]
    b: int
    path_b: tuple[int, ...]


def _is_boundary_path(m: DiscMap, path: Sequence[int]) -> bool:
    if len(path) < 2 or any(not m.is_boundary(v) for v in path):
        return False
    n = m.n
    return all(
        (m.boundary_position(y) - m.boundary_position(x)) % n == 1
        for x, y in zip(path, path[1:])
    )


def glue_maps(parts: Sequence[DiscMap], plan: Sequence[Identification]) -> DiscMap:
    """Glue disc maps along boundary paths and return the dense result.

    The boundary of the result starts at the first boundary vertex of
    ``parts[0]`` that is still on the boundary.
    """
    parent: dict[tuple[int, int], tuple[int, int]] = {}

    def find(x):
        while parent.get(x, x) != x:
            parent[x] = parent.get(parent[x], parent[x])
            x = parent[x]
        return x

    def union(x, y):
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for step in plan:
        pa, pb = parts[step.a], parts[step.b]
        if len(step.path_a) != len(step.path_b):
            raise IncompatibleGluing("glued paths have different lengths")
        if not _is_boundary_path(pa, step.path_a) or not _is_boundary_path(pb, step.path_b):
            raise IncompatibleGluing("glued paths must be counterclockwise boundary paths")
        for x, y in zip(step.path_a, reversed(step.path_b)):
            union((step.a, x), (step.b, y))

    ids: dict[tuple[int, int], int] = {}

    def gid(x):
        r = find(x)
        if r not in ids:
            ids[r] = len(ids)
        return ids[r]

    faces = [[gid((pi, v)) for v in f] for pi, p in enumerate(parts) for f in p.faces]
    try:
        darts = {(a, b) for f in faces for a, b in zip(f, f[1:] + f[:1])}
        unpaired = {a for (a, b) in darts if (b, a) not in darts}
        start = next(gid((0, v)) for v in parts[0].boundary if gid((0, v)) in unpaired)
        boundary = boundary_from_faces(faces, start)
        nb, nf, _ = relabel(faces, boundary)
        kinds = {p.kind for p in parts}
        kind = kinds.pop() if len(kinds) == 1 else MapKind.MIXED
        return build_from_faces(nb, nf, kind=kind)
    except (BuildError, StopIteration) as exc:
        raise IncompatibleGluing(f"gluing does not produce a disc: {exc}") from exc


# ---------------------------------------------------------------------------
# canonical codes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CanonicalCode:
    code: bytes
    labeled_boundary: bool


def _bfs_labels(m: DiscMap, pos: int, mirrored: bool) -> dict[int, int]:
    n = m.n
    start = m.boundary[pos]
    step = -1 if mirrored else 1
    label = {start: 0}
    order = [start]
    ref = {start: m.boundary[(pos + step) % n]}
    k = 0
    while k < len(order):
        v = order[k]
        k += 1
        rot = m.rotation[v][::-1] if mirrored else m.rotation[v]
        r = rot.index(ref[v])
        for u in rot[r:] + rot[:r]:
            if u not in label:
                label[u] = len(label)
                order.append(u)
                ref[u] = v
    return label


def _code_tuple(m: DiscMap, pos: int, mirrored: bool):
    label = _bfs_labels(m, pos, mirrored)
    faces = []
    for f in m.faces:
        g = [label[v] for v in (reversed(f) if mirrored else f)]
        faces.append(_rotate_min(g))
    return (m.vertex_count, m.n, tuple(sorted(faces)))


def canonical_code(m: DiscMap, labeled: bool = True) -> CanonicalCode:
    """Isomorphism invariant of ``m``.

    Labeled mode fixes boundary position 0 and the orientation; unlabeled
    mode takes the minimum over all boundary rotations and both reflections.
    """
    if labeled:
        best = _code_tuple(m, 0, False)
    else:
        best = min(
            _code_tuple(m, i, mirrored)
            for i in range(m.n)
            for mirrored in (False, True)
        )
    payload = json.dumps([best[0], best[1], [list(f) for f in best[2]]], separators=(",", ":"))
    return CanonicalCode(payload.encode(), labeled)


def canonical_rotation(m: DiscMap) -> DiscMap:
    """Relabel ``m`` canonically: the boundary is rotated to the position with
    the least labeled code and internal vertices are numbered in the order
    that code visits them. Maps that are isomorphic as boundary-labelled maps
    come out equal."""
    best = min(range(m.n), key=lambda i: _code_tuple(m, i, False))
    b = m.boundary[best:] + m.boundary[:best]
    label = _bfs_labels(m, best, False)
    ids = {v: i for i, v in enumerate(b)}
    for v in sorted((v for v in label if v not in ids), key=label.__getitem__):
        ids[v] = len(ids)
    faces = [[ids[v] for v in f] for f in m.faces]
    return build_from_faces(range(m.n), faces, vertex_count=m.vertex_count, kind=m.kind)
