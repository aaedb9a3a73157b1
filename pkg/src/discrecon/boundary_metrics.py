"""Graph distances on disc maps and the distance-level checks built on them."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import PreconditionUnmet
from .planar_map import DiscMap, MapKind, chords, curvature_report


# ---------------------------------------------------------------------------
# types
# ---------------------------------------------------------------------------

class DistanceMatrix:
    """Symmetric integer matrix of distances between boundary positions."""

    __slots__ = ("d", "kind")

    def __init__(self, d, kind: MapKind | str | None = None):
        arr = np.array(d, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("distance matrix must be square")
        arr.setflags(write=False)
        self.d = arr
        self.kind = MapKind(kind) if kind is not None else None

    @property
    def n(self) -> int:
        return self.d.shape[0]

    def __getitem__(self, ij):
        i, j = ij
        return int(self.d[i, j])

    def __eq__(self, other):
        if not isinstance(other, DistanceMatrix):
            return NotImplemented
        return self.d.shape == other.d.shape and bool(np.array_equal(self.d, other.d))

    def __hash__(self):
        return hash(self.d.tobytes())

    def __repr__(self):
        return f"DistanceMatrix(n={self.n})"

    def rows(self) -> list[list[int]]:
        return self.d.tolist()

    def with_entry(self, i: int, j: int, value: int) -> "DistanceMatrix":
        """Copy with ``d(i, j) = d(j, i) = value``."""
        arr = self.d.copy()
        arr[i, j] = arr[j, i] = value
        return DistanceMatrix(arr, self.kind)

    def submatrix(self, positions: Sequence[int]) -> "DistanceMatrix":
        idx = np.asarray(positions, dtype=np.int64)
        return DistanceMatrix(self.d[np.ix_(idx, idx)], self.kind)

    def to_dict(self) -> dict:
        kind = self.kind.value if self.kind is not None else "tri"
        return {"n": self.n, "kind": kind, "d": self.rows()}


@dataclass(frozen=True)
class DistanceField:
    source: int
    values: tuple[int, ...]


@dataclass(frozen=True)
class Violation:
    rule: str
    where: tuple
    detail: str = ""

    def __str__(self):
        return f"{self.rule} at {self.where}: {self.detail}"


# ---------------------------------------------------------------------------
# distances
# ---------------------------------------------------------------------------

def bfs(adj: Sequence[Sequence[int]], source: int) -> list[int]:
    """Unweighted distances from ``source``; -1 for unreachable vertices."""
    dist = [-1] * len(adj)
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        dv = dist[v] + 1
        for u in adj[v]:
            if dist[u] < 0:
                dist[u] = dv
                queue.append(u)
    return dist


def distance_field(m: DiscMap, source: int) -> DistanceField:
    return DistanceField(source, tuple(bfs(m.rotation, source)))


def all_distances(m: DiscMap) -> np.ndarray:
    """V x V distance array (one breadth-first search per vertex)."""
    return np.array([bfs(m.rotation, v) for v in range(m.vertex_count)], dtype=np.int64)


def boundary_distances(m: DiscMap) -> DistanceMatrix:
    rows = []
    for v in m.boundary:
        dist = bfs(m.rotation, v)
        rows.append([dist[u] for u in m.boundary])
    kind = MapKind.QUADRANGULATION if m.kind is MapKind.QUADRANGULATION else MapKind.TRIANGULATION
    if m.kind is MapKind.MIXED:
        kind = MapKind.MIXED
    return DistanceMatrix(rows, kind)


def field_violations(adj: Sequence[Sequence[int]], values: Sequence[int]) -> list[tuple[int, int]]:
    """Vertices breaking the 1-Lipschitz or descent property of a distance field."""
    bad = []
    for v, nbrs in enumerate(adj):
        fv = values[v]
        for u in nbrs:
            if abs(values[u] - fv) > 1:
                bad.append((v, u))
        if fv > 0 and not any(values[u] == fv - 1 for u in nbrs):
            bad.append((v, v))
    return bad


# ---------------------------------------------------------------------------
# matrix validation
# ---------------------------------------------------------------------------

def validate_matrix(D: DistanceMatrix, kind: MapKind | str | None = None) -> list[Violation]:
    """Every way in which ``D`` fails to be a boundary distance matrix.

    Checks symmetry, zero diagonal, positivity off the diagonal, unit
    distance between cyclic neighbours, the triangle inequality and, for
    quadrangulations, bipartite parity.
    """
    kind = MapKind(kind) if kind is not None else D.kind
    d = D.d
    n = D.n
    out: list[Violation] = []
    if n < 3:
        out.append(Violation("size", (n,), "boundary needs at least 3 vertices"))
        return out
    for i, j in zip(*np.nonzero(d != d.T)):
        if i < j:
            out.append(Violation("symmetry", (int(i), int(j)), f"{d[i, j]} != {d[j, i]}"))
    for i in np.nonzero(np.diag(d) != 0)[0]:
        out.append(Violation("diagonal", (int(i),), f"d = {d[i, i]}"))
    off = d + np.eye(n, dtype=np.int64)
    for i, j in zip(*np.nonzero(off <= 0)):
        if i < j:
            out.append(Violation("positivity", (int(i), int(j)), f"d = {d[i, j]}"))
    for i in range(n):
        j = (i + 1) % n
        if d[i, j] != 1:
            out.append(Violation("adjacent", (i, j), f"d = {d[i, j]}, expected 1"))
    for k in range(n):
        via = d[:, k, None] + d[None, k, :]
        for i, j in zip(*np.nonzero(d > via)):
            if i < j:
                out.append(
                    Violation(
                        "triangle",
                        (int(i), k, int(j)),
                        f"d({i},{j})={d[i, j]} > d({i},{k})+d({k},{j})={via[i, j]}",
                    )
                )
    if kind is MapKind.QUADRANGULATION:
        if n % 2:
            out.append(Violation("parity", (n,), "odd boundary length"))
        idx = np.arange(n)
        gap = (idx[None, :] - idx[:, None]) % 2
        for i, j in zip(*np.nonzero((d - gap) % 2 != 0)):
            if i < j:
                out.append(Violation("parity", (int(i), int(j)), f"d = {d[i, j]}"))
    return out


# ---------------------------------------------------------------------------
# inequality checks
# ---------------------------------------------------------------------------

def _require_chordless(m: DiscMap) -> None:
    if chords(m):
        raise PreconditionUnmet("map has chords")


def chordless_diameter_check(m: DiscMap) -> bool:
    """Diameter bound on the boundary of a chordless admissible map.

    Triangulations (n > 3): every boundary distance is at most n//2 - 1.
    Quadrangulations (n >= 6): d(x, y) <= n//2 - [deg x > 2] - [deg y > 2].
    """
    _require_chordless(m)
    D = boundary_distances(m).d
    n = m.n
    if m.kind is MapKind.QUADRANGULATION:
        if n < 6:
            raise PreconditionUnmet("quadrangulation bound needs n >= 6")
        big = np.array([m.degree(v) > 2 for v in m.boundary], dtype=np.int64)
        bound = n // 2 - big[:, None] - big[None, :]
        np.fill_diagonal(bound, 0)
        return bool((D <= bound).all())
    if n <= 3:
        raise PreconditionUnmet("triangulation bound needs n > 3")
    return int(D.max()) <= n // 2 - 1


def equidistant_triangle_scan(m: DiscMap) -> tuple[tuple[int, ...], int] | None:
    """First (triangle, vertex) pair with the vertex equidistant from all corners."""
    dist = all_distances(m)
    for f in m.faces:
        if len(f) != 3:
            continue
        a, b, c = f
        eq = (dist[a] == dist[b]) & (dist[b] == dist[c])
        eq[[a, b, c]] = False
        hits = np.nonzero(eq)[0]
        if hits.size:
            return f, int(hits[0])
    return None


# ---------------------------------------------------------------------------
# meridians
# ---------------------------------------------------------------------------

Element = int | tuple[int, int]


@dataclass(frozen=True)
class Meridian:
    """Alternating vertex / edge elements; edges are sorted id pairs."""

    elements: tuple[Element, ...]

    def vertices_of(self, i: int) -> tuple[int, ...]:
        e = self.elements[i]
        return e if isinstance(e, tuple) else (e,)


def _link(m: DiscMap, x: int) -> list[Element]:
    """Neighbours of ``x`` interleaved with the edges joining consecutive ones."""
    rot = m.rotation[x]
    d = len(rot)
    out: list[Element] = []
    last = d if not m.is_boundary(x) else d - 1
    for i in range(d):
        out.append(rot[i])
        if i < last:
            a, b = rot[i], rot[(i + 1) % d]
            out.append((min(a, b), max(a, b)))
    return out


def _is_boundary_element(m: DiscMap, e: Element) -> bool:
    if isinstance(e, tuple):
        u, v = e
        if not (m.is_boundary(u) and m.is_boundary(v)):
            return False
        return abs(m.boundary_position(u) - m.boundary_position(v)) in (1, m.n - 1)
    return m.is_boundary(e)


def _apexes(m: DiscMap, u: int, v: int) -> list[int]:
    out = []
    for a, b in ((u, v), (v, u)):
        f = m.face_left_of(a, b)
        if f is not None:
            out.append(next(x for x in f if x not in (a, b)))
    return out


def _continue(m: DiscMap, seq: list[Element]) -> Meridian:
    limit = 2 * (m.vertex_count + len(m.edges)) + 2
    while not _is_boundary_element(m, seq[-1]):
        if len(seq) > limit:
            raise ValueError("meridian does not reach the boundary")
        prev, cur = seq[-2], seq[-1]
        if isinstance(cur, tuple):
            nxt = next(a for a in _apexes(m, *cur) if a != prev)
        else:
            link = _link(m, cur)
            nxt = link[(link.index(prev) + len(link) // 2) % len(link)]
        seq.append(nxt)
    return Meridian(tuple(seq))


def meridian_enumerate(m: DiscMap, start: Element) -> list[Meridian]:
    """Meridians leaving the boundary at ``start`` (a boundary vertex or edge).

    From a vertex there is one meridian per element of its link other than
    its two boundary neighbours; from an edge the only one enters the face
    on that edge.
    """
    if m.kind is not MapKind.TRIANGULATION:
        raise PreconditionUnmet("meridians are defined for triangulations")
    if isinstance(start, tuple):
        u, v = sorted(start)
        if not _is_boundary_element(m, (u, v)):
            raise ValueError(f"{start} is not a boundary edge")
        (apex,) = _apexes(m, u, v)
        return [_continue(m, [(u, v), apex])]
    if not m.is_boundary(start):
        raise ValueError(f"{start} is not a boundary vertex")
    link = _link(m, start)
    return [_continue(m, [start, e]) for e in link[1:-1]]


def following_path_check(m: DiscMap, mer: Meridian, dist: np.ndarray | None = None) -> bool:
    """Every path following ``mer`` is a shortest path, and any other path of
    the same length leaves its start through one of the two vertices a
    following path could use."""
    if dist is None:
        dist = all_distances(m)
    r = len(mer.elements)
    for i in range(r):
        if isinstance(mer.elements[i], tuple):
            continue
        v0 = mer.elements[i]
        for step in (1, -1):
            # state: vertex at the current step -> set of second-step vertices seen
            states: dict[int, set[int | None]] = {v0: {None}}
            j = 0
            while 0 <= i + step * (j + 1) < r:
                j += 1
                nxt: dict[int, set[int | None]] = {}
                for u in mer.vertices_of(i + step * j):
                    for p, seconds in states.items():
                        if m.has_edge(p, u):
                            tag = {u} if j == 2 else seconds
                            nxt.setdefault(u, set()).update(tag)
                if not nxt:
                    break
                states = nxt
                for v, seconds in states.items():
                    if dist[v0, v] != j:
                        return False
                    if j < 2:
                        continue
                    first = {
                        w for w in m.neighbors(v0) if dist[w, v] == j - 1
                    }
                    e1 = mer.vertices_of(i + step)
                    for v2 in seconds:
                        allowed = {w for w in e1 if m.has_edge(v0, w) and m.has_edge(w, v2)}
                        if not first <= allowed:
                            return False
    return True


def _shortest_path_counts(adj: Sequence[Sequence[int]], source: int) -> tuple[list[int], list[int]]:
    dist = [-1] * len(adj)
    count = [0] * len(adj)
    dist[source], count[source] = 0, 1
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if dist[v] < 0:
                dist[v] = dist[u] + 1
                queue.append(v)
            if dist[v] == dist[u] + 1:
                count[v] += count[u]
    return dist, count


def boundary_geodesic_violations(m: DiscMap, min_degree: int | None = None) -> list[tuple[int, int]]:
    """Boundary arcs ``(a, k)`` (positions a..a+k) whose interior vertices all
    have degree >= ``min_degree`` yet the arc is not the unique shortest path
    between its ends. The default threshold is 4 for triangulations and 3
    for quadrangulations."""
    if min_degree is None:
        min_degree = 3 if m.kind is MapKind.QUADRANGULATION else 4
    n = m.n
    adj = m.adjacency()
    out = []
    for a in range(n):
        dist, count = _shortest_path_counts(adj, m.boundary[a])
        for k in range(2, n):
            if m.degree(m.boundary[(a + k - 1) % n]) < min_degree:
                break
            b = m.boundary[(a + k) % n]
            if dist[b] != k or count[b] != 1:
                out.append((a, k))
    return out


def four_point_check(D: DistanceMatrix, both_pairings: bool = False) -> list[tuple[int, int, int, int]]:
    """Quadruples of positions ``a < b < c < e`` breaking the crossing bound
    ``d(a,b) + d(c,e) <= d(a,c) + d(b,e)``.

    With ``both_pairings`` the other pair of opposite sides is checked too,
    ``d(b,c) + d(e,a) <= d(a,c) + d(b,e)``. Both hold for any plane graph
    because the two diagonals' shortest paths must meet.
    """
    d = D.d
    n = D.n
    out = []
    for a in range(n):
        for c in range(a + 2, n - 1):
            bs = np.arange(a + 1, c)
            es = np.arange(c + 1, n)
            diag = d[a, c] + d[np.ix_(bs, es)]
            bad = (d[a, bs][:, None] + d[c, es][None, :]) > diag
            if both_pairings:
                bad |= (d[bs, c][:, None] + d[es, a][None, :]) > diag
            for bi, ei in zip(*np.nonzero(bad)):
                out.append((a, int(bs[bi]), c, int(es[ei])))
    return sorted(out)


@dataclass(frozen=True)
class LayerCounts:
    n: int
    m: int
    k: int
    c: int
    average_degree: Fraction = field(default=Fraction(0))

    def bound(self, d: Fraction) -> Fraction:
        return (d - 5) * self.m + self.k + self.c + 5 + (1 if self.m >= 2 else 0)


def boundary_faces(m: DiscMap) -> list[tuple[int, ...]]:
    """Boundary faces in cyclic order (one per boundary edge)."""
    return [m.face_left_of(u, v) for u, v in m.boundary_edges()]


def layer_counts(m: DiscMap) -> LayerCounts:
    """Count m (internal vertices on a boundary face), k (boundary-incident
    edges on no boundary face) and c (Cleveland vertices)."""
    bfaces = boundary_faces(m)
    n = m.n
    on_faces: dict[int, list[int]] = {}
    for idx, f in enumerate(bfaces):
        for v in f:
            if not m.is_boundary(v):
                on_faces.setdefault(v, []).append(idx)
    face_edges = set()
    for f in bfaces:
        for a, b in zip(f, f[1:] + f[:1]):
            face_edges.add((min(a, b), max(a, b)))
    k = sum(
        1
        for e in m.edges
        if (m.is_boundary(e[0]) or m.is_boundary(e[1])) and e not in face_edges
    )
    c = 0
    for v, idxs in on_faces.items():
        if len(idxs) == 2:
            gap = (idxs[1] - idxs[0]) % n
            if gap not in (1, n - 1):
                c += 1
    internal = m.internal_vertices
    avg = Fraction(sum(m.degree(v) for v in internal), len(internal)) if internal else Fraction(0)
    return LayerCounts(n=n, m=len(on_faces), k=k, c=c, average_degree=avg)


def layer_inequality_check(m: DiscMap, d_avg: Fraction | int | str = 6) -> bool:
    """``n >= (d-5) m + k + c + 5 + [m >= 2]`` for a chordless triangulation."""
    _require_chordless(m)
    if m.kind is not MapKind.TRIANGULATION:
        raise PreconditionUnmet("layer inequality is stated for triangulations")
    d_avg = Fraction(d_avg)
    counts = layer_counts(m)
    if not m.internal_vertices:
        raise PreconditionUnmet("map has no internal vertices")
    if counts.average_degree < d_avg:
        raise PreconditionUnmet(
            f"average internal degree {counts.average_degree} is below {d_avg}"
        )
    return counts.n >= counts.bound(d_avg)


@dataclass(frozen=True)
class QuadEdgeCounts:
    n: int
    e_circ: int
    inner_boundary: int
    inner_vertices: int


def quad_edge_counts(m: DiscMap) -> QuadEdgeCounts:
    """e° and the multiplicity-counted boundary length of the inner part."""
    e_circ = sum(1 for u, v in m.edges if m.is_boundary(u) != m.is_boundary(v))
    inner = set(m.internal_vertices)
    inner_edges = [e for e in m.edges if e[0] in inner and e[1] in inner]
    sides = {e: 0 for e in inner_edges}
    for f in m.faces:
        if all(v in inner for v in f):
            for a, b in zip(f, f[1:] + f[:1]):
                sides[(min(a, b), max(a, b))] += 1
    length = sum(2 - s for s in sides.values())
    return QuadEdgeCounts(m.n, e_circ, length, len(inner))


def quad_edge_bounds_check(m: DiscMap) -> bool:
    """``e° <= n - 4`` and inner boundary length ``<= n - 8``."""
    _require_chordless(m)
    if m.kind is not MapKind.QUADRANGULATION:
        raise PreconditionUnmet("edge bounds are stated for quadrangulations")
    if not m.internal_vertices:
        raise PreconditionUnmet("map has no internal vertices")
    if not curvature_report(m).all_admissible:
        raise PreconditionUnmet("internal degree below 4")
    c = quad_edge_counts(m)
    return c.e_circ <= c.n - 4 and c.inner_boundary <= c.n - 8


def mixed_boundary_bound_check(m: DiscMap) -> bool:
    """An admissible tri/quad map with an internal vertex has n >= 6."""
    if not m.internal_vertices:
        raise PreconditionUnmet("map has no internal vertices")
    if not curvature_report(m, MapKind.MIXED).all_admissible:
        raise PreconditionUnmet("some internal vertex has 2t + 3q < 12")
    return m.n >= 6
