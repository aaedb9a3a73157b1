"""Brute-force ground truth: exhaustive enumeration of small disc maps and
realization search for boundary distance matrices.

The search fills the disc one face at a time. It keeps the unfilled part as
a list of regions, each a simple cycle with the unfilled side on the left.
The face on the first dart ``a -> b`` of the first region is chosen in every
possible way (each further corner is a later vertex of the same region or a
fresh internal vertex). Every labeled map therefore has exactly one path
through the search tree.

None of this shares code with the reconstructors; only the map builder and
the BFS distance routine are reused.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field
from typing import Iterator, Sequence

import numpy as np

from .boundary_metrics import DistanceMatrix, boundary_distances
from .errors import BudgetExceeded
from .planar_map import DiscMap, MapKind, build_from_faces, canonical_code, curvature_report

DEFAULT_NODE_CAP = 10**8

_FACE_SIZES = {
    MapKind.TRIANGULATION: (3,),
    MapKind.QUADRANGULATION: (4,),
    MapKind.MIXED: (3, 4),
}


@dataclass(frozen=True)
class EnumerationBudget:
    n: int
    max_internal: int
    kind: MapKind = MapKind.TRIANGULATION
    degree_condition: bool = True
    chordless: bool = False
    dedupe: str = "unlabeled"
    node_cap: int = DEFAULT_NODE_CAP
    face_sizes: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", MapKind(self.kind))
        if self.max_internal < 0:
            raise ValueError("budget must be non-negative")
        if self.kind is MapKind.QUADRANGULATION and (self.n < 4 or self.n % 2):
            raise ValueError("quadrangulations need an even boundary length >= 4")
        if self.n < 3:
            raise ValueError("boundary length must be at least 3")
        if self.dedupe not in ("labeled", "unlabeled"):
            raise ValueError("dedupe must be 'labeled' or 'unlabeled'")

    @property
    def sizes(self) -> tuple[int, ...]:
        return self.face_sizes or _FACE_SIZES[self.kind]


def _admissible(kind: MapKind, t: int, q: int) -> bool:
    if kind is MapKind.TRIANGULATION:
        return t >= 6
    if kind is MapKind.QUADRANGULATION:
        return q >= 4
    return 2 * t + 3 * q >= 12


def _split(walk: list[int]) -> list[tuple[int, ...]]:
    """Break a closed walk into simple cycles, dropping doubled edges."""
    out = []
    stack = [walk]
    while stack:
        w = stack.pop()
        seen: dict[int, int] = {}
        for j, v in enumerate(w):
            if v in seen:
                i = seen[v]
                stack.append(w[i:j])
                stack.append(w[:i] + w[j:])
                break
            seen[v] = j
        else:
            if len(w) >= 3:
                out.append(tuple(w))
    return out


class _Search:
    def __init__(self, b: EnumerationBudget, target: np.ndarray | None):
        self.b = b
        self.n = b.n
        self.target = target
        self.nodes = 0
        vmax = b.n + b.max_internal
        self.vmax = vmax
        self.faces: list[tuple[int, ...]] = []
        self.edges: set[tuple[int, int]] = {
            (min(i, (i + 1) % b.n), max(i, (i + 1) % b.n)) for i in range(b.n)
        }
        self.deg = [2] * b.n + [0] * b.max_internal
        self.tri = [0] * vmax
        self.quad = [0] * vmax
        self.fresh = b.n
        if target is not None:
            big = 10**6
            self.dist = np.full((vmax, vmax), big, dtype=np.int64)
            np.fill_diagonal(self.dist, 0)
            for i in range(b.n):
                j = (i + 1) % b.n
                self.dist[i, j] = self.dist[j, i] = 1
            self._close_distances(list(self.edges))

    # -- pruning helpers -------------------------------------------------
    def _close_distances(self, new_edges):
        d = self.dist
        for u, v in new_edges:
            via = np.minimum(d[:, u][:, None] + 1 + d[v, :][None, :], d[:, v][:, None] + 1 + d[u, :][None, :])
            np.minimum(d, via, out=d)

    def _distance_ok(self) -> bool:
        n = self.n
        return bool((self.dist[:n, :n] >= self.target).all())

    def _curvature_budget_ok(self) -> bool:
        """Necessary condition from the discrete Gauss-Bonnet identity.

        With every internal vertex admissible the boundary must carry total
        turning 6 (triangles) or 4 (quadrangles); boundary degrees only grow.
        """
        kind = self.b.kind
        if not self.b.degree_condition or kind is MapKind.MIXED or self.b.face_sizes:
            return True
        floor = 3 if (kind is MapKind.TRIANGULATION and self.b.chordless and self.n > 3) else 2
        if kind is MapKind.TRIANGULATION:
            total = sum(4 - max(self.deg[v], floor) for v in range(self.n))
            return total >= 6
        total = sum(3 - max(self.deg[v], 2) for v in range(self.n))
        return total >= 4

    # -- search ------------------------------------------------------------
    def run(self, regions: list[tuple[int, ...]]) -> Iterator[list[tuple[int, ...]]]:
        self.nodes += 1
        if self.nodes > self.b.node_cap:
            raise BudgetExceeded(f"search exceeded {self.b.node_cap} nodes")
        if not regions:
            yield list(self.faces)
            return
        region = regions[0]
        rest = regions[1:]
        a, b = region[0], region[1]
        pos = {v: i for i, v in enumerate(region)}
        darts = {(region[i], region[(i + 1) % len(region)]) for i in range(len(region))}
        for size in self.b.sizes:
            for corners in self._corners(region, pos, size - 2, 2, self.fresh):
                face = (a, b) + corners
                yield from self._place(face, region, rest, darts)

    def _corners(self, region, pos, count, lo, fresh) -> Iterator[tuple[int, ...]]:
        """Remaining corners in ccw order: later region vertices or fresh ids."""
        if count == 0:
            yield ()
            return
        for i in range(lo, len(region)):
            for tail in self._corners(region, pos, count - 1, i + 1, fresh):
                yield (region[i],) + tail
        if fresh < self.vmax:
            for tail in self._corners(region, pos, count - 1, lo, fresh + 1):
                yield (fresh,) + tail

    def _place(self, face, region, rest, darts):
        r = len(face)
        new_edges = []
        for i in range(r):
            u, v = face[i], face[(i + 1) % r]
            e = (min(u, v), max(u, v))
            if e in self.edges:
                if (u, v) not in darts:
                    return
            else:
                if self.b.chordless and u < self.n and v < self.n:
                    return
                new_edges.append(e)
        fresh_used = [v for v in face if v >= self.fresh]
        # replace a -> b by a, face[-1], ..., face[2], b
        walk = [region[0]] + list(reversed(face[2:])) + list(region[1:])
        new_regions = _split(walk) + list(rest)
        open_vertices = {v for reg in new_regions for v in reg}
        closed = [v for v in face if v >= self.n and v not in open_vertices]

        # apply
        saved_fresh = self.fresh
        self.fresh += len(fresh_used)
        for u, v in new_edges:
            self.edges.add((u, v))
            self.deg[u] += 1
            self.deg[v] += 1
        for v in face:
            if r == 3:
                self.tri[v] += 1
            else:
                self.quad[v] += 1
        self.faces.append(face)
        saved_dist = None
        ok = True
        if self.b.degree_condition:
            ok = all(_admissible(self.b.kind, self.tri[v], self.quad[v]) for v in closed)
        if ok:
            ok = self._curvature_budget_ok()
        if ok and self.target is not None and new_edges:
            saved_dist = self.dist.copy()
            self._close_distances(new_edges)
            ok = self._distance_ok()
        try:
            if ok:
                yield from self.run(sorted(new_regions, key=len))
        finally:
            self.faces.pop()
            for v in face:
                if r == 3:
                    self.tri[v] -= 1
                else:
                    self.quad[v] -= 1
            for u, v in new_edges:
                self.edges.discard((u, v))
                self.deg[u] -= 1
                self.deg[v] -= 1
            self.fresh = saved_fresh
            if saved_dist is not None:
                self.dist = saved_dist


def _search(b: EnumerationBudget, target: np.ndarray | None) -> Iterator[DiscMap]:
    s = _Search(b, target)
    kind = b.kind
    seen: set[bytes] = set()
    for faces in s.run([tuple(range(b.n))]):
        vcount = max(max(f) for f in faces) + 1
        m = build_from_faces(range(b.n), faces, vertex_count=vcount, kind=kind)
        if b.degree_condition and not curvature_report(m, kind).all_admissible:
            continue
        code = canonical_code(m, labeled=b.dedupe == "labeled").code
        if code in seen:
            continue
        seen.add(code)
        yield m


def enumerate_maps(b: EnumerationBudget) -> Iterator[DiscMap]:
    """One map per isomorphism class (labeled or unlabeled, per ``b.dedupe``)
    with boundary length ``b.n`` and at most ``b.max_internal`` internal
    vertices."""
    return _search(b, None)


def find_realizations(
    D: DistanceMatrix,
    b: EnumerationBudget,
    candidates: Sequence[DiscMap] | None = None,
) -> list[DiscMap]:
    """Maps within the budget whose labeled boundary distances equal ``D``.

    With ``candidates`` the search is replaced by filtering the given maps.
    """
    if D.n != b.n:
        raise ValueError("matrix size and budget boundary length differ")
    if candidates is not None:
        out = []
        for m in candidates:
            if m.n != b.n or len(m.internal_vertices) > b.max_internal:
                continue
            if b.degree_condition and not curvature_report(m, b.kind).all_admissible:
                continue
            if boundary_distances(m) == D:
                out.append(m)
        return out
    labeled = EnumerationBudget(**{**asdict(b), "dedupe": "labeled"})
    return [m for m in _search(labeled, D.d) if boundary_distances(m) == D]


@dataclass
class InjectivityReport:
    kind: str
    n: int
    max_internal: int
    maps: int = 0
    distinct_matrices: int = 0
    reconstructed: int = 0
    collisions: list[list[int]] = field(default_factory=list)
    failures: list[int] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return self.distinct_matrices == self.maps == self.reconstructed

    def to_dict(self) -> dict:
        out = asdict(self)
        out["passed"] = self.passed
        return out


def injectivity_report(b: EnumerationBudget) -> InjectivityReport:
    """Enumerate admissible chordless maps and confirm their boundary
    matrices are pairwise distinct and reconstruct to the same maps."""
    from .quad_reconstruct import reconstruct_quadrangulation
    from .tri_reconstruct import reconstruct_triangulation
    from .errors import NotRealizable

    if b.kind is MapKind.MIXED:
        raise ValueError("injectivity holds only for triangulations and quadrangulations")
    start = time.perf_counter()
    budget = EnumerationBudget(**{**asdict(b), "dedupe": "labeled", "chordless": True, "degree_condition": True})
    recon = reconstruct_triangulation if b.kind is MapKind.TRIANGULATION else reconstruct_quadrangulation
    report = InjectivityReport(b.kind.value, b.n, b.max_internal)
    by_matrix: dict[bytes, int] = {}
    for idx, m in enumerate(enumerate_maps(budget)):
        report.maps += 1
        D = boundary_distances(m)
        key = D.d.tobytes()
        if key in by_matrix:
            report.collisions.append([by_matrix[key], idx])
        else:
            by_matrix[key] = idx
        try:
            r, _ = recon(D)
            ok = canonical_code(r) == canonical_code(m)
        except NotRealizable:
            ok = False
        if ok:
            report.reconstructed += 1
        else:
            report.failures.append(idx)
    report.distinct_matrices = len(by_matrix)
    report.seconds = round(time.perf_counter() - start, 3)
    return report
