"""Instance generators: lattice patches, layered hyperbolic maps, gluings,
Platonic-solid insertions, band insertion and the counterexample fixtures."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .boundary_metrics import DistanceMatrix, bfs
from .errors import BadFace, BadSpec, BuildError
from .planar_map import (
    DiscMap,
    Identification,
    MapKind,
    build_from_faces,
    canonical_rotation,
    from_faces,
    glue_maps,
)

# axial neighbours on the triangular lattice
_TRI_STEPS = ((1, 0), (0, 1), (-1, 1), (-1, 0), (0, -1), (1, -1))


@dataclass(frozen=True)
class PatchSpec:
    kind: str = "tri"
    shape: str = "hex"
    radius: int = 1
    a: int = 1
    b: int = 1
    trim: int = 0
    seed: int = 0


@dataclass(frozen=True)
class LayerSpec:
    kind: str = "tri"
    layers: int = 1
    degrees: tuple[int, ...] = (6,)
    seed: int = 0


def _finish(faces, kind) -> DiscMap:
    return canonical_rotation(from_faces(faces, kind=kind))


def _tri_faces(points: set[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    faces = []
    bases = {(q + dq, r + dr) for q, r in points for dq in (-1, 0) for dr in (-1, 0)}
    for q, r in sorted(bases):
        up = [(q, r), (q + 1, r), (q, r + 1)]
        down = [(q + 1, r), (q + 1, r + 1), (q, r + 1)]
        for tri in (up, down):
            if all(p in points for p in tri):
                faces.append(tri)
    return faces


def _index_faces(faces):
    ids = {p: i for i, p in enumerate(sorted({p for f in faces for p in f}))}
    return [[ids[p] for p in f] for f in faces]


def _trim(faces: list[list[int]], count: int, seed: int, kind) -> list[list[int]]:
    rng = random.Random(seed)
    faces = [list(f) for f in faces]
    for _ in range(count):
        m = from_faces(faces, kind=kind)
        candidates = [m.face_left_of(u, v) for u, v in m.boundary_edges()]
        rng.shuffle(candidates)
        for f in candidates:
            rest = [g for g in m.faces if g != f]
            if not rest:
                continue
            try:
                from_faces(rest, kind=kind)
            except BuildError:
                continue
            faces = [list(g) for g in rest]
            break
        else:
            raise BadSpec("cannot trim further without breaking the disc")
    return faces


def lattice_patch(spec: PatchSpec) -> DiscMap:
    """Flat patch of the triangular or square lattice."""
    if spec.kind == "tri":
        if spec.shape == "hex":
            R = spec.radius
            if R < 1:
                raise BadSpec("radius must be positive")
            pts = {
                (q, r)
                for q in range(-R, R + 1)
                for r in range(-R, R + 1)
                if max(abs(q), abs(r), abs(q + r)) <= R
            }
        elif spec.shape == "parallelogram":
            if spec.a < 1 or spec.b < 1:
                raise BadSpec("dimensions must be positive")
            pts = {(q, r) for q in range(spec.a + 1) for r in range(spec.b + 1)}
        else:
            raise BadSpec(f"unknown triangular shape {spec.shape!r}")
        faces = _index_faces(_tri_faces(pts))
        kind = MapKind.TRIANGULATION
    elif spec.kind == "quad":
        if spec.shape not in ("rectangle", "rect"):
            raise BadSpec(f"unknown quadrangular shape {spec.shape!r}")
        if spec.a < 1 or spec.b < 1:
            raise BadSpec("dimensions must be positive")
        faces = _index_faces([
            [(x, y), (x + 1, y), (x + 1, y + 1), (x, y + 1)]
            for x in range(spec.a)
            for y in range(spec.b)
        ])
        kind = MapKind.QUADRANGULATION
    else:
        raise BadSpec(f"unknown kind {spec.kind!r}")
    if spec.trim:
        faces = _trim(faces, spec.trim, spec.seed, kind)
    return _finish(faces, kind)


# ---------------------------------------------------------------------------
# layered maps
# ---------------------------------------------------------------------------

_SUPPORT = {"tri": {6, 7, 8}, "quad": {4, 5}}


def layered_map(spec: LayerSpec) -> DiscMap:
    """Grow rings around a centre vertex so that every vertex that becomes
    internal reaches a degree drawn from ``spec.degrees``."""
    if spec.kind not in _SUPPORT:
        raise BadSpec(f"unknown kind {spec.kind!r}")
    degrees = tuple(sorted(set(spec.degrees)))
    if not degrees or not set(degrees) <= _SUPPORT[spec.kind]:
        raise BadSpec(f"degrees {spec.degrees} outside {sorted(_SUPPORT[spec.kind])}")
    if spec.layers < 1:
        raise BadSpec("need at least one layer")
    rng = random.Random(spec.seed)

    def sample() -> int:
        return rng.choice(degrees)

    faces: list[list[int]] = []
    deg: dict[int, int] = {}
    counter = iter(range(1 << 62))

    def new() -> int:
        v = next(counter)
        deg[v] = 0
        return v

    def add(face):
        faces.append(face)

    centre = new()
    t0 = sample()
    if spec.kind == "tri":
        ring = [new() for _ in range(t0)]
        for i in range(t0):
            add([centre, ring[i], ring[(i + 1) % t0]])
    else:
        spokes = [new() for _ in range(t0)]
        ring = []
        for i in range(t0):
            x = new()
            add([centre, spokes[i], x, spokes[(i + 1) % t0]])
            ring += [spokes[i], x]
    _recount(faces, deg)

    for _ in range(spec.layers - 1):
        s = [sample() - deg[v] for v in ring]
        if spec.kind == "tri":
            if min(s) < 2:
                raise BadSpec("sampled degree too small for the current boundary")
            ring = _grow_tri(ring, s, new, add)
        else:
            if min(s) < 1:
                raise BadSpec("sampled degree too small for the current boundary")
            ring = _grow_quad(ring, s, new, add)
        _recount(faces, deg)
    kind = MapKind.TRIANGULATION if spec.kind == "tri" else MapKind.QUADRANGULATION
    return _finish(faces, kind)


def _recount(faces, deg):
    nbrs: dict[int, set[int]] = {v: set() for v in deg}
    for f in faces:
        k = len(f)
        for i in range(k):
            nbrs[f[i]].add(f[(i + 1) % k])
            nbrs[f[(i + 1) % k]].add(f[i])
    for v in deg:
        deg[v] = len(nbrs[v])


def _grow_tri(ring, s, new, add):
    n = len(ring)
    shared = [new() for _ in range(n)]
    outer = []
    for i, v in enumerate(ring):
        fan = [shared[i - 1]] + [new() for _ in range(s[i] - 2)] + [shared[i]]
        for a, b in zip(fan, fan[1:]):
            add([v, b, a])
        add([v, ring[(i + 1) % n], shared[i]])
        outer += fan[1:]
    return outer


def _grow_quad(ring, s, new, add):
    n = len(ring)
    spokes = [[new() for _ in range(s[i])] for i in range(n)]
    outer = []
    for i, v in enumerate(ring):
        out = spokes[i]
        outer.append(out[0])
        for a, b in zip(out, out[1:]):
            corner = new()
            add([v, b, corner, a])
            outer += [corner, b]
        add([v, ring[(i + 1) % n], spokes[(i + 1) % n][0], out[-1]])
    return outer


# ---------------------------------------------------------------------------
# gluings
# ---------------------------------------------------------------------------

def glue_along_edge(a: DiscMap, b: DiscMap, edge_a: int, edge_b: int) -> DiscMap:
    """Glue boundary edge ``edge_a`` of ``a`` (positions edge_a, edge_a+1) to
    boundary edge ``edge_b`` of ``b``; the seam becomes a chord."""
    pa = (a.boundary[edge_a % a.n], a.boundary[(edge_a + 1) % a.n])
    pb = (b.boundary[edge_b % b.n], b.boundary[(edge_b + 1) % b.n])
    return glue_maps([a, b], [Identification(0, pa, 1, pb)])


def _icosahedron():
    # T=0, U0..U4 = 1..5, L0..L4 = 6..10, B=11
    U = [1 + i for i in range(5)]
    L = [6 + i for i in range(5)]
    faces = []
    for i in range(5):
        j = (i + 1) % 5
        faces += [[0, U[i], U[j]], [U[i], L[i], U[j]], [U[j], L[i], L[j]], [11, L[j], L[i]]]
    return faces, (0, U[0], U[1])


def _cube():
    faces = [
        [0, 1, 2, 3],
        [0, 4, 5, 1],
        [1, 5, 6, 2],
        [2, 6, 7, 3],
        [3, 7, 4, 0],
        [4, 7, 6, 5],
    ]
    return faces, (0, 1, 2, 3)


def _match_face(m: DiscMap, face: Sequence[int]) -> tuple[int, ...]:
    face = tuple(face)
    for f in m.faces:
        if len(f) == len(face) and set(f) == set(face):
            return f
    raise BadFace(f"{list(face)} is not a face of the map")


def glue_platonic(m: DiscMap, face: Sequence[int]) -> DiscMap:
    """Fill ``face`` with an icosahedron (triangle) or cube (quadrangle) minus
    one face. Boundary distances do not change; the new vertices have degree
    5 (icosahedron) or 3 (cube)."""
    f = _match_face(m, face)
    if len(f) == 3:
        solid, glued = _icosahedron()
    elif len(f) == 4:
        solid, glued = _cube()
    else:
        raise BadFace("face must be a triangle or a quadrangle")
    ids = dict(zip(glued, f))
    nxt = m.vertex_count
    for v in sorted({v for g in solid for v in g}):
        if v not in ids:
            ids[v] = nxt
            nxt += 1
    glued_set = set(glued)
    extra = [[ids[v] for v in g] for g in solid if set(g) != glued_set]
    faces = [list(g) for g in m.faces if g != f] + extra
    return build_from_faces(m.boundary, faces, vertex_count=nxt, kind=m.kind)


def insert_band(m: DiscMap, face: Sequence[int]) -> DiscMap:
    """Line an internal face of size r > 3 with a band of 2r triangles,
    leaving a new r-face inside. Existing distances are unchanged."""
    f = _match_face(m, face)
    r = len(f)
    if r <= 3:
        raise BadFace("band insertion needs a face with more than three sides")
    g = list(range(m.vertex_count, m.vertex_count + r))
    faces = [list(x) for x in m.faces if x != f]
    for i in range(r):
        j = (i + 1) % r
        faces.append([f[i], f[j], g[i]])
        faces.append([f[j], g[j], g[i]])
    faces.append(g)
    return build_from_faces(m.boundary, faces, vertex_count=m.vertex_count + r, kind=MapKind.MIXED)


def triangulate_with_bands(m: DiscMap) -> DiscMap:
    """Triangulate every quadrangle by one band plus a diagonal of the inner face."""
    out = m
    for f in [f for f in m.faces if len(f) == 4]:
        before = out.vertex_count
        out = insert_band(out, f)
        g = list(range(before, before + 4))
        faces = [list(x) for x in out.faces if set(x) != set(g)]
        inner = next(x for x in out.faces if set(x) == set(g))
        faces += [[inner[0], inner[1], inner[2]], [inner[0], inner[2], inner[3]]]
        out = build_from_faces(out.boundary, faces, vertex_count=out.vertex_count, kind=MapKind.MIXED)
    return build_from_faces(out.boundary, out.faces, vertex_count=out.vertex_count, kind=MapKind.TRIANGULATION)


# ---------------------------------------------------------------------------
# counterexample fixtures
# ---------------------------------------------------------------------------

def rhombitrihexagonal_core() -> DiscMap:
    """Hexagon split into six triangles, a square on each hexagon edge and a
    triangle between consecutive squares. Boundary length 12.

    Boundary position 2i is the first outer vertex at hexagon vertex i, so
    edges (2i, 2i+1) lie on triangles and (2i+1, 2i+2) on squares.
    """
    centre = 12
    h = [13 + i for i in range(6)]
    faces = []
    for i in range(6):
        j = (i + 1) % 6
        r, s, r_next = 2 * i, 2 * i + 1, (2 * i + 2) % 12
        faces.append([centre, h[i], h[j]])
        faces.append([h[i], r, s])
        faces.append([h[i], s, r_next, h[j]])
    return build_from_faces(range(12), faces, kind=MapKind.MIXED)


def attach_flap(core: DiscMap, offset: int, start: int = 0) -> DiscMap:
    """Fan two triangles, a quadrangle and two triangles onto the four
    consecutive boundary vertices starting at ``offset``. The result's
    boundary is read from the core's boundary position ``start``."""
    n = core.n
    p = [core.boundary[(offset + t) % n] for t in range(4)]
    a = list(range(core.vertex_count, core.vertex_count + 4))
    faces = [list(f) for f in core.faces] + [
        [p[0], a[0], p[1]],
        [p[1], a[0], a[1]],
        [p[1], a[1], a[2], p[2]],
        [p[2], a[2], a[3]],
        [p[2], a[3], p[3]],
    ]
    return from_faces(faces, start=core.boundary[start % n], kind=MapKind.MIXED)


def mixed_counterexample_pair() -> tuple[DiscMap, DiscMap]:
    """Two non-isomorphic admissible tri/quad maps with equal boundary distances.

    The core's boundary distances depend only on the cyclic gap, so reading
    the second map's boundary one step later lines the two flaps up.
    """
    core = rhombitrihexagonal_core()
    return attach_flap(core, 2), attach_flap(core, 3, start=1)


def nonplanar_graph() -> list[list[int]]:
    """Adjacency of the 10-vertex graph: octagon v0..v7, x = 8 on the paths
    v0-x-v3 and v1-x-v6, y = 9 on the path v7-y-v4."""
    edges = [(i, (i + 1) % 8) for i in range(8)]
    edges += [(0, 8), (8, 3), (1, 8), (8, 6), (7, 9), (9, 4)]
    adj: list[list[int]] = [[] for _ in range(10)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


def nonplanar_metric_fixture() -> DistanceMatrix:
    adj = nonplanar_graph()
    return DistanceMatrix([bfs(adj, v)[:8] for v in range(8)], MapKind.TRIANGULATION)
