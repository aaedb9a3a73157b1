"""Reconstruct a disc triangulation with internal degrees >= 6 from its
boundary distance matrix.

The algorithm repeatedly finds a reducible configuration that is visible in
the distances alone (a chord, a hub vertex seeing five or more boundary
vertices, a vertex fanning four consecutive boundary vertices, or a nice
strip along the boundary), removes it, derives the distances of the smaller
boundary and recurses.
"""

from __future__ import annotations

from dataclasses import dataclass

import networkx as nx
import numpy as np

from .boundary_metrics import DistanceMatrix
from .errors import InconsistentHub, InconsistentWindow, NotRealizable
from .planar_map import DiscMap, MapKind
from .trace import ReconstructionTrace, Step, drive, reassemble  # noqa: F401


@dataclass(frozen=True)
class Chord:
    i: int
    j: int


@dataclass(frozen=True)
class Hub:
    S: tuple[int, ...]


@dataclass(frozen=True)
class FourFan:
    i: int


@dataclass(frozen=True)
class Nice:
    i: int
    k: int


TriConfiguration = Chord | Hub | FourFan | Nice


def _as_array(D) -> np.ndarray:
    return D.d if isinstance(D, DistanceMatrix) else np.asarray(D)


# ---------------------------------------------------------------------------
# detection
# ---------------------------------------------------------------------------

def find_chord(d: np.ndarray) -> Chord | None:
    n = d.shape[0]
    for i in range(n):
        for j in range(i + 2, n):
            if d[i, j] == 1 and not (i == 0 and j == n - 1):
                return Chord(i, j)
    return None


def find_hub(d: np.ndarray) -> Hub | None:
    """A maximal set of >= 5 positions at pairwise distance <= 2."""
    n = d.shape[0]
    g = nx.Graph()
    g.add_nodes_from(range(n))
    ii, jj = np.nonzero(np.triu(d <= 2, 1))
    g.add_edges_from(zip(ii.tolist(), jj.tolist()))
    best = None
    for clique in nx.find_cliques(g):
        if len(clique) >= 5:
            s = tuple(sorted(clique))
            if best is None or s < best:
                best = s
    return Hub(best) if best is not None else None


def find_four_fan(d: np.ndarray) -> FourFan | None:
    n = d.shape[0]
    for i in range(n):
        if d[i, (i + 3) % n] == 2:
            return FourFan(i)
    return None


def nice_windows(d: np.ndarray, quad: bool = False) -> list[tuple[int, int]]:
    """All windows ``(i, k)`` with ``d(v_i, v_{i+k}) = k - 1`` (``k - 2`` for
    quadrangulations) and every other pair in the window at its index gap."""
    n = d.shape[0]
    short = 2 if quad else 1
    out = []
    for i in range(n):
        k = 1
        while k < n - 1:
            k += 1
            j = (i + k) % n
            inner_ok = all(d[(i + a) % n, j] == k - a for a in range(1, k))
            if not inner_ok:
                break
            if d[i, j] == k:
                continue
            if d[i, j] == k - short and k >= 4:
                out.append((i, k))
            break
    return out


def detect_configuration(D) -> TriConfiguration:
    """First applicable configuration in the order chord, hub, four-fan, nice."""
    d = _as_array(D)
    n = d.shape[0]
    if n < 4:
        raise ValueError("detection needs n >= 4")
    chord = find_chord(d)
    if chord is not None:
        return chord
    if n < 6:
        raise NotRealizable(f"chordless boundary of length {n} cannot be admissible")
    hub = find_hub(d)
    if hub is not None:
        return hub
    fan = find_four_fan(d)
    if fan is not None:
        return fan
    windows = nice_windows(d)
    if windows:
        i, k = min(windows, key=lambda w: (w[1], w[0]))
        return Nice(i, k)
    raise NotRealizable("no reducible configuration matches the distances")


# ---------------------------------------------------------------------------
# reductions
# ---------------------------------------------------------------------------

def _arc(i: int, j: int, n: int) -> list[int]:
    """Positions i, i+1, ..., j (cyclic)."""
    return [(i + t) % n for t in range((j - i) % n + 1)]


def reduce_chord(D, chord: Chord) -> tuple[tuple[np.ndarray, list[int]], tuple[np.ndarray, list[int]]]:
    """Child matrices for the two sides of a chord, with their parent positions."""
    d = _as_array(D)
    n = d.shape[0]
    i, j = chord.i, chord.j
    if d[i, j] != 1 or (j - i) % n in (1, n - 1):
        raise ValueError(f"{chord} is not a chord of the matrix")
    out = []
    for arc in (_arc(i, j, n), _arc(j, i, n)):
        out.append((d[np.ix_(arc, arc)].copy(), arc))
    return out[0], out[1]


def reduce_hub(D, hub: Hub) -> list[tuple[np.ndarray, list]]:
    """One child per gap between consecutive hub neighbours.

    Child boundary: the arc ``w_i .. w_{i+1}`` followed by the hub ``x``
    (marked ``("new", 0)``). Distances to ``x`` come from a witness
    ``w_j`` separated from both arc ends: ``d(x, y) = d(w_j, y) - 1``.
    """
    d = _as_array(D)
    n = d.shape[0]
    S = sorted(hub.S)
    r = len(S)
    if r < 5:
        raise ValueError("a hub needs at least five boundary neighbours")
    children = []
    for t in range(r):
        a, b = S[t], S[(t + 1) % r]
        arc = _arc(a, b, n)
        witnesses = [w for w in S if w not in (a, b) and d[w, a] == 2 and d[w, b] == 2]
        if not witnesses:
            raise InconsistentHub(f"no witness for the arc {a}..{b}")
        rows = d[np.ix_(witnesses, arc)] - 1
        if not (rows == rows[0]).all():
            raise InconsistentHub(f"witnesses disagree on hub distances for arc {a}..{b}")
        m = len(arc)
        child = np.zeros((m + 1, m + 1), dtype=np.int64)
        child[:m, :m] = d[np.ix_(arc, arc)]
        child[m, :m] = child[:m, m] = rows[0]
        children.append((child, arc + [("new", 0)]))
    return children


def _field_on_strip(f_v: list[int]) -> list[int]:
    """Values on the strip vertices w_1..w_{k-2} from values on v_0..v_k."""
    out = []
    for j in range(1, len(f_v) - 2):
        a, b = f_v[j], f_v[j + 1]
        out.append(min(a, b) if a != b else a - 1)
    return out


def reduce_four_fan(D, fan: FourFan) -> tuple[np.ndarray, list]:
    """Replace v_{i+1}, v_{i+2} by their common neighbour w.

    Child boundary starts at v_{i+3} and ends ``.., v_i, w``.
    """
    d = _as_array(D)
    n = d.shape[0]
    i = fan.i
    if d[i, (i + 3) % n] != 2:
        raise ValueError("four-fan needs d(v_i, v_{i+3}) = 2")
    keep = _arc((i + 3) % n, i, n)
    p1, p2 = (i + 1) % n, (i + 2) % n
    m = len(keep)
    child = np.zeros((m + 1, m + 1), dtype=np.int64)
    child[:m, :m] = d[np.ix_(keep, keep)]
    a, b = d[keep, p1], d[keep, p2]
    w = np.where(a != b, np.minimum(a, b), a - 1)
    w[0] = w[m - 1] = 1
    child[m, :m] = child[:m, m] = w
    return child, keep + [("new", 0)]


def reduce_nice(D, nice: Nice) -> tuple[np.ndarray, list]:
    """Remove v_{i+1}..v_{i+k-1}; the strip w_1..w_{k-2} becomes boundary.

    Child boundary starts at v_{i+k} and ends ``.., v_i, w_1, .., w_{k-2}``.
    """
    d = _as_array(D)
    n = d.shape[0]
    i, k = nice.i, nice.k
    window = _arc(i, (i + k) % n, n)
    keep = _arc((i + k) % n, i, n)
    m, s = len(keep), k - 2
    child = np.zeros((m + s, m + s), dtype=np.int64)
    child[:m, :m] = d[np.ix_(keep, keep)]
    for r, x in enumerate(keep):
        f_v = [int(d[x, v]) for v in window]
        vals = _field_on_strip(f_v)
        strip = [f_v[0]] + vals + [f_v[-1]]
        if any(abs(p - q) > 1 for p, q in zip(strip, strip[1:])) or any(
            abs(vals[j - 1] - f_v[j]) > 1 or abs(vals[j - 1] - f_v[j + 1]) > 1
            for j in range(1, k - 1)
        ):
            raise InconsistentWindow(f"derived strip distances from position {x} are not 1-Lipschitz")
        child[r, m:] = child[m:, r] = vals
    idx = np.arange(s)
    child[m:, m:] = np.abs(idx[:, None] - idx[None, :])
    # v_i sits at index m-1 and v_{i+k} at index 0; the strip is a path between them
    if any(child[m - 1, m + j] != j + 1 or child[0, m + j] != s - j for j in range(s)):
        raise InconsistentWindow("strip distances to the window ends are not path lengths")
    return child, keep + [("new", j) for j in range(s)]


# ---------------------------------------------------------------------------
# driver
# ---------------------------------------------------------------------------

def _nice_faces(k: int, window: list[int]) -> list[list]:
    """Faces of the strip in parent positions / new-vertex markers."""
    w = [("new", j) for j in range(k - 2)]
    v = window
    faces = [[v[0], v[1], w[0]]]
    for j in range(1, k - 1):
        faces.append([v[j], v[j + 1], w[j - 1]])
    for j in range(1, k - 2):
        faces.append([v[j + 1], w[j], w[j - 1]])
    faces.append([v[k - 1], v[k], w[k - 3]])
    return faces


def _step(d: np.ndarray) -> Step:
    n = d.shape[0]
    if n == 3:
        if not (d[0, 1] == d[1, 2] == d[0, 2] == 1):
            raise NotRealizable("triangle boundary with a distance other than 1")
        return Step({"type": "base"}, faces=[[0, 1, 2]])
    config = detect_configuration(d)
    if isinstance(config, Chord):
        a, b = reduce_chord(d, config)
        return Step({"type": "chord", "i": config.i, "j": config.j}, children=[a, b])
    if isinstance(config, Hub):
        kids = reduce_hub(d, config)
        return Step({"type": "hub", "S": list(config.S)}, new_vertices=1, children=kids)
    if isinstance(config, FourFan):
        i = config.i
        v = [(i + t) % n for t in range(4)]
        x = ("new", 0)
        faces = [[v[0], v[1], x], [v[1], v[2], x], [v[2], v[3], x]]
        child = reduce_four_fan(d, config)
        return Step({"type": "four_fan", "i": i}, faces=faces, new_vertices=1, children=[child])
    i, k = config.i, config.k
    window = [(i + t) % n for t in range(k + 1)]
    child = reduce_nice(d, config)
    return Step(
        {"type": "nice", "i": i, "k": k},
        faces=_nice_faces(k, window),
        new_vertices=k - 2,
        children=[child],
    )


def reconstruct_triangulation(D: DistanceMatrix) -> tuple[DiscMap, ReconstructionTrace]:
    """The unique triangulation with internal degrees >= 6 realising ``D``.

    Raises :class:`NotRealizable` if there is none.
    """
    if not isinstance(D, DistanceMatrix):
        D = DistanceMatrix(D)
    return drive(D, MapKind.TRIANGULATION, _step)
