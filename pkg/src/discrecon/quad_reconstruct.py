"""Reconstruct a disc quadrangulation with internal degrees >= 4 from its
boundary distance matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .boundary_metrics import DistanceMatrix
from .errors import InconsistentWindow, NotRealizable
from .planar_map import DiscMap, MapKind
from .trace import ReconstructionTrace, Step, drive
from .tri_reconstruct import Chord, _arc, _as_array, find_chord, nice_windows, reduce_chord


@dataclass(frozen=True)
class NiceQ:
    i: int
    k: int


QuadConfiguration = Chord | NiceQ


def detect_quad_configuration(D) -> QuadConfiguration:
    """A chord if there is one, otherwise the first minimal nice window."""
    d = _as_array(D)
    n = d.shape[0]
    if n < 6:
        raise ValueError("detection needs n >= 6")
    chord = find_chord(d)
    if chord is not None:
        return chord
    if n == 6:
        raise NotRealizable("a hexagon can only be quadrangulated with a chord")
    windows = nice_windows(d, quad=True)
    if not windows:
        raise NotRealizable("no reducible configuration matches the distances")
    i, k = min(windows, key=lambda w: (w[1], w[0]))
    return NiceQ(i, k)


def reduce_nice_quad(D, nice: NiceQ) -> tuple[np.ndarray, list]:
    """Replace v_{i+1}..v_{i+k-1} by the strip w_2..w_{k-2}.

    Child boundary starts at v_{i+k} and ends ``.., v_i, w_2, .., w_{k-2}``;
    every w_j sits one step closer than v_{i+j} to each outside vertex.
    """
    d = _as_array(D)
    n = d.shape[0]
    i, k = nice.i, nice.k
    if k < 4 or d[i, (i + k) % n] != k - 2:
        raise ValueError(f"{nice} is not a nice window of the matrix")
    keep = _arc((i + k) % n, i, n)
    m, s = len(keep), k - 3
    src = [(i + j) % n for j in range(2, k - 1)]
    child = np.zeros((m + s, m + s), dtype=np.int64)
    child[:m, :m] = d[np.ix_(keep, keep)]
    block = d[np.ix_(keep, src)] - 1
    if (block < 1).any():
        raise InconsistentWindow("derived strip distance below 1")
    child[:m, m:] = block
    child[m:, :m] = block.T
    idx = np.arange(s)
    child[m:, m:] = np.abs(idx[:, None] - idx[None, :])
    if any(child[m - 1, m + j] != j + 1 or child[0, m + j] != s - j for j in range(s)):
        raise InconsistentWindow("strip distances to the window ends are not path lengths")
    return child, keep + [("new", j) for j in range(s)]


def _nice_faces(k: int, window: list[int]) -> list[list]:
    v = window
    w = {j: ("new", j - 2) for j in range(2, k - 1)}
    faces = [[v[0], v[1], v[2], w[2]]]
    for j in range(2, k - 2):
        faces.append([v[j], v[j + 1], w[j + 1], w[j]])
    faces.append([v[k - 2], v[k - 1], v[k], w[k - 2]])
    return faces


def _step(d: np.ndarray) -> Step:
    n = d.shape[0]
    if n == 4:
        if not (d[0, 1] == d[1, 2] == d[2, 3] == d[3, 0] == 1 and d[0, 2] == d[1, 3] == 2):
            raise NotRealizable("a quadrangle boundary must have opposite corners at distance 2")
        return Step({"type": "base"}, faces=[[0, 1, 2, 3]])
    config = detect_quad_configuration(d)
    if isinstance(config, Chord):
        a, b = reduce_chord(d, config)
        return Step({"type": "chord", "i": config.i, "j": config.j}, children=[a, b])
    i, k = config.i, config.k
    window = [(i + t) % n for t in range(k + 1)]
    child = reduce_nice_quad(d, config)
    return Step(
        {"type": "nice", "i": i, "k": k},
        faces=_nice_faces(k, window),
        new_vertices=k - 3,
        children=[child],
    )


def reconstruct_quadrangulation(D: DistanceMatrix) -> tuple[DiscMap, ReconstructionTrace]:
    """The unique quadrangulation with internal degrees >= 4 realising ``D``."""
    if not isinstance(D, DistanceMatrix):
        D = DistanceMatrix(D, MapKind.QUADRANGULATION)
    return drive(D, MapKind.QUADRANGULATION, _step)
