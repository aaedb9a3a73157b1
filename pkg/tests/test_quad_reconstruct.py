import numpy as np
import pytest

from discrecon.boundary_metrics import DistanceMatrix, boundary_distances
from discrecon.errors import NotRealizable
from discrecon.generator import LayerSpec, PatchSpec, glue_along_edge, lattice_patch, layered_map
from discrecon.planar_map import canonical_code
from discrecon.quad_reconstruct import NiceQ, detect_quad_configuration, reconstruct_quadrangulation, reduce_nice_quad
from discrecon.tri_reconstruct import Chord

# Frozen from networkx all-pairs BFS on the 2x2 grid of squares.
Q22 = [
    [0, 1, 2, 3, 2, 3, 2, 1],
    [1, 0, 1, 2, 3, 4, 3, 2],
    [2, 1, 0, 1, 2, 3, 2, 3],
    [3, 2, 1, 0, 1, 2, 3, 4],
    [2, 3, 2, 1, 0, 1, 2, 3],
    [3, 4, 3, 2, 1, 0, 1, 2],
    [2, 3, 2, 3, 2, 1, 0, 1],
    [1, 2, 3, 4, 3, 2, 1, 0],
]


def _round_trip(m):
    r, trace = reconstruct_quadrangulation(boundary_distances(m))
    assert canonical_code(r) == canonical_code(m)
    return r, trace


def test_q22_matrix(q22):
    assert boundary_distances(q22).rows() == Q22


def test_single_square():
    m = lattice_patch(PatchSpec("quad", "rectangle", a=1, b=1))
    r, trace = _round_trip(m)
    assert trace.steps() == ["base"]


def test_domino_has_chord():
    m = lattice_patch(PatchSpec("quad", "rectangle", a=2, b=1))
    assert isinstance(detect_quad_configuration(boundary_distances(m)), Chord)
    _round_trip(m)


def test_q22_is_nice(q22):
    cfg = detect_quad_configuration(DistanceMatrix(Q22))
    assert isinstance(cfg, NiceQ)
    assert Q22[cfg.i][(cfg.i + cfg.k) % 8] == cfg.k - 2
    child, labels = reduce_nice_quad(np.array(Q22), cfg)
    assert child.shape[0] == 6
    assert len([x for x in labels if isinstance(x, tuple)]) == cfg.k - 3


def test_reduce_rejects_non_window():
    with pytest.raises(ValueError):
        reduce_nice_quad(np.array(Q22), NiceQ(0, 2))


@pytest.mark.parametrize("a,b", [(a, b) for a in range(1, 7) for b in range(1, 7) if a <= b])
def test_rectangles(a, b):
    _round_trip(lattice_patch(PatchSpec("quad", "rectangle", a=a, b=b)))


@pytest.mark.parametrize("deg", [(4,), (4, 5), (5,)])
def test_layered(deg):
    _round_trip(layered_map(LayerSpec("quad", 2, deg, seed=2)))


def test_glued(q33):
    _round_trip(glue_along_edge(q33, q33, 1, 4))


def test_hexagon_without_chord():
    d = [[min((i - j) % 6, (j - i) % 6) for j in range(6)] for i in range(6)]
    with pytest.raises(NotRealizable):
        reconstruct_quadrangulation(DistanceMatrix(d))


def test_rejects_odd_parity(w6):
    with pytest.raises(NotRealizable):
        reconstruct_quadrangulation(boundary_distances(w6))


def test_rejects_bad_square():
    with pytest.raises(NotRealizable):
        reconstruct_quadrangulation(DistanceMatrix([[0, 1, 1, 1], [1, 0, 1, 1], [1, 1, 0, 1], [1, 1, 1, 0]]))
