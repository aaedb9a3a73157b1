import json

import numpy as np
import pytest

from discrecon.boundary_metrics import DistanceMatrix, boundary_distances
from discrecon.errors import InconsistentHub, MalformedTrace, NotRealizable
from discrecon.generator import LayerSpec, PatchSpec, glue_along_edge, lattice_patch, layered_map
from discrecon.planar_map import canonical_code
from discrecon.trace import ReconstructionTrace, reassemble
from discrecon.tri_reconstruct import (
    Chord,
    FourFan,
    Hub,
    Nice,
    detect_configuration,
    find_chord,
    nice_windows,
    reconstruct_triangulation,
    reduce_chord,
    reduce_four_fan,
    reduce_hub,
    reduce_nice,
)

from reference import nx_all_pairs


def _round_trip(m):
    r, trace = reconstruct_triangulation(boundary_distances(m))
    assert canonical_code(r) == canonical_code(m)
    return r, trace


def test_triangle(triangle):
    r, trace = _round_trip(triangle)
    assert trace.steps() == ["base"]


def test_square_chord(square_with_chord):
    D = boundary_distances(square_with_chord)
    assert detect_configuration(D) == Chord(0, 2)
    _round_trip(square_with_chord)


def test_wheel_is_a_hub(w6):
    D = boundary_distances(w6)
    assert detect_configuration(D) == Hub((0, 1, 2, 3, 4, 5))
    r, trace = _round_trip(w6)
    assert trace.steps()[0] == "hub"
    assert r.vertex_count == 7


def test_hub_children_match_bfs(w6):
    D = boundary_distances(w6)
    kids = reduce_hub(D, Hub((0, 1, 2, 3, 4, 5)))
    assert len(kids) == 6
    for child, labels in kids:
        assert labels == [labels[0], labels[1], ("new", 0)]
        assert child.tolist() == [[0, 1, 1], [1, 0, 1], [1, 1, 0]]


def test_perturbed_hub_matrix_rejected():
    m = layered_map(LayerSpec("tri", 2, (7, 8), seed=3))
    d = np.array(boundary_distances(m).d)
    hub = detect_configuration(d)
    assert hub == Hub((3, 4, 5, 6, 7))
    assert len(reduce_hub(d, hub)) == 5
    d[5, 12] += 1
    d[12, 5] += 1
    with pytest.raises(NotRealizable):
        reconstruct_triangulation(DistanceMatrix(d))


def test_hub_witnesses_disagree():
    # even positions of a 10-cycle pairwise at 2; witnesses 4 and 6 see
    # position 1 at different distances, so the hub cannot be placed
    n = 10
    d = np.full((n, n), 3)
    np.fill_diagonal(d, 0)
    for i in range(n):
        d[i, (i + 1) % n] = d[(i + 1) % n, i] = 1
    for a in range(0, n, 2):
        for b in range(0, n, 2):
            if a != b:
                d[a, b] = 2
    d[4, 1] = d[1, 4] = 2
    with pytest.raises(InconsistentHub):
        reduce_hub(d, Hub((0, 2, 4, 6, 8)))


def test_four_fan_child_matches_bfs():
    m = lattice_patch(PatchSpec(radius=2, trim=2, seed=1))
    D = boundary_distances(m)
    cfg = detect_configuration(D)
    assert cfg == FourFan(0)
    child, labels = reduce_four_fan(D, cfg)
    n = m.n
    i = cfg.i
    keep = [(i + 3 + t) % n for t in range(n - 2)]
    sp = nx_all_pairs(m)
    b = m.boundary
    x = next(
        v for v in m.internal_vertices
        if all(sp[v][b[(i + t) % n]] == 1 for t in range(4))
    )
    verts = [b[k] for k in keep] + [x]
    assert child.tolist() == [[sp[p][q] for q in verts] for p in verts]
    assert labels[-1] == ("new", 0)
    _round_trip(m)


def test_h2_starts_with_nice_window(h2):
    # boundary corners have degree 3, so there is no hub and no fan of four
    assert detect_configuration(boundary_distances(h2)) == Nice(0, 4)


@pytest.mark.parametrize("R", [2, 3])
def test_nice_reduction_matches_bfs(R):
    m = layered_map(LayerSpec("tri", R, (6,), seed=0))
    D = boundary_distances(m)
    windows = nice_windows(D.d)
    assert windows
    i, k = min(windows, key=lambda w: (w[1], w[0]))
    child, labels = reduce_nice(D, Nice(i, k))
    assert child.shape[0] == m.n - 1
    assert len([x for x in labels if isinstance(x, tuple)]) == k - 2


def test_nice_window_distances():
    # an outer ring of a hexagonal patch: corner to corner is a nice window
    m = lattice_patch(PatchSpec(radius=3))
    D = boundary_distances(m)
    for i, k in nice_windows(D.d):
        assert D[i, (i + k) % m.n] == k - 1


def test_reduce_chord_children(h2):
    g = glue_along_edge(h2, h2, 0, 0)
    D = boundary_distances(g)
    ch = find_chord(D.d)
    assert ch is not None
    (a, la), (b, lb) = reduce_chord(D, ch)
    assert la[0] == lb[-1] and la[-1] == lb[0]
    assert a.shape[0] + b.shape[0] == g.n + 2


def test_reduce_chord_rejects_non_chord(w6):
    with pytest.raises(ValueError):
        reduce_chord(boundary_distances(w6), Chord(0, 3))


@pytest.mark.parametrize("R", [1, 2, 3, 4])
def test_hex_round_trip(R):
    _round_trip(lattice_patch(PatchSpec(radius=R)))


@pytest.mark.parametrize("seed", range(4))
def test_trimmed_round_trip(seed):
    _round_trip(lattice_patch(PatchSpec(radius=3, trim=4, seed=seed)))


@pytest.mark.parametrize("deg", [(6,), (6, 7), (7,), (6, 7, 8)])
def test_layered_round_trip(deg):
    _round_trip(layered_map(LayerSpec("tri", 2, deg, seed=1)))


def test_trace_reassemble(h2):
    r, trace = _round_trip(h2)
    again = reassemble(ReconstructionTrace.from_dict(json.loads(json.dumps(trace.to_dict()))))
    assert again == r


def test_trace_malformed(h2):
    _, trace = _round_trip(h2)
    data = trace.to_dict()
    data["root"]["labels"] = data["root"]["labels"][::-1]
    with pytest.raises(MalformedTrace):
        reassemble(ReconstructionTrace.from_dict(data))
    with pytest.raises(MalformedTrace):
        ReconstructionTrace.from_dict({"kind": "tri", "n": 3})
    broken = trace.to_dict()
    broken["root"]["faces"].append([0, 1, 2])
    with pytest.raises(MalformedTrace):
        reassemble(ReconstructionTrace.from_dict(broken))


def test_rejects_invalid_matrix():
    with pytest.raises(NotRealizable):
        reconstruct_triangulation(DistanceMatrix([[0, 1, 2], [1, 0, 1], [2, 1, 0]]))


def test_rejects_chordless_square():
    d = [[0, 1, 2, 1], [1, 0, 1, 2], [2, 1, 0, 1], [1, 2, 1, 0]]
    with pytest.raises(NotRealizable):
        reconstruct_triangulation(DistanceMatrix(d))


def test_rejects_quad_metric(q33):
    with pytest.raises(NotRealizable):
        reconstruct_triangulation(boundary_distances(q33))


def test_rejects_nonplanar_fixture():
    from discrecon.generator import nonplanar_metric_fixture

    with pytest.raises(NotRealizable):
        reconstruct_triangulation(nonplanar_metric_fixture())
