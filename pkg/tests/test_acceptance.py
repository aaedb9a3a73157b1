"""Acceptance criteria, one test per criterion.

Each test reports a single ``criterion N: PASS|FAIL`` line, collected again in
the terminal summary. Thresholds are module constants so they stay fixed.
"""

import random
import time

import networkx as nx
import numpy as np
import pytest

from discrecon.boundary_metrics import (
    boundary_distances,
    boundary_geodesic_violations,
    chordless_diameter_check,
    equidistant_triangle_scan,
    following_path_check,
    four_point_check,
    layer_counts,
    layer_inequality_check,
    meridian_enumerate,
    mixed_boundary_bound_check,
    quad_edge_bounds_check,
)
from discrecon.cli import EXIT_NOT_REALIZABLE, main
from discrecon.errors import BadSpec
from discrecon.generator import (
    LayerSpec,
    PatchSpec,
    glue_along_edge,
    glue_platonic,
    insert_band,
    lattice_patch,
    layered_map,
    mixed_counterexample_pair,
    nonplanar_metric_fixture,
    rhombitrihexagonal_core,
    attach_flap,
)
from discrecon.io import fixture_path
from discrecon.oracle import EnumerationBudget, find_realizations, injectivity_report
from discrecon.planar_map import MapKind, canonical_code, chords, curvature_report
from discrecon.quad_reconstruct import reconstruct_quadrangulation
from discrecon.tri_reconstruct import reconstruct_triangulation

from reference import graph_of, nx_all_pairs

INSTANCE_COUNT = 200
MAX_BOUNDARY = 56
PER_INSTANCE_SECONDS = 5.0
INJECTIVITY_SECONDS = 600.0
TRI_ORACLE = (10, 6)  # n <= 10, at most 6 internal vertices
QUAD_ORACLE = (10, 4)
MIN_SOLID_INSTANCES = 10
MIN_BAND_INSTANCES = 10
CORE_ROW = (0, 1, 2, 3, 4, 4, 4, 4, 4, 3, 2, 1)
REALIZATION_BUDGET = 4

RESULTS: dict[int, str] = {}


def report(num: int, ok: bool, detail: str) -> None:
    line = f"criterion {num:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    RESULTS[num] = line
    print(line)


# ---------------------------------------------------------------------------
# instance pools
# ---------------------------------------------------------------------------

def _layered(kind, supports, max_layers, seeds):
    out = []
    for deg in supports:
        for layers in range(1, max_layers + 1):
            for seed in seeds:
                try:
                    m = layered_map(LayerSpec(kind, layers, deg, seed))
                except BadSpec:
                    continue
                out.append((f"{kind} layered {deg} L{layers} s{seed}", m))
                if len(set(deg)) == 1:
                    break
    return out


def tri_instances():
    pool = [(f"hex r{R}", lattice_patch(PatchSpec(radius=R))) for R in range(1, 5)]
    for R in range(2, 5):
        for trim in range(1, 5):
            for seed in range(3):
                pool.append((f"hex r{R} trim{trim} s{seed}", lattice_patch(PatchSpec(radius=R, trim=trim, seed=seed))))
    pool += _layered("tri", [(6,), (6, 7), (7,)], 4, range(12))
    base = [m for _, m in pool if m.n <= MAX_BOUNDARY // 2]
    rng = random.Random(1)
    pool = [(k, m) for k, m in pool if m.n <= MAX_BOUNDARY]
    glued = []
    while len(pool) + len(glued) < INSTANCE_COUNT:
        a, b = rng.choice(base), rng.choice(base)
        if a.n + b.n - 2 > MAX_BOUNDARY:
            continue
        ea, eb = rng.randrange(a.n), rng.randrange(b.n)
        glued.append((f"glued {a.n}+{b.n} at {ea},{eb}", glue_along_edge(a, b, ea, eb)))
    return pool + glued


def quad_instances():
    pool = [
        (f"rect {a}x{b}", lattice_patch(PatchSpec("quad", "rectangle", a=a, b=b)))
        for a in range(1, 7)
        for b in range(1, 7)
    ]
    pool += _layered("quad", [(4,), (4, 5), (5,)], 3, range(25))
    base = [m for _, m in pool if m.n <= MAX_BOUNDARY // 2]
    rng = random.Random(2)
    pool = [(k, m) for k, m in pool if m.n <= MAX_BOUNDARY]
    glued = []
    while len(pool) + len(glued) < INSTANCE_COUNT:
        a, b = rng.choice(base), rng.choice(base)
        if a.n + b.n - 2 > MAX_BOUNDARY:
            continue
        ea, eb = rng.randrange(a.n), rng.randrange(b.n)
        glued.append((f"glued {a.n}+{b.n} at {ea},{eb}", glue_along_edge(a, b, ea, eb)))
    return pool + glued


@pytest.fixture(scope="module")
def tri_pool():
    return tri_instances()


@pytest.fixture(scope="module")
def quad_pool():
    return quad_instances()


def _round_trips(pool, recon):
    failures, slowest = [], 0.0
    for name, m in pool:
        start = time.perf_counter()
        try:
            r, _ = recon(boundary_distances(m))
            ok = canonical_code(r) == canonical_code(m)
        except Exception as exc:  # any error counts against the criterion
            ok = False
            name = f"{name} ({type(exc).__name__})"
        took = time.perf_counter() - start
        slowest = max(slowest, took)
        if not ok or took >= PER_INSTANCE_SECONDS:
            failures.append(name)
    return failures, slowest


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def test_criterion_01_triangulation_round_trip(tri_pool):
    failures, slowest = _round_trips(tri_pool, reconstruct_triangulation)
    ok = len(tri_pool) == INSTANCE_COUNT and not failures
    report(1, ok, f"{len(tri_pool) - len(failures)}/{len(tri_pool)} tri round trips, max n "
                  f"{max(m.n for _, m in tri_pool)}, slowest {slowest:.3f}s < {PER_INSTANCE_SECONDS}s")
    assert ok, failures


def test_criterion_02_quadrangulation_round_trip(quad_pool):
    failures, slowest = _round_trips(quad_pool, reconstruct_quadrangulation)
    ok = len(quad_pool) == INSTANCE_COUNT and not failures
    report(2, ok, f"{len(quad_pool) - len(failures)}/{len(quad_pool)} quad round trips, max n "
                  f"{max(m.n for _, m in quad_pool)}, slowest {slowest:.3f}s < {PER_INSTANCE_SECONDS}s")
    assert ok, failures


def test_criterion_03_oracle_injectivity():
    start = time.perf_counter()
    reports = [injectivity_report(EnumerationBudget(n, TRI_ORACLE[1])) for n in range(3, TRI_ORACLE[0] + 1)]
    reports += [
        injectivity_report(EnumerationBudget(n, QUAD_ORACLE[1], kind=MapKind.QUADRANGULATION))
        for n in range(4, QUAD_ORACLE[0] + 1, 2)
    ]
    took = time.perf_counter() - start
    bad = [(r.kind, r.n) for r in reports if not r.passed]
    ok = not bad and took < INJECTIVITY_SECONDS
    tri = sum(r.maps for r in reports if r.kind == "tri")
    quad = sum(r.maps for r in reports if r.kind == "quad")
    report(3, ok, f"{tri} tri + {quad} quad chordless admissible maps, distinct and reconstructed, "
                  f"{took:.1f}s < {INJECTIVITY_SECONDS:.0f}s")
    assert ok, bad


def test_criterion_04_platonic_gluing():
    bases = [lattice_patch(PatchSpec(radius=R)) for R in (1, 2, 3)]
    bases += [layered_map(LayerSpec("tri", 2, (7,))), layered_map(LayerSpec("tri", 2, (6, 7), seed=4))]
    bases += [lattice_patch(PatchSpec("quad", "rectangle", a=a, b=b)) for a, b in ((1, 1), (2, 2), (3, 4))]
    bases += [layered_map(LayerSpec("quad", 2, (4, 5), seed=1)), layered_map(LayerSpec("quad", 2, (5,)))]
    checked, bad = 0, []
    for i, m in enumerate(bases):
        for face in (m.faces[0], m.faces[-1]):
            g = glue_platonic(m, face)
            before, after = boundary_distances(m).d, boundary_distances(g).d
            same = before.dtype == after.dtype and before.tobytes() == after.tobytes()
            flagged = not curvature_report(g).all_admissible
            checked += 1
            if not (same and flagged):
                bad.append((i, face))
    ok = checked >= MIN_SOLID_INSTANCES and not bad
    report(4, ok, f"{checked} solid gluings: boundary matrices bit-identical, inadmissible vertices flagged")
    assert ok, bad


def test_criterion_05_mixed_counterexample():
    a, b = mixed_counterexample_pair()
    Da, Db = boundary_distances(a), boundary_distances(b)
    equal = np.array_equal(Da.d, Db.d)
    differ = canonical_code(a, labeled=False) != canonical_code(b, labeled=False)
    admissible = all(
        2 * vc.t + 3 * vc.q >= 12
        for m in (a, b)
        for vc in curvature_report(m, MapKind.MIXED).vertices
    )
    core = boundary_distances(rhombitrihexagonal_core()).rows()
    row = list(CORE_ROW)
    core_ok = all(r in [row[-k:] + row[:-k] if k else row for k in range(12)] for r in core)
    ok = equal and differ and admissible and core_ok
    report(5, ok, f"equal matrices {equal}, distinct unlabeled codes {differ}, "
                  f"2t+3q>=12 {admissible}, core rows rotate {CORE_ROW} {core_ok}")
    assert ok


def test_criterion_06_inequality_suite(tri_pool, quad_pool):
    checked, bad = 0, []
    for name, m in tri_pool:
        if chords(m) or not curvature_report(m).all_admissible or m.n <= 3:
            continue
        checked += 1
        if not chordless_diameter_check(m):
            bad.append(("diameter", name))
        if m.internal_vertices:
            checked += 1
            if not layer_inequality_check(m, layer_counts(m).average_degree):
                bad.append(("layer", name))
    for name, m in quad_pool:
        if chords(m) or m.n < 6:
            continue
        checked += 1
        if not chordless_diameter_check(m):
            bad.append(("quad diameter", name))
        if m.internal_vertices:
            checked += 1
            if not quad_edge_bounds_check(m):
                bad.append(("e-circ / inner length", name))
    a, b = mixed_counterexample_pair()
    for name, m in (("core", rhombitrihexagonal_core()), ("pair a", a), ("pair b", b),
                    ("flap 5", attach_flap(rhombitrihexagonal_core(), 5))):
        checked += 1
        if not mixed_boundary_bound_check(m):
            bad.append(("mixed n>=6", name))
    ok = not bad
    report(6, ok, f"{checked} inequality checks on chordless admissible instances, {len(bad)} violations")
    assert ok, bad


def test_criterion_07_no_equidistant_triangle(tri_pool):
    admissible = [(name, m) for name, m in tri_pool if curvature_report(m).all_admissible]
    hits = [name for name, m in admissible if equidistant_triangle_scan(m) is not None]
    h = lattice_patch(PatchSpec(radius=2))
    witness = equidistant_triangle_scan(glue_platonic(h, h.faces[0]))
    ok = not hits and witness is not None
    report(7, ok, f"{len(admissible)} admissible tri instances scanned, {len(hits)} witnesses; "
                  f"icosahedron instance witness {witness}")
    assert ok, hits


def test_criterion_08_meridians_and_geodesics():
    meridians, bad = 0, []
    for R in range(1, 5):
        m = lattice_patch(PatchSpec(radius=R))
        starts = list(m.boundary) + list(m.boundary_edges())
        for s in starts:
            for mer in meridian_enumerate(m, s):
                meridians += 1
                if not following_path_check(m, mer):
                    bad.append((R, mer.elements))
        for arc in boundary_geodesic_violations(m):
            bad.append((R, "arc", arc))
    ok = meridians > 0 and not bad
    report(8, ok, f"{meridians} meridians on hex patches r<=4 follow shortest paths, "
                  f"boundary arcs geodesic, {len(bad)} violations")
    assert ok, bad[:5]


def test_criterion_09_four_point(tri_pool, quad_pool, capsys):
    planar_bad = [name for name, m in tri_pool + quad_pool
                  if four_point_check(boundary_distances(m), both_pairings=True)]
    D = nonplanar_metric_fixture()
    passes = four_point_check(D) == []
    found = []
    for kind in (MapKind.TRIANGULATION, MapKind.MIXED):
        b = EnumerationBudget(D.n, REALIZATION_BUDGET, kind=kind, degree_condition=False)
        found += find_realizations(D, b)
    code = main(["reconstruct", str(fixture_path("nonplanar.dist")), "--kind", "tri"])
    capsys.readouterr()
    ok = not planar_bad and passes and not found and code == EXIT_NOT_REALIZABLE
    report(9, ok, f"{len(tri_pool) + len(quad_pool)} planar matrices, {len(planar_bad)} violations; "
                  f"fixture passes four-point {passes}, realizations with <= {REALIZATION_BUDGET} internal "
                  f"{len(found)}, reconstruct exit {code}")
    assert ok


def test_criterion_10_band_insertion():
    a, b = mixed_counterexample_pair()
    bases = [rhombitrihexagonal_core(), a, b]
    bases += [lattice_patch(PatchSpec("quad", "rectangle", a=x, b=y)) for x, y in ((1, 1), (2, 3), (4, 4))]
    bases += [layered_map(LayerSpec("quad", 2, (4, 5), seed=s)) for s in range(3)]
    checked, bad = 0, []
    for i, m in enumerate(bases):
        quads = [f for f in m.faces if len(f) == 4]
        for f in quads[:2]:
            g = insert_band(m, f)
            before = nx_all_pairs(m)
            after = dict(nx.all_pairs_shortest_path_length(graph_of(g.faces, g.vertex_count)))
            checked += 1
            if any(after[u][v] != before[u][v] for u in range(m.vertex_count) for v in range(m.vertex_count)):
                bad.append((i, f))
    ok = checked >= MIN_BAND_INSTANCES and not bad
    report(10, ok, f"{checked} band insertions, all pre-existing distances preserved (full BFS)")
    assert ok, bad
