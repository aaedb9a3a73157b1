"""Rebuild the checked-in fixture files from drawing coordinates.

The counterexample maps are described here the way they are drawn: polylines
of unit steps in given compass directions. Vertices are merged by position,
faces are traced from the planar embedding, and the unbounded face becomes
the boundary. Nothing from the package is imported, so the files this writes
are an independent check on the combinatorial constructions in
``discrecon.generator``.

    python tools/transcribe_figures.py [output_dir]
"""

from __future__ import annotations

import json
import math
import sys
from collections import deque
from pathlib import Path

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src" / "discrecon" / "fixtures"


def polar(angle: float, r: float = 1.0, origin=(0.0, 0.0)):
    t = math.radians(angle)
    return (origin[0] + r * math.cos(t), origin[1] + r * math.sin(t))


class Drawing:
    def __init__(self):
        self.points: list[tuple[float, float]] = []
        self.segments: list[tuple[int, int]] = []
        self.named: dict[str, int] = {}

    def vertex(self, p) -> int:
        for i, q in enumerate(self.points):
            if math.dist(p, q) < 1e-6:
                return i
        self.points.append(p)
        return len(self.points) - 1

    def polyline(self, start, steps):
        """``steps`` items: a direction in degrees (unit step), a point name
        (jump to it), or ``("as", name)`` to name the current point."""
        cur = self.named[start] if isinstance(start, str) else self.vertex(start)
        for s in steps:
            if isinstance(s, tuple) and s[0] == "as":
                self.named[s[1]] = cur
                continue
            if isinstance(s, str):
                nxt = self.named[s]
            else:
                nxt = self.vertex(polar(s, 1.0, self.points[cur]))
            self.segments.append((cur, nxt))
            cur = nxt

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in self.points]
        for u, v in self.segments:
            adj[u].add(v)
            adj[v].add(u)
        return adj


def core(d: Drawing, centre, phase: float) -> None:
    """Hexagon split into six triangles with a square and a triangle outside
    each hexagon edge / corner. Arm k points in direction phase - 60k."""
    for k in range(6):
        phi = phase - 60 * k
        hub = polar(phi, 1.0, centre)
        d.polyline(centre, [phi])
        d.polyline(hub, [phi + 30, ("as", f"a{k}"), phi - 90, ("as", f"b{k}"), phi + 150, phi - 120])
    for k in range(6):
        d.polyline(f"b{k}", [f"a{(k + 1) % 6}"])


def flap(d: Drawing, first: str, second: str, third: str, fourth: str) -> None:
    d.polyline(first, [-90, ("as", "aa"), -150, ("as", "ab"), 180, ("as", "ac"), 150, ("as", "ad"), fourth])
    d.polyline("aa", [second, "ab"])
    d.polyline("ac", [third, "ad"])


def faces_of(points, adj):
    order = {}
    for v, nbrs in enumerate(adj):
        order[v] = sorted(nbrs, key=lambda u: math.atan2(points[u][1] - points[v][1], points[u][0] - points[v][0]))
    used = set()
    faces = []
    for u in range(len(points)):
        for v in adj[u]:
            if (u, v) in used:
                continue
            face = []
            a, b = u, v
            while (a, b) not in used:
                used.add((a, b))
                face.append(a)
                ring = order[b]
                # next dart turns as far left as possible
                a, b = b, ring[(ring.index(a) - 1) % len(ring)]
            faces.append(face)
    return faces


def signed_area(points, face) -> float:
    s = 0.0
    for i, v in enumerate(face):
        x1, y1 = points[v]
        x2, y2 = points[face[(i + 1) % len(face)]]
        s += x1 * y2 - x2 * y1
    return s / 2


def to_dmap(d: Drawing, kind: str) -> dict:
    faces = faces_of(d.points, d.adjacency())
    outer = min(faces, key=lambda f: signed_area(d.points, f))
    inner = [f for f in faces if f is not outer]
    boundary = list(reversed(outer))
    # start at the lowest, then leftmost, boundary point
    start = min(boundary, key=lambda v: (round(d.points[v][1], 6), round(d.points[v][0], 6)))
    i = boundary.index(start)
    boundary = boundary[i:] + boundary[:i]
    ids = {v: k for k, v in enumerate(boundary)}
    for f in inner:
        for v in f:
            if v not in ids:
                ids[v] = len(ids)
    return {
        "kind": kind,
        "vertex_count": len(ids),
        "boundary": [ids[v] for v in boundary],
        "faces": [[ids[v] for v in f] for f in inner],
    }


def mixed_maps() -> dict[str, dict]:
    out = {}
    left = Drawing()
    core(left, (0.0, 0.0), 0)
    out["rth_core.dmap"] = to_dmap(left, "mixed")

    middle = Drawing()
    core(middle, (0.0, 0.0), 0)
    flap(middle, "a1", "b1", "a2", "b2")
    out["mixed_pair_a.dmap"] = to_dmap(middle, "mixed")

    right = Drawing()
    core(right, (0.0, 0.0), 30)
    flap(right, "b1", "a2", "b2", "a3")
    out["mixed_pair_b.dmap"] = to_dmap(right, "mixed")
    return out


def nonplanar_matrix() -> dict:
    ring = [(0, 0), (1, -0.5), (2, -0.5), (3, 0), (3, 1), (2, 1.5), (1, 1.5), (0, 1)]
    extra = [(1, 0), (1.5, 1)]
    pts = [tuple(map(float, p)) for p in ring + extra]
    lines = [(ring[i], ring[(i + 1) % 8]) for i in range(8)]
    lines += [((0, 0), (3, 0)), ((1, -0.5), (1, 1.5)), ((0, 1), (3, 1))]
    adj = [set() for _ in pts]
    for p, q in lines:
        # vertices lying on a drawn line split it; crossings of lines do not
        on = [i for i, r in enumerate(pts) if _on_segment(p, q, r)]
        on.sort(key=lambda i: math.dist(p, pts[i]))
        for u, v in zip(on, on[1:]):
            adj[u].add(v)
            adj[v].add(u)
    rows = []
    for s in range(8):
        dist = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        rows.append([dist[t] for t in range(8)])
    return {"n": 8, "kind": "tri", "d": rows}


def _on_segment(p, q, r) -> bool:
    cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0])
    if abs(cross) > 1e-9:
        return False
    return min(p[0], q[0]) - 1e-9 <= r[0] <= max(p[0], q[0]) + 1e-9 and min(p[1], q[1]) - 1e-9 <= r[1] <= max(p[1], q[1]) + 1e-9


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    out = Path(argv[0]) if argv else DEFAULT_OUT
    out.mkdir(parents=True, exist_ok=True)
    for name, data in mixed_maps().items():
        (out / name).write_text(json.dumps(data, indent=1) + "\n", encoding="utf-8")
    D = nonplanar_matrix()
    rows = ",\n  ".join(json.dumps(r) for r in D["d"])
    (out / "nonplanar.dist").write_text(f'{{"n": 8, "kind": "tri", "d": [\n  {rows}\n]}}\n', encoding="utf-8")
    print(f"wrote fixtures to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
