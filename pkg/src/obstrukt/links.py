"""Straight-line spatial graphs in Z^3, exact linking numbers and the K6 invariant.

All geometry is exact: points are integer triples, intersection parameters
are Fractions.  Linking numbers come from a generic projection; crossings
are signed with the right-handed frame (over direction, under direction,
viewing direction), and only crossings where A passes over B are counted.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .complex import SimplicialComplex
from .errors import DegenerateInput, InvalidInput

COORD_BOUND = 1000
DIRECTION_BUDGET = 100
# fixed seed for the projection-direction sequence; not user-facing randomness
_DIRECTION_SEED = 20240611

Point = tuple


def _sub(a, b):
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _det3(a, b, c):
    return _dot(a, _cross(b, c))


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _as_point(p) -> Point:
    if len(p) != 3:
        raise InvalidInput(f"expected a point in Z^3, got {p!r}")
    out = []
    for x in p:
        if isinstance(x, bool) or int(x) != x:
            raise InvalidInput(f"coordinates must be integers, got {p!r}")
        out.append(int(x))
    return tuple(out)


# ---------------------------------------------------------------------------
# exact segment predicates


def point_on_segment(p: Point, a: Point, b: Point) -> bool:
    """p lies on the closed segment [a, b]."""
    ab, ap = _sub(b, a), _sub(p, a)
    if _cross(ab, ap) != (0, 0, 0):
        return False
    t = _dot(ap, ab)
    return 0 <= t <= _dot(ab, ab)


def _orient2(a, b, c) -> int:
    return _sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))


def _on_seg2(p, a, b) -> bool:
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_meet_2d(p1, p2, q1, q2) -> bool:
    o1, o2 = _orient2(p1, p2, q1), _orient2(p1, p2, q2)
    o3, o4 = _orient2(q1, q2, p1), _orient2(q1, q2, p2)
    if o1 * o2 < 0 and o3 * o4 < 0:
        return True
    return ((o1 == 0 and _on_seg2(q1, p1, p2)) or (o2 == 0 and _on_seg2(q2, p1, p2))
            or (o3 == 0 and _on_seg2(p1, q1, q2)) or (o4 == 0 and _on_seg2(p2, q1, q2)))


def segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool:
    """Exact test whether closed segments [p1,p2] and [q1,q2] in Z^3 share a point."""
    d = _sub(p2, p1)
    if _det3(d, _sub(q1, p1), _sub(q2, p1)) != 0:
        return False  # not coplanar
    n = _cross(d, _sub(q2, q1))
    if n == (0, 0, 0):
        n = _cross(d, _sub(q1, p1))
    if n == (0, 0, 0):
        # all four points collinear: compare parameters along the line
        axis = d if d != (0, 0, 0) else _sub(q2, q1)
        if axis == (0, 0, 0):
            return p1 == q1
        ts = sorted([_dot(_sub(p1, p1), axis), _dot(_sub(p2, p1), axis)])
        us = sorted([_dot(_sub(q1, p1), axis), _dot(_sub(q2, p1), axis)])
        return ts[0] <= us[1] and us[0] <= ts[1]
    drop = max(range(3), key=lambda i: abs(n[i]))
    keep = [i for i in range(3) if i != drop]
    pr = lambda p: (p[keep[0]], p[keep[1]])
    return _segments_meet_2d(pr(p1), pr(p2), pr(q1), pr(q2))


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class PolygonalCycle:
    """Closed polygon through `points` in order; the closing segment is implicit."""

    points: tuple

    def __post_init__(self):
        pts = tuple(_as_point(p) for p in self.points)
        if len(pts) < 3:
            raise InvalidInput("a polygonal cycle needs at least 3 points")
        for i in range(len(pts)):
            if pts[i] == pts[(i + 1) % len(pts)]:
                raise InvalidInput("consecutive points of a cycle must differ")
        object.__setattr__(self, "points", pts)

    def segments(self) -> list:
        pts = self.points
        return [(pts[i], pts[(i + 1) % len(pts)]) for i in range(len(pts))]

    def reversed(self) -> "PolygonalCycle":
        return PolygonalCycle(self.points[::-1])

    def is_simple(self) -> bool:
        segs = self.segments()
        k = len(segs)
        if len(set(self.points)) != k:
            return False
        for i, j in itertools.combinations(range(k), 2):
            a, b = segs[i], segs[j]
            if j == i + 1 or (i == 0 and j == k - 1):
                # adjacent: may only share the common vertex
                shared = a[1] if j == i + 1 else a[0]
                other_a = a[0] if shared == a[1] else a[1]
                other_b = b[1] if shared == b[0] else b[0]
                if point_on_segment(other_b, *a) or point_on_segment(other_a, *b):
                    return False
            elif segments_intersect(*a, *b):
                return False
        return True


def cycles_disjoint(A: PolygonalCycle, B: PolygonalCycle) -> bool:
    return not any(segments_intersect(*a, *b) for a in A.segments() for b in B.segments())


@dataclass
class GraphEmbedding:
    """A straight-line embedding of a graph; vertices map to distinct integer points."""

    name: str
    vertices: tuple
    edges: tuple
    coords: dict

    def __post_init__(self):
        self.vertices = tuple(self.vertices)
        self.edges = tuple(tuple(sorted(e)) for e in self.edges)
        self.coords = {v: _as_point(p) for v, p in self.coords.items()}
        missing = [v for v in self.vertices if v not in self.coords]
        if missing:
            raise InvalidInput(f"no coordinates for vertices {missing}")
        for e in self.edges:
            if len(e) != 2 or e[0] == e[1] or any(v not in self.coords for v in e):
                raise InvalidInput(f"bad edge {e}")
        problem = self.violation()
        if problem:
            raise InvalidInput(f"not an embedding: {problem}")

    def violation(self) -> str | None:
        """First violated embedding invariant, or None."""
        pts = [self.coords[v] for v in self.vertices]
        if len(set(pts)) != len(pts):
            return "vertex images are not distinct"
        for e in self.edges:
            a, b = self.coords[e[0]], self.coords[e[1]]
            for v in self.vertices:
                if v not in e and point_on_segment(self.coords[v], a, b):
                    return f"edge {e} passes through vertex {v}"
        for e, f in itertools.combinations(self.edges, 2):
            if set(e) & set(f):
                continue
            if segments_intersect(self.coords[e[0]], self.coords[e[1]], self.coords[f[0]], self.coords[f[1]]):
                return f"edges {e} and {f} intersect"
        return None

    def has_edge(self, u, v) -> bool:
        return tuple(sorted((u, v))) in set(self.edges)

    def cycle(self, vertices: Sequence[str]) -> PolygonalCycle:
        """The polygon through the given graph vertices; each step must be an edge."""
        vs = list(vertices)
        if len(vs) < 3 or len(set(vs)) != len(vs):
            raise InvalidInput(f"cycle {vs} needs at least 3 distinct vertices")
        edges = set(self.edges)
        for i in range(len(vs)):
            e = tuple(sorted((vs[i], vs[(i + 1) % len(vs)])))
            if e not in edges:
                raise InvalidInput(f"{e} is not an edge of {self.name}")
        return PolygonalCycle(tuple(self.coords[v] for v in vs))

    def is_complete(self, m: int) -> bool:
        return len(self.vertices) == m and len(set(self.edges)) == m * (m - 1) // 2

    def to_json(self) -> dict:
        return {"graph": self.name, "coords": {v: list(self.coords[v]) for v in self.vertices}}


def _graph_from_name(name: str) -> tuple[tuple, tuple]:
    m = re.fullmatch(r"K(\d+)", name)
    if m:
        k = int(m.group(1))
        vs = tuple(f"v{i}" for i in range(1, k + 1))
        return vs, tuple(itertools.combinations(vs, 2))
    m = re.fullmatch(r"K(\d+),(\d+)", name)
    if m:
        p, q = int(m.group(1)), int(m.group(2))
        a = tuple(f"a{i}" for i in range(1, p + 1))
        b = tuple(f"b{j}" for j in range(1, q + 1))
        return a + b, tuple((x, y) for x in a for y in b)
    raise InvalidInput(f"unknown graph name {name!r}; use K<m>, K<p>,<q> or give explicit edges")


def embedding_from_json(data: dict) -> GraphEmbedding:
    if not isinstance(data, dict) or "coords" not in data:
        raise InvalidInput("embedding JSON needs a 'coords' object")
    name = data.get("graph", "graph")
    if "edges" in data:
        edges = tuple(tuple(e) for e in data["edges"])
        verts = tuple(sorted({v for e in edges for v in e} | set(data["coords"])))
    else:
        verts, edges = _graph_from_name(name)
    extra = set(data["coords"]) - set(verts)
    if extra:
        raise InvalidInput(f"coordinates for unknown vertices {sorted(extra)}")
    return GraphEmbedding(name, verts, edges, data["coords"])


def _graph_of(graph) -> tuple[str, tuple, tuple]:
    if isinstance(graph, SimplicialComplex):
        if graph.dim > 1:
            raise InvalidInput("a graph must be a complex of dimension <= 1")
        edges = graph.simplices[1] if graph.dim == 1 else ()
        return graph.name, tuple(v for (v,) in graph.simplices[0]), tuple(edges)
    if isinstance(graph, str):
        verts, edges = _graph_from_name(graph)
        return graph, verts, edges
    raise InvalidInput("graph must be a 1-dimensional complex or a name like 'K6'")


def random_embedding(graph, seed: int, max_attempts: int = 1000) -> GraphEmbedding:
    """Seeded straight-line embedding with coordinates in [-1000, 1000]^3."""
    name, verts, edges = _graph_of(graph)
    rng = np.random.default_rng(seed)
    for _ in range(max_attempts):
        pts = rng.integers(-COORD_BOUND, COORD_BOUND, size=(len(verts), 3), endpoint=True)
        coords = {v: tuple(int(x) for x in p) for v, p in zip(verts, pts)}
        trial = GraphEmbedding.__new__(GraphEmbedding)
        trial.name, trial.vertices, trial.edges, trial.coords = name, verts, tuple(edges), coords
        if trial.violation() is None:
            return GraphEmbedding(name, verts, edges, coords)
    raise DegenerateInput(f"no valid embedding of {name} after {max_attempts} draws")


# ---------------------------------------------------------------------------
# linking numbers


def projection_directions() -> Iterable[tuple]:
    """The fixed deterministic sequence of candidate viewing directions."""
    rng = np.random.default_rng(_DIRECTION_SEED)
    while True:
        d = tuple(int(x) for x in rng.integers(-97, 98, size=3))
        if d != (0, 0, 0):
            yield d


def _plane_basis(d):
    e = (1, 0, 0) if abs(d[0]) <= max(abs(d[1]), abs(d[2])) else (0, 1, 0)
    u = _cross(d, e)
    w = _cross(d, u)
    return u, w  # u x w is a positive multiple of d


def _crossing_sum(A: PolygonalCycle, B: PolygonalCycle, d) -> int | None:
    """Signed count of A-over-B crossings seen from +d, or None if d is degenerate.

    "Over" means larger height along d; the viewing vector d points from the
    picture toward the viewer, which gives the usual right-handed crossing sign.
    """
    u, w = _plane_basis(d)
    view = d

    def pr(p):
        return (_dot(p, u), _dot(p, w))

    total = 0
    for a1, a2 in A.segments():
        pa1, pa2 = pr(a1), pr(a2)
        for b1, b2 in B.segments():
            pb1, pb2 = pr(b1), pr(b2)
            o1, o2 = _orient2(pa1, pa2, pb1), _orient2(pa1, pa2, pb2)
            o3, o4 = _orient2(pb1, pb2, pa1), _orient2(pb1, pb2, pa2)
            if ((o1 == 0 and _on_seg2(pb1, pa1, pa2)) or (o2 == 0 and _on_seg2(pb2, pa1, pa2))
                    or (o3 == 0 and _on_seg2(pa1, pb1, pb2)) or (o4 == 0 and _on_seg2(pa2, pb1, pb2))):
                return None
            if not (o1 * o2 < 0 and o3 * o4 < 0):
                continue
            da = (pa2[0] - pa1[0], pa2[1] - pa1[1])
            db = (pb2[0] - pb1[0], pb2[1] - pb1[1])
            den = da[0] * db[1] - da[1] * db[0]
            r = (pb1[0] - pa1[0], pb1[1] - pa1[1])
            t = Fraction(r[0] * db[1] - r[1] * db[0], den)
            s = Fraction(r[0] * da[1] - r[1] * da[0], den)
            ha = _dot(a1, d) + t * _dot(_sub(a2, a1), d)
            hb = _dot(b1, d) + s * _dot(_sub(b2, b1), d)
            if ha == hb:
                raise InvalidInput("cycles intersect")
            if ha > hb:
                total += _sign(_det3(_sub(a2, a1), _sub(b2, b1), view))
    return total


def linking_number(A: PolygonalCycle, B: PolygonalCycle, budget: int = DIRECTION_BUDGET) -> int:
    """Exact linking number of two disjoint closed polygons."""
    if not cycles_disjoint(A, B):
        raise InvalidInput("cycles are not disjoint")
    for k, d in enumerate(projection_directions()):
        if k >= budget:
            break
        val = _crossing_sum(A, B, d)
        if val is not None:
            return val
    raise DegenerateInput(f"no generic projection direction within {budget} tries")


def disjoint_triangle_pairs(e: GraphEmbedding) -> list:
    """Unordered pairs of vertex-disjoint 3-cycles of the graph."""
    edges = set(e.edges)
    tris = [t for t in itertools.combinations(sorted(e.vertices), 3)
            if all(tuple(sorted(p)) in edges for p in itertools.combinations(t, 2))]
    return [(s, t) for s, t in itertools.combinations(tris, 2) if not set(s) & set(t)]


@dataclass(frozen=True)
class OmegaReport:
    value: int
    linked_pairs: tuple
    linking_numbers: dict

    def to_json(self) -> dict:
        return {"omega": self.value, "linked_pairs": [[list(a), list(b)] for a, b in self.linked_pairs],
                "lk": {f"{'-'.join(a)}|{'-'.join(b)}": v for (a, b), v in self.linking_numbers.items()}}


def conway_gordon_report(e: GraphEmbedding) -> OmegaReport:
    if not e.is_complete(6):
        raise InvalidInput(f"the invariant is defined for K6 embeddings, got {e.name} "
                           f"with {len(e.vertices)} vertices and {len(e.edges)} edges")
    lks = {}
    for s, t in disjoint_triangle_pairs(e):
        lks[(s, t)] = linking_number(e.cycle(s), e.cycle(t))
    linked = tuple(p for p, v in lks.items() if v % 2)
    return OmegaReport(sum(lks.values()) % 2, linked, lks)


def conway_gordon_omega(e: GraphEmbedding) -> int:
    """Sum mod 2 of linking numbers over the 10 disjoint triangle pairs of K6."""
    return conway_gordon_report(e).value
