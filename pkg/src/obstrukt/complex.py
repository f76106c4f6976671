"""Abstract simplicial complexes, chains and the constructions used to build K_alpha.

Simplices are stored as strictly increasing tuples of string vertex labels.
All orientation signs derive from that sorted order.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

import numpy as np

from .errors import InvalidInput

Simplex = tuple  # tuple[str, ...], strictly increasing
Number = Union[int, Fraction]


def _label(v) -> str:
    return v if isinstance(v, str) else str(v)


def orient(vertices: Sequence[str]) -> tuple[Simplex, int]:
    """Sort an ordered vertex list; return (sorted simplex, permutation sign)."""
    verts = list(vertices)
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(verts)):
        j = i
        while j > 0 and verts[j - 1] > verts[j]:
            verts[j - 1], verts[j] = verts[j], verts[j - 1]
            sign = -sign
            j -= 1
    return tuple(verts), sign


def faces(simplex: Simplex) -> list[tuple[int, Simplex]]:
    """Codimension-one faces with their incidence signs (-1)**i."""
    if len(simplex) < 2:
        return []
    return [((-1) ** i, simplex[:i] + simplex[i + 1:]) for i in range(len(simplex))]


@dataclass(frozen=True)
class DiskRecord:
    """Bookkeeping for a disk glued on by `attach_disk`."""

    loop: tuple
    ring: tuple
    apex: str


class SimplicialComplex:
    """A finite abstract simplicial complex with a global (sorted) vertex order."""

    def __init__(self, simplices: Iterable[Simplex], name: str = "K",
                 disks: Sequence[DiskRecord] = ()):
        by_dim: dict[int, set] = {}
        for s in simplices:
            by_dim.setdefault(len(s) - 1, set()).add(tuple(s))
        top = max(by_dim) if by_dim else -1
        self.name = name
        self.simplices: tuple[tuple[Simplex, ...], ...] = tuple(
            tuple(sorted(by_dim.get(d, ()))) for d in range(top + 1))
        self.vertices: tuple[str, ...] = tuple(s[0] for s in self.simplices[0]) if top >= 0 else ()
        self._index = [{s: i for i, s in enumerate(ss)} for ss in self.simplices]
        self.disks = tuple(disks)
        self._cache: dict = {}

    # -- basic queries -------------------------------------------------
    @property
    def dim(self) -> int:
        return len(self.simplices) - 1

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices)

    def euler_characteristic(self) -> int:
        return sum((-1) ** d * n for d, n in enumerate(self.f_vector))

    def index(self, simplex: Simplex) -> int:
        return self._index[len(simplex) - 1][simplex]

    def __contains__(self, simplex) -> bool:
        d = len(simplex) - 1
        return 0 <= d <= self.dim and tuple(simplex) in self._index[d]

    def n_simplices(self, d: int) -> int:
        return len(self.simplices[d]) if 0 <= d <= self.dim else 0

    def maximal_simplices(self) -> list[Simplex]:
        out = []
        for d in range(self.dim + 1):
            cofaced = set()
            if d < self.dim:
                for s in self.simplices[d + 1]:
                    cofaced.update(f for _, f in faces(s))
            out.extend(s for s in self.simplices[d] if s not in cofaced)
        return out

    def has_edge(self, u: str, v: str) -> bool:
        return tuple(sorted((u, v))) in self._index[1] if self.dim >= 1 else False

    def is_closed_under_faces(self) -> bool:
        return all(f in self for ss in self.simplices[1:] for s in ss for _, f in faces(s))

    def __repr__(self):
        return f"SimplicialComplex({self.name!r}, f={self.f_vector})"

    def __eq__(self, other):
        return isinstance(other, SimplicialComplex) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    # -- cochain-complex protocol used by linalg.is_coboundary ----------
    def cochain_dim(self, d: int) -> int:
        return self.n_simplices(d)

    def coboundary_rows(self, d: int) -> list[dict]:
        """Rows of delta^d : C^d -> C^{d+1}, one dict per (d+1)-simplex."""
        key = ("cob", d)
        if key not in self._cache:
            rows = []
            if 0 <= d < self.dim:
                idx = self._index[d]
                for s in self.simplices[d + 1]:
                    rows.append({idx[f]: sgn for sgn, f in faces(s)})
            else:
                rows = [{} for _ in range(self.n_simplices(d + 1))]
            self._cache[key] = rows
        return self._cache[key]

    # -- serialization ----------------------------------------------------
    def to_json(self) -> dict:
        out = {"name": self.name, "maximal": [list(s) for s in self.maximal_simplices()]}
        if self.disks:
            out["disks"] = [{"loop": list(d.loop), "ring": list(d.ring), "apex": d.apex} for d in self.disks]
        return out


@dataclass
class Chain:
    """Finite linear combination of d-simplices, keyed by simplex index."""

    dim: int
    coefficients: dict = field(default_factory=dict)
    rational: bool = False

    def on(self, K: SimplicialComplex) -> dict:
        return {K.simplices[self.dim][i]: c for i, c in self.coefficients.items()}


@dataclass(frozen=True)
class EdgeLoop:
    """Closed edge path v_0 ... v_L with v_L == v_0."""

    vertices: tuple

    def __post_init__(self):
        vs = tuple(_label(v) for v in self.vertices)
        object.__setattr__(self, "vertices", vs)
        if len(vs) < 2 or vs[0] != vs[-1]:
            raise InvalidInput("edge loop must start and end at the same vertex")
        for a, b in zip(vs, vs[1:]):
            if a == b:
                raise InvalidInput(f"edge loop repeats vertex {a!r} consecutively")

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def edges(self) -> list[tuple[str, str]]:
        return list(zip(self.vertices, self.vertices[1:]))

    def is_valid_in(self, K: SimplicialComplex) -> bool:
        return all(K.has_edge(a, b) for a, b in self.edges())


# ---------------------------------------------------------------------------
# constructions


def build_complex(maximal: Iterable[Sequence], name: str = "K") -> SimplicialComplex:
    """Face closure of a list of vertex lists."""
    closure = set()
    for raw in maximal:
        verts = [_label(v) for v in raw]
        if not verts:
            raise InvalidInput("empty simplex")
        if len(set(verts)) != len(verts):
            raise InvalidInput(f"duplicate vertex inside simplex {raw!r}")
        s = tuple(sorted(verts))
        for k in range(1, len(s) + 1):
            closure.update(itertools.combinations(s, k))
    return SimplicialComplex(closure, name=name)


def boundary_matrix(K: SimplicialComplex, d: int) -> np.ndarray:
    """Integer matrix of the boundary map C_d -> C_{d-1} (object dtype)."""
    if not 1 <= d <= K.dim:
        raise InvalidInput(f"boundary degree {d} outside 1..{K.dim}")
    A = np.zeros((K.n_simplices(d - 1), K.n_simplices(d)), dtype=object)
    idx = K._index[d - 1]
    for j, s in enumerate(K.simplices[d]):
        for sgn, f in faces(s):
            A[idx[f], j] = sgn
    return A


def _fresh_prefix(K: SimplicialComplex, stem: str) -> str:
    taken = set(K.vertices)
    k = 1
    while True:
        prefix = f"{stem}{k}:"
        if not any(v.startswith(prefix) for v in taken):
            return prefix
        k += 1


def attach_disk(K: SimplicialComplex, loop: Union[EdgeLoop, Sequence[str]],
                name: str | None = None) -> SimplicialComplex:
    """Glue a triangulated disk along an edge loop.

    The disk is an annulus between the loop and a ring r_0..r_{L-1} of fresh
    vertices, capped by a cone from a fresh apex.  Every new triangle contains
    a fresh ring vertex, so the result stays simplicial even when the loop
    revisits vertices or edges.
    """
    if not isinstance(loop, EdgeLoop):
        loop = EdgeLoop(tuple(loop))
    L = loop.length
    if L < 3:
        raise InvalidInput("attaching loop needs length >= 3")
    if not loop.is_valid_in(K):
        raise InvalidInput("attaching loop uses an edge not in the complex")
    prefix = _fresh_prefix(K, "D")
    ring = tuple(f"{prefix}r{i}" for i in range(L))
    apex = f"{prefix}apex"
    v = loop.vertices
    new = []
    for i in range(L):
        j = (i + 1) % L
        new += [(v[i], v[i + 1], ring[i]), (v[i + 1], ring[i], ring[j]), (ring[i], ring[j], apex)]
    closure = set(s for ss in K.simplices for s in ss)
    for t in new:
        s = tuple(sorted(t))
        for k in range(1, 4):
            closure.update(itertools.combinations(s, k))
    return SimplicialComplex(closure, name=name or f"{K.name}+disk",
                             disks=K.disks + (DiskRecord(loop.vertices, ring, apex),))


def disk_chain(K: SimplicialComplex, which: int = -1) -> Chain:
    """Oriented 2-chain of an attached disk; its boundary is the attaching loop."""
    rec = K.disks[which]
    v, ring, apex = rec.loop, rec.ring, rec.apex
    L = len(ring)
    coeffs: dict[int, int] = {}
    for i in range(L):
        j = (i + 1) % L
        for tri in ((v[i], v[i + 1], ring[i]), (ring[i], v[i + 1], ring[j]), (ring[i], ring[j], apex)):
            s, sgn = orient(tri)
            k = K.index(s)
            coeffs[k] = coeffs.get(k, 0) + sgn
    return Chain(2, {k: c for k, c in coeffs.items() if c})


def loop_chain(K: SimplicialComplex, loop: EdgeLoop) -> Chain:
    """The 1-chain traced by an edge loop."""
    coeffs: dict[int, int] = {}
    for a, b in loop.edges():
        s, sgn = orient((a, b))
        k = K.index(s)
        coeffs[k] = coeffs.get(k, 0) + sgn
    return Chain(1, {k: c for k, c in coeffs.items() if c})


def boundary_of_chain(K: SimplicialComplex, chain: Chain) -> Chain:
    out: dict[int, Number] = {}
    for i, c in chain.coefficients.items():
        for sgn, f in faces(K.simplices[chain.dim][i]):
            k = K.index(f)
            out[k] = out.get(k, 0) + sgn * c
    return Chain(chain.dim - 1, {k: c for k, c in out.items() if c}, chain.rational)


def relabel(K: SimplicialComplex, mapping: dict, name: str | None = None) -> SimplicialComplex:
    simplices = set()
    for ss in K.simplices:
        for s in ss:
            t = tuple(sorted(mapping.get(v, v) for v in s))
            if len(set(t)) != len(t):
                raise InvalidInput("relabelling collapses a simplex")
            simplices.add(t)
    disks = tuple(DiskRecord(tuple(mapping.get(v, v) for v in d.loop),
                             tuple(mapping.get(v, v) for v in d.ring),
                             mapping.get(d.apex, d.apex)) for d in K.disks)
    return SimplicialComplex(simplices, name=name or K.name, disks=disks)


def wedge(K1: SimplicialComplex, v1: str, K2: SimplicialComplex, v2: str,
          name: str | None = None) -> SimplicialComplex:
    """One-point union identifying v2 in K2 with v1 in K1."""
    if v1 not in K1.vertices or v2 not in K2.vertices:
        raise InvalidInput("wedge point missing from its complex")
    taken = set(K1.vertices)
    mapping = {v2: v1}
    for v in K2.vertices:
        if v == v2:
            continue
        w = v
        while w in taken:
            w += "'"
        mapping[v] = w
        taken.add(w)
    K2r = relabel(K2, mapping)
    simplices = set(s for ss in K1.simplices for s in ss) | set(s for ss in K2r.simplices for s in ss)
    return SimplicialComplex(simplices, name=name or f"{K1.name}v{K2.name}", disks=K1.disks + K2r.disks)


def remove_simplex(K: SimplicialComplex, simplex: Sequence, name: str | None = None) -> SimplicialComplex:
    """Delete a maximal simplex, keeping its faces."""
    s = tuple(sorted(_label(v) for v in simplex))
    if s not in K:
        raise InvalidInput(f"{s} is not a simplex of {K.name}")
    if s not in K.maximal_simplices():
        raise InvalidInput(f"{s} is not maximal")
    keep = [t for ss in K.simplices for t in ss if t != s]
    return SimplicialComplex(keep, name=name or K.name, disks=K.disks)


def stellar_subdivide(K: SimplicialComplex, simplex: Sequence, name: str | None = None) -> SimplicialComplex:
    """Stellar subdivision of K at a simplex (new vertex in its interior)."""
    s = tuple(sorted(_label(v) for v in simplex))
    if s not in K:
        raise InvalidInput(f"{s} is not a simplex of {K.name}")
    centre = "*" + "".join(s)
    while centre in K.vertices:
        centre += "*"
    out = set()
    sset = set(s)
    for ss in K.simplices:
        for t in ss:
            if not sset <= set(t):
                out.add(t)
                continue
            # t is in the open star of s: replace by joins centre * (faces of t missing s)
            rest = tuple(v for v in t if v not in sset)
            for k in range(len(s)):
                for sf in itertools.combinations(s, k):
                    out.add(tuple(sorted(sf + rest + (centre,))))
    for t in list(out):
        for k in range(1, len(t)):
            out.update(itertools.combinations(t, k))
    return SimplicialComplex(out, name=name or f"sd({K.name})")


# ---------------------------------------------------------------------------
# JSON


def complex_from_json(data: Union[str, dict]) -> SimplicialComplex:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "maximal" not in data:
        raise InvalidInput("complex JSON needs a 'maximal' list")
    maximal = data["maximal"]
    if not isinstance(maximal, list) or not all(isinstance(m, list) for m in maximal):
        raise InvalidInput("'maximal' must be a list of vertex lists")
    K = build_complex(maximal, name=str(data.get("name", "K")))
    disks = []
    for d in data.get("disks", []):
        try:
            rec = DiskRecord(tuple(d["loop"]), tuple(d["ring"]), d["apex"])
        except (KeyError, TypeError) as exc:
            raise InvalidInput(f"bad disk record {d!r}") from exc
        if len(rec.loop) != len(rec.ring) + 1 or rec.apex not in K.vertices:
            raise InvalidInput(f"disk record {d!r} does not match the complex")
        disks.append(rec)
    if disks:
        K = SimplicialComplex([s for ss in K.simplices for s in ss], name=K.name, disks=disks)
        for i in range(len(disks)):
            try:
                disk_chain(K, i)
            except (KeyError, InvalidInput) as exc:
                raise InvalidInput(f"disk {i} is not a disk of the complex") from exc
    return K


def loop_from_json(data: Union[str, dict]) -> EdgeLoop:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "loop" not in data:
        raise InvalidInput("loop JSON needs a 'loop' list")
    return EdgeLoop(tuple(data["loop"]))
