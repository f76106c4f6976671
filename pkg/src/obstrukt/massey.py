"""Simplicial cup products and Massey products over Q.

Cup products use the front-face/back-face (Alexander-Whitney) rule on the
complex's sorted vertex order.  Massey products are built from a defining
system found greedily, one window length at a time, by exact rational
solves of delta c = (required sum).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .complex import Chain, SimplicialComplex, faces
from .errors import InvalidInput
from .linalg import SparseSolver, is_coboundary, nullspace_rational, rank_int, sparse_apply


@dataclass
class Cochain:
    """Rational cochain on every simplex of one degree of an ordered complex."""

    K: SimplicialComplex
    degree: int
    values: list

    def __post_init__(self):
        if len(self.values) != self.K.n_simplices(self.degree):
            raise InvalidInput("cochain length does not match the number of simplices")

    @classmethod
    def zero(cls, K: SimplicialComplex, degree: int) -> "Cochain":
        return cls(K, degree, [0] * K.n_simplices(degree))

    @classmethod
    def from_dict(cls, K: SimplicialComplex, degree: int, values: dict) -> "Cochain":
        c = cls.zero(K, degree)
        for s, v in values.items():
            c.values[K.index(tuple(s))] = v
        return c

    def __add__(self, other: "Cochain") -> "Cochain":
        _same(self, other)
        return Cochain(self.K, self.degree, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other: "Cochain") -> "Cochain":
        _same(self, other)
        return Cochain(self.K, self.degree, [a - b for a, b in zip(self.values, other.values)])

    def __neg__(self) -> "Cochain":
        return Cochain(self.K, self.degree, [-a for a in self.values])

    def scale(self, k) -> "Cochain":
        return Cochain(self.K, self.degree, [k * a for a in self.values])

    def is_zero(self) -> bool:
        return not any(self.values)

    def __call__(self, simplex) -> object:
        return self.values[self.K.index(tuple(simplex))]


def _same(a: Cochain, b: Cochain):
    if a.K is not b.K and a.K != b.K:
        raise InvalidInput("cochains live on different complexes")
    if a.degree != b.degree:
        raise InvalidInput("cochain degrees differ")


def delta(c: Cochain) -> Cochain:
    rows = c.K.coboundary_rows(c.degree)
    return Cochain(c.K, c.degree + 1, sparse_apply(rows, c.values))


def is_cocycle(c: Cochain) -> bool:
    return delta(c).is_zero()


def cup(c1: Cochain, c2: Cochain) -> Cochain:
    """(c1 u c2)(v0..v_{p+q}) = c1(v0..vp) * c2(vp..v_{p+q})."""
    if c1.K is not c2.K and c1.K != c2.K:
        raise InvalidInput("cup product of cochains on different complexes")
    K, p, q = c1.K, c1.degree, c2.degree
    out = []
    for s in K.simplices[p + q] if p + q <= K.dim else ():
        a = c1.values[K.index(s[:p + 1])]
        out.append(a * c2.values[K.index(s[p:])] if a else 0)
    return Cochain(K, p + q, out)


def evaluate(c: Cochain, chain: Chain):
    """Kronecker pairing of a cochain with a chain."""
    if c.degree != chain.dim:
        raise InvalidInput(f"cannot pair a degree-{c.degree} cochain with a {chain.dim}-chain")
    return sum(c.values[i] * v for i, v in chain.coefficients.items())


def coboundary_witness(c: Cochain) -> Optional[Cochain]:
    """A (d-1)-cochain b with delta b = c over Q, or None."""
    x = is_coboundary(c.K, c.values, c.degree, "Q")
    if x is None:
        return None
    return Cochain(c.K, c.degree - 1, x)


# ---------------------------------------------------------------------------
# cohomology bases


def _independent_mod(vectors: list, basis: list) -> list:
    """Greedy subset of `vectors` independent modulo span(basis) (over Q)."""
    def scaled(v):
        den = 1
        for x in v:
            den = den * Fraction(x).denominator // _gcd(den, Fraction(x).denominator)
        return [int(Fraction(x) * den) for x in v]

    current = [scaled(b) for b in basis]
    r = rank_int(current) if current else 0
    chosen = []
    for v in vectors:
        trial = current + [scaled(v)]
        r2 = rank_int(trial)
        if r2 > r:
            current, r = trial, r2
            chosen.append(v)
    return chosen


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def cohomology_basis(K: SimplicialComplex, degree: int = 1) -> list[Cochain]:
    """Cocycles representing a basis of H^degree(K;Q)."""
    n = K.n_simplices(degree)
    rows = K.coboundary_rows(degree)
    null, _ = nullspace_rational(rows, n)
    cocycles = [[vec.get(i, 0) for i in range(n)] for vec in null]
    if degree == 0:
        return [Cochain(K, 0, c) for c in cocycles]
    prev = K.coboundary_rows(degree - 1)
    boundaries = [[0] * n for _ in range(K.n_simplices(degree - 1))]
    for i, row in enumerate(prev):
        for j, v in row.items():
            boundaries[j][i] = v
    return [Cochain(K, degree, c) for c in _independent_mod(cocycles, boundaries)]


def extend_cocycle(K: SimplicialComplex, fixed: dict) -> Cochain:
    """A 1-cocycle with the prescribed values on some edges, zero-free elsewhere as solved."""
    n = K.n_simplices(1)
    fixed_idx = {K.index(tuple(sorted(e))): v for e, v in fixed.items()}
    base = [0] * n
    for i, v in fixed_idx.items():
        base[i] = v
    rows = K.coboundary_rows(1)
    rhs = [-x for x in sparse_apply(rows, base)]
    free_cols = [j for j in range(n) if j not in fixed_idx]
    pos = {j: k for k, j in enumerate(free_cols)}
    sub = [{pos[j]: v for j, v in r.items() if j in pos} for r in rows]
    sol = SparseSolver(sub, len(free_cols), "Q").solve(rhs)
    if sol is None:
        raise InvalidInput("prescribed edge values do not extend to a cocycle")
    for j, v in zip(free_cols, sol):
        base[j] = v
    c = Cochain(K, 1, base)
    assert is_cocycle(c)
    return c


def meridian_classes(K: SimplicialComplex, gens: Sequence[str] = ("x", "y"), normalization: int = -1) -> dict:
    """H^1 classes dual to the wedge circles of a one-relator complex.

    The class of g is supported on the circle edge (o, g1) and pairs to
    `normalization` with the loop g.  With the default -1, the Massey product
    <a_{i1}, ..., a_{im}> on the relator disk equals the Magnus coefficient of
    X_{i1}...X_{im} with the same sign at every order m; with +1 the two
    differ by (-1)^m.
    """
    if normalization not in (1, -1):
        raise InvalidInput("normalization must be +1 or -1")
    out = {}
    circle_edges = {g: [("o", f"{g}1"), (f"{g}1", f"{g}2"), ("o", f"{g}2")] for g in gens}
    for g in gens:
        fixed = {}
        for h in gens:
            for e in circle_edges[h]:
                fixed[e] = normalization if (h == g and e == ("o", f"{g}1")) else 0
        out[g] = extend_cocycle(K, fixed)
    return out


# ---------------------------------------------------------------------------
# Massey products


@dataclass
class MasseyReport:
    classes: list
    status: str  # "defined" | "undefined-at-stage-(i,k)"
    representative: Optional[Cochain] = None
    defining_system: dict = field(default_factory=dict)
    indeterminacy: list = field(default_factory=list)
    evaluation: Optional[Fraction] = None
    obstruction: Optional[Cochain] = None

    @property
    def defined(self) -> bool:
        return self.status == "defined"

    @property
    def unique(self) -> bool:
        """True when the indeterminacy subspace is zero in H^2."""
        return all(coboundary_witness(c) is not None for c in self.indeterminacy)

    def to_json(self) -> dict:
        def num(v):
            v = Fraction(v)
            return v.numerator if v.denominator == 1 else str(v)

        rep = None
        if self.representative is not None:
            K = self.representative.K
            rep = {",".join(s): num(v) for s, v in zip(K.simplices[2], self.representative.values) if v}
        return {
            "order": len(self.classes),
            "status": self.status,
            "representative": rep,
            "evaluation": None if self.evaluation is None else num(self.evaluation),
            "indeterminacy_rank": len(self.indeterminacy),
            "unique": self.unique if self.defined else None,
        }


def massey_product(classes: Sequence[Cochain], cycle: Chain | None = None) -> MasseyReport:
    """One member of <a_1, ..., a_m> from a greedily built defining system."""
    m = len(classes)
    if m < 2:
        raise InvalidInput("Massey products need at least two classes")
    for c in classes:
        if c.degree != 1:
            raise InvalidInput("Massey product inputs must be 1-cochains")
        if not is_cocycle(c):
            raise InvalidInput("Massey product input is not a cocycle")
    K = classes[0].K
    sysm: dict = {(i, i): classes[i - 1] for i in range(1, m + 1)}

    def required(i, k):
        acc = Cochain.zero(K, 2)
        for j in range(i, k):
            acc = acc + cup(sysm[(i, j)], sysm[(j + 1, k)])
        return acc

    for w in range(1, m - 1):
        for i in range(1, m - w + 1):
            k = i + w
            rhs = required(i, k)
            c = coboundary_witness(rhs)
            if c is None:
                return MasseyReport(list(classes), f"undefined-at-stage-({i},{k})", defining_system=sysm,
                                    obstruction=rhs)
            sysm[(i, k)] = c
    # verify the defining system post hoc
    for (i, k), c in sysm.items():
        if i < k and delta(c).values != required(i, k).values:
            raise AssertionError(f"defining system fails at ({i},{k})")
    rep = required(1, m)
    if not is_cocycle(rep):
        raise AssertionError("Massey representative is not a cocycle")
    h1 = cohomology_basis(K, 1)
    indet = [cup(classes[0], h) for h in h1] + [cup(h, classes[-1]) for h in h1] if m > 2 else []
    ev = Fraction(evaluate(rep, cycle)) if cycle is not None else None
    return MasseyReport(list(classes), "defined", rep, sysm, indet, ev)
