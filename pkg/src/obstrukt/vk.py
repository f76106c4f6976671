"""Generic PL maps to R^{2n}, the Van Kampen cochain and its class.

Everything here is exact: vertex images are integer points, intersection
tests solve barycentric systems with integer (Cramer/Bareiss) arithmetic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .complex import Chain, SimplicialComplex
from .errors import DegenerateInput, InvalidInput
from .linalg import (RINGS, SparseSolver, coboundary_solver, det, is_coboundary, nullspace_rational,
                     rank_int)
from .products import DeletedProduct, EquivariantCochainComplex, deleted_product, equivariant_complex

COORD_RANGE = 10 ** 6
RETRY_BUDGET = 100


@dataclass(frozen=True)
class GenericMap:
    n: int
    points: dict  # vertex -> tuple of 2n ints
    seed: int
    attempts: int = 1

    def __call__(self, v: str) -> tuple:
        return self.points[v]


def _affinely_independent(pts: Sequence[tuple]) -> bool:
    if len(pts) <= 1:
        return True
    p0 = pts[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in pts[1:]]
    if len(diffs) > len(p0):
        return False
    return rank_int(diffs) == len(diffs)


def check_general_position(K: SimplicialComplex, n: int, points: dict) -> bool:
    """Exact validation of the general-position conditions for a vertex map.

    Pairs of maximal simplices are enough: a union with at most 2n+1 vertices
    must be affinely independent (so shared faces are the only overlaps);
    a disjoint pair of n-simplices must have every 2n+1 of its 2n+2 images
    affinely independent, which forces transverse isolated intersections.
    """
    cache: dict = {}

    def indep(vs: frozenset) -> bool:
        r = cache.get(vs)
        if r is None:
            r = _affinely_independent([points[v] for v in sorted(vs)])
            cache[vs] = r
        return r

    maximal = K.maximal_simplices()
    if len(set(points[v] for v in K.vertices)) != len(K.vertices):
        return False
    for s in maximal:
        if not indep(frozenset(s)):
            return False
    for s, t in itertools.combinations(maximal, 2):
        u = frozenset(s) | frozenset(t)
        if len(u) <= 2 * n + 1:
            if not indep(u):
                return False
        else:
            for v in u:
                if not indep(u - {v}):
                    return False
    return True


def generic_map(K: SimplicialComplex, n: int, seed: int = 1) -> GenericMap:
    """Random integer vertex map K -> R^{2n} in exact general position."""
    if K.dim > n:
        raise InvalidInput(f"complex of dimension {K.dim} cannot be mapped generically to R^{2 * n} this way")
    rng = np.random.default_rng(seed)
    for attempt in range(1, RETRY_BUDGET + 1):
        coords = rng.integers(-COORD_RANGE, COORD_RANGE, size=(len(K.vertices), 2 * n), endpoint=True)
        points = {v: tuple(int(x) for x in row) for v, row in zip(K.vertices, coords)}
        if check_general_position(K, n, points):
            return GenericMap(n, points, seed, attempt)
    raise DegenerateInput(f"no general-position map found in {RETRY_BUDGET} attempts")


def _solve_exact(M: list[list[int]], rhs: list[int]) -> Optional[list[Fraction]]:
    """Unique solution of a square integer system, or None if singular."""
    n = len(M)
    A = [list(row) + [b] for row, b in zip(M, rhs)]
    for k in range(n):
        p = next((i for i in range(k, n) if A[i][k] != 0), None)
        if p is None:
            return None
        A[k], A[p] = A[p], A[k]
        pk = A[k][k]
        for i in range(n):
            if i != k and A[i][k]:
                a = A[i][k]
                A[i] = [x * pk - a * y for x, y in zip(A[i], A[k])]
        # keep entries small
        for i in range(n):
            g = 0
            for x in A[i]:
                g = gcd(g, x)
            if g > 1:
                A[i] = [x // g for x in A[i]]
    return [Fraction(A[i][n], A[i][i]) for i in range(n)]


def pair_intersection(f: GenericMap, sigma: Sequence[str], tau: Sequence[str]) -> int:
    """Signed intersection number of the images of two disjoint n-simplices."""
    n = f.n
    if len(sigma) != n + 1 or len(tau) != n + 1:
        raise InvalidInput("pair_intersection needs two n-simplices")
    if set(sigma) & set(tau):
        raise InvalidInput("simplices share a vertex")
    A = [f(v) for v in sigma]
    B = [f(v) for v in tau]
    # quick reject: disjoint bounding boxes
    for k in range(2 * n):
        if max(p[k] for p in A) < min(p[k] for p in B) or max(p[k] for p in B) < min(p[k] for p in A):
            return 0
    M = [[p[k] for p in A] + [-q[k] for q in B] for k in range(2 * n)]
    M.append([1] * (n + 1) + [0] * (n + 1))
    M.append([0] * (n + 1) + [1] * (n + 1))
    rhs = [0] * (2 * n) + [1, 1]
    sol = _solve_exact(M, rhs)
    if sol is None:
        raise InvalidInput("degenerate barycentric system: map is not generic")
    if any(x <= 0 for x in sol):
        return 0
    frame = [[a - b for a, b in zip(p, A[0])] for p in A[1:]] + [[a - b for a, b in zip(q, B[0])] for q in B[1:]]
    d = det(frame)
    if d == 0:
        raise InvalidInput("non-transverse intersection: map is not generic")
    return 1 if d > 0 else -1


@dataclass
class ObstructionCochain:
    """Van Kampen cochain on orbit representatives of top cells of K*."""

    n: int
    complex: EquivariantCochainComplex
    values: list
    map: GenericMap

    def value(self, sigma: tuple, tau: tuple) -> int:
        return self.complex.value(self.values, (sigma, tau))

    def support(self) -> list:
        top = 2 * self.n
        return [(self.complex.reps[top][i], v) for i, v in enumerate(self.values) if v]


def vk_setup(K: SimplicialComplex, n: int) -> EquivariantCochainComplex:
    """Cached deleted product and equivariant complex of K (degrees <= 2n)."""
    key = ("vk-eq", n)
    if key not in K._cache:
        P = deleted_product(K, max_dim=2 * n)
        K._cache[key] = equivariant_complex(P, n)
    return K._cache[key]


def vk_cochain(K: SimplicialComplex, n: int, f: GenericMap) -> ObstructionCochain:
    if K.dim > n:
        raise InvalidInput("dim K exceeds n")
    E = vk_setup(K, n)
    top = 2 * n
    values = []
    for sigma, tau in E.reps[top]:
        values.append(pair_intersection(f, sigma, tau) if len(sigma) == len(tau) == n + 1 else 0)
    oc = ObstructionCochain(n, E, values, f)
    # equivariance: recompute on the swapped cells directly
    for (sigma, tau), v in zip(E.reps[top], values):
        if v and pair_intersection(f, tau, sigma) != (-1) ** n * v:
            raise AssertionError("Van Kampen cochain is not equivariant")
    return oc


@dataclass
class ObstructionReport:
    verdict: str  # "zero" | "nonzero"
    coeff: str
    n: int
    cochain: ObstructionCochain
    witness: Optional[list] = None
    certified_by: str = ""
    seed: int = 1

    @property
    def is_zero(self) -> bool:
        return self.verdict == "zero"

    def to_json(self) -> dict:
        E = self.cochain.complex
        top = 2 * self.n

        def cell(c):
            return [list(c[0]), list(c[1])]

        wit = None
        if self.witness is not None:
            wit = [[cell(E.reps[top - 1][i]), _jsonnum(v)] for i, v in enumerate(self.witness) if v]
        return {
            "verdict": self.verdict,
            "coeff": self.coeff,
            "n": self.n,
            "certified_by": self.certified_by,
            "cells": {str(d): c for d, c in enumerate(E.counts())},
            "cochain": [[cell(c), v] for c, v in self.cochain.support()],
            "witness": wit,
            "seed": self.seed,
        }


def _jsonnum(v):
    if isinstance(v, Fraction):
        return v.numerator if v.denominator == 1 else str(v)
    return v


def vk_class(K: SimplicialComplex, n: int, coeff: str = "Z", seed: int = 1,
             f: GenericMap | None = None) -> ObstructionReport:
    """Decide whether the Van Kampen class of K vanishes over coeff."""
    if coeff not in RINGS:
        raise InvalidInput(f"coefficient ring must be one of {RINGS}")
    if K.dim > n:
        raise InvalidInput("dim K exceeds n")
    f = f or generic_map(K, n, seed)
    oc = vk_cochain(K, n, f)
    E = oc.complex
    top = 2 * n
    if coeff == "Z":
        # cheap certificate first
        if is_coboundary(E, oc.values, top, "Z2") is None:
            return ObstructionReport("nonzero", coeff, n, oc, None, "nonvanishing mod 2", f.seed)
    x = is_coboundary(E, oc.values, top, coeff)
    if x is None:
        how = {"Z": "integer SNF solvability", "Q": "rational elimination", "Z2": "elimination mod 2"}[coeff]
        return ObstructionReport("nonzero", coeff, n, oc, None, how, f.seed)
    return ObstructionReport("zero", coeff, n, oc, x, "explicit coboundary witness", f.seed)


# ---------------------------------------------------------------------------
# rational, non-equivariant picture


@dataclass
class BilinearFormH2:
    """A bilinear form on H_2(K;Q), in the basis of `h2_basis(K)`."""

    basis: list  # list[Chain] with rational coefficients
    matrix: list  # square list of lists of Fractions

    def __post_init__(self):
        b = len(self.basis)
        if len(self.matrix) != b or any(len(r) != b for r in self.matrix):
            raise InvalidInput(f"form matrix must be {b}x{b}")

    def __call__(self, i: int, j: int):
        return self.matrix[i][j]


def h2_basis(K: SimplicialComplex) -> tuple[list[Chain], list[int]]:
    """Cycle basis of H_2(K;Q) for a 2-complex, plus the dual triangle indices.

    Cycle z_k has coefficient 1 on triangle free[k] and 0 on the other free
    triangles, so the indicator cochains of the free triangles form a dual
    basis of H^2.
    """
    if K.dim != 2:
        return [], []
    key = "h2basis"
    if key not in K._cache:
        # boundary d2 as rows over triangles (one row per edge)
        rows = [dict() for _ in range(K.n_simplices(1))]
        for j, r in enumerate(K.coboundary_rows(1)):
            for i, v in r.items():
                rows[i][j] = v
        null, free = nullspace_rational(rows, K.n_simplices(2))
        K._cache[key] = ([Chain(2, dict(vec), True) for vec in null], free)
    return K._cache[key]


def nonequivariant_solver(K: SimplicialComplex, n: int = 2) -> tuple[DeletedProduct, SparseSolver]:
    key = ("vk-full", n)
    if key not in K._cache:
        E = vk_setup(K, n)
        P = E.P
        K._cache[key] = (P, coboundary_solver(P, 2 * n, "Q"))
    return K._cache[key]


@dataclass
class ClassDescriptor:
    """A class in H^{2n}(K*;Q) as coordinates in a fixed cokernel basis."""

    coords: dict

    def is_zero(self) -> bool:
        return not self.coords

    def __add__(self, other: "ClassDescriptor") -> "ClassDescriptor":
        out = dict(self.coords)
        for k, v in other.coords.items():
            out[k] = out.get(k, 0) + v
            if not out[k]:
                del out[k]
        return ClassDescriptor(out)

    def __neg__(self):
        return ClassDescriptor({k: -v for k, v in self.coords.items()})

    def __eq__(self, other):
        return isinstance(other, ClassDescriptor) and self.coords == other.coords


def cochain_class(K: SimplicialComplex, full_values: Sequence, n: int = 2) -> ClassDescriptor:
    """Class of a top-degree cochain on all ordered cells of K* in H^{2n}(K*;Q)."""
    _, S = nonequivariant_solver(K, n)
    return ClassDescriptor(S.cokernel_coordinates(list(full_values)))


def full_vk_values(oc: ObstructionCochain) -> list:
    E = oc.complex
    return E.expand(oc.values, 2 * oc.n)


def vk_image_rational(K: SimplicialComplex, seed: int = 1, f: GenericMap | None = None) -> ClassDescriptor:
    """Image of the Van Kampen class in ordinary H^4(K*;Q)."""
    f = f or generic_map(K, 2, seed)
    oc = vk_cochain(K, 2, f)
    return cochain_class(K, full_vk_values(oc), 2)


def extended_vk_value(oc: ObstructionCochain, sigma: tuple, tau: tuple, framings: dict | None = None):
    """The Van Kampen cochain extended by zero over the diagonal of K x K.

    ``framings`` optionally supplies values on sigma x sigma.
    """
    if sigma == tau:
        return (framings or {}).get(sigma, 0)
    if set(sigma) & set(tau):
        return 0
    return oc.value(sigma, tau)


def intersection_form_from_vk(K: SimplicialComplex, oc: ObstructionCochain,
                              framings: dict | None = None) -> BilinearFormH2:
    """The form (a, b) -> -(extended o_f)(a x b) on the fixed H_2 cycle basis."""
    basis, _ = h2_basis(K)
    tris = K.simplices[2]
    supp = [[(tris[i], Fraction(c)) for i, c in z.coefficients.items()] for z in basis]
    b = len(basis)
    M = [[Fraction(0)] * b for _ in range(b)]
    for i in range(b):
        for j in range(b):
            s = Fraction(0)
            for sg, a in supp[i]:
                for tg, c in supp[j]:
                    v = extended_vk_value(oc, sg, tg, framings)
                    if v:
                        s += a * c * v
            M[i][j] = -s
    return BilinearFormH2(basis, M)


def pairing_pullback_cochain(K: SimplicialComplex, form: BilinearFormH2) -> list:
    """Product cocycle sum_ij B_ij phi_i x phi_j restricted to top cells of K*."""
    basis, free = h2_basis(K)
    if len(form.basis) != len(basis):
        raise InvalidInput(f"form has size {len(form.basis)} but b_2(K) = {len(basis)}")
    P, _ = nonequivariant_solver(K, 2)
    pos = {K.index(K.simplices[2][t]): k for k, t in enumerate(free)}
    out = []
    for sigma, tau in P.cells[4]:
        i = pos.get(K.index(sigma)) if len(sigma) == 3 else None
        j = pos.get(K.index(tau)) if len(tau) == 3 else None
        out.append(form.matrix[i][j] if i is not None and j is not None else 0)
    return out


def pairing_pullback(K: SimplicialComplex, form: BilinearFormH2) -> ClassDescriptor:
    """Pull a form on H_2 back to H^4(K x K) and restrict it to H^4(K*;Q)."""
    return cochain_class(K, pairing_pullback_cochain(K, form), 2)


@dataclass
class PairingWitness:
    status: str  # "exists-with-zero-form" | "obstructed"
    statement: str
    report: ObstructionReport


def trivial_pairing_witness(K: SimplicialComplex, seed: int = 1) -> PairingWitness:
    """Decide the vanishing route to a thickening with trivial intersection pairing.

    The route needs the integral class o(K) to vanish, so the decision uses
    vk_class over Z.  The rational class is not enough: on the 2-skeleton of
    the 6-simplex it is already zero while the integral class is not.
    """
    rep = vk_class(K, 2, "Z", seed)
    if rep.is_zero:
        return PairingWitness(
            "exists-with-zero-form",
            "the integral Van Kampen class vanishes (explicit coboundary witness), so some "
            "thickening has trivial intersection pairing",
            rep)
    return PairingWitness(
        "obstructed",
        f"the integral Van Kampen class is nonzero (certified by {rep.certified_by}), so the "
        "vanishing hypothesis fails and no thickening with trivial pairing is produced",
        rep)
