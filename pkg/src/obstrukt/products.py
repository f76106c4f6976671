"""Deleted products, their Z/2-equivariant cochain complexes, and C^m(K).

A cell of the deleted product is an ordered pair (sigma, tau) of
vertex-disjoint simplices.  Faces of a vertex-disjoint pair are again
vertex-disjoint, so the cells off the simplicial diagonal form a
subcomplex of K x K and the Leibniz boundary never needs to drop terms.

The swap sigma x tau -> tau x sigma carries the Koszul sign (-1)^(pq),
which makes it a chain map.  Equivariant cochains are stored by their
values on orbit representatives (the lexicographically smaller ordering).
"""
from __future__ import annotations

import itertools
from typing import Sequence

from .complex import SimplicialComplex, faces
from .errors import InvalidInput


def _dim(s) -> int:
    return len(s) - 1


def disjoint(*simplices) -> bool:
    seen = set()
    for s in simplices:
        for v in s:
            if v in seen:
                return False
            seen.add(v)
    return True


def product_boundary(cell: tuple) -> list[tuple[int, tuple]]:
    """Leibniz boundary of a product cell sigma_1 x ... x sigma_m."""
    out = []
    shift = 0
    for k, s in enumerate(cell):
        sgn0 = -1 if shift % 2 else 1
        for sgn, f in faces(s):
            out.append((sgn0 * sgn, cell[:k] + (f,) + cell[k + 1:]))
        shift += _dim(s)
    return out


def koszul_sign(cell: tuple, perm: Sequence[int]) -> int:
    """Sign of reordering graded factors: new[i] = cell[perm[i]]."""
    degs = [_dim(cell[p]) for p in perm]
    order = list(perm)
    sign = 1
    for i in range(len(order)):
        for j in range(i + 1, len(order)):
            if order[i] > order[j] and degs[i] % 2 and degs[j] % 2:
                sign = -sign
    return sign


class ProductComplex:
    """Cells = m-tuples of pairwise vertex-disjoint simplices of K."""

    def __init__(self, K: SimplicialComplex, m: int = 2, max_dim: int | None = None):
        if m < 2:
            raise InvalidInput("product complexes need m >= 2")
        self.K, self.m = K, m
        simplices = [s for ss in K.simplices for s in ss]
        top = m * K.dim if max_dim is None else max_dim
        cells: dict[int, list] = {d: [] for d in range(top + 1)}
        self._enumerate(simplices, m, top, cells)
        self.cells = tuple(tuple(sorted(cells[d])) for d in range(top + 1))
        self._index = [{c: i for i, c in enumerate(cs)} for cs in self.cells]
        self._cache: dict = {}

    @staticmethod
    def _enumerate(simplices, m, top, cells):
        def rec(prefix, used, dim):
            if len(prefix) == m:
                cells[dim].append(tuple(prefix))
                return
            for s in simplices:
                d = dim + _dim(s)
                if d > top or used.intersection(s):
                    continue
                prefix.append(s)
                rec(prefix, used.union(s), d)
                prefix.pop()
        rec([], frozenset(), 0)

    @property
    def dim(self) -> int:
        top = len(self.cells) - 1
        while top >= 0 and not self.cells[top]:
            top -= 1
        return top

    def counts(self) -> list[int]:
        return [len(c) for c in self.cells]

    def index(self, cell) -> int:
        return self._index[sum(_dim(s) for s in cell)][cell]

    def is_empty(self) -> bool:
        return not any(self.cells)

    def boundary_rows(self, d: int) -> list[dict]:
        """Columns of the boundary map C_d -> C_{d-1}, as one dict per d-cell."""
        key = ("bd", d)
        if key not in self._cache:
            cols = []
            if 1 <= d < len(self.cells):
                idx = self._index[d - 1]
                for cell in self.cells[d]:
                    col: dict = {}
                    for sgn, f in product_boundary(cell):
                        if any(len(s) == 0 for s in f):
                            continue
                        j = idx[f]
                        col[j] = col.get(j, 0) + sgn
                    cols.append({j: v for j, v in col.items() if v})
            else:
                cols = [{} for _ in range(self.cochain_dim(d))]
            self._cache[key] = cols
        return self._cache[key]

    # cochain protocol: delta^d rows indexed by (d+1)-cells
    def cochain_dim(self, d: int) -> int:
        return len(self.cells[d]) if 0 <= d < len(self.cells) else 0

    def coboundary_rows(self, d: int) -> list[dict]:
        return self.boundary_rows(d + 1)

    def act(self, perm: Sequence[int], cell: tuple) -> tuple[int, tuple]:
        """Action of a permutation on a cell: (Koszul sign, permuted cell)."""
        new = tuple(cell[p] for p in perm)
        return koszul_sign(cell, perm), new

    def action_is_free(self) -> bool:
        for perm in itertools.permutations(range(self.m)):
            if list(perm) == list(range(self.m)):
                continue
            for cs in self.cells:
                for c in cs:
                    if self.act(perm, c)[1] == c:
                        return False
        return True

    def swap_matrix(self, d: int) -> list[tuple[int, int]]:
        """Swap on d-chains for m = 2: list of (image index, sign) per cell."""
        if self.m != 2:
            raise InvalidInput("swap defined for m = 2")
        out = []
        for c in self.cells[d]:
            sgn, img = self.act((1, 0), c)
            out.append((self._index[d][img], sgn))
        return out


class DeletedProduct(ProductComplex):
    """K* = K x K minus the simplicial diagonal."""

    def __init__(self, K: SimplicialComplex, max_dim: int | None = None):
        super().__init__(K, 2, max_dim)


class ConfigurationComplex(ProductComplex):
    """C^m(K) with its S_m action by Koszul-signed permutation of factors."""


def deleted_product(K: SimplicialComplex, max_dim: int | None = None) -> DeletedProduct:
    if not K.vertices:
        raise InvalidInput("deleted product of the empty complex")
    return DeletedProduct(K, max_dim)


def configuration_complex(K: SimplicialComplex, m: int) -> ConfigurationComplex:
    if m < 2:
        raise InvalidInput("configuration complexes need m >= 2")
    return ConfigurationComplex(K, m)


class EquivariantCochainComplex:
    """Z/2-equivariant cochains on a deleted product.

    An equivariant cochain satisfies c(tau x sigma) = (-1)^(pq) c(sigma x tau),
    i.e. it is invariant under the Koszul-signed swap.  In the top degree 2n
    this is c(tau x sigma) = (-1)^n c(sigma x tau), the symmetry of
    intersection numbers of two n-simplices in R^{2n}.
    """

    def __init__(self, P: DeletedProduct, n: int):
        self.P, self.n = P, n
        self.twist = 1
        reps, where = [], []
        for d, cs in enumerate(P.cells):
            r = [c for c in cs if c[0] < c[1]]
            reps.append(tuple(r))
            where.append({c: i for i, c in enumerate(r)})
        self.reps = tuple(reps)
        self._where = where
        self._cache: dict = {}

    def counts(self) -> list[int]:
        return [len(r) for r in self.reps]

    def representative(self, cell: tuple) -> tuple[int, int]:
        """(rep index, sign) with c(cell) = sign * c(rep) for equivariant c."""
        d = _dim(cell[0]) + _dim(cell[1])
        if cell[0] < cell[1]:
            return self._where[d][cell], 1
        sign = -1 if (_dim(cell[0]) * _dim(cell[1])) % 2 else 1
        return self._where[d][(cell[1], cell[0])], sign * self.twist

    def value(self, c: Sequence, cell: tuple):
        i, s = self.representative(cell)
        return s * c[i]

    def cochain_dim(self, d: int) -> int:
        return len(self.reps[d]) if 0 <= d < len(self.reps) else 0

    def coboundary_rows(self, d: int) -> list[dict]:
        key = ("cob", d)
        if key not in self._cache:
            rows = []
            if 0 <= d and d + 1 < len(self.reps):
                for cell in self.reps[d + 1]:
                    row: dict = {}
                    for sgn, f in product_boundary(cell):
                        if any(len(s) == 0 for s in f):
                            continue
                        j, s = self.representative(f)
                        row[j] = row.get(j, 0) + sgn * s
                    rows.append({j: v for j, v in row.items() if v})
            else:
                rows = [{} for _ in range(self.cochain_dim(d + 1))]
            self._cache[key] = rows
        return self._cache[key]

    def expand(self, c: Sequence, d: int) -> list:
        """The full (non-equivariant) cochain on every d-cell."""
        return [self.value(c, cell) for cell in self.P.cells[d]]


def equivariant_complex(P: DeletedProduct, n: int) -> EquivariantCochainComplex:
    return EquivariantCochainComplex(P, n)
