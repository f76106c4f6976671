"""Exact integer and rational linear algebra.

Dense matrices are numpy arrays of dtype ``object`` holding Python ints, so
entry growth never overflows.  Large sparse systems (coboundary maps of
deleted products) go through `SparseSolver`, which eliminates with unit
pivots first and only falls back to a dense Smith normal form (over Z) or
fraction arithmetic (over Q) on whatever block resists.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

import numpy as np

from .errors import InvalidInput

RINGS = ("Z", "Q", "Z2")


def as_int_matrix(A) -> np.ndarray:
    M = np.array(A, dtype=object)
    if M.ndim == 1 and M.size == 0:
        M = M.reshape(0, 0)
    if M.ndim != 2:
        raise InvalidInput("expected a 2-d matrix")
    for x in M.flat:
        if not isinstance(x, (int, np.integer)):
            raise InvalidInput(f"non-integer entry {x!r}")
    return np.vectorize(int, otypes=[object])(M) if M.size else M


def identity(n: int) -> np.ndarray:
    I = np.zeros((n, n), dtype=object)
    for i in range(n):
        I[i, i] = 1
    return I


def matmul(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], B.shape[1]), dtype=object)
    return A.dot(B)


def det(A) -> int:
    """Exact determinant via Bareiss fraction-free elimination."""
    M = [list(map(int, row)) for row in A]
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pk = M[k][k]
        rk = M[k]
        for i in range(k + 1, n):
            ri = M[i]
            a = ri[k]
            for j in range(k + 1, n):
                ri[j] = (ri[j] * pk - a * rk[j]) // prev
        prev = pk
    return sign * M[n - 1][n - 1]


def rank_int(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of a small integer matrix (fraction-free elimination)."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    m, n = len(M), len(M[0])
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        pr = M[r]
        for i in range(r + 1, m):
            a = M[i][c]
            if a:
                M[i] = [x * pr[c] - a * y for x, y in zip(M[i], pr)]
        r += 1
        if r == m:
            break
    return r


# ---------------------------------------------------------------------------
# Smith normal form


@dataclass
class SNFDecomposition:
    """U @ A @ V == D with U, V unimodular and D diagonal, d_1 | d_2 | ..."""

    U: np.ndarray
    D: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self) -> list[int]:
        return [self.D[i, i] for i in range(min(self.D.shape))]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    def verify(self, A) -> bool:
        A = np.asarray(A, dtype=object)
        if not np.array_equal(matmul(matmul(self.U, A), self.V), self.D):
            return False
        m, n = self.D.shape
        for i in range(m):
            for j in range(n):
                if i != j and self.D[i, j] != 0:
                    return False
        diag = self.diagonal
        nz = [d for d in diag if d != 0]
        if any(d < 0 for d in nz) or diag[:len(nz)] != nz:
            return False
        return all(b % a == 0 for a, b in zip(nz, nz[1:]))


def smith_normal_form(A) -> SNFDecomposition:
    """Smith normal form with minimal-absolute-value pivoting.

    The pivot scan order is fixed (row-major over the trailing block), so the
    output is deterministic.  The identity U A V = D is re-verified before
    returning.  Work happens on lists of Python ints; numpy object arrays are
    only used for the result.
    """
    A0 = as_int_matrix(A)
    m, n = A0.shape
    D = [list(r) for r in A0]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]

    def min_pivot(t):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x:
                    ax = -x if x < 0 else x
                    if best is None or ax < best[0]:
                        best = (ax, i, j)
                        if ax == 1:
                            return best
        return best

    def swap_cols(M, a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]

    def add_cols(M, src, qs, start=0):
        # column c -= q * column src, for every (c, q) in qs
        for r in range(start, len(M)):
            row = M[r]
            v = row[src]
            if v:
                for c, q in qs:
                    row[c] -= q * v

    for t in range(min(m, n)):
        piv = min_pivot(t)
        if piv is None:
            break
        _, i, j = piv
        while True:
            if i != t:
                D[t], D[i] = D[i], D[t]
                U[t], U[i] = U[i], U[t]
            if j != t:
                swap_cols(D, t, j)
                swap_cols(V, t, j)
            p = D[t][t]
            dirty = False
            pr = D[t]
            for r in range(t + 1, m):
                a = D[r][t]
                if a:
                    q = _nearest_quotient(a, p)
                    if q:
                        row = D[r]
                        for c in range(t, n):
                            row[c] -= q * pr[c]
                        ur, ut = U[r], U[t]
                        U[r] = [x - q * y for x, y in zip(ur, ut)]
                    if D[r][t]:
                        dirty = True
            column_clear = not dirty
            qs = []
            for c in range(t + 1, n):
                a = pr[c]
                if a:
                    q = _nearest_quotient(a, p)
                    if q:
                        qs.append((c, q))
                    if a - q * p:
                        dirty = True
            if qs:
                add_cols(V, t, qs)
                if column_clear:
                    for c, q in qs:
                        pr[c] -= q * p
                else:
                    add_cols(D, t, qs, start=t)
            if dirty:
                i, j = min_pivot_in_cross(D, t)
                continue
            if p in (1, -1):
                break
            # divisibility of the trailing block
            bad = next((r for r in range(t + 1, m) if any(x % p for x in D[r][t + 1:])), None)
            if bad is None:
                break
            D[t] = [x + y for x, y in zip(D[t], D[bad])]
            U[t] = [x + y for x, y in zip(U[t], U[bad])]
            i, j = t, t
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]

    out = SNFDecomposition(_obj(U, m, m), _obj(D, m, n), _obj(V, n, n))
    if not out.verify(A0):
        raise AssertionError("Smith normal form failed verification")
    return out


def _nearest_quotient(a: int, p: int) -> int:
    """q with |a - q p| <= |p| / 2."""
    q, r = divmod(a, p)
    if 2 * abs(r) > abs(p):
        q += 1
    return q


def _obj(rows: list, m: int, n: int) -> np.ndarray:
    M = np.zeros((m, n), dtype=object)
    for i, r in enumerate(rows):
        M[i, :] = r
    return M


def min_pivot_in_cross(D: list, t: int) -> tuple[int, int]:
    """Smallest nonzero entry in row t or column t of the trailing block."""
    best = None
    for r in range(t, len(D)):
        x = D[r][t]
        if x and (best is None or abs(x) < best[0]):
            best = (abs(x), r, t)
    for c in range(t + 1, len(D[t])):
        x = D[t][c]
        if x and (best is None or abs(x) < best[0]):
            best = (abs(x), t, c)
    return best[1], best[2]


# ---------------------------------------------------------------------------
# homology


@dataclass(frozen=True)
class HomologyGroup:
    betti: int
    torsion: tuple = ()

    def to_json(self) -> dict:
        return {"betti": self.betti, "torsion": list(self.torsion)}

    def __str__(self):
        parts = ([f"Z^{self.betti}"] if self.betti else []) + [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


def _check_ring(coeff: str) -> str:
    if coeff not in RINGS:
        raise InvalidInput(f"coefficient ring must be one of {RINGS}, got {coeff!r}")
    return coeff


def rank_over(A: np.ndarray, coeff: str) -> int:
    if A.size == 0:
        return 0
    if coeff == "Z2":
        rows = [{j: 1 for j, x in enumerate(r) if x % 2} for r in A]
        return SparseSolver(rows, A.shape[1], "Z2").rank
    return smith_normal_form(A).rank


def homology(K, d: int, coeff: str = "Z") -> HomologyGroup:
    """Simplicial homology H_d(K; coeff) for coeff in Z, Q, Z2."""
    from .complex import boundary_matrix

    _check_ring(coeff)
    if not 0 <= d <= K.dim:
        raise InvalidInput(f"homology degree {d} outside 0..{K.dim}")
    n_d = K.n_simplices(d)
    rank_out = rank_over(boundary_matrix(K, d), coeff) if d >= 1 else 0
    torsion: tuple = ()
    if d + 1 <= K.dim:
        B = boundary_matrix(K, d + 1)
        if coeff == "Z":
            diag = smith_normal_form(B).diagonal
            rank_in = sum(1 for x in diag if x)
            torsion = tuple(x for x in diag if x > 1)
        else:
            rank_in = rank_over(B, coeff)
    else:
        rank_in = 0
    return HomologyGroup(n_d - rank_out - rank_in, torsion)


def betti_numbers(K, coeff: str = "Q") -> list[int]:
    return [homology(K, d, coeff).betti for d in range(K.dim + 1)]


# ---------------------------------------------------------------------------
# sparse exact elimination


class SparseSolver:
    """Row-reduce a sparse system A x = b once, then solve for many b.

    ``rows`` is a list of dicts {column: value}.  The elimination uses only
    unit pivots while it can (exact over Z, Q and Z/2 simultaneously); the
    remaining block is handled by dense SNF over Z or by fraction pivots
    over Q.  The row operations are logged so right-hand sides can be
    reduced later.
    """

    def __init__(self, rows: Sequence[dict], ncols: int, ring: str = "Q"):
        self.ring = _check_ring(ring)
        self.nrows, self.ncols = len(rows), ncols
        mod = 2 if ring == "Z2" else 0
        R = []
        for r in rows:
            if mod:
                R.append({c: 1 for c, v in r.items() if v % 2})
            else:
                R.append({c: v for c, v in r.items() if v})
        self._rows = R
        self._log: list[tuple[int, int, object]] = []
        self.pivots: list[tuple[int, int]] = []  # (row, col) in elimination order
        self._residual = None  # dense fallback data for Z
        self._eliminate(mod)

    # -- elimination ------------------------------------------------------
    def _eliminate(self, mod: int):
        R = self._rows
        cols: dict[int, set] = {}
        for i, r in enumerate(R):
            for c in r:
                cols.setdefault(c, set()).add(i)
        active = set(range(len(R)))
        heap = [(len(r), i) for i, r in enumerate(R)]
        heapq.heapify(heap)
        stuck: set = set()
        log = self._log

        def is_unit(v):
            return v == 1 or v == -1 if not mod else True

        def pivot_on(i, c, general=False):
            row = R[i]
            p = row[c]
            active.discard(i)
            for cc in row:
                cols[cc].discard(i)
            targets = list(cols.get(c, ()))
            for k in targets:
                rk = R[k]
                a = rk[c]
                if mod:
                    f = 1
                elif general:
                    f = Fraction(a) / p
                    if f.denominator == 1:
                        f = f.numerator
                else:
                    f = a * p  # p = +-1 so a / p == a * p
                for cc, v in row.items():
                    nv = rk.get(cc, 0) - f * v
                    if mod:
                        nv %= 2
                    if nv:
                        if cc not in rk:
                            cols.setdefault(cc, set()).add(k)
                        rk[cc] = nv
                    elif cc in rk:
                        del rk[cc]
                        cols[cc].discard(k)
                log.append((i, k, f))
                stuck.discard(k)
                heapq.heappush(heap, (len(rk), k))
            self.pivots.append((i, c))

        while heap:
            ln, i = heapq.heappop(heap)
            if i not in active or ln != len(R[i]) or i in stuck:
                continue
            row = R[i]
            if not row:
                continue
            best = None
            for c, v in row.items():
                if is_unit(v):
                    cnt = len(cols[c])
                    if best is None or cnt < best[0] or (cnt == best[0] and c < best[1]):
                        best = (cnt, c)
            if best is None:
                stuck.add(i)
                continue
            pivot_on(i, best[1])

        residual = sorted(i for i in active if R[i])
        if not residual:
            return
        if self.ring == "Q":
            for i in residual:
                if i not in active or not R[i]:
                    continue
                c = min(R[i], key=lambda cc: (len(cols[cc]), cc))
                pivot_on(i, c, general=True)
            return
        # Z: dense SNF on the stubborn block
        rcols = sorted({c for i in residual for c in R[i]})
        cpos = {c: j for j, c in enumerate(rcols)}
        M = np.zeros((len(residual), len(rcols)), dtype=object)
        for a, i in enumerate(residual):
            for c, v in R[i].items():
                M[a, cpos[c]] = v
        self._residual = (residual, rcols, smith_normal_form(M))
        for i in residual:
            active.discard(i)

    # -- queries ------------------------------------------------------------
    @property
    def rank(self) -> int:
        r = len(self.pivots)
        if self._residual is not None:
            r += self._residual[2].rank
        return r

    def reduce(self, b: Sequence) -> list:
        """Apply the logged row operations to a right-hand side."""
        y = list(b)
        if len(y) != self.nrows:
            raise InvalidInput(f"right-hand side has length {len(y)}, expected {self.nrows}")
        if self.ring == "Z2":
            y = [v % 2 for v in y]
            for i, k, _ in self._log:
                if y[i]:
                    y[k] ^= 1
            return y
        if self.ring == "Z" and any(isinstance(v, Fraction) and v.denominator != 1 for v in y):
            raise InvalidInput("integer system given a non-integer right-hand side")
        for i, k, f in self._log:
            if y[i]:
                y[k] -= f * y[i]
        return y

    def cokernel_coordinates(self, b: Sequence) -> dict:
        """Coordinates of b in coker(A) (over Q or Z/2); zero iff b is in the image."""
        if self.ring == "Z":
            raise InvalidInput("cokernel coordinates are only canonical over a field")
        y = self.reduce(b)
        piv_rows = {i for i, _ in self.pivots}
        out = {}
        for i, v in enumerate(y):
            if i not in piv_rows and v:
                out[i] = Fraction(v) if self.ring == "Q" else v
        return out

    def solve(self, b: Sequence) -> Optional[list]:
        """A solution x of A x = b over the ring, or None if none exists."""
        y = self.reduce(b)
        mod = 2 if self.ring == "Z2" else 0
        piv_rows = {i for i, _ in self.pivots}
        x: dict[int, object] = {}
        res_rows = set()
        if self._residual is not None:
            residual, rcols, snf = self._residual
            res_rows = set(residual)
            yb = np.array([y[i] for i in residual], dtype=object)
            z = matmul(snf.U, yb.reshape(-1, 1)).reshape(-1)
            diag = snf.diagonal
            w = np.zeros(len(rcols), dtype=object)
            for t, zt in enumerate(z):
                dt = diag[t] if t < len(diag) else 0
                if dt == 0:
                    if zt != 0:
                        return None
                else:
                    if zt % dt:
                        return None
                    w[t] = zt // dt
            sol = matmul(snf.V, w.reshape(-1, 1)).reshape(-1) if len(rcols) else []
            for c, v in zip(rcols, sol):
                if v:
                    x[c] = int(v)
        for i, v in enumerate(y):
            if i not in piv_rows and i not in res_rows and v:
                return None
        R = self._rows
        for i, c in reversed(self.pivots):
            row = R[i]
            acc = y[i]
            for cc, a in row.items():
                if cc != c and cc in x:
                    acc -= a * x[cc]
            p = row[c]
            if mod:
                val = acc % 2
            elif p == 1:
                val = acc
            elif p == -1:
                val = -acc
            else:
                val = Fraction(acc) / p
                if self.ring == "Z":
                    if val.denominator != 1:
                        return None
                    val = val.numerator
            if val:
                x[c] = val
        out = [0] * self.ncols
        for c, v in x.items():
            if isinstance(v, Fraction) and v.denominator == 1:
                v = v.numerator
            out[c] = v
        return out


def sparse_apply(rows: Sequence[dict], x: Sequence, mod: int = 0) -> list:
    out = []
    for r in rows:
        s = 0
        for c, v in r.items():
            if x[c]:
                s += v * x[c]
        out.append(s % mod if mod else s)
    return out


def _normalize(values: Sequence, coeff: str) -> list:
    if coeff == "Z2":
        out = []
        for v in values:
            v = Fraction(v)
            if v.denominator % 2 == 0:
                raise InvalidInput("cochain value has even denominator; not defined mod 2")
            out.append(int(v.numerator * pow(v.denominator, -1, 2)) % 2)
        return out
    if coeff == "Z":
        out = []
        for v in values:
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise InvalidInput("integer cochain has a fractional value")
                v = v.numerator
            out.append(int(v))
        return out
    return list(values)


def coboundary_solver(cx, d: int, coeff: str) -> SparseSolver:
    """Cached solver for delta^{d-1} : C^{d-1} -> C^d of a cochain complex.

    ``cx`` must provide ``coboundary_rows(k)`` (rows of delta^k indexed by
    (k+1)-cells) and ``cochain_dim(k)``, and a ``_cache`` dict.
    """
    key = ("solver", d, coeff)
    cache = cx._cache
    if key not in cache:
        rows = cx.coboundary_rows(d - 1) if d >= 1 else [{} for _ in range(cx.cochain_dim(0))]
        cache[key] = SparseSolver(rows, cx.cochain_dim(d - 1) if d >= 1 else 0, coeff)
    return cache[key]


def is_cocycle(cx, c: Sequence, d: int, coeff: str = "Z") -> bool:
    mod = 2 if coeff == "Z2" else 0
    vals = _normalize(c, coeff)
    return not any(sparse_apply(cx.coboundary_rows(d), vals, mod))


def is_coboundary(cx, c: Sequence, d: int, coeff: str = "Z") -> Optional[list]:
    """Witness x with delta x = c exactly, or None if c is not a coboundary.

    Over Z/2 and Q a None answer is definitive; over Z it is definitive too,
    since the fallback SNF decides integer solvability exactly.
    """
    _check_ring(coeff)
    if len(c) != cx.cochain_dim(d):
        raise InvalidInput(f"cochain has length {len(c)}, expected {cx.cochain_dim(d)}")
    vals = _normalize(c, coeff)
    if not is_cocycle(cx, vals, d, coeff):
        raise InvalidInput("cochain is not a cocycle")
    if d == 0:
        return None if any(vals) else []
    x = coboundary_solver(cx, d, coeff).solve(vals)
    if x is None:
        return None
    mod = 2 if coeff == "Z2" else 0
    check = sparse_apply(cx.coboundary_rows(d - 1), x, mod)
    target = [v % 2 for v in vals] if mod else vals
    if check != target:
        raise AssertionError("coboundary witness failed re-substitution")
    return x


@dataclass
class SimpleCochainComplex:
    """Cochain complex given by explicit sparse coboundary rows per degree."""

    dims: list
    rows: dict
    _cache: dict = field(default_factory=dict)

    def cochain_dim(self, d: int) -> int:
        return self.dims[d] if 0 <= d < len(self.dims) else 0

    def coboundary_rows(self, d: int) -> list:
        if d in self.rows:
            return self.rows[d]
        return [{} for _ in range(self.cochain_dim(d + 1))]


def nullspace_rational(rows: Sequence[dict], ncols: int) -> tuple[list[dict], list[int]]:
    """Basis of {x : A x = 0} over Q from a reduced echelon form.

    Returns (basis, free_columns): one vector per free column f with x[f] = 1
    and zero on the other free columns, so the coordinate functionals of the
    free columns are a dual basis.
    """
    R = [dict(r) for r in rows]
    pivots: dict[int, int] = {}  # col -> row
    prow: list[int] = []
    r_used = set()
    for c in range(ncols):
        pr = next((i for i, r in enumerate(R) if i not in r_used and r.get(c)), None)
        if pr is None:
            continue
        row = R[pr]
        p = row[c]
        if p != 1:
            row = {k: Fraction(v) / p for k, v in row.items()}
            R[pr] = row
        for i, r in enumerate(R):
            if i != pr and r.get(c):
                a = r[c]
                for k, v in row.items():
                    nv = r.get(k, 0) - a * v
                    if nv:
                        r[k] = nv
                    else:
                        r.pop(k, None)
        r_used.add(pr)
        pivots[c] = pr
        prow.append(pr)
    basis, free = [], []
    for f in range(ncols):
        if f in pivots:
            continue
        free.append(f)
        vec = {f: 1}
        for c, i in pivots.items():
            a = R[i].get(f)
            if a:
                vec[c] = -a
        basis.append(vec)
    return basis, free
