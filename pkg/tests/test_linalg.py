import random

import numpy as np
import pytest
import sympy
from hypothesis import given, strategies as st

from oracles import gcd_of_minors
from obstrukt.complex import build_complex
from obstrukt.errors import InvalidInput
from obstrukt.generators import complex_Cbar, skeleton_of_simplex
from obstrukt.linalg import (SparseSolver, betti_numbers, det, homology, is_coboundary, matmul, rank_int,
                             smith_normal_form, sparse_apply)

RP2 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
       (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)]


def int_matrices(max_side=5, bound=12):
    return st.integers(1, max_side).flatmap(
        lambda m: st.integers(1, max_side).flatmap(
            lambda n: st.lists(st.lists(st.integers(-bound, bound), min_size=n, max_size=n),
                               min_size=m, max_size=m)))


def test_snf_two_by_two():
    snf = smith_normal_form([[2, 4], [6, 8]])
    assert snf.diagonal == [2, 4]
    assert snf.verify([[2, 4], [6, 8]])


def test_snf_divisibility_example():
    assert smith_normal_form([[2, 0], [0, 3]]).diagonal == [1, 6]


def test_snf_zero_and_empty():
    assert smith_normal_form([[0, 0], [0, 0]]).diagonal == [0, 0]
    assert smith_normal_form(np.zeros((0, 3), dtype=object)).rank == 0


@given(int_matrices())
def test_snf_invariants(rows):
    A = np.array(rows, dtype=object)
    snf = smith_normal_form(A)
    assert snf.verify(A)
    assert abs(det(snf.U)) == 1 and abs(det(snf.V)) == 1
    assert np.array_equal(smith_normal_form(A).D, snf.D)


@given(int_matrices(max_side=4, bound=6))
def test_snf_matches_gcd_of_minors(rows):
    diag = smith_normal_form(rows).diagonal
    prod = 1
    for k, d in enumerate(diag, start=1):
        prod *= d
        assert prod == gcd_of_minors(rows, k)


@given(int_matrices(max_side=5, bound=9))
def test_rank_matches_sympy(rows):
    assert rank_int(rows) == sympy.Matrix(rows).rank()
    assert smith_normal_form(rows).rank == sympy.Matrix(rows).rank()


@given(st.integers(1, 5).flatmap(lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n),
                                                    min_size=n, max_size=n)))
def test_det_matches_sympy(rows):
    assert det(rows) == sympy.Matrix(rows).det()


def test_homology_of_projective_plane():
    K = build_complex(RP2)
    assert homology(K, 1, "Z").torsion == (2,)
    assert homology(K, 1, "Z").betti == 0
    assert homology(K, 2, "Z").betti == 0
    assert betti_numbers(K, "Q") == [1, 0, 0]
    assert betti_numbers(K, "Z2") == [1, 1, 1]


def test_homology_of_sphere():
    assert betti_numbers(skeleton_of_simplex(3, 2), "Z") == [1, 0, 1]


def test_homology_of_cbar():
    K = complex_Cbar()
    h = [homology(K, d, "Z") for d in range(3)]
    assert str(h[0]) == "Z^1" and str(h[1]) == "0"
    # H_2 of a 2-complex is free; its rank is forced by the Euler characteristic
    assert h[2].torsion == () and h[2].betti == K.euler_characteristic() - 1


@pytest.mark.parametrize("tris", [RP2, [(1, 2, 3), (1, 3, 4)], [(1, 2, 3), (2, 3, 4), (3, 4, 1), (1, 2, 4)]])
def test_z2_betti_dominates_rational(tris):
    K = build_complex(tris)
    assert all(a >= b for a, b in zip(betti_numbers(K, "Z2"), betti_numbers(K, "Q")))


def test_bad_ring():
    with pytest.raises(InvalidInput):
        homology(build_complex([(1, 2)]), 0, "R")


@given(st.integers(0, 2 ** 32 - 1))
def test_coboundary_round_trip(seed):
    K = skeleton_of_simplex(4, 2)
    rng = random.Random(seed)
    y = [rng.randint(-3, 3) for _ in range(K.n_simplices(1))]
    c = sparse_apply(K.coboundary_rows(1), y)
    for ring in ("Z", "Q", "Z2"):
        x = is_coboundary(K, c, 2, ring)
        assert x is not None
        mod = 2 if ring == "Z2" else 0
        want = [v % 2 for v in c] if mod else c
        assert sparse_apply(K.coboundary_rows(1), x, mod) == want


def test_non_cocycle_rejected():
    K = skeleton_of_simplex(3, 2)
    c = [1] + [0] * (K.n_simplices(1) - 1)
    with pytest.raises(InvalidInput):
        is_coboundary(K, c, 1, "Z")


def test_generator_of_top_cohomology_is_not_a_coboundary():
    K = skeleton_of_simplex(3, 2)
    c = [1, 0, 0, 0]
    assert is_coboundary(K, c, 2, "Q") is None
    assert is_coboundary(K, c, 2, "Z2") is None


def test_torsion_class_over_z_and_q():
    K = build_complex(RP2)
    c = [1] + [0] * (K.n_simplices(2) - 1)
    assert is_coboundary(K, c, 2, "Z") is None
    assert is_coboundary(K, c, 2, "Q") is not None
    assert is_coboundary(K, c, 2, "Z2") is None


@given(st.integers(0, 2 ** 32 - 1))
def test_sparse_solver_matches_sympy(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 6), rng.randint(1, 6)
    A = [[rng.choice([0, 0, 1, -1, 2, 3]) for _ in range(n)] for _ in range(m)]
    b = [rng.randint(-4, 4) for _ in range(m)]
    rows = [{j: v for j, v in enumerate(r) if v} for r in A]
    S = SparseSolver(rows, n, "Q")
    assert S.rank == sympy.Matrix(A).rank()
    x = S.solve(b)
    M, B = sympy.Matrix(A), sympy.Matrix(b)
    solvable = M.rank() == M.row_join(B).rank()
    assert (x is not None) == solvable
    if x is not None:
        assert sparse_apply(rows, x) == b


@given(st.integers(0, 2 ** 32 - 1))
def test_sparse_solver_over_z_matches_snf(seed):
    rng = random.Random(seed)
    m, n = rng.randint(1, 5), rng.randint(1, 5)
    A = [[rng.choice([0, 1, -1, 2, 3, -4]) for _ in range(n)] for _ in range(m)]
    b = [rng.randint(-6, 6) for _ in range(m)]
    rows = [{j: v for j, v in enumerate(r) if v} for r in A]
    x = SparseSolver(rows, n, "Z").solve(b)
    # integer solvability: U b must be divisible by the SNF diagonal and vanish past the rank
    snf = smith_normal_form(A)
    Ub = list(matmul(snf.U, np.array([[v] for v in b], dtype=object))[:, 0])
    diag = snf.diagonal
    ok = all((Ub[i] % diag[i] == 0) if i < len(diag) and diag[i] else Ub[i] == 0 for i in range(m))
    assert (x is not None) == ok
    if x is not None:
        assert all(isinstance(v, int) for v in x)
        assert sparse_apply(rows, x) == b
