import pytest
import sympy

from obstrukt.complex import build_complex
from obstrukt.errors import InvalidInput
from obstrukt.generators import complete_graph, cycle_graph, skeleton_of_simplex
from obstrukt.products import (configuration_complex, deleted_product, equivariant_complex, koszul_sign,
                               product_boundary)


def dense(rows, ncols):
    return sympy.Matrix([[r.get(j, 0) for j in range(ncols)] for r in rows]) if rows else sympy.zeros(0, ncols)


def compose_is_zero(outer, inner):
    # outer: rows over top cells indexed by mid cells; inner: rows over mid cells indexed by bottom cells
    for r in outer:
        acc = {}
        for j, a in r.items():
            for k, b in inner[j].items():
                acc[k] = acc.get(k, 0) + a * b
        if any(acc.values()):
            return False
    return True


def test_two_disjoint_edges():
    P = deleted_product(build_complex([("a", "b"), ("c", "d")]))
    assert len(P.cells[2]) == 2


def test_skeleton_top_cell_counts():
    K = skeleton_of_simplex(6, 2)
    P = deleted_product(K, max_dim=4)
    assert len(P.cells[4]) == 140
    assert equivariant_complex(P, 2).counts()[4] == 70


def test_k5_top_cell_counts():
    P = deleted_product(complete_graph(5))
    assert len(P.cells[2]) == 30
    assert equivariant_complex(P, 1).counts()[2] == 15


@pytest.mark.parametrize("K,n", [(skeleton_of_simplex(6, 2), 2), (complete_graph(5), 1), (skeleton_of_simplex(4, 2), 2)])
def test_boundary_and_coboundary_square_to_zero(K, n):
    P = deleted_product(K, max_dim=2 * n)
    for d in range(2, 2 * n + 1):
        assert compose_is_zero(P.boundary_rows(d), P.boundary_rows(d - 1))
    E = equivariant_complex(P, n)
    for d in range(0, 2 * n - 1):
        assert compose_is_zero(E.coboundary_rows(d + 1), E.coboundary_rows(d))


def test_leibniz_boundary_drops_nothing_for_disjoint_pairs():
    cell = (("a", "b"), ("c", "d", "e"))
    bd = product_boundary(cell)
    assert len(bd) == 5
    assert all(not set(s) & set(t) for _, (s, t) in bd)
    # sign of the second factor's faces carries (-1)^{dim sigma}
    assert dict((f, s) for s, f in bd)[(("a", "b"), ("d", "e"))] == -1


@pytest.mark.parametrize("K", [skeleton_of_simplex(4, 2), complete_graph(5)])
def test_swap_is_free_involution_and_chain_map(K):
    P = deleted_product(K)
    assert P.action_is_free()
    for d, cs in enumerate(P.cells):
        sw = P.swap_matrix(d)
        for i, (j, s) in enumerate(sw):
            assert j != i
            j2, s2 = sw[j]
            assert j2 == i and s * s2 == 1
        assert len(cs) % 2 == 0
    # d(swap c) = swap(d c)
    for d in range(1, len(P.cells)):
        sw_hi, sw_lo = P.swap_matrix(d), P.swap_matrix(d - 1)
        bd = P.boundary_rows(d)
        for i, col in enumerate(bd):
            j, s = sw_hi[i]
            lhs = {k: s * v for k, v in bd[j].items()}
            rhs = {}
            for k, v in col.items():
                k2, s2 = sw_lo[k]
                rhs[k2] = s2 * v
            assert lhs == rhs


def test_koszul_sign():
    assert koszul_sign((("a", "b"), ("c", "d")), (1, 0)) == -1
    assert koszul_sign((("a", "b", "c"), ("d", "e", "f")), (1, 0)) == 1
    assert koszul_sign((("a", "b"), ("c",)), (1, 0)) == 1


def test_configuration_two_equals_deleted_product():
    K = skeleton_of_simplex(6, 2)
    assert configuration_complex(K, 2).counts() == deleted_product(K).counts()


def test_configuration_three_of_triangle_boundary():
    C3 = configuration_complex(cycle_graph(3), 3)
    assert C3.counts()[0] == 6
    assert all(c == 0 for c in C3.counts()[1:])


def test_configuration_three_top_dimension_empty():
    C3 = configuration_complex(skeleton_of_simplex(6, 2), 3)
    assert C3.counts()[6] == 0
    assert C3.action_is_free()


def test_configuration_empty_when_too_few_vertices():
    C = configuration_complex(build_complex([("a", "b")]), 3)
    assert C.is_empty()


def test_configuration_requires_m_at_least_two():
    with pytest.raises(InvalidInput):
        configuration_complex(complete_graph(3), 1)


def test_configuration_boundary_squares_to_zero():
    C3 = configuration_complex(complete_graph(6), 3)
    for d in range(2, C3.dim + 1):
        assert compose_is_zero(C3.boundary_rows(d), C3.boundary_rows(d - 1))


def invariant_betti(P, d):
    """dim H^d of swap-invariant cochains, via the projector (1 + s)/2 and sympy ranks."""
    def proj(k):
        n = P.cochain_dim(k)
        M = sympy.zeros(n, n)
        if n == 0:
            return M
        for i, (j, s) in enumerate(P.swap_matrix(k)):
            M[i, i] += sympy.Rational(1, 2)
            M[j, i] += sympy.Rational(s, 2)
        return M

    def delta(k):
        return dense(P.coboundary_rows(k), P.cochain_dim(k))

    Pd = proj(d)
    r_out = (delta(d) * Pd).rank() if d + 1 < len(P.cells) and P.cochain_dim(d + 1) else 0
    r_in = (delta(d - 1) * proj(d - 1)).rank() if d >= 1 else 0
    return Pd.rank() - r_out - r_in


def equivariant_betti(E, d):
    def delta(k):
        return dense(E.coboundary_rows(k), E.cochain_dim(k))
    n = E.cochain_dim(d)
    r_out = delta(d).rank() if E.cochain_dim(d + 1) else 0
    r_in = delta(d - 1).rank() if d >= 1 and E.cochain_dim(d - 1) else 0
    return n - r_out - r_in


@pytest.mark.parametrize("K,n", [(complete_graph(5), 1), (complete_graph(4), 1), (skeleton_of_simplex(4, 1), 2),
                                 (build_complex([("a", "b", "c"), ("c", "d"), ("d", "e", "f")]), 2)])
def test_equivariant_cohomology_matches_invariant_cochains(K, n):
    P = deleted_product(K)
    E = equivariant_complex(P, n)
    for d in range(len(P.cells)):
        assert equivariant_betti(E, d) == invariant_betti(P, d)


def test_expand_is_swap_invariant():
    P = deleted_product(complete_graph(5))
    E = equivariant_complex(P, 1)
    c = list(range(1, E.cochain_dim(2) + 1))
    full = E.expand(c, 2)
    for i, (j, s) in enumerate(P.swap_matrix(2)):
        assert full[j] == s * full[i]
