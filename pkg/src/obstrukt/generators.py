"""Canonical complexes: simplex skeleta, complete graphs, C, C-bar and K_alpha."""
from __future__ import annotations

import itertools

from .complex import EdgeLoop, SimplicialComplex, attach_disk, build_complex, remove_simplex, wedge
from .errors import InvalidInput
from .magnus import Word, parse_word

FAMILIES = ("skeleton", "complete-graph", "complete-bipartite", "C", "Cbar", "Kalpha", "K6", "one-relator")

# vertex itinerary of the loop gamma (resp. gamma') in C-bar
GAMMA = ("v7", "v1", "v2", "v3", "v1")
GAMMA_PRIME = ("v7", "v1'", "v2'", "v3'", "v1'")


def skeleton_of_simplex(n: int, k: int) -> SimplicialComplex:
    """k-skeleton of the n-simplex on vertices v1..v{n+1}."""
    if not 0 <= k <= n:
        raise InvalidInput(f"need 0 <= k <= n, got n={n}, k={k}")
    verts = [f"v{i}" for i in range(1, n + 2)]
    return build_complex(itertools.combinations(verts, k + 1), name=f"skel({n},{k})")


def complex_C() -> SimplicialComplex:
    """2-skeleton of the 6-simplex with the triangle v1 v2 v3 removed."""
    return remove_simplex(skeleton_of_simplex(6, 2), ("v1", "v2", "v3"), name="C")


def complex_Cbar() -> SimplicialComplex:
    """Two copies of C glued at their last vertex."""
    C = complex_C()
    Cp = build_complex([[v + "'" for v in s] for s in C.maximal_simplices()], name="C'")
    return wedge(C, "v7", Cp, "v7'", name="Cbar")


def word_loop(word: Word) -> EdgeLoop:
    """The edge loop in gamma v gamma' representing a word in x, y."""
    if word.generators() - {"x", "y"}:
        raise InvalidInput("K_alpha words use only the generators x and y")
    path: list[str] = []
    for g, e in word.letters:
        circ = GAMMA if g == "x" else GAMMA_PRIME
        seq = circ + ("v7",)
        if e < 0:
            seq = seq[::-1]
        path.extend(seq[:-1])
    path.append("v7")
    return EdgeLoop(tuple(path))


def k_alpha(alpha) -> SimplicialComplex:
    """C-bar with a 2-cell attached along the standard loop of alpha."""
    w = parse_word(alpha) if isinstance(alpha, str) else alpha
    if w.is_trivial():
        raise InvalidInput("K_alpha needs a nontrivial word")
    if not w.is_cyclically_reduced():
        raise InvalidInput(f"word {w} is not cyclically reduced")
    K = attach_disk(complex_Cbar(), word_loop(w), name=f"K[{w}]")
    return K


def complete_graph(m: int) -> SimplicialComplex:
    if m < 1:
        raise InvalidInput("complete graph needs m >= 1")
    verts = [f"v{i}" for i in range(1, m + 1)]
    if m == 1:
        return build_complex([verts], name="K1")
    return build_complex(itertools.combinations(verts, 2), name=f"K{m}")


def complete_bipartite(p: int, q: int) -> SimplicialComplex:
    if p < 1 or q < 1:
        raise InvalidInput("complete bipartite graph needs p, q >= 1")
    return build_complex([(f"a{i}", f"b{j}") for i in range(1, p + 1) for j in range(1, q + 1)],
                         name=f"K{p},{q}")


def cycle_graph(m: int) -> SimplicialComplex:
    if m < 3:
        raise InvalidInput("cycle needs m >= 3")
    verts = [f"v{i}" for i in range(1, m + 1)]
    return build_complex([(verts[i], verts[(i + 1) % m]) for i in range(m)], name=f"C{m}")


def wedge_of_circles(gens=("x", "y")) -> SimplicialComplex:
    """Wedge of triangulated circles at base point 'o'; circle g is o, g1, g2."""
    edges = []
    for g in gens:
        edges += [("o", f"{g}1"), (f"{g}1", f"{g}2"), (f"{g}2", "o")]
    return build_complex(edges, name="wedge")


def one_relator_complex(relator) -> SimplicialComplex:
    """Presentation complex of <x, y | r>: wedge of two circles plus one disk."""
    w = parse_word(relator) if isinstance(relator, str) else relator
    if w.is_trivial():
        raise InvalidInput("relator must be nontrivial")
    gens = sorted(w.generators() | {"x", "y"})
    path: list[str] = []
    for g, e in w.letters:
        seq = ("o", f"{g}1", f"{g}2", "o")
        if e < 0:
            seq = seq[::-1]
        path.extend(seq[:-1])
    path.append("o")
    return attach_disk(wedge_of_circles(gens), EdgeLoop(tuple(path)), name=f"P[{w}]")


def generate(family: str, *params) -> SimplicialComplex:
    """Dispatch by family tag, as used by the command line."""
    if family == "skeleton":
        n, k = map(int, params)
        return skeleton_of_simplex(n, k)
    if family == "complete-graph":
        (m,) = map(int, params)
        return complete_graph(m)
    if family == "complete-bipartite":
        p, q = map(int, params)
        return complete_bipartite(p, q)
    if family == "C":
        return complex_C()
    if family == "Cbar":
        return complex_Cbar()
    if family == "Kalpha":
        (w,) = params
        return k_alpha(w)
    if family == "K6":
        return complete_graph(6)
    if family == "one-relator":
        (w,) = params
        return one_relator_complex(w)
    raise InvalidInput(f"unknown family {family!r}; choose from {FAMILIES}")
