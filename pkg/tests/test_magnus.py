import pytest
from hypothesis import given, strategies as st

from oracles import nc_series
from obstrukt.errors import HypothesisViolation, InvalidInput
from obstrukt.magnus import (MagnusSeries, Word, commutator, concat, expand, higher_obstruction_certificate,
                             inverse, lcs_class, mu_coefficient, parse_word)

X, Y = Word.gen("x"), Word.gen("y")

words = st.lists(st.tuples(st.sampled_from("xy"), st.sampled_from([1, -1])), max_size=8).map(
    lambda ls: Word(tuple(ls)))
nontrivial = words.filter(lambda w: not w.is_trivial())


def test_expand_letter():
    assert expand("x", 3).coeffs == {"": 1, "x": 1}


def test_expand_commutator():
    assert expand("[x,y]", 2).coeffs == {"": 1, "xy": 1, "yx": -1}


def test_expand_inverse_law():
    assert expand(concat(X, inverse(X)), 5) == MagnusSeries.one(5)
    assert expand("xX", 4) == MagnusSeries.one(4)


def test_degree_precondition():
    with pytest.raises(InvalidInput):
        expand("x", 0)


@pytest.mark.parametrize("word,m", [("x", 1), ("[x,y]", 2), ("[[x,y],y]", 3), ("[x,[x,y]]", 3),
                                    ("[[x,y],[x,[x,y]]]", 5), ("xxyXXY", 2)])
def test_lcs_class(word, m):
    assert lcs_class(word) == m


def test_lcs_class_beyond_bound():
    w = parse_word("[[[x,y],y],y]")
    assert lcs_class(w, 3) == ">= 3"
    assert lcs_class(w, 4) == 4


def test_lcs_class_trivial_word():
    with pytest.raises(InvalidInput):
        lcs_class("xX")


@pytest.mark.parametrize("word,index,value", [("[x,y]", "xy", 1), ("[x,y]", "xx", 0), ("xx", "x", 2),
                                              ("[x,y]", "yx", -1), ("[[x,y],y]", "xyy", 1), ("[[x,y],y]", "yxy", -2)])
def test_mu_coefficient(word, index, value):
    assert mu_coefficient(word, index) == value


def test_constructors():
    assert str(commutator(X, Y)) == "xyXY"
    assert str(inverse(X * Y)) == "YX"
    assert concat(X, inverse(X)).is_trivial()
    assert str(parse_word("[x,y]y")) == "xyX"
    assert str(parse_word("y[x,y]")) == "yxyXY"
    assert parse_word("xX").is_trivial()


@pytest.mark.parametrize("text", ["[x,y", "x]", "[x]", "x#", "[x,y,z]"])
def test_parse_errors(text):
    with pytest.raises(InvalidInput):
        parse_word(text)


@pytest.mark.parametrize("word,level,mono", [("[x,y]", 3, "xy"), ("[[x,y],y]", 4, "xyy")])
def test_certificates(word, level, mono):
    cert = higher_obstruction_certificate(word)
    assert cert.level == level and cert.lcs_class == level - 1
    assert cert.monomial == mono and cert.coefficient == mu_coefficient(word, mono) != 0
    assert "does not contain zero" in cert.statement


def test_certificate_hypothesis():
    with pytest.raises(HypothesisViolation):
        higher_obstruction_certificate("x")


@pytest.mark.parametrize("word", ["[x,y]", "[[x,y],y]", "[x,[x,y]]", "xyXXY", "YYxyx"])
def test_expand_matches_sympy_oracle(word):
    w = parse_word(word)
    assert expand(w, 4).coeffs == nc_series(str(w), 4)


@given(words, words)
def test_multiplicative(u, v):
    assert expand(u * v, 5) == expand(u, 5) * expand(v, 5)


@given(words)
def test_inverse_series(w):
    assert expand(inverse(w), 6) * expand(w, 6) == MagnusSeries.one(6)


@given(nontrivial, nontrivial)
def test_commutator_class_adds(u, v):
    c = commutator(u, v)
    if c.is_trivial():
        return
    mu, mv, mc = lcs_class(u, 6), lcs_class(v, 6), lcs_class(c, 6)
    if isinstance(mu, int) and isinstance(mv, int) and isinstance(mc, int):
        assert mc >= mu + mv
    elif isinstance(mc, int):
        # undetected classes are >= 6, so the commutator class exceeds 6 as well
        raise AssertionError(f"class of {c} detected at {mc} below an undetected factor class")


@given(nontrivial, words)
def test_class_invariant_under_conjugation_and_inversion(w, g):
    m = lcs_class(w, 6)
    assert lcs_class(g * w * inverse(g), 6) == m
    assert lcs_class(inverse(w), 6) == m
