"""Free-group words, truncated Magnus expansions and higher-obstruction certificates.

Word grammar: a lowercase letter is a generator, its capital is the inverse,
``[u,v]`` is the commutator u v u^-1 v^-1, and juxtaposition multiplies.
Monomials of the Magnus expansion are strings over the generator letters,
so ``"xy"`` stands for X*Y.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import HypothesisViolation, InvalidInput

DEFAULT_MAX_DEGREE = 8


@dataclass(frozen=True)
class Word:
    """A freely reduced word; letters are (generator, +1 or -1)."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _free_reduce(self.letters))

    @classmethod
    def gen(cls, g: str) -> "Word":
        return cls(((g, 1),))

    def __len__(self):
        return len(self.letters)

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def __invert__(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def is_trivial(self) -> bool:
        return not self.letters

    def is_cyclically_reduced(self) -> bool:
        if len(self.letters) < 2:
            return True
        (g0, e0), (g1, e1) = self.letters[0], self.letters[-1]
        return not (g0 == g1 and e0 == -e1)

    def generators(self) -> set:
        return {g for g, _ in self.letters}

    def __str__(self):
        return "".join(g if e > 0 else g.upper() for g, e in self.letters) or "1"


def _free_reduce(letters: Iterable) -> tuple:
    out: list = []
    for g, e in letters:
        if out and out[-1][0] == g and out[-1][1] == -e:
            out.pop()
        else:
            out.append((g, e))
    return tuple(out)


def inverse(u: Word) -> Word:
    return ~u


def concat(u: Word, v: Word) -> Word:
    return u * v


def commutator(u: Word, v: Word) -> Word:
    return u * v * ~u * ~v


def parse_word(text: str) -> Word:
    """Parse the word grammar (letters, capitals for inverses, [u,v] brackets)."""
    pos = 0
    s = "".join(text.split())

    def parse_seq(stop: str) -> Word:
        nonlocal pos
        w = Word()
        while pos < len(s) and s[pos] not in stop:
            ch = s[pos]
            if ch == "[":
                pos += 1
                u = parse_seq(",")
                if pos >= len(s) or s[pos] != ",":
                    raise InvalidInput(f"expected ',' in {text!r}")
                pos += 1
                v = parse_seq("]")
                if pos >= len(s) or s[pos] != "]":
                    raise InvalidInput(f"expected ']' in {text!r}")
                pos += 1
                w = w * commutator(u, v)
            elif ch == "1":
                pos += 1
            elif ch.isalpha() and ch.isascii():
                w = w * Word(((ch.lower(), 1 if ch.islower() else -1),))
                pos += 1
            else:
                raise InvalidInput(f"unexpected character {ch!r} in {text!r}")
        return w

    w = parse_seq("")
    if pos != len(s):
        raise InvalidInput(f"trailing input in {text!r}")
    return w


def as_word(w: Union[str, Word]) -> Word:
    return parse_word(w) if isinstance(w, str) else w


# ---------------------------------------------------------------------------
# truncated Magnus expansion


class MagnusSeries:
    """Truncated noncommutative integer power series; monomial string -> coefficient."""

    def __init__(self, coeffs: dict, degree: int):
        self.degree = degree
        self.coeffs = {m: c for m, c in coeffs.items() if c and len(m) <= degree}

    @classmethod
    def one(cls, degree: int) -> "MagnusSeries":
        return cls({"": 1}, degree)

    @classmethod
    def letter(cls, g: str, e: int, degree: int) -> "MagnusSeries":
        if e > 0:
            return cls({"": 1, g: 1}, degree)
        # (1 + X)^-1 = sum_k (-X)^k
        return cls({g * k: (-1) ** k for k in range(degree + 1)}, degree)

    def __mul__(self, other: "MagnusSeries") -> "MagnusSeries":
        D = min(self.degree, other.degree)
        out: dict = {}
        for m1, c1 in self.coeffs.items():
            room = D - len(m1)
            if room < 0:
                continue
            for m2, c2 in other.coeffs.items():
                if len(m2) <= room:
                    m = m1 + m2
                    out[m] = out.get(m, 0) + c1 * c2
        return MagnusSeries(out, D)

    def __getitem__(self, monomial: str) -> int:
        return self.coeffs.get(monomial, 0)

    def __eq__(self, other):
        return isinstance(other, MagnusSeries) and self.degree == other.degree and self.coeffs == other.coeffs

    def homogeneous(self, k: int) -> dict:
        return {m: c for m, c in self.coeffs.items() if len(m) == k}

    def __repr__(self):
        terms = sorted(self.coeffs.items(), key=lambda t: (len(t[0]), t[0]))
        body = " + ".join(f"{c}*{m.upper() or '1'}" for m, c in terms)
        return f"MagnusSeries({body}; deg<={self.degree})"


def expand(w: Union[str, Word], degree: int) -> MagnusSeries:
    """Magnus expansion x -> 1 + X of a word, truncated above `degree`."""
    if degree < 1:
        raise InvalidInput("truncation degree must be >= 1")
    w = as_word(w)
    out = MagnusSeries.one(degree)
    for g, e in w.letters:
        out = out * MagnusSeries.letter(g, e, degree)
    return out


def lcs_class(w: Union[str, Word], max_degree: int = DEFAULT_MAX_DEGREE):
    """Lower-central-series class m (w in F^m minus F^{m+1}), or '>= D' if undetected."""
    w = as_word(w)
    if w.is_trivial():
        raise InvalidInput("the trivial word has no lower-central-series class")
    series = expand(w, max_degree)
    for k in range(1, max_degree + 1):
        if series.homogeneous(k):
            return k
    return f">= {max_degree}"


def mu_coefficient(w: Union[str, Word], index: Union[str, Iterable[str]], degree: int | None = None) -> int:
    """Coefficient of the monomial X_{i1}...X_{ik} in the Magnus expansion of w."""
    mono = "".join(index).lower()
    D = degree if degree is not None else max(len(mono), 1)
    if len(mono) > D:
        raise InvalidInput("multi-index longer than the truncation degree")
    return expand(w, max(D, 1))[mono]


@dataclass(frozen=True)
class ObstructionCertificate:
    word: str
    lcs_class: int
    level: int
    monomial: str
    coefficient: int
    statement: str

    def to_json(self) -> dict:
        return {"word": self.word, "class": self.lcs_class, "level": self.level,
                "monomial": self.monomial.upper(), "coefficient": self.coefficient,
                "statement": self.statement}


def higher_obstruction_certificate(alpha: Union[str, Word],
                                   max_degree: int = DEFAULT_MAX_DEGREE) -> ObstructionCertificate:
    """Certificate that o_{m+1}(K_alpha) is defined and misses zero, m = class of alpha."""
    w = as_word(alpha)
    m = lcs_class(w, max_degree)
    if isinstance(m, str):
        raise InvalidInput(f"class of {w} not detected below degree {max_degree}; raise max_degree")
    if m < 2:
        raise HypothesisViolation(f"{w} is not in the commutator subgroup F^2 (class {m})")
    series = expand(w, m)
    mono, coeff = min(series.homogeneous(m).items())
    stmt = (f"{w} lies in F^{m} but not F^{m + 1}; its Magnus coefficient of {mono.upper()} is {coeff}, "
            f"so o_{m + 1}(K_alpha) is defined and does not contain zero, and K_alpha does not embed in R^4")
    return ObstructionCertificate(str(w), m, m + 1, mono, coeff, stmt)
