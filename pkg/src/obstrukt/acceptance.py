"""The acceptance battery: ten numbered criteria, each an exact check with a time budget.

Each criterion is a function ``(ctx) -> (passed, detail)``; `run_suite`
times it and wraps the outcome in a `CriterionResult`.  The battery is used
by ``obstrukt suite`` and by the test-suite.
"""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Optional

import numpy as np

from .complex import disk_chain
from .generators import (complete_bipartite, complete_graph, complex_Cbar, cycle_graph, k_alpha,
                         one_relator_complex, skeleton_of_simplex)
from .linalg import homology, is_coboundary, matmul, smith_normal_form, sparse_apply
from .links import conway_gordon_omega, random_embedding
from .magnus import Word, higher_obstruction_certificate, lcs_class, mu_coefficient, parse_word
from .massey import massey_product, meridian_classes
from .vk import (generic_map, intersection_form_from_vk, pairing_pullback, vk_class, vk_cochain,
                 vk_image_rational, vk_setup)

FAULTS = ("snf",)


@dataclass
class SuiteContext:
    seed: int = 1
    fault: Optional[str] = None


@dataclass
class CriterionResult:
    number: int
    key: str
    passed: bool
    detail: dict
    seconds: float
    limit: float

    def line(self) -> str:
        mark = "PASS" if self.passed else "FAIL"
        return f"[{mark}] criterion {self.number:2d} {self.key}"

    def to_json(self, timings: bool = False) -> dict:
        out = {"number": self.number, "key": self.key, "passed": self.passed, "detail": self.detail}
        if timings:
            out["seconds"] = round(self.seconds, 3)
            out["limit_seconds"] = self.limit
        return out


@dataclass
class Criterion:
    number: int
    key: str
    tags: frozenset
    limit: float
    check: Callable[[SuiteContext], tuple[bool, dict]]


# ---------------------------------------------------------------------------
# 1-4: Van Kampen verdicts


def _c1(ctx):
    K = skeleton_of_simplex(6, 2)
    z2 = vk_class(K, 2, "Z2", ctx.seed)
    z = vk_class(K, 2, "Z", ctx.seed)
    return (not z2.is_zero and not z.is_zero,
            {"Z2": z2.verdict, "Z": z.verdict, "Z_certified_by": z.certified_by})


def _resubstitute(report) -> bool:
    """delta(witness) == cochain, recomputed from the coboundary rows."""
    E = report.cochain.complex
    top = 2 * report.n
    image = sparse_apply(E.coboundary_rows(top - 1), report.witness)
    return [x for x in image] == [x for x in report.cochain.values]


def _c2(ctx):
    K = complex_Cbar()
    rep = vk_class(K, 2, "Z", ctx.seed)
    ok = rep.is_zero and rep.witness is not None and _resubstitute(rep)
    return ok, {"verdict": rep.verdict, "witness_support": sum(1 for v in rep.witness or () if v),
                "resubstituted": bool(rep.witness is not None and _resubstitute(rep))}


def _c3(ctx):
    expect = {"K5": (complete_graph(5), "nonzero"), "K3,3": (complete_bipartite(3, 3), "nonzero"),
              "K4": (complete_graph(4), "zero"), "C4": (cycle_graph(4), "zero")}
    detail, ok = {}, True
    for name, (K, want) in expect.items():
        rep = vk_class(K, 1, "Z", ctx.seed)
        detail[name] = rep.verdict
        if rep.is_zero and not _resubstitute(rep):
            detail[name] = "bad-witness"
        ok &= detail[name] == want
    return ok, detail


KALPHA_WORDS = ("[x,y]", "[[x,y],y]")


def _c4(ctx):
    detail, ok = {}, True
    for w in KALPHA_WORDS:
        rep = vk_class(k_alpha(w), 2, "Z", ctx.seed)
        good = rep.is_zero and _resubstitute(rep)
        detail[w] = rep.verdict if good else "failed"
        ok &= good
    return ok, detail


# ---------------------------------------------------------------------------
# 5: certificates, with a dense-tensor Magnus oracle


def dense_magnus_class(word: Word, max_degree: int):
    """Lower-central class via products of dense coefficient tensors.

    Degree-k coefficients live in an integer tensor of shape (g,)*k, and
    products are sums of outer products.  Shares no code with `magnus.expand`.
    """
    gens = sorted(word.generators())
    pos = {g: i for i, g in enumerate(gens)}
    g = len(gens)

    def letter(x, e):
        out = [np.ones((), dtype=object)] + [np.zeros((g,) * k, dtype=object) for k in range(1, max_degree + 1)]
        for k in range(1, max_degree + 1):
            if e > 0 and k > 1:
                break
            out[k][(pos[x],) * k] = 1 if e > 0 else (-1) ** k
        return out

    acc = [np.ones((), dtype=object)] + [np.zeros((g,) * k, dtype=object) for k in range(1, max_degree + 1)]
    for x, e in word.letters:
        f = letter(x, e)
        acc = [sum((np.multiply.outer(acc[i], f[k - i]) for i in range(k + 1)),
                   np.zeros((g,) * k, dtype=object)) for k in range(max_degree + 1)]
    for k in range(1, max_degree + 1):
        if any(v != 0 for v in np.asarray(acc[k]).flat):
            return k
    return None


def _c5(ctx):
    want = {"[x,y]": 3, "[[x,y],y]": 4}
    detail, ok = {}, True
    for w, level in want.items():
        cert = higher_obstruction_certificate(w)
        oracle = dense_magnus_class(parse_word(w), 6)
        detail[w] = {"level": cert.level, "class": cert.lcs_class, "oracle_class": oracle,
                     "monomial": cert.monomial.upper(), "coefficient": cert.coefficient}
        ok &= cert.level == level and cert.lcs_class == oracle == lcs_class(w)
    return ok, detail


# ---------------------------------------------------------------------------
# 6: pairing pullback identity


def _c6(ctx):
    cases = {"Cbar": complex_Cbar, "K[x,y]": lambda: k_alpha("[x,y]"),
             "skel(6,2)": lambda: skeleton_of_simplex(6, 2)}
    detail, ok = {}, True
    for name, make in cases.items():
        K = make()
        f = generic_map(K, 2, ctx.seed)
        oc = vk_cochain(K, 2, f)
        form = intersection_form_from_vk(K, oc)
        pull = pairing_pullback(K, form)
        image = vk_image_rational(K, f=f)
        total = pull + image
        detail[name] = {"identity_holds": total.is_zero(), "form_is_zero": not any(any(r) for r in form.matrix),
                        "image_is_zero": image.is_zero(), "b2": len(form.matrix)}
        ok &= total.is_zero()
    return ok, detail


# ---------------------------------------------------------------------------
# 7: Conway-Gordon-Sachs

K6_RUNS = 200


def _c7(ctx):
    values = [conway_gordon_omega(random_embedding("K6", ctx.seed + i)) for i in range(K6_RUNS)]
    failures = [ctx.seed + i for i, v in enumerate(values) if v != 1]
    return not failures, {"embeddings": K6_RUNS, "failures": failures}


# ---------------------------------------------------------------------------
# 8: Massey products against Magnus coefficients

MASSEY_CASES = (("[x,y]", 2), ("[[x,y],y]", 3), ("[x,[x,y]]", 3))


def _c8(ctx):
    signs, detail, ok = set(), {}, True
    for relator, order in MASSEY_CASES:
        K = one_relator_complex(relator)
        alpha = meridian_classes(K)
        disk = disk_chain(K, 0)
        lower_zero = True
        for m in range(2, order):
            for idx in itertools.product("xy", repeat=m):
                rep = massey_product([alpha[g] for g in idx], disk)
                lower_zero &= rep.defined and rep.evaluation == 0
        pairs, nonzero = {}, 0
        for idx in itertools.product("xy", repeat=order):
            rep = massey_product([alpha[g] for g in idx], disk)
            mu = mu_coefficient(relator, idx)
            mono = "".join(idx)
            if not rep.defined:
                pairs[mono] = {"massey": None, "magnus": mu}
                ok = False
                continue
            pairs[mono] = {"massey": int(rep.evaluation), "magnus": mu}
            if mu or rep.evaluation:
                if mu == 0 or rep.evaluation == 0 or abs(rep.evaluation) != abs(mu):
                    ok = False
                else:
                    signs.add(1 if rep.evaluation == mu else -1)
                    nonzero += 1
        detail[relator] = {"order": order, "lower_products_zero": lower_zero, "values": pairs}
        ok &= lower_zero and nonzero > 0
    ok &= len(signs) == 1
    detail["global_sign"] = signs.pop() if len(signs) == 1 else None
    return ok, detail


# ---------------------------------------------------------------------------
# 9: seed invariance

SEED_COMPLEXES = (("skel(6,2)", lambda: skeleton_of_simplex(6, 2), 2), ("Cbar", complex_Cbar, 2),
                  ("K5", lambda: complete_graph(5), 1), ("K3,3", lambda: complete_bipartite(3, 3), 1))
SEED_RUNS = 5


def _c9(ctx):
    detail, ok = {}, True
    for name, make, n in SEED_COMPLEXES:
        K = make()
        E = vk_setup(K, n)
        cochains = [vk_cochain(K, n, generic_map(K, n, ctx.seed + k)).values for k in range(SEED_RUNS)]
        bad = []
        for a, b in itertools.combinations(range(SEED_RUNS), 2):
            diff = [x - y for x, y in zip(cochains[a], cochains[b])]
            if is_coboundary(E, diff, 2 * n, "Z") is None:
                bad.append([ctx.seed + a, ctx.seed + b])
        distinct = len({tuple(c) for c in cochains})
        detail[name] = {"pairs_checked": comb(SEED_RUNS, 2), "non_coboundary_pairs": bad,
                        "distinct_cochains": distinct}
        ok &= not bad
    return ok, detail


# ---------------------------------------------------------------------------
# 10: infrastructure

SNF_RUNS = 1000


def _snf(A, fault):
    dec = smith_normal_form(A)
    if fault == "snf" and dec.D.size:
        dec.D[0, 0] += 1
    return dec


def _snf_roundtrip_ok(A, dec) -> bool:
    A = np.asarray(A, dtype=object)
    if not np.array_equal(matmul(matmul(dec.U, A), dec.V), dec.D):
        return False
    m, n = dec.D.shape
    return all(dec.D[i, j] == 0 for i in range(m) for j in range(n) if i != j)


def _c10(ctx):
    rng = np.random.default_rng(ctx.seed)
    failures = 0
    for _ in range(SNF_RUNS):
        m, n = (int(x) for x in rng.integers(1, 41, size=2))
        A = rng.integers(-50, 51, size=(m, n))
        failures += not _snf_roundtrip_ok(A, _snf(A, ctx.fault))
    bad_skeleta = []
    for nn in range(1, 8):
        for k in range(1, nn + 1):
            K = skeleton_of_simplex(nn, k)
            H = homology(K, k, "Z")
            lower = [homology(K, d, "Z") for d in range(1, k)]
            if (H.betti, H.torsion) != (comb(nn, k + 1), ()) or any(h.betti or h.torsion for h in lower) \
                    or homology(K, 0, "Z").betti != 1:
                bad_skeleta.append([nn, k])
    return failures == 0 and not bad_skeleta, {"snf_matrices": SNF_RUNS, "snf_failures": failures,
                                                "skeleta_mismatches": bad_skeleta}


CRITERIA = (
    Criterion(1, "vk-positive-control", frozenset({"vk"}), 10, _c1),
    Criterion(2, "vk-negative-control", frozenset({"vk"}), 30, _c2),
    Criterion(3, "vk-graphs", frozenset({"vk", "graphs"}), 8, _c3),
    Criterion(4, "vk-kalpha", frozenset({"vk", "kalpha"}), 600, _c4),
    Criterion(5, "magnus-certificates", frozenset({"magnus", "kalpha"}), 1, _c5),
    Criterion(6, "pairing-pullback-identity", frozenset({"vk", "pairing"}), 180, _c6),
    Criterion(7, "conway-gordon", frozenset({"links"}), 30, _c7),
    Criterion(8, "massey-magnus", frozenset({"massey", "magnus"}), 30, _c8),
    Criterion(9, "seed-invariance", frozenset({"vk", "seeds"}), 120, _c9),
    Criterion(10, "infrastructure", frozenset({"linalg", "snf"}), 60, _c10),
)


def select(only: Iterable[str] | None) -> list[Criterion]:
    """Criteria matching any of the given numbers, keys or tags (all if None)."""
    if not only:
        return list(CRITERIA)
    wanted = {w.strip() for w in only if w.strip()}
    out = [c for c in CRITERIA if str(c.number) in wanted or c.key in wanted or c.tags & wanted]
    known = {str(c.number) for c in CRITERIA} | {c.key for c in CRITERIA} | set().union(*(c.tags for c in CRITERIA))
    unknown = wanted - known
    if unknown:
        from .errors import InvalidInput
        raise InvalidInput(f"unknown criteria selectors {sorted(unknown)}")
    return out


def seed_registry(ctx: SuiteContext) -> dict:
    return {
        "generic-map": ctx.seed,
        "vk-seed-invariance": [ctx.seed + k for k in range(SEED_RUNS)],
        "k6-embeddings": [ctx.seed, ctx.seed + K6_RUNS - 1],
        "snf-matrices": ctx.seed,
    }


def run_criterion(c: Criterion, ctx: SuiteContext) -> CriterionResult:
    t0 = time.perf_counter()
    try:
        passed, detail = c.check(ctx)
    except Exception as exc:  # a crash is a failure of that criterion, reported as such
        passed, detail = False, {"error": f"{type(exc).__name__}: {exc}"}
    dt = time.perf_counter() - t0
    if dt > c.limit:
        passed = False
        detail = dict(detail, over_time_budget=True)
    return CriterionResult(c.number, c.key, bool(passed), detail, dt, c.limit)


def run_suite(only: Iterable[str] | None = None, seed: int = 1, fault: str | None = None,
              on_result: Callable[[CriterionResult], None] | None = None) -> list[CriterionResult]:
    if fault is not None and fault not in FAULTS:
        from .errors import InvalidInput
        raise InvalidInput(f"unknown fault {fault!r}; choose from {FAULTS}")
    ctx = SuiteContext(seed, fault)
    results = []
    for c in select(only):
        r = run_criterion(c, ctx)
        results.append(r)
        if on_result:
            on_result(r)
    return results
