"""Command-line front end.

Every command prints one JSON RunReport on stdout: the command echo, input
digests, the seed registry, the verdicts and the full result.  Reports are
deterministic for a fixed command and seed; wall-clock timings are only
added with ``--timings``.

Exit codes: 0 success or zero class, 1 nonzero class (or a failed suite),
2 invalid input, 3 degeneracy budget exhausted.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from .complex import SimplicialComplex, complex_from_json, disk_chain
from .errors import DegenerateInput, InvalidInput
from .generators import FAMILIES, generate, k_alpha
from .linalg import homology
from .links import conway_gordon_report, embedding_from_json, linking_number, random_embedding
from .magnus import DEFAULT_MAX_DEGREE, expand, higher_obstruction_certificate, lcs_class, parse_word
from .massey import cohomology_basis, massey_product, meridian_classes
from .vk import vk_class

EXIT_OK, EXIT_NONZERO, EXIT_INVALID, EXIT_DEGENERATE = 0, 1, 2, 3
SEED_ENV = "OBSTRUKT_SEED"
DEFAULT_SEED = 1
COEFFS = {"z": "Z", "q": "Q", "z2": "Z2"}


@dataclass
class RunReport:
    command: list
    inputs: dict = field(default_factory=dict)
    seeds: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    result: object = None
    timings: dict = field(default_factory=dict)

    def to_json(self, timings: bool = False) -> dict:
        out = {"command": self.command, "inputs": self.inputs, "seeds": self.seeds,
               "verdicts": self.verdicts, "result": self.result}
        if timings:
            out["timings"] = {k: round(v, 3) for k, v in self.timings.items()}
        return out

    def dumps(self, timings: bool = False) -> str:
        return json.dumps(self.to_json(timings), sort_keys=True, indent=2, default=_jsonable)


def _jsonable(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else str(x)
    if isinstance(x, (set, frozenset, tuple)):
        return list(x)
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"not serializable: {type(x).__name__}")


def default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return DEFAULT_SEED
    try:
        return int(raw)
    except ValueError:
        raise InvalidInput(f"{SEED_ENV} must be an integer, got {raw!r}") from None


def _read_json(path: str, report: RunReport) -> dict:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InvalidInput(f"cannot read {path}: {exc.strerror}") from None
    report.inputs[path] = "sha256:" + hashlib.sha256(raw).hexdigest()
    try:
        return json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InvalidInput(f"{path} is not valid JSON: {exc}") from None


def _load_complex(path: str, report: RunReport) -> SimplicialComplex:
    return complex_from_json(_read_json(path, report))


def _coeff(name: str) -> str:
    try:
        return COEFFS[name.lower()]
    except KeyError:
        raise InvalidInput(f"coefficients must be one of {sorted(COEFFS)}") from None


# ---------------------------------------------------------------------------
# commands; each fills the report and returns an exit code


def cmd_gen(args, report: RunReport) -> int:
    if args.family == "embedding":
        if len(args.params) != 1:
            raise InvalidInput("usage: gen embedding <graph name> [--seed N]")
        report.seeds["embedding"] = args.seed
        out = random_embedding(args.params[0], args.seed).to_json()
    else:
        out = generate(args.family, *args.params).to_json()
        report.verdicts["f_vector"] = list(complex_from_json(out).f_vector)
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(out, fh, indent=1)
            fh.write("\n")
        report.verdicts["written"] = args.output
    report.result = out
    return EXIT_OK


def cmd_homology(args, report: RunReport) -> int:
    K = _load_complex(args.complex, report)
    coeff = _coeff(args.coeff)
    dims = [args.dim] if args.dim is not None else range(K.dim + 1)
    report.result = {f"H{d}": homology(K, d, coeff).to_json() for d in dims}
    report.verdicts = {"coeff": coeff, "f_vector": list(K.f_vector)}
    return EXIT_OK


def cmd_vk(args, report: RunReport) -> int:
    K = _load_complex(args.complex, report)
    n = args.dim if args.dim is not None else K.dim
    if n < 1:
        raise InvalidInput("--dim must be at least 1")
    report.seeds["generic-map"] = args.seed
    rep = vk_class(K, n, _coeff(args.coeff), args.seed)
    report.seeds["generic-map-used"] = rep.seed
    report.verdicts = {"verdict": rep.verdict, "coeff": rep.coeff, "n": n}
    report.result = rep.to_json()
    return EXIT_OK if rep.is_zero else EXIT_NONZERO


def cmd_kalpha(args, report: RunReport) -> int:
    report.inputs["word"] = args.word
    w = parse_word(args.word)
    cert = higher_obstruction_certificate(w, args.max_degree)
    K = k_alpha(w)
    report.seeds["generic-map"] = args.seed
    rep = vk_class(K, 2, "Z", args.seed)
    report.seeds["generic-map-used"] = rep.seed
    report.verdicts = {"vk": rep.verdict, "certificate_level": cert.level, "embeds_in_R4": False}
    report.result = {"complex": {"name": K.name, "f_vector": list(K.f_vector)},
                     "vk": {k: v for k, v in rep.to_json().items() if k != "witness"},
                     "vk_witness_support": sum(1 for v in rep.witness or () if v),
                     "certificate": cert.to_json()}
    return EXIT_OK if rep.is_zero else EXIT_NONZERO


def cmd_magnus(args, report: RunReport) -> int:
    report.inputs["word"] = args.word
    w = parse_word(args.word)
    m = lcs_class(w, args.max_degree)
    series = expand(w, args.max_degree)
    report.verdicts = {"class": m}
    leading = series.homogeneous(m) if isinstance(m, int) else {}
    report.result = {"word": str(w), "class": m, "max_degree": args.max_degree,
                     "leading_terms": {k.upper(): v for k, v in sorted(leading.items())}}
    return EXIT_OK


def _massey_classes(K: SimplicialComplex, names: list[str]):
    """Letters name the circle classes of a one-relator complex; integers index an H^1 basis."""
    if all(n.isdigit() for n in names):
        basis = cohomology_basis(K, 1)
        idx = [int(n) for n in names]
        if any(i >= len(basis) for i in idx):
            raise InvalidInput(f"H^1 has rank {len(basis)}; class index out of range")
        return [basis[i] for i in idx], "h1-basis"
    circles = sorted(v[:-1] for v in K.vertices if len(v) == 2 and v.endswith("1") and ("o", v) in K)
    for g in set(names):
        if g not in circles:
            raise InvalidInput(f"{g!r} is not a circle generator of this complex (or an H^1 index)")
    alpha = meridian_classes(K, circles)
    return [alpha[g] for g in names], "meridian"


def cmd_massey(args, report: RunReport) -> int:
    K = _load_complex(args.complex, report)
    names = [c.strip() for c in args.classes.split(",") if c.strip()]
    if args.order is not None and args.order != len(names):
        raise InvalidInput(f"--order {args.order} but {len(names)} classes were given")
    classes, kind = _massey_classes(K, names)
    if K.disks and not 0 <= args.disk < len(K.disks):
        raise InvalidInput(f"the complex has {len(K.disks)} attached disk(s)")
    cycle = disk_chain(K, args.disk) if K.disks else None
    rep = massey_product(classes, cycle)
    report.verdicts = {"status": rep.status, "classes": kind}
    out = rep.to_json()
    out["classes"] = names
    if cycle is not None:
        out["evaluated_on"] = f"disk {args.disk}"
    report.result = out
    return EXIT_OK


def _cycle_arg(text: str) -> list[str]:
    vs = [v.strip() for v in text.split(",") if v.strip()]
    if len(vs) < 3:
        raise InvalidInput(f"a cycle needs at least 3 vertices: {text!r}")
    return vs


def cmd_links(args, report: RunReport) -> int:
    e = embedding_from_json(_read_json(args.embedding, report))
    report.seeds["projection-directions"] = "fixed built-in sequence"
    if args.links_cmd == "omega":
        rep = conway_gordon_report(e)
        report.verdicts = {"omega": rep.value}
        report.result = rep.to_json()
        return EXIT_OK
    if len(args.cycle) != 2:
        raise InvalidInput("give exactly two --cycle options")
    A, B = (e.cycle(_cycle_arg(c)) for c in args.cycle)
    lk = linking_number(A, B)
    report.verdicts = {"lk": lk}
    report.result = {"cycles": [_cycle_arg(c) for c in args.cycle], "lk": lk}
    return EXIT_OK


def cmd_suite(args, report: RunReport) -> int:
    from .acceptance import run_suite, seed_registry, SuiteContext

    only = args.only.split(",") if args.only else None
    report.seeds.update(seed_registry(SuiteContext(args.seed)))
    if args.inject_fault:
        report.inputs["fault"] = args.inject_fault

    def echo(r):
        print(r.line(), file=sys.stderr, flush=True)

    results = run_suite(only, args.seed, args.inject_fault, echo)
    report.verdicts = {f"{r.number}:{r.key}": "pass" if r.passed else "fail" for r in results}
    report.result = [r.to_json(args.timings) for r in results]
    for r in results:
        report.timings[f"criterion-{r.number}"] = r.seconds
    ok = all(r.passed for r in results)
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(report.dumps(args.timings) + "\n")
    return EXIT_OK if ok else EXIT_NONZERO


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help=f"seed for pseudo-random choices (default: ${SEED_ENV} or {DEFAULT_SEED})")
    common.add_argument("--timings", action="store_true", help="add wall-clock timings to the report")

    p = argparse.ArgumentParser(prog="obstrukt", description="Embedding obstructions for simplicial complexes.")
    sub = p.add_subparsers(dest="cmd", required=True)

    g = sub.add_parser("gen", parents=[common], help="generate a complex (or a random graph embedding)")
    g.add_argument("family", help=f"one of {', '.join(FAMILIES)}, or 'embedding'")
    g.add_argument("params", nargs="*")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    h = sub.add_parser("homology", parents=[common], help="simplicial homology")
    h.add_argument("complex")
    h.add_argument("--coeff", default="z")
    h.add_argument("--dim", type=int)
    h.set_defaults(func=cmd_homology)

    v = sub.add_parser("vk", help="Van Kampen obstruction")
    vsub = v.add_subparsers(dest="vk_cmd", required=True)
    vc = vsub.add_parser("check", parents=[common])
    vc.add_argument("complex")
    vc.add_argument("--dim", type=int, help="target is R^(2*dim); default dim K")
    vc.add_argument("--coeff", default="z")
    vc.set_defaults(func=cmd_vk)

    k = sub.add_parser("kalpha", parents=[common], help="K_alpha verdict plus higher-obstruction certificate")
    k.add_argument("word")
    k.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    k.set_defaults(func=cmd_kalpha)

    m = sub.add_parser("magnus", help="Magnus expansion tools")
    msub = m.add_subparsers(dest="magnus_cmd", required=True)
    mc = msub.add_parser("class", parents=[common])
    mc.add_argument("word")
    mc.add_argument("--max-degree", type=int, default=DEFAULT_MAX_DEGREE)
    mc.set_defaults(func=cmd_magnus)

    ms = sub.add_parser("massey", parents=[common], help="Massey product of degree-1 classes")
    ms.add_argument("complex")
    ms.add_argument("--classes", required=True,
                    help="comma-separated circle generators (e.g. x,y,y) or H^1 basis indices (e.g. 0,1,1)")
    ms.add_argument("--order", type=int)
    ms.add_argument("--disk", type=int, default=0, help="attached disk to evaluate on")
    ms.set_defaults(func=cmd_massey)

    ln = sub.add_parser("links", help="linking numbers of straight-line spatial graphs")
    lsub = ln.add_subparsers(dest="links_cmd", required=True)
    lk = lsub.add_parser("lk", parents=[common])
    lk.add_argument("embedding")
    lk.add_argument("--cycle", action="append", default=[], help="comma-separated vertices")
    lk.set_defaults(func=cmd_links)
    lo = lsub.add_parser("omega", parents=[common])
    lo.add_argument("embedding")
    lo.set_defaults(func=cmd_links)

    s = sub.add_parser("suite", parents=[common], help="run the acceptance battery")
    s.add_argument("--only", help="comma-separated criterion numbers, keys or tags")
    s.add_argument("--report", help="also write the RunReport to this file")
    s.add_argument("--inject-fault", choices=["snf"], help="tamper with a component to check detection")
    s.set_defaults(func=cmd_suite)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    report = RunReport(command=["obstrukt", *argv])
    t0 = time.perf_counter()
    try:
        if args.seed is None:
            args.seed = default_seed()
        code = args.func(args, report)
    except DegenerateInput as exc:
        report.verdicts = {"error": "degenerate", "message": str(exc)}
        code = EXIT_DEGENERATE
    except (InvalidInput, RecursionError) as exc:
        report.verdicts = {"error": "invalid-input", "message": str(exc)}
        code = EXIT_INVALID
    report.timings["total"] = time.perf_counter() - t0
    print(report.dumps(getattr(args, "timings", False)))
    if code in (EXIT_INVALID, EXIT_DEGENERATE):
        print(f"obstrukt: {report.verdicts['message']}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
