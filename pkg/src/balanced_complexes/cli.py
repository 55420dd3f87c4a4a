"""Command-line front end.  Every subcommand prints one JSON document.

Inputs are JSON files, ``-`` for stdin, or ``fixtures://<name>``.
Exit status: 0 success, 1 domain or input error (JSON error object on
stdout), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Callable, Sequence

from . import fixtures
from .balance_solver import BudgetExceeded, decide_balanceable, minimal_generator, nullspace, constraint_system
from .complex_core import Complex, WeightedComplex, is_balanced
from .cox_poly import LaurentElement, clear_denominators, ga_expand, is_invariant, laurent_of
from .exact_arith import FieldSpec
from .graph_catalog import catalogue, classify_graph, enumerate_minimal_graphs, is_irreducible_degree_two
from .hypertree import OUTSIDE, Hypertree, check_axioms, enumerate_hypertrees, hypertree_degree, min_degree
from .picard import CurveClass, DivisorClass, divisor_class_of, pair


class InputError(ValueError):
    pass


def read_source(src: str) -> dict:
    doc = fixtures.resolve(src)
    if doc is not None:
        return doc
    try:
        text = sys.stdin.read() if src == "-" else open(src, encoding="utf-8").read()
    except OSError as exc:
        raise InputError(f"cannot read {src}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {src}: {exc.msg} at line {exc.lineno}") from None
    if not isinstance(doc, dict):
        raise InputError(f"{src}: expected a JSON object")
    return doc


def _need(doc: dict, keys: Sequence[str], what: str) -> None:
    missing = [k for k in keys if k not in doc]
    if missing:
        raise InputError(f"expected a {what}; missing keys {missing}")


def load_complex(src: str, n: int | None = None) -> Complex:
    doc = read_source(src)
    _need(doc, ["n", "simplices"], "complex")
    cx = Complex.from_json(doc)
    return cx if n is None else cx.with_n(n)


def load_weighted(src: str, field: FieldSpec | None) -> WeightedComplex:
    doc = read_source(src)
    _need(doc, ["n", "simplices", "weights"], "weighted complex")
    return WeightedComplex.from_json(doc, field)


def load_laurent(src: str, field: FieldSpec | None) -> LaurentElement:
    """A Laurent element, either directly or from a weighted complex."""
    doc = read_source(src)
    if "terms" in doc:
        if field is not None:
            doc["char"] = field.characteristic
        return LaurentElement.from_json(doc)
    _need(doc, ["n", "simplices", "weights"], "Laurent element or weighted complex")
    return laurent_of(WeightedComplex.from_json(doc, field))


def load_class(src: str) -> DivisorClass:
    doc = read_source(src)
    if "simplices" in doc:
        return divisor_class_of(Complex.from_json(doc))
    _need(doc, ["n", "H"], "divisor class")
    return DivisorClass.from_json(doc)


def load_curve(src: str) -> CurveClass:
    doc = read_source(src)
    _need(doc, ["n", "dotH"], "curve class")
    return CurveClass.from_json(doc)


def load_hypertree(src: str) -> Hypertree:
    doc = read_source(src)
    _need(doc, ["n", "parts"], "hypertree")
    return Hypertree.from_json(doc)


def _field(args) -> FieldSpec:
    return FieldSpec(args.char)


def _opt_field(args) -> FieldSpec | None:
    return None if args.char is None else FieldSpec(args.char)


# -- subcommands --------------------------------------------------------------

def cmd_balance(args) -> dict:
    return decide_balanceable(load_complex(args.source), _field(args), args.max_dim).to_json()


def cmd_minimal(args) -> dict:
    f = _field(args)
    cx = load_complex(args.source)
    gen = minimal_generator(cx, f)
    dim, _ = nullspace(constraint_system(cx, f))
    return {"char": f.characteristic, "minimal": gen is not None, "dim": dim,
            "generator": None if gen is None else [f.format(x) for x in gen]}


def cmd_classify(args) -> dict:
    f = _field(args)
    cx = load_complex(args.source)
    shape = classify_graph(cx, f)
    gen = minimal_generator(cx, f)
    out = {"char": f.characteristic, **shape.to_json(),
           "witness": None if gen is None else [f.format(x) for x in gen]}
    if cx.n >= 6:
        out["irreducible_degree_two"] = is_irreducible_degree_two(cx, f)
    return out


def cmd_class(args) -> dict:
    return divisor_class_of(load_complex(args.source), args.n).to_json()


def cmd_pair(args) -> dict:
    return {"value": pair(load_curve(args.curve), load_class(args.divisor))}


def cmd_invariance(args) -> dict:
    f = load_laurent(args.source, _opt_field(args))
    out = {
        "char": f.field.characteristic,
        "invariant": is_invariant(f),
        "expansion": [str(piece) for piece in ga_expand(f)],
    }
    if f.terms and f.degree:
        out["balanced"] = is_balanced(f.to_weighted_complex())
    return out


def cmd_clear(args) -> dict:
    g = clear_denominators(load_laurent(args.source, _opt_field(args)))
    return {**g.to_json(), "text": str(g)}


def cmd_hypertree(args) -> dict:
    if args.action == "enumerate":
        if args.n is None:
            raise InputError("hypertree enumerate needs --n")
        return _enumerate_hypertrees(args.n, args.max_part_size, args.jobs)
    if args.source is None:
        raise InputError(f"hypertree {args.action} needs a hypertree source")
    gamma = load_hypertree(args.source)
    if args.action == "check":
        return {**gamma.to_json(), **check_axioms(gamma).to_json()}
    vertex = OUTSIDE if args.vertex in (None, OUTSIDE) else int(args.vertex)
    return {"vertex": vertex, "degree": hypertree_degree(gamma, vertex), "min_degree": min_degree(gamma)}


def _enumerate_hypertrees(n: int, max_part_size: int | None, jobs: int) -> dict:
    found = enumerate_hypertrees(n, max_part_size, jobs)
    return {"n": n, "count": len(found), "hypertrees": [
        {**g.to_json(), "min_degree": min_degree(g),
         "degrees": {str(v): hypertree_degree(g, v) for v in range(1, n + 1)}}
        for g in found]}


def cmd_enumerate_hypertrees(args) -> dict:
    return _enumerate_hypertrees(args.n, args.max_part_size, args.jobs)


def cmd_enumerate_minimal(args) -> dict:
    f = _field(args)
    graphs = enumerate_minimal_graphs(args.vertices, f, args.jobs)
    return {"char": f.characteristic, "vertices": args.vertices, "count": len(graphs), "graphs": [
        {"edges": [list(s.entries) for s in cx.simplices], **classify_graph(cx, f).to_json(),
         "witness": [f.format(x) for x in minimal_generator(cx, f) or ()]}
        for cx in graphs]}


def cmd_fixtures(args) -> dict:
    if args.name is None:
        return {"version": fixtures.FIXTURE_VERSION, "fixtures": fixtures.names()}
    return fixtures.load(args.name)


def cmd_report(args) -> dict:
    if args.kind == "char-sweep":
        if args.source is None:
            raise InputError("char-sweep needs a complex source")
        cx = load_complex(args.source)
        chars = [int(c) for c in args.chars.split(",") if c.strip()]
        rows = []
        for p in chars:
            v = decide_balanceable(cx, FieldSpec(p))
            rows.append({"char": p, "balanceable": v.balanceable, "dim": v.nullspace_dimension,
                         "witness": v.to_json()["witness"]})
        return {"kind": "char-sweep", "complex": cx.to_json(), "rows": rows,
                "balanceable_at": [r["char"] for r in rows if r["balanceable"]]}
    f = _field(args)
    entries, mismatches = catalogue(args.vertices, f, args.jobs)
    counts: dict[str, int] = {}
    for e in entries:
        counts[e.shape.tag.value] = counts.get(e.shape.tag.value, 0) + 1
    return {"kind": "catalogue", "char": f.characteristic, "vertices": args.vertices,
            "count": len(entries), "by_tag": dict(sorted(counts.items())),
            "mismatches": [m.to_json(f) for m in mismatches],
            "graphs": [e.to_json(f) for e in entries]}


# -- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="balanced-complexes",
                                     description="Balanced complexes, divisor classes and Cox-ring checks.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func: Callable, help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        return p

    def char(p, default: int | None = 0) -> None:
        p.add_argument("--char", type=int, default=default, help="field characteristic (0 or a prime)")

    def jobs(p) -> None:
        p.add_argument("--jobs", type=int, default=1, help="worker processes")

    p = add("balance", cmd_balance, "decide balanceability and print a witness")
    p.add_argument("source")
    char(p)
    p.add_argument("--max-dim", type=int, default=None, help="cap on searched nullspace dimension (F_p)")

    p = add("minimal", cmd_minimal, "decide minimality")
    p.add_argument("source")
    char(p)

    p = add("classify", cmd_classify, "match a graph against the minimal patterns")
    p.add_argument("source")
    char(p)

    p = add("class", cmd_class, "divisor class of a complex")
    p.add_argument("source")
    p.add_argument("--n", type=int, default=None)

    p = add("pair", cmd_pair, "intersection number of a curve class and a divisor class")
    p.add_argument("curve")
    p.add_argument("divisor")

    p = add("invariance", cmd_invariance, "translation invariance of a Laurent element or weighted complex")
    p.add_argument("source")
    char(p, None)

    p = add("clear", cmd_clear, "clear denominators into the Cox ring")
    p.add_argument("source")
    char(p, None)

    p = add("hypertree", cmd_hypertree, "hypertree axioms, degrees, enumeration")
    p.add_argument("action", choices=["check", "enumerate", "degree"])
    p.add_argument("source", nargs="?")
    p.add_argument("--vertex", default=None, help=f"vertex label or '{OUTSIDE}'")
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--max-part-size", type=int, default=None)
    jobs(p)

    p = add("enumerate-hypertrees", cmd_enumerate_hypertrees, "hypertrees on n vertices up to relabeling")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-part-size", type=int, default=None)
    jobs(p)

    p = add("enumerate-minimal", cmd_enumerate_minimal, "minimal graphs up to relabeling")
    p.add_argument("--vertices", type=int, required=True)
    char(p)
    jobs(p)

    p = add("fixtures", cmd_fixtures, "list fixtures or print one")
    p.add_argument("name", nargs="?")

    p = add("report", cmd_report, "characteristic sweep or minimal-graph catalogue")
    p.add_argument("kind", choices=["char-sweep", "catalogue"])
    p.add_argument("source", nargs="?")
    p.add_argument("--chars", default="0,2,3,5")
    p.add_argument("--vertices", type=int, default=5)
    char(p)
    jobs(p)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        doc = args.func(args)
        code = 0
    except (ValueError, KeyError, BudgetExceeded, TypeError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        doc = {"error": {"type": type(exc).__name__, "message": message}}
        code = 1
    out.write(json.dumps(doc, indent=2, ensure_ascii=False) + "\n")
    return code


def main(argv: Sequence[str] | None = None) -> int:
    try:
        return run(argv)
    except SystemExit as exc:  # argparse usage errors
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
