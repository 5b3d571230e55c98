"""Command-line front end: ``constdepth <command> [input] [options]``.

Input is a file path, ``-`` for stdin, or inline text via ``-e``.  Exit
status is 0 on success, 2 when a classifier does not apply, 1 on errors.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field

from . import betti, edge, forest, matroidal
from .analysis import analyze, exact_spread
from .corpus import corpus_sweep, parse_corpus_spec
from .errors import ConstDepthError, ParseError
from .families import (
    ConstancyReport,
    SubsetCollection,
    _braced_groups,
    build_ideal,
    combine_product,
    combine_sum,
    format_trace,
    in_A,
    in_class_C,
    parse_collection,
)
from .monomial import Field, MonomialIdeal, parse_generators, parse_ideal, parse_vars_line
from .spread import burch_bound, spread_mu_growth

log = logging.getLogger(__name__)

COMMANDS = ("depth", "series", "spread", "classify-edge", "classify-matroidal", "classify-forest",
            "check-A", "check-C", "build", "combine", "corpus")

EXIT_OK, EXIT_ERROR, EXIT_NOT_APPLICABLE = 0, 1, 2


@dataclass
class Request:
    command: str
    payload: str
    k_max: int = 3
    field: Field = field(default_factory=Field)
    jobs: int = 1
    fmt: str = "text"
    guards: betti.Guards = betti.DEFAULT_GUARDS
    seed: int = 0
    assert_cm: bool = False
    out_dir: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command '{self.command}'")
        if self.k_max < 1:
            raise ValueError("k_max must be at least 1")


@dataclass
class Report:
    command: str
    data: dict
    lines: list[str]
    status: str = "OK"

    @property
    def exit_code(self) -> int:
        return EXIT_NOT_APPLICABLE if self.status == "NOT_APPLICABLE" else EXIT_OK


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        raise ValueError(message)


def _parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="constdepth", description="Depth functions of powers of monomial ideals.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("input", nargs="?", help="input file, or '-' for stdin")
    p.add_argument("-e", "--expr", help="inline input text (';;' separates lines)")
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--field", default="q", help="q or fp:P")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")
    p.add_argument("--guard-lcm", type=int, default=betti.DEFAULT_GUARDS.lcm)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--assert-cm", action="store_true",
                   help="take the Rees ring to be Cohen-Macaulay when no class guarantees it")
    p.add_argument("--out", help="directory for corpus reproducer files")
    return p


def parse(argv: list[str], stdin=None) -> Request:
    args = _parser().parse_args(argv)
    if args.expr is not None:
        payload = args.expr.replace(";;", "\n")
    elif args.input in (None, "-"):
        if args.input is None and args.command == "corpus":
            payload = ""
        else:
            payload = (stdin or sys.stdin).read()
    else:
        with open(args.input) as fh:
            payload = fh.read()
    return Request(args.command, payload, args.kmax, Field.parse(args.field), args.jobs, args.fmt,
                   betti.Guards(lcm=args.guard_lcm), args.seed, args.assert_cm, args.out)


# -- input dispatch ---------------------------------------------------------

def _first_key(text: str) -> str | None:
    for line in text.splitlines():
        if line.strip() and not line.lstrip().startswith("#"):
            head, sep, _ = line.partition(":")
            return head.strip() if sep else None
    return None


def load_ideal(text: str, fld: Field) -> MonomialIdeal:
    """An ideal from any of the input grammars: generators, graph, complex, collection."""
    key = _first_key(text)
    if key == "graph":
        return edge.edge_ideal(edge.parse_graph(text)).with_field(fld)
    if key == "complex":
        return forest.facet_ideal(forest.parse_complex(text)).with_field(fld)
    if key in ("primes", "collection") or "primes:" in text:
        c, p = parse_collection(text)
        return build_ideal(c, p).with_field(fld)
    return parse_ideal(text, fld)


def _load_collection(text: str) -> SubsetCollection:
    if "primes:" in text:
        return parse_collection(text)[0]
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        head, sep, body = line.partition(":")
        if not sep or head.strip() != "collection":
            raise ParseError("expected 'collection:' line", lineno, 1)
        groups = _braced_groups(body, lineno, len(head) + 2, r"\d+")
        return SubsetCollection(tuple(frozenset(int(x) for x in g) for g in groups))
    raise ParseError("missing 'collection:' line", 1, 1)


def _load_pair(text: str, fld: Field) -> tuple[MonomialIdeal, MonomialIdeal]:
    ctx = None
    found = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        head, sep, body = line.partition(":")
        key = head.strip()
        if key == "vars":
            ctx = parse_vars_line(line, lineno, fld)
        elif key in ("I", "J"):
            if ctx is None:
                raise ParseError("'vars:' line must come first", lineno, 1)
            found[key] = parse_generators(body, ctx, lineno, len(head) + 2)
        else:
            raise ParseError("expected 'vars:', 'I:' or 'J:'", lineno, 1)
    for key in ("I", "J"):
        if key not in found:
            raise ParseError(f"missing '{key}:' line", 1, 1)
    return found["I"], found["J"]


# -- commands -----------------------------------------------------------------

def _analysis_lines(a) -> list[str]:
    lines = [
        f"ideal: {a.ideal.format()}",
        f"series: {a.report.series}",
        f"cm: {a.cm.label()}",
    ]
    if a.spread is not None:
        lines.append(f"spread: {a.spread.value} ({a.spread.method})")
    if a.certificate is not None:
        c = a.certificate
        lines.append(f"certificate: {c.verdict.value} (depth1={c.depth1}, n-l={c.n_minus_ell})")
    lines.append(f"verdict: {a.verdict}")
    lines.extend(f"note: {n}" for n in a.notes)
    return lines


def _series(r: Request, I: MonomialIdeal | None = None) -> Report:
    I = I if I is not None else load_ideal(r.payload, r.field)
    a = analyze(I, r.k_max, r.field, r.guards, r.jobs, assert_cm=r.assert_cm)
    return Report("series", a.to_dict(), _analysis_lines(a))


def _depth(r: Request) -> Report:
    I = load_ideal(r.payload, r.field)
    table = betti.betti_table(I, r.field, r.guards, r.jobs)
    d = I.n - table.proj_dim
    data = {"ideal": I.format(), "vars": list(I.context.var_names), "depth": d,
            "proj_dim": table.proj_dim, "betti_totals": {str(i): b for i, b in table.totals().items()},
            "field": str(r.field)}
    return Report("depth", data, [f"ideal: {I.format()}", f"depth S/I: {d}", f"pd S/I: {table.proj_dim}"])


def _spread(r: Request) -> Report:
    I = load_ideal(r.payload, r.field)
    s = exact_spread(I)
    if s is None:
        s = spread_mu_growth(I, max(r.k_max, 5))
    data = {"ideal": I.format(), "spread": s.to_dict(), "burch_bound": burch_bound(I, s) if s.exact else None}
    lines = [f"ideal: {I.format()}", f"spread: {s.value} ({s.method}, {s.confidence})"]
    if s.exact:
        lines.append(f"n - l: {data['burch_bound']}")
    return Report("spread", data, lines)


def _classify_edge(r: Request) -> Report:
    G = edge.parse_graph(r.payload)
    v = edge.classify_edge_ideal(G)
    data = v.to_dict()
    data["graph"] = G.format()
    lines = [G.format(), f"verdict: {'CONSTANT' if v.constant else 'NOT_CONSTANT'}"]
    if v.witness:
        lines.append(f"witness: {v.witness}")
    if v.stripped:
        lines.append(f"isolated vertices dropped: {v.stripped}")
    return Report("classify-edge", data, lines)


def _classify_matroidal(r: Request) -> Report:
    I = load_ideal(r.payload, r.field)
    v = matroidal.classify_matroidal(I)
    data = v.to_dict()
    data["ideal"] = I.format()
    if not v.matroidal:
        return Report("classify-matroidal", data, [f"ideal: {I.format()}", "verdict: NOT_APPLICABLE",
                                                   f"witness: {v.witness}"], "NOT_APPLICABLE")
    lines = [f"ideal: {I.format()}", f"d={v.d} r={v.r} s={v.s}",
             f"verdict: {'CONSTANT' if v.constant else 'NOT_CONSTANT'}"]
    if v.witness:
        lines.append(f"witness: {v.witness}")
    return Report("classify-matroidal", data, lines)


def _classify_forest(r: Request) -> Report:
    D = forest.parse_complex(r.payload)
    v = forest.classify_forest(D)
    data = v.to_dict()
    data["complex"] = D.format()
    lines = [D.format(), f"verdict: {v.label}"]
    if v.applicable:
        if v.witness:
            lines.append(f"witness: {v.witness}")
        return Report("classify-forest", data, lines)
    lines.append("failed hypotheses: " + ", ".join(v.failed_hypotheses))
    fb = _series(r, forest.facet_ideal(D).with_field(r.field))
    data["fallback"] = fb.data
    lines.append("fallback analysis:")
    lines.extend("  " + ln for ln in fb.lines)
    return Report("classify-forest", data, lines, "NOT_APPLICABLE")


def _check_A(r: Request) -> Report:
    c = _load_collection(r.payload)
    res = in_A(c)
    data = {"collection": c.format(), "accepted": res.accepted, "trace": res.trace,
            "presentation": format_trace(res.trace) if res else None}
    lines = [f"collection: {c.format()}", f"in A: {res.accepted}"]
    if res:
        lines.append(f"presentation: {data['presentation']}")
    return Report("check-A", data, lines)


def _check_C(r: Request) -> Report:
    I = load_ideal(r.payload, r.field)
    res = in_class_C(I)
    names = I.context.var_names
    data = {"ideal": I.format(), "accepted": res.accepted,
            "presentation": [[[names[i] for i in V] for V in block] for block in res.presentation]
            if res.presentation else None,
            "reason": res.reason}
    lines = [f"ideal: {I.format()}", f"in class C: {res.accepted}"]
    lines.append(f"presentation: {res.format(names)}" if res else f"reason: {res.reason}")
    return Report("check-C", data, lines)


def _build(r: Request) -> Report:
    c, p = parse_collection(r.payload)
    I = build_ideal(c, p).with_field(r.field)
    res = in_A(c)
    data = {"collection": c.format(), "vars": list(I.context.var_names), "ideal": I.format(),
            "in_A": res.accepted, "presentation": format_trace(res.trace) if res else None}
    lines = [f"ideal: {I.format()}", f"in A: {res.accepted}"]
    if res:
        lines.append(f"presentation: {data['presentation']}")
    return Report("build", data, lines)


def _constancy(r: Request, I: MonomialIdeal) -> ConstancyReport:
    return analyze(I, r.k_max, r.field, r.guards, r.jobs, assert_cm=r.assert_cm).constancy_report()


def _combine(r: Request) -> Report:
    I, J = _load_pair(r.payload, r.field)
    a, b = _constancy(r, I), _constancy(r, J)
    s, p = combine_sum(a, b), combine_product(a, b)
    data = {"sum": s.to_dict(), "product": p.to_dict()}
    lines = []
    for name, rep in (("sum", s), ("product", p)):
        lines.append(f"{name}: {rep.ideal.format()}")
        lines.append(f"  constant: {rep.constant}  spread: {rep.spread}  cm: {rep.cm.label()}")
    return Report("combine", data, lines)


def _corpus(r: Request) -> Report:
    try:
        spec = parse_corpus_spec(r.payload)
    except ValueError as exc:
        raise ParseError(str(exc), 1, 1) from None
    s = corpus_sweep(spec, r.seed, r.k_max, r.out_dir, r.guards)
    data = s.to_dict()
    if not data:
        return Report("corpus", data, ["empty corpus"])
    lines = [f"{k}: {v}" for k, v in data.items() if not isinstance(v, list)]
    lines.extend(f"finding: {f}" for f in s.findings)
    lines.extend(f"reproducer: {f}" for f in s.reproducers)
    return Report("corpus", data, lines)


_RUNNERS = {
    "depth": _depth, "series": _series, "spread": _spread, "classify-edge": _classify_edge,
    "classify-matroidal": _classify_matroidal, "classify-forest": _classify_forest, "check-A": _check_A,
    "check-C": _check_C, "build": _build, "combine": _combine, "corpus": _corpus,
}


def run(r: Request) -> Report:
    return _RUNNERS[r.command](r)


def emit(rep: Report, fmt: str = "text") -> str:
    if fmt == "json":
        return json.dumps({"command": rep.command, "status": rep.status, **rep.data}, indent=2) + "\n"
    return "\n".join(rep.lines) + "\n"


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    try:
        req = parse(sys.argv[1:] if argv is None else argv)
        rep = run(req)
    except (ConstDepthError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR
    sys.stdout.write(emit(rep, req.fmt))
    return rep.exit_code


if __name__ == "__main__":
    sys.exit(main())
