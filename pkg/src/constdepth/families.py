"""Ideals built from disjoint monomial primes.

* ``in_A`` decides membership of a subset collection in the recursive
  family A; ideals ``sum_j prod_{i in A_j} P_i`` built from such
  collections have constant depth functions.
* ``in_class_C`` recognizes variable-disjoint sums of products of primes
  in disjoint variables.
* ``combine_sum`` / ``combine_product`` propagate constancy through
  disjoint sums and products of ideals with Cohen-Macaulay Rees rings.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ParseError, PreconditionError
from .monomial import (
    Monomial,
    MonomialIdeal,
    PolyContext,
    ideal_product,
    ideal_sum,
    is_equigenerated,
    prime_ideal,
    support,
    unit_ideal,
    variable_disjoint_blocks,
    zero_ideal,
    natural_key,
)
from .spread import ReesCMStatus, spread_product_disjoint, spread_sum_disjoint

Collection = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class PrimeAssignment:
    """P_1..P_s as pairwise disjoint sets of variable indices (0-based)."""

    primes: tuple[frozenset[int], ...]
    context: PolyContext | None = None

    def __post_init__(self):
        primes = tuple(frozenset(p) for p in self.primes)
        seen: set[int] = set()
        for p in primes:
            if not p:
                raise PreconditionError("a monomial prime needs at least one variable")
            if p & seen:
                raise PreconditionError("primes must live in pairwise disjoint sets of variables")
            seen |= p
        ctx = self.context
        if ctx is None and primes:
            ctx = PolyContext(max(seen) + 1)
        if ctx is not None and seen and max(seen) >= ctx.num_vars:
            raise PreconditionError("prime uses a variable outside the context")
        object.__setattr__(self, "primes", primes)
        object.__setattr__(self, "context", ctx)

    @property
    def s(self) -> int:
        return len(self.primes)

    def prime(self, i: int) -> MonomialIdeal:
        """P_i with 1-based i."""
        return prime_ideal(self.context, sorted(self.primes[i - 1]))


@dataclass(frozen=True)
class SubsetCollection:
    subsets: tuple[frozenset[int], ...] = ()

    def __post_init__(self):
        subs = tuple(frozenset(a) for a in self.subsets)
        for a in subs:
            if not a:
                raise PreconditionError("collection members must be nonempty")
            if min(a) < 1:
                raise PreconditionError("collection members are subsets of [s] = {1..s}")
        object.__setattr__(self, "subsets", subs)

    @classmethod
    def of(cls, *subsets: Iterable[int]) -> "SubsetCollection":
        return cls(tuple(frozenset(a) for a in subsets))

    def canonical(self) -> Collection:
        return _canon(self.subsets)

    @property
    def ground(self) -> set[int]:
        return set().union(*self.subsets) if self.subsets else set()

    def is_pairwise_disjoint(self) -> bool:
        seen: set[int] = set()
        for a in self.subsets:
            if a & seen:
                return False
            seen |= a
        return True

    def relabel(self, perm: dict[int, int]) -> "SubsetCollection":
        return SubsetCollection(tuple(frozenset(perm[i] for i in a) for a in self.subsets))

    def format(self) -> str:
        return " ".join("{" + " ".join(map(str, sorted(a))) + "}" for a in self.subsets)


def _canon(subsets) -> Collection:
    return tuple(sorted(tuple(sorted(a)) for a in subsets))


# -- membership in A --------------------------------------------------------

@dataclass
class InAResult:
    accepted: bool
    trace: dict | None

    def __bool__(self):
        return self.accepted

    def chosen_js(self) -> list[int]:
        """The chosen splitting elements in depth-first order."""
        out: list[int] = []

        def walk(t):
            if t and t.get("rule") == "split":
                out.append(t["j"])
                walk(t["inner"])
                walk(t["outer"])

        walk(self.trace)
        return out


def in_A(c: SubsetCollection | Iterable[Iterable[int]]) -> InAResult:
    """Recursive membership test with a factoring trace.

    Every element j is tried.  When removing j leaves an empty member, that
    member is dropped before recursing and the trace records it.
    """
    if not isinstance(c, SubsetCollection):
        c = SubsetCollection(tuple(frozenset(a) for a in c))
    memo: dict[Collection, dict | None] = {}
    trace = _in_A(c.canonical(), memo)
    return InAResult(trace is not None, trace)


def _in_A(coll: Collection, memo) -> dict | None:
    if coll in memo:
        return memo[coll]
    if all(len(a) == 1 for a in coll):
        result = {"collection": [list(a) for a in coll], "rule": "singletons"}
        memo[coll] = result
        return result
    result = None
    ground = sorted(set().union(*coll))
    for j in ground:
        with_j = [a for a in coll if j in a]
        without = [a for a in coll if j not in a]
        inner_union = set().union(*(set(a) - {j} for a in with_j))
        outer_union = set().union(*without) if without else set()
        if inner_union & outer_union:
            continue
        inner_raw = [tuple(x for x in a if x != j) for a in with_j]
        dropped = sum(1 for a in inner_raw if not a)
        inner = _canon(a for a in inner_raw if a)
        outer = _canon(without)
        t_inner = _in_A(inner, memo)
        if t_inner is None:
            continue
        t_outer = _in_A(outer, memo)
        if t_outer is None:
            continue
        result = {
            "collection": [list(a) for a in coll],
            "rule": "split",
            "j": j,
            "dropped_empty_members": dropped,
            "inner": t_inner,
            "outer": t_outer,
        }
        break
    memo[coll] = result
    return result


def format_trace(trace: dict | None) -> str:
    """Nested presentation such as ``P8(P5(P1(P2+P3)+P4)+P6P7)``."""
    if trace is None:
        return "-"
    if trace["rule"] == "singletons":
        terms = [f"P{a[0]}" for a in trace["collection"]]
        return "+".join(terms) if terms else "0"
    j = trace["j"]
    inner = format_trace(trace["inner"])
    inner_terms = trace["inner"]["collection"]
    if not inner_terms:
        head = f"P{j}"
    elif len(inner_terms) == 1 and trace["inner"]["rule"] == "singletons":
        head = f"P{j}{inner}"
    else:
        head = f"P{j}({inner})"
    if trace.get("dropped_empty_members"):
        head += "[dropped-empty]"
    outer = format_trace(trace["outer"])
    if trace["outer"]["collection"]:
        return f"{head}+{outer}"
    return head


# -- construction -----------------------------------------------------------

def build_ideal(c: SubsetCollection, p: PrimeAssignment) -> MonomialIdeal:
    """I = sum_j prod_{i in A_j} P_i, minimalized."""
    if p.context is None:
        raise PreconditionError("empty prime assignment")
    for a in c.subsets:
        if max(a) > p.s:
            raise PreconditionError(f"collection index {max(a)} exceeds s = {p.s}")
    total = zero_ideal(p.context)
    for a in c.subsets:
        term = unit_ideal(p.context)
        for i in sorted(a):
            term = ideal_product(term, p.prime(i))
        total = ideal_sum(total, term)
    return total


def parse_collection(text: str) -> tuple[SubsetCollection, PrimeAssignment]:
    """Parse ``primes: {x1 x2} {x3}`` and ``collection: {1 2} {3}`` lines.

    An optional ``vars:`` line fixes the ring; otherwise the ring consists
    of the variables named in the primes.
    """
    found: dict[str, tuple[int, str, int]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        head, sep, body = line.partition(":")
        key = head.strip()
        if not sep or key not in ("vars", "primes", "collection"):
            raise ParseError("expected 'vars:', 'primes:' or 'collection:'", lineno, 1)
        found[key] = (lineno, body, len(head) + 2)
    for key in ("primes", "collection"):
        if key not in found:
            raise ParseError(f"missing '{key}:' line", 1, 1)
    pl, pbody, pcol = found["primes"]
    prime_names = _braced_groups(pbody, pl, pcol, r"[A-Za-z_][A-Za-z_0-9]*")
    if "vars" in found:
        names = found["vars"][1].split()
    else:
        names = sorted({nm for grp in prime_names for nm in grp}, key=natural_key)
    ctx = PolyContext.from_names(names)
    try:
        primes = PrimeAssignment(tuple(frozenset(ctx.index(nm) for nm in grp) for grp in prime_names), ctx)
    except PreconditionError as exc:
        raise ParseError(str(exc), pl, pcol) from None
    cl, cbody, ccol = found["collection"]
    groups = _braced_groups(cbody, cl, ccol, r"\d+")
    try:
        coll = SubsetCollection(tuple(frozenset(int(x) for x in grp) for grp in groups))
    except PreconditionError as exc:
        raise ParseError(str(exc), cl, ccol) from None
    return coll, primes


def _braced_groups(body: str, line: int, col0: int, item: str) -> list[list[str]]:
    groups = []
    for m in re.finditer(r"\{([^{}]*)\}|(\S)", body):
        if m.group(2):
            raise ParseError(f"unexpected '{m.group(2)}'", line, col0 + m.start())
        toks = m.group(1).split()
        for t in toks:
            if not re.fullmatch(item, t):
                raise ParseError(f"bad entry '{t}'", line, col0 + m.start(1) + m.group(1).index(t))
        groups.append(toks)
    return groups


# -- class C ----------------------------------------------------------------

@dataclass
class ClassCResult:
    accepted: bool
    presentation: list[list[list[int]]] | None = None
    reason: str | None = None

    def __bool__(self):
        return self.accepted

    def format(self, names: Sequence[str]) -> str:
        if not self.presentation:
            return "-"
        blocks = []
        for block in self.presentation:
            blocks.append("".join("(" + ",".join(names[i] for i in prime) + ")" for prime in block))
        return " + ".join(blocks)


def in_class_C(I: MonomialIdeal) -> ClassCResult:
    """Recognize I as a variable-disjoint sum of products of disjoint primes."""
    if not I.is_squarefree():
        raise PreconditionError("class C recognition needs a squarefree ideal")
    if not I.is_proper_nonzero:
        raise PreconditionError("class C recognition needs a proper nonzero ideal")
    presentation = []
    for block in variable_disjoint_blocks(I):
        B = MonomialIdeal(I.context, block)
        equi, _ = is_equigenerated(B)
        if not equi:
            return ClassCResult(False, reason=f"block ({B.format()}) is not generated in one degree")
        u = B.gens[0]
        cs = sorted(u.support)
        primes = []
        for c in cs:
            V = {c}
            base = list(u.exponents)
            base[c] = 0
            for y in range(I.n):
                e = list(base)
                e[y] += 1
                if B.contains(Monomial(tuple(e))):
                    V.add(y)
            primes.append(frozenset(V))
        union: set[int] = set()
        for V in primes:
            if V & union:
                return ClassCResult(False, reason=f"block ({B.format()}): candidate primes overlap")
            union |= V
        product = unit_ideal(I.context)
        for V in primes:
            product = ideal_product(product, prime_ideal(I.context, sorted(V)))
        if product != B:
            return ClassCResult(False, reason=f"block ({B.format()}) is not a product of disjoint primes")
        presentation.append(sorted((sorted(V) for V in primes), key=min))
    return ClassCResult(True, presentation)


# -- combination rules --------------------------------------------------------

@dataclass
class ConstancyReport:
    """What is known about one ideal: constancy verdict, CM status, spread."""

    ideal: MonomialIdeal
    constant: bool
    cm: ReesCMStatus
    spread: int
    operation: str = "given"
    parts: list["ConstancyReport"] = field(default_factory=list)

    def to_dict(self) -> dict:
        out = {
            "ideal": self.ideal.format(),
            "constant": self.constant,
            "cm_basis": self.cm.label(),
            "spread": self.spread,
            "operation": self.operation,
        }
        if self.parts:
            out["parts"] = [p.to_dict() for p in self.parts]
        return out


CombinedReport = ConstancyReport


def _check_combinable(a: ConstancyReport, b: ConstancyReport):
    if a.ideal.context != b.ideal.context:
        raise PreconditionError("reports live in different polynomial contexts")
    if support(a.ideal) & support(b.ideal):
        raise PreconditionError("ideals share variables; combination rules need disjoint supports")
    for r in (a, b):
        if not r.cm.known:
            raise PreconditionError(f"missing Cohen-Macaulay guarantee for ({r.ideal.format()})")


def combine_sum(a: ConstancyReport, b: ConstancyReport) -> CombinedReport:
    _check_combinable(a, b)
    return ConstancyReport(
        ideal_sum(a.ideal, b.ideal), a.constant and b.constant,
        ReesCMStatus.by_class("disjoint_sum_of_CM"), spread_sum_disjoint(a.spread, b.spread),
        "sum", [a, b],
    )


def combine_product(a: ConstancyReport, b: ConstancyReport) -> CombinedReport:
    _check_combinable(a, b)
    return ConstancyReport(
        ideal_product(a.ideal, b.ideal), a.constant and b.constant,
        ReesCMStatus.by_class("disjoint_product_of_CM"), spread_product_disjoint(a.spread, b.spread),
        "product", [a, b],
    )
