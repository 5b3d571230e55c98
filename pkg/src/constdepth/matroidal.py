"""Matroidal ideals: exchange property, linear relation graph, classifier.

After normalising (gcd divided out, ring restricted to the support) a
matroidal ideal of degree d has constant depth function iff its linear
relation graph has s = d components, and then it is the product of the
primes spanned by those components.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import networkx as nx

from .errors import InternalInconsistency, PreconditionError
from .monomial import (
    Monomial,
    MonomialIdeal,
    gcd_of_gens,
    ideal_product,
    is_equigenerated,
    prime_ideal,
    restrict_context,
    support,
)
from .spread import SpreadResult


@dataclass(frozen=True)
class MatroidCheck:
    ok: bool
    witness: tuple[Monomial, Monomial, int] | None = None

    def __bool__(self):
        return self.ok

    def describe(self, names) -> str | None:
        if self.witness is None:
            return None
        u, v, i = self.witness
        return (f"exchange fails for u={u.format(names)}, v={v.format(names)}, "
                f"x_i={names[i]}")


def _require_sqfree_equi(I: MonomialIdeal) -> int:
    if not I.is_proper_nonzero:
        raise PreconditionError("matroidal checks need a proper nonzero ideal")
    if not I.is_squarefree():
        raise PreconditionError("matroidal ideals are squarefree")
    equi, d = is_equigenerated(I)
    if not equi:
        raise PreconditionError("matroidal ideals are generated in a single degree")
    return d


def is_matroidal(I: MonomialIdeal) -> MatroidCheck:
    """Exhaustive exchange-property check; the witness is the first failing (u, v, i)."""
    _require_sqfree_equi(I)
    gens = set(I.gens)
    for u in I.gens:
        su = u.support
        for v in I.gens:
            sv = v.support
            for i in sorted(su - sv):
                ok = False
                for j in sorted(sv - su):
                    e = list(u.exponents)
                    e[i] -= 1
                    e[j] += 1
                    if Monomial(tuple(e)) in gens:
                        ok = True
                        break
                if not ok:
                    return MatroidCheck(False, (u, v, i))
    return MatroidCheck(True)


@dataclass(frozen=True)
class LinearRelationGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]
    components: tuple[tuple[int, ...], ...]

    @property
    def r(self) -> int:
        return len(self.vertices)

    @property
    def s(self) -> int:
        return len(self.components)


def linear_relation_graph(I: MonomialIdeal) -> LinearRelationGraph:
    """Edges {i, j} whenever x_i u_k = x_j u_l for generators u_k, u_l."""
    if not I.is_proper_nonzero:
        raise PreconditionError("linear relation graph needs a proper nonzero ideal")
    edges = set()
    for u, v in combinations(I.gens, 2):
        diff = [a - b for a, b in zip(u.exponents, v.exponents)]
        nz = [(k, x) for k, x in enumerate(diff) if x]
        if len(nz) == 2 and sorted(x for _, x in nz) == [-1, 1]:
            edges.add(tuple(sorted(k for k, _ in nz)))
    g = nx.Graph()
    g.add_edges_from(edges)
    comps = tuple(sorted((tuple(sorted(c)) for c in nx.connected_components(g)), key=min))
    return LinearRelationGraph(tuple(sorted(g.nodes)), tuple(sorted(edges)), comps)


def normalize(I: MonomialIdeal) -> tuple[MonomialIdeal, Monomial, list[int]]:
    """Divide out gcd(I) and restrict to the remaining support.

    Returns (normalized ideal, gcd, kept variable indices of the original ring).
    """
    u = gcd_of_gens(I)
    quotient = MonomialIdeal(I.context, [g / u for g in I.gens])
    kept = sorted(support(quotient))
    if not kept:
        return quotient, u, kept
    return restrict_context(quotient, kept), u, kept


def is_normalized(I: MonomialIdeal) -> bool:
    return gcd_of_gens(I).is_one() and support(I) == frozenset(range(I.n))


def spread_matroidal(I: MonomialIdeal) -> SpreadResult:
    """l(I) = r - s + 1 from the linear relation graph."""
    if not is_matroidal(I):
        raise PreconditionError("not a matroidal ideal")
    lrg = linear_relation_graph(I)
    if lrg.r == 0:
        return SpreadResult(1, "matroidal_formula")
    return SpreadResult(lrg.r - lrg.s + 1, "matroidal_formula")


def depth_formula_matroidal(I: MonomialIdeal) -> int:
    """depth S/I = d - 1 for a normalized matroidal ideal of degree d."""
    d = _require_sqfree_equi(I)
    if not is_matroidal(I):
        raise PreconditionError("not a matroidal ideal")
    if not is_normalized(I):
        raise PreconditionError("depth formula needs gcd(I) = 1 and full support")
    return d - 1


@dataclass
class MatroidalVerdict:
    matroidal: bool
    normalized_by: dict | None = None
    d: int | None = None
    r: int | None = None
    s: int | None = None
    constant: bool | None = None
    factors: list[list[str]] | None = None
    witness: str | None = None
    spread: int | None = None

    def to_dict(self) -> dict:
        return {
            "classifier": "matroidal",
            "matroidal": self.matroidal,
            "normalized_by": self.normalized_by,
            "d": self.d,
            "r": self.r,
            "s": self.s,
            "constant": self.constant,
            "factors": self.factors,
            "witness": self.witness,
            "spread": self.spread,
        }


def classify_matroidal(I: MonomialIdeal) -> MatroidalVerdict:
    check = is_matroidal(I)
    names = I.context.var_names
    if not check:
        return MatroidalVerdict(False, witness=check.describe(names))
    J, u, kept = normalize(I)
    dropped = [names[i] for i in range(I.n) if i not in kept]
    normalized_by = {"gcd": u.format(names), "dropped": dropped}
    if not kept:
        # principal ideal: the normalized ideal is the unit ideal, a product of zero primes
        return MatroidalVerdict(True, normalized_by, 0, 0, 0, True, [], spread=1)
    d = is_equigenerated(J)[1]
    lrg = linear_relation_graph(J)
    r, s = lrg.r, lrg.s
    if s > d:
        raise InternalInconsistency(f"linear relation graph has s={s} > d={d} components")
    if lrg.vertices != tuple(range(J.n)):
        raise InternalInconsistency("linear relation graph misses variables of a normalized matroidal ideal")
    for g in J.gens:
        for comp in lrg.components:
            if not g.support & set(comp):
                raise InternalInconsistency(f"generator {g.format(J.context.var_names)} avoids component {comp}")
    constant = s == d
    factors = None
    if constant:
        product = prime_ideal(J.context, lrg.components[0])
        for comp in lrg.components[1:]:
            product = ideal_product(product, prime_ideal(J.context, comp))
        if product != J:
            raise InternalInconsistency("constant matroidal ideal is not the product of its component primes")
        factors = [[J.context.var_names[i] for i in comp] for comp in lrg.components]
    return MatroidalVerdict(True, normalized_by, d, r, s, constant, factors, spread=r - s + 1)
