"""Simplicial complexes given by facets, simplicial forests, facet ideals.

For a pure simplicial forest whose components are connected in codimension
one, the facet ideal has constant depth function iff each component's
facet ideal is u * P with u a squarefree monomial and P a monomial prime.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable

import networkx as nx

from .errors import GuardExceeded, ParseError, PreconditionError
from .monomial import Monomial, MonomialIdeal, PolyContext
from .spread import SpreadResult

FOREST_GUARD = 20


@dataclass(frozen=True)
class SimplicialComplex:
    facets: tuple[frozenset[int], ...]
    vertices: tuple[int, ...] = ()

    def __post_init__(self):
        facets = {frozenset(f) for f in self.facets}
        if not facets:
            raise PreconditionError("a simplicial complex needs at least one facet")
        maximal = [f for f in facets if not any(f < g for g in facets)]
        ordered = tuple(sorted(maximal, key=lambda f: sorted(f)))
        verts = set(self.vertices) | set().union(*ordered)
        object.__setattr__(self, "facets", ordered)
        object.__setattr__(self, "vertices", tuple(sorted(verts)))

    @classmethod
    def of(cls, *facets: Iterable[int], vertices: Iterable[int] = ()) -> "SimplicialComplex":
        return cls(tuple(frozenset(f) for f in facets), tuple(vertices))

    @property
    def dim(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def __len__(self):
        return len(self.facets)

    def format(self) -> str:
        return "complex: " + "; ".join(" ".join(map(str, sorted(f))) for f in self.facets)


def parse_complex(text: str) -> SimplicialComplex:
    """Parse ``complex: 1 2 3; 1 5; 3 4``."""
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        head, sep, body = line.partition(":")
        if not sep or head.strip() != "complex":
            raise ParseError("expected 'complex:' header", lineno, 1)
        facets = []
        col = len(head) + 2
        for piece in body.split(";"):
            tokens = piece.split()
            for tok in tokens:
                if not re.fullmatch(r"\d+", tok):
                    raise ParseError(f"bad vertex '{tok}'", lineno, col + piece.index(tok))
            if tokens:
                facets.append(frozenset(int(t) for t in tokens))
            col += len(piece) + 1
        if not facets:
            raise ParseError("no facets given", lineno, len(line) + 1)
        return SimplicialComplex(tuple(facets))
    raise ParseError("empty complex input", 1, 1)


def facet_ideal(D: SimplicialComplex) -> MonomialIdeal:
    ctx = PolyContext.from_names(f"x{v}" for v in D.vertices)
    pos = {v: i for i, v in enumerate(D.vertices)}
    return MonomialIdeal(ctx, [Monomial.from_support(ctx.num_vars, [pos[v] for v in F]) for F in D.facets])


def complex_of_ideal(I: MonomialIdeal) -> SimplicialComplex:
    """The complex whose facets are the supports of G(I) (I squarefree), on 1..n."""
    if not I.is_squarefree() or not I.is_proper_nonzero:
        raise PreconditionError("facet complexes exist only for proper squarefree ideals")
    return SimplicialComplex(tuple(frozenset(i + 1 for i in g.support) for g in I.gens),
                             tuple(range(1, I.n + 1)))


# -- leaves and forests ---------------------------------------------------

def _branch(F: frozenset, facets) -> frozenset | None | bool:
    """A branch of F within ``facets``; True for the single-facet case, None if F is no leaf."""
    others = [H for H in facets if H != F]
    if not others:
        return True
    for G in others:
        FG = F & G
        if all(F & H <= FG for H in others):
            return G
    return None


def leaves(D: SimplicialComplex) -> list[tuple[frozenset[int], frozenset[int] | None]]:
    """Every leaf with one branch (None when the complex is that single facet)."""
    out = []
    for F in D.facets:
        b = _branch(F, D.facets)
        if b is True:
            out.append((F, None))
        elif b is not None:
            out.append((F, b))
    return out


def free_vertices(D: SimplicialComplex, F: Iterable[int]) -> set[int]:
    F = frozenset(F)
    return {v for v in F if sum(1 for G in D.facets if v in G) == 1}


def _has_leaf(facets) -> bool:
    return any(_branch(F, facets) is not None for F in facets)


def is_forest(D: SimplicialComplex, guard: int = FOREST_GUARD) -> bool:
    """Every nonempty subcollection of facets has a leaf (exhaustive)."""
    m = len(D.facets)
    if m > guard:
        raise GuardExceeded("forest_facets", guard, m, "forest check enumerates 2^m subcollections")
    facets = D.facets
    for size in range(2, m + 1):
        for sub in combinations(facets, size):
            if not _has_leaf(sub):
                return False
    return True


def is_pure(D: SimplicialComplex) -> bool:
    return len({len(f) for f in D.facets}) == 1


def components(D: SimplicialComplex) -> list[SimplicialComplex]:
    """Vertex-connectivity components, ordered by least vertex."""
    g = nx.Graph()
    for i, F in enumerate(D.facets):
        g.add_node(i)
        for j in range(i):
            if F & D.facets[j]:
                g.add_edge(i, j)
    comps = [SimplicialComplex(tuple(D.facets[i] for i in c)) for c in nx.connected_components(g)]
    return sorted(comps, key=lambda c: c.vertices[0])


def connected_in_codim_one(D: SimplicialComplex) -> bool:
    if not is_pure(D):
        return False
    d = D.dim
    g = nx.Graph()
    g.add_nodes_from(range(len(D.facets)))
    for i, j in combinations(range(len(D.facets)), 2):
        if len(D.facets[i] & D.facets[j]) == d:
            g.add_edge(i, j)
    return nx.is_connected(g)


def spread_forest(D: SimplicialComplex) -> SpreadResult:
    """l(I(D)) = number of facets for a simplicial forest."""
    if not is_forest(D):
        raise PreconditionError("spread_forest needs a simplicial forest")
    return SpreadResult(len(D.facets), "forest_formula")


# -- classifier -----------------------------------------------------------

@dataclass
class ForestVerdict:
    applicable: bool
    constant: bool | None
    failed_hypotheses: list[str] = field(default_factory=list)
    components: list[dict] = field(default_factory=list)
    witness: str | None = None
    factorization: list[list[list[str]]] | None = None

    @property
    def label(self) -> str:
        if not self.applicable:
            return "NOT_APPLICABLE"
        return "CONSTANT" if self.constant else "NOT_CONSTANT"

    def to_dict(self) -> dict:
        return {
            "classifier": "forest",
            "applicable": self.applicable,
            "failed_hypotheses": self.failed_hypotheses,
            "constant": self.constant,
            "components": self.components,
            "witness": self.witness,
            "factorization": self.factorization,
        }


def _fmt_facets(D: SimplicialComplex) -> str:
    return "{" + ", ".join("".join(map(str, sorted(f))) if max(D.vertices) < 10
                           else " ".join(map(str, sorted(f))) for f in D.facets) + "}"


def monomial_times_prime(D: SimplicialComplex) -> tuple[list[int], list[int]] | None:
    """Write I(D) = u * P: returns (vertices of u, vertices of P) or None.

    For squarefree ideals this forces u = gcd and the quotients to be
    distinct single variables.  One facet gives P = 0 generators beyond u,
    reported as (facet, []).
    """
    if len(D.facets) == 1:
        return sorted(D.facets[0]), []
    common = reduce(frozenset.__and__, D.facets)
    rest = [F - common for F in D.facets]
    if all(len(r) == 1 for r in rest):
        return sorted(common), sorted(next(iter(r)) for r in rest)
    return None


def classify_forest(D: SimplicialComplex) -> ForestVerdict:
    failed = []
    if not is_forest(D):
        failed.append("forest")
    if not is_pure(D):
        failed.append("pure")
    comps = components(D)
    if "pure" not in failed and not all(connected_in_codim_one(c) for c in comps):
        failed.append("codim_one_connected")
    if failed:
        return ForestVerdict(False, None, failed)
    infos = []
    presentation = []
    witness = None
    for comp in comps:
        split = monomial_times_prime(comp)
        info = {"facets": [sorted(f) for f in comp.facets], "m": len(comp.facets)}
        if split is None:
            info["passes"] = False
            info["witness"] = f"I{_fmt_facets(comp)} is not u*P with P prime"
            witness = witness or info["witness"]
        else:
            u, p = split
            info["passes"] = True
            info["u"] = [f"x{v}" for v in u]
            info["prime"] = [f"x{v}" for v in p]
            block = [[f"x{v}"] for v in u]
            if p:
                block.append([f"x{v}" for v in p])
            presentation.append(block)
        infos.append(info)
    constant = all(i["passes"] for i in infos)
    return ForestVerdict(True, constant, [], infos, witness, presentation if constant else None)
