"""Edge ideals of simple graphs and their constant-depth classifier.

A graph without isolated vertices has an edge ideal with constant depth
function exactly when every connected component is complete bipartite.
The classifier here is purely combinatorial; the depth engine is only used
to cross-check it in tests and corpus sweeps.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx
from networkx.algorithms import bipartite as nx_bipartite

from .errors import ParseError, PreconditionError
from .monomial import Monomial, MonomialIdeal, PolyContext
from .spread import SpreadResult


@dataclass(frozen=True)
class Graph:
    vertices: frozenset[int]
    edges: frozenset[frozenset[int]]

    def __post_init__(self):
        verts = frozenset(self.vertices)
        edges = frozenset(frozenset(e) for e in self.edges)
        for e in edges:
            if len(e) != 2:
                raise PreconditionError(f"loops are not allowed: {sorted(e)}")
            if not e <= verts:
                raise PreconditionError(f"edge {sorted(e)} uses an undeclared vertex")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], vertices: Iterable[int] = ()) -> "Graph":
        edges = [frozenset(e) for e in edges]
        verts = set(vertices).union(*edges) if edges else set(vertices)
        return cls(frozenset(verts), frozenset(edges))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(sorted(self.vertices))
        g.add_edges_from(tuple(sorted(e)) for e in self.edges)
        return g

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    def format(self) -> str:
        isolated = sorted(self.vertices - frozenset().union(*self.edges)) if self.edges else sorted(self.vertices)
        parts = [f"{a}-{b}" for a, b in self.sorted_edges()] + [str(v) for v in isolated]
        return "graph: " + ", ".join(parts)


# -- constructors ---------------------------------------------------------

def complete_bipartite(m: int, n: int) -> Graph:
    return Graph.from_edges((i, m + j) for i in range(1, m + 1) for j in range(1, n + 1))


def cycle(n: int) -> Graph:
    return Graph.from_edges((i, i % n + 1) for i in range(1, n + 1))


def path(n: int) -> Graph:
    """Path on n vertices (n - 1 edges)."""
    return Graph.from_edges((i, i + 1) for i in range(1, n))


def disjoint_union(*graphs: Graph) -> Graph:
    """Relabel consecutively and take the disjoint union."""
    edges, verts, offset = [], [], 0
    for g in graphs:
        relabel = {v: offset + i + 1 for i, v in enumerate(sorted(g.vertices))}
        verts.extend(relabel.values())
        edges.extend((relabel[a], relabel[b]) for a, b in g.sorted_edges())
        offset += len(g.vertices)
    return Graph.from_edges(edges, verts)


def parse_graph(text: str) -> Graph:
    """Parse ``graph: 1-2, 2-3, 1-3``; a bare vertex declares an isolated one."""
    edges, verts = [], []
    seen_header = False
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        body = line
        col0 = 1
        if ":" in line:
            head, _, body = line.partition(":")
            if head.strip() != "graph":
                raise ParseError(f"expected 'graph:' header, got '{head.strip()}'", lineno, 1)
            col0 = len(head) + 2
            seen_header = True
        elif not seen_header:
            raise ParseError("expected 'graph:' header", lineno, 1)
        start = 0
        for piece in body.split(","):
            col = col0 + start + (len(piece) - len(piece.lstrip()))
            start += len(piece) + 1
            tok = piece.strip()
            if not tok:
                continue
            m = re.fullmatch(r"(\d+)\s*-\s*(\d+)", tok)
            if m:
                a, b = int(m.group(1)), int(m.group(2))
                if a == b:
                    raise ParseError(f"loop at vertex {a}", lineno, col)
                edges.append((a, b))
            elif tok.isdigit():
                verts.append(int(tok))
            else:
                raise ParseError(f"bad edge '{tok}'", lineno, col)
    if not seen_header:
        raise ParseError("empty graph input", 1, 1)
    return Graph.from_edges(edges, verts)


# -- ideals and structure --------------------------------------------------

def graph_context(G: Graph) -> PolyContext:
    return PolyContext.from_names(f"x{v}" for v in sorted(G.vertices))


def edge_ideal(G: Graph) -> MonomialIdeal:
    if not G.edges:
        raise PreconditionError("edge ideal of an edgeless graph is zero")
    ctx = graph_context(G)
    pos = {v: i for i, v in enumerate(sorted(G.vertices))}
    gens = [Monomial.from_support(ctx.num_vars, [pos[a], pos[b]]) for a, b in G.sorted_edges()]
    return MonomialIdeal(ctx, gens)


def strip_isolated(G: Graph) -> Graph:
    used = frozenset().union(*G.edges) if G.edges else frozenset()
    return Graph(used, G.edges)


def isolated_vertices(G: Graph) -> list[int]:
    used = frozenset().union(*G.edges) if G.edges else frozenset()
    return sorted(G.vertices - used)


def components(G: Graph) -> list[Graph]:
    """Connected components, ordered by least vertex."""
    g = G.to_networkx()
    out = []
    for comp in sorted(nx.connected_components(g), key=min):
        out.append(Graph(frozenset(comp), frozenset(e for e in G.edges if e <= comp)))
    return out


def is_bipartite(G: Graph) -> tuple[list[int], list[int]] | None:
    """A bipartition (part with the least vertex first) or None.

    For a disconnected graph each component is 2-coloured with its least
    vertex on the first side.
    """
    g = G.to_networkx()
    if not nx.is_bipartite(g):
        return None
    left, right = set(), set()
    for comp in nx.connected_components(g):
        sub = g.subgraph(comp)
        if len(comp) == 1:
            left |= comp
            continue
        a, b = nx_bipartite.sets(sub)
        if min(comp) in b:
            a, b = b, a
        left |= a
        right |= b
    return sorted(left), sorted(right)


def is_complete_bipartite(G: Graph) -> bool:
    if not G.edges:
        return False
    if not nx.is_connected(G.to_networkx()):
        return False
    parts = is_bipartite(G)
    if parts is None:
        return False
    return len(G.edges) == len(parts[0]) * len(parts[1])


def odd_cycle(G: Graph) -> list[int] | None:
    """Some odd cycle of G, if any (a cycle basis of a non-bipartite graph has one)."""
    for cyc in nx.cycle_basis(G.to_networkx()):
        if len(cyc) % 2:
            return _rotate_min(cyc)
    return None


def _rotate_min(cyc: list[int]) -> list[int]:
    i = cyc.index(min(cyc))
    cyc = cyc[i:] + cyc[:i]
    if len(cyc) > 2 and cyc[-1] < cyc[1]:
        cyc = [cyc[0]] + cyc[:0:-1]
    return cyc


def spread_edge(G: Graph) -> SpreadResult:
    """l(I(G)) = |V(G)| - number of bipartite components."""
    if isolated_vertices(G):
        raise PreconditionError("spread_edge needs a graph without isolated vertices")
    if not G.edges:
        raise PreconditionError("edgeless graph")
    c = sum(1 for comp in components(G) if is_bipartite(comp) is not None)
    return SpreadResult(len(G.vertices) - c, "edge_formula")


# -- classifier -----------------------------------------------------------

@dataclass
class EdgeVerdict:
    constant: bool
    components: list[dict]
    witness: str | None
    factorization: list[list[list[str]]] | None
    stripped: list[int] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "classifier": "edge",
            "constant": self.constant,
            "components": self.components,
            "witness": self.witness,
            "factorization": self.factorization,
            "stripped": self.stripped,
        }


def classify_edge_ideal(G: Graph) -> EdgeVerdict:
    if not G.edges:
        raise PreconditionError("edgeless graph: the edge ideal is zero")
    stripped = isolated_vertices(G)
    H = strip_isolated(G)
    comps = []
    witness = None
    factorization = []
    for comp in components(H):
        parts = is_bipartite(comp)
        info = {"vertices": sorted(comp.vertices), "bipartition": None, "complete_bipartite": False}
        if parts is None:
            cyc = odd_cycle(comp)
            info["witness"] = "odd cycle " + "-".join(map(str, cyc + [cyc[0]]))
        else:
            info["bipartition"] = [parts[0], parts[1]]
            missing = next(((a, b) for a in parts[0] for b in parts[1]
                            if frozenset((a, b)) not in comp.edges), None)
            if missing is None:
                info["complete_bipartite"] = True
                info["witness"] = f"K_{{{len(parts[0])},{len(parts[1])}}}"
                factorization.append([[f"x{v}" for v in parts[0]], [f"x{v}" for v in parts[1]]])
            else:
                info["witness"] = f"bipartite but not complete: missing edge {missing[0]}-{missing[1]}"
        if not info["complete_bipartite"] and witness is None:
            witness = info["witness"]
        comps.append(info)
    constant = all(c["complete_bipartite"] for c in comps)
    return EdgeVerdict(constant, comps, witness, factorization if constant else None, stripped)
