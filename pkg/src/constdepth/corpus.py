"""Seeded random sweeps over graphs, squarefree ideals and subset collections.

A sweep never raises on a mathematical surprise.  Disagreements and
violations are counted and each one is written to a standalone reproducer
file; increases of a depth series are logged as findings.
"""
from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path

from . import betti, edge
from .analysis import analyze
from .families import PrimeAssignment, SubsetCollection, build_ideal, in_A
from .monomial import MonomialIdeal, PolyContext, format_ideal_file, power, radical, squarefree_ideal

log = logging.getLogger(__name__)

FAMILIES = ("graphs", "squarefree", "collections")


@dataclass(frozen=True)
class CorpusSpec:
    family: str
    count: int
    n: int
    density: float = 0.5

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown corpus family '{self.family}' (expected one of {', '.join(FAMILIES)})")
        if self.count < 0 or self.n < 1:
            raise ValueError("count must be >= 0 and n >= 1")


@dataclass
class CorpusSummary:
    family: str | None = None
    count: int = 0
    n: int = 0
    seed: int = 0
    k_max: int = 0
    checked: int = 0
    skipped: int = 0
    agreements: int = 0
    disagreements: int = 0
    undecided: int = 0
    violations: int = 0
    findings: list[str] = field(default_factory=list)
    reproducers: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        if self.family is None:
            return {}
        return {
            "family": self.family,
            "count": self.count,
            "n": self.n,
            "seed": self.seed,
            "k_max": self.k_max,
            "checked": self.checked,
            "skipped": self.skipped,
            "agreements": self.agreements,
            "disagreements": self.disagreements,
            "undecided": self.undecided,
            "violations": self.violations,
            "findings": list(self.findings),
            "reproducers": list(self.reproducers),
        }


def parse_corpus_spec(text: str) -> CorpusSpec | None:
    """``family: graphs``, ``count: 100``, ``n: 6`` lines; None for an empty spec."""
    values: dict[str, str] = {}
    for line in text.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        key, _, val = line.partition(":")
        values[key.strip()] = val.strip()
    if not values:
        return None
    return CorpusSpec(values.get("family", "graphs"), int(values.get("count", 100)), int(values.get("n", 6)),
                      float(values.get("density", 0.5)))


def random_graph(rng: random.Random, n: int, density: float = 0.5) -> edge.Graph:
    edges = [(i, j) for i, j in combinations(range(1, n + 1), 2) if rng.random() < density]
    return edge.Graph.from_edges(edges, vertices=range(1, n + 1))


def random_squarefree_ideal(rng: random.Random, n: int, max_gens: int = 5) -> MonomialIdeal:
    ctx = PolyContext.from_names(f"x{i}" for i in range(1, n + 1))
    supports = []
    for _ in range(rng.randint(1, max_gens)):
        size = rng.randint(1, max(1, n - 1))
        supports.append(rng.sample(range(n), size))
    return squarefree_ideal(ctx, supports)


def random_collection(rng: random.Random, s: int, max_members: int = 4) -> SubsetCollection:
    members = []
    for _ in range(rng.randint(1, max_members)):
        members.append(frozenset(rng.sample(range(1, s + 1), rng.randint(1, s))))
    return SubsetCollection(tuple(members))


def random_primes(rng: random.Random, s: int, max_size: int = 2) -> PrimeAssignment:
    sizes = [rng.randint(1, max_size) for _ in range(s)]
    ctx = PolyContext.from_names(f"x{i}" for i in range(1, sum(sizes) + 1))
    primes, start = [], 0
    for size in sizes:
        primes.append(frozenset(range(start, start + size)))
        start += size
    return PrimeAssignment(tuple(primes), ctx)


def _dump(out_dir: Path | None, name: str, header: list[str], I: MonomialIdeal, summary: CorpusSummary):
    summary.reproducers.append(name)
    if out_dir is None:
        return
    out_dir.mkdir(parents=True, exist_ok=True)
    body = "".join(f"# {h}\n" for h in header) + format_ideal_file(I)
    (out_dir / name).write_text(body)


def _increase(series: list[int]) -> int | None:
    for k in range(1, len(series)):
        if series[k] > series[k - 1]:
            return k + 1
    return None


def corpus_sweep(spec: CorpusSpec | None, seed: int = 0, k_max: int = 3,
                 out_dir: str | Path | None = None, guards: betti.Guards = betti.DEFAULT_GUARDS) -> CorpusSummary:
    if spec is None or spec.count == 0:
        return CorpusSummary()
    out = Path(out_dir) if out_dir is not None else None
    summary = CorpusSummary(spec.family, spec.count, spec.n, seed, k_max)
    rng = random.Random(seed)
    sweep = {"graphs": _sweep_graphs, "squarefree": _sweep_squarefree, "collections": _sweep_collections}
    sweep[spec.family](spec, rng, k_max, out, guards, summary)
    return summary


def _sweep_graphs(spec, rng, k_max, out, guards, summary):
    for i in range(spec.count):
        G = random_graph(rng, spec.n, spec.density)
        if not G.edges:
            summary.skipped += 1
            continue
        I = edge.edge_ideal(G)
        claimed = edge.classify_edge_ideal(G).constant
        a = analyze(I, k_max, guards=guards)
        summary.checked += 1
        seen = a.constant
        if seen is None:
            # classifier says non-constant but no drop happened up to k_max
            if claimed:
                seen = False
            else:
                summary.undecided += 1
                continue
        if seen == claimed:
            summary.agreements += 1
        else:
            summary.disagreements += 1
            _dump(out, f"graphs-{summary.seed}-{i}.txt",
                  [G.format(), f"classifier constant={claimed}", f"series {a.report.series}"], I, summary)


def _sweep_squarefree(spec, rng, k_max, out, guards, summary):
    for i in range(spec.count):
        I = random_squarefree_ideal(rng, spec.n)
        if not I.is_proper_nonzero:
            summary.skipped += 1
            continue
        summary.checked += 1
        series = []
        bad = None
        for k in range(1, k_max + 1):
            J = power(I, k)
            d, dr = betti.depth(J, guards=guards), betti.depth(radical(J), guards=guards)
            series.append(d)
            if dr < d and bad is None:
                bad = (k, dr, d)
        if bad is None:
            summary.agreements += 1
        else:
            summary.violations += 1
            _dump(out, f"squarefree-{summary.seed}-{i}.txt",
                  [f"depth of radical of power {bad[0]} is {bad[1]} < {bad[2]}"], I, summary)
        k_up = _increase(series)
        if k_up is not None:
            summary.findings.append(f"({I.format()}): depth series {series} increases at k={k_up}")
            log.info("depth increase for (%s): %s", I.format(), series)


def _sweep_collections(spec, rng, k_max, out, guards, summary):
    for i in range(spec.count):
        c = random_collection(rng, spec.n)
        verdict = in_A(c)
        if not verdict:
            summary.skipped += 1
            continue
        p = random_primes(rng, max(c.ground))
        I = build_ideal(c, p)
        summary.checked += 1
        series = betti.depth_series(I, k_max, guards=guards).series
        if len(set(series)) == 1:
            summary.agreements += 1
        else:
            summary.violations += 1
            _dump(out, f"collections-{summary.seed}-{i}.txt",
                  [f"collection {c.format()}", f"series {series}"], I, summary)
