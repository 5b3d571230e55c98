"""Multigraded Betti numbers and depth of S/I for monomial ideals.

The main route computes beta_{i,a}(I) as the reduced homology
dim H~_{i-1}(K^a(I)) of the upper-Koszul complex

    K^a(I) = { W subset of supp(a) : x^(a - e_W) in I }

for every multidegree a of the lcm lattice.  ``taylor_betti_oracle`` is an
independent second route through the Taylor complex and is only used for
cross-checking.  Depth comes from Auslander-Buchsbaum:
depth S/I = n - pd(S/I) = n - 1 - max{i : beta_i(I) != 0}.
"""
from __future__ import annotations

import logging
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import linalg
from .errors import GuardExceeded, PreconditionError
from .monomial import Field, MonomialIdeal, power

log = logging.getLogger(__name__)

ExponentVector = tuple[int, ...]


@dataclass(frozen=True)
class Guards:
    """Resource limits.  Exceeding one raises :class:`GuardExceeded`.

    ``lcm`` is expressed as a generator count: the lattice may hold at most
    ``2**lcm - 1`` distinct lcms, which is what ``lcm`` generators in general
    position would produce.
    """

    lcm: int = 22
    taylor: int = 14
    homology_vertices: int = 24

    @property
    def lattice_cap(self) -> int:
        return 2 ** self.lcm - 1


DEFAULT_GUARDS = Guards()


def _require_proper(I: MonomialIdeal):
    if I.is_zero:
        raise PreconditionError("the zero ideal has no Betti table")
    if I.is_unit:
        raise PreconditionError("the unit ideal is not a proper ideal")


# -- lcm lattice ---------------------------------------------------------

def _strides(dims: np.ndarray) -> np.ndarray | None:
    """C-order mixed-radix strides, or None if keys would overflow int64."""
    total = 1
    for d in dims:
        total *= int(d)
    if total >= 2 ** 62:
        return None
    strides = np.ones(len(dims), dtype=np.int64)
    for v in range(len(dims) - 2, -1, -1):
        strides[v] = strides[v + 1] * dims[v + 1]
    return strides


def _lattice_array(G: np.ndarray, cap: int) -> np.ndarray:
    n = G.shape[1]
    strides = _strides(G.max(axis=0) + 1)
    lattice = np.empty((0, n), dtype=np.int64)
    for g in G:
        stacked = np.vstack([lattice, np.maximum(lattice, g), g[None, :]])
        if strides is None:
            lattice = np.unique(stacked, axis=0)
        else:
            _, first = np.unique(stacked @ strides, return_index=True)
            lattice = stacked[first]
        if len(lattice) > cap:
            raise GuardExceeded("lcm", cap, len(lattice), f"lcm lattice of {len(G)} generators")
    return lattice


def lcm_lattice_degrees(I: MonomialIdeal, guards: Guards = DEFAULT_GUARDS) -> list[ExponentVector]:
    """All distinct lcms of nonempty subsets of G(I), sorted.

    Built by closure (L <- L u {g} u {lcm(g, l) : l in L}) so the cost scales
    with the lattice, not with 2^m.
    """
    _require_proper(I)
    lattice = _lattice_array(_gens_array(I), guards.lattice_cap)
    return sorted(tuple(int(x) for x in row) for row in lattice)


# -- simplicial complexes ------------------------------------------------

@dataclass(frozen=True)
class AbstractComplex:
    """A simplicial complex on ``vertex_labels`` stored by its faces.

    ``faces`` holds every face as a frozenset of labels.  No faces at all is
    the void complex; ``{frozenset()}`` alone is the irrelevant complex.
    """

    vertex_labels: tuple[int, ...]
    faces: frozenset[frozenset[int]]

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable[int]], vertex_labels: Sequence[int] | None = None):
        facets = [frozenset(f) for f in facets]
        faces = set()
        for f in facets:
            items = sorted(f)
            for k in range(len(items) + 1):
                faces.update(frozenset(c) for c in combinations(items, k))
        if vertex_labels is None:
            vertex_labels = sorted(set().union(*facets)) if facets else []
        return cls(tuple(vertex_labels), frozenset(faces))

    @property
    def is_void(self) -> bool:
        return not self.faces

    @property
    def is_irrelevant(self) -> bool:
        return self.faces == frozenset({frozenset()})

    @property
    def dim(self) -> int:
        if not self.faces:
            return -2
        return max(len(f) for f in self.faces) - 1

    @property
    def facets(self) -> list[frozenset[int]]:
        fs = sorted(self.faces, key=len, reverse=True)
        out: list[frozenset[int]] = []
        for f in fs:
            if not any(f < g for g in out):
                out.append(f)
        return sorted(out, key=lambda f: (len(f), sorted(f)))

    def is_cone(self) -> bool:
        facets = self.facets
        if not facets or facets == [frozenset()]:
            return False
        return bool(frozenset.intersection(*facets))


def upper_koszul(I: MonomialIdeal, a: Sequence[int]) -> AbstractComplex:
    a = tuple(int(x) for x in a)
    if len(a) != I.n:
        raise PreconditionError("multidegree length differs from the number of variables")
    if any(x < 0 for x in a):
        raise PreconditionError("multidegree must be componentwise non-negative")
    verts = [i for i, x in enumerate(a) if x > 0]
    masks = _upper_koszul_masks(_gens_array(I), np.array(a, dtype=np.int64), verts)
    faces = frozenset(frozenset(verts[j] for j in range(len(verts)) if mask >> j & 1) for mask in masks)
    return AbstractComplex(tuple(verts), faces)


def _gens_array(I: MonomialIdeal) -> np.ndarray:
    return np.array([g.exponents for g in I.gens], dtype=np.int64).reshape(len(I.gens), I.n)


def _upper_koszul_masks(G: np.ndarray, a: np.ndarray, verts: list[int]) -> list[int]:
    k = len(verts)
    if G.shape[0] == 0:
        return []
    masks = np.arange(1 << k, dtype=np.int64)
    B = np.repeat(a[None, :], len(masks), axis=0)
    for j, v in enumerate(verts):
        B[:, v] -= (masks >> j) & 1
    inside = (G[None, :, :] <= B[:, None, :]).all(axis=2).any(axis=1)
    return [int(m) for m in masks[inside]]


def _homology_from_masks(masks: Sequence[int], characteristic: int) -> dict[int, int]:
    """Reduced homology of a complex whose faces are bitmasks (closed downward)."""
    if not masks:
        return {}
    by_dim: dict[int, list[int]] = defaultdict(list)
    for m in masks:
        by_dim[bin(m).count("1") - 1].append(m)
    top = max(by_dim)
    index = {d: {m: i for i, m in enumerate(sorted(fs))} for d, fs in by_dim.items()}
    ranks: dict[int, int] = {}
    for d in range(0, top + 1):
        lower = index.get(d - 1, {})
        rows = []
        for m in index.get(d, {}):
            row = {}
            sign = 1
            bits = m
            while bits:
                low = bits & -bits
                row[lower[m ^ low]] = sign
                sign = -sign
                bits ^= low
            rows.append(row)
        ranks[d] = linalg.rank(rows, characteristic)
    dims = {}
    for d in range(-1, top + 1):
        h = len(by_dim.get(d, ())) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if h:
            dims[d] = h
    return dims


def reduced_homology_dims(C: AbstractComplex, fld: Field | int = 0,
                          guards: Guards = DEFAULT_GUARDS) -> dict[int, int]:
    """Nonzero dimensions of H~_j(C; K) for -1 <= j <= dim C."""
    char = fld.characteristic if isinstance(fld, Field) else int(fld)
    if len(C.vertex_labels) > guards.homology_vertices:
        raise GuardExceeded("homology_vertices", guards.homology_vertices, len(C.vertex_labels))
    labels = sorted(set(C.vertex_labels).union(*C.faces)) if C.faces else list(C.vertex_labels)
    pos = {v: i for i, v in enumerate(labels)}
    masks = [sum(1 << pos[v] for v in f) for f in C.faces]
    return _homology_from_masks(masks, char)


# -- Betti tables --------------------------------------------------------

@dataclass(frozen=True)
class BettiTable:
    """beta_{i,a}(I) for the ideal I (homological index 0 = generators).

    The quotient S/I is shifted by one: beta_{i+1,a}(S/I) = beta_{i,a}(I).
    """

    entries: dict[tuple[int, ExponentVector], int]
    field: Field = field(default_factory=Field)
    num_vars: int = 0

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.entries == other.entries and self.field == other.field

    def totals(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for (i, _), b in self.entries.items():
            out[i] += b
        return dict(sorted(out.items()))

    def graded(self) -> dict[tuple[int, int], int]:
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (i, a), b in self.entries.items():
            out[(i, sum(a))] += b
        return dict(sorted(out.items()))

    @property
    def proj_dim_ideal(self) -> int:
        return max((i for i, _ in self.entries), default=-1)

    @property
    def proj_dim(self) -> int:
        """Projective dimension of S/I."""
        return self.proj_dim_ideal + 1

    def multidegrees(self) -> set[ExponentVector]:
        return {a for _, a in self.entries}

    def to_dict(self) -> dict:
        return {
            "field": str(self.field),
            "entries": [
                {"i": i, "multidegree": list(a), "beta": b}
                for (i, a), b in sorted(self.entries.items())
            ],
            "totals": {str(i): b for i, b in self.totals().items()},
        }


def _homology_job(job):
    keys, mask_lists, char = job
    return [(k, {} if _masks_cone(m) else _homology_from_masks(m, char)) for k, m in zip(keys, mask_lists)]


_GRID_MAX_VARS = 14
_GRID_MAX_CELLS = 1 << 24


def _face_masks(G: np.ndarray, lattice: np.ndarray) -> list[list[int]]:
    """Faces of K^a(I), as bitmasks over all n variables, for every lattice row a.

    When the exponent box is small, membership in I is tabulated once on the
    whole box (prefix-OR along each axis) and looked up by index arithmetic.
    """
    n = G.shape[1]
    dims = G.max(axis=0) + 1
    cells = int(np.prod(dims.astype(object)))
    if n > _GRID_MAX_VARS or cells > _GRID_MAX_CELLS:
        out = []
        for a in lattice:
            verts = [i for i in range(n) if a[i] > 0]
            local = _upper_koszul_masks(G, a, verts)
            out.append([sum(1 << verts[j] for j in range(len(verts)) if m >> j & 1) for m in local])
        return out
    grid = np.zeros(tuple(int(d) for d in dims), dtype=bool)
    grid[tuple(G.T)] = True
    for axis in range(n):
        grid = np.logical_or.accumulate(grid, axis=axis)
    flat = grid.ravel()
    strides = _strides(dims)
    all_masks = np.arange(1 << n, dtype=np.int64)
    bits = (all_masks[:, None] >> np.arange(n)) & 1
    offsets = bits @ strides
    keys = lattice @ strides
    out = []
    step = max(1, (1 << 22) // ((1 << n) * n))
    for s in range(0, len(lattice), step):
        block = lattice[s:s + step]
        valid = (block[:, None, :] >= bits[None, :, :]).all(axis=2)
        idx = np.where(valid, keys[s:s + step, None] - offsets[None, :], 0)
        member = valid & flat[idx]
        for row in member:
            out.append(all_masks[row].tolist())
    return out


def _masks_cone(masks: Sequence[int]) -> bool:
    """True when some vertex lies in every facet (then all homology vanishes)."""
    if not masks or masks == [0]:
        return False
    mset = set(masks)
    full = 0
    for m in masks:
        full |= m
    bit = 1
    while bit <= full:
        if full & bit and all((m | bit) in mset for m in masks):
            return True
        bit <<= 1
    return False


def betti_table(I: MonomialIdeal, fld: Field | None = None, guards: Guards = DEFAULT_GUARDS,
                jobs: int = 1) -> BettiTable:
    """Full multigraded Betti table of I via upper-Koszul homology.

    Complexes are deduplicated before any homology work; ``jobs > 1``
    spreads the distinct complexes over worker processes.
    """
    _require_proper(I)
    fld = fld or I.context.field
    G = _gens_array(I)
    lattice = _lattice_array(G, guards.lattice_cap)
    widths = (lattice > 0).sum(axis=1)
    if len(widths) and widths.max() > guards.homology_vertices:
        bad = tuple(int(x) for x in lattice[int(widths.argmax())])
        raise GuardExceeded("homology_vertices", guards.homology_vertices, int(widths.max()), f"multidegree {bad}")
    face_lists = _face_masks(G, lattice)
    distinct: dict[tuple[int, ...], int] = {}
    row_key = []
    for masks in face_lists:
        key = tuple(masks)
        if key not in distinct:
            distinct[key] = len(distinct)
        row_key.append(distinct[key])
    complexes = list(distinct)
    char = fld.characteristic
    if jobs > 1 and len(complexes) > 64:
        chunk = -(-len(complexes) // jobs)
        work = [(list(range(s, min(s + chunk, len(complexes)))), complexes[s:s + chunk], char)
                for s in range(0, len(complexes), chunk)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_homology_job, work))
        homology = dict(r for part in parts for r in part)
    else:
        homology = dict(_homology_job((list(range(len(complexes))), complexes, char)))
    entries = {}
    for a, k in zip(lattice, row_key):
        dims = homology[k]
        if dims:
            av = tuple(int(x) for x in a)
            for j, h in dims.items():
                entries[(j + 1, av)] = h
    return BettiTable(dict(sorted(entries.items())), fld, I.n)


def taylor_betti_oracle(I: MonomialIdeal, fld: Field | None = None, guards: Guards = DEFAULT_GUARDS) -> BettiTable:
    """Betti table from the Taylor complex tensored with K, strand by strand.

    Basis: nonempty subsets F of G(I) in homological degree |F| - 1.  After
    tensoring with K the only surviving differential entries are the +-1
    ones where dropping a generator keeps lcm(F).
    """
    _require_proper(I)
    fld = fld or I.context.field
    m = len(I.gens)
    if m > guards.taylor:
        raise GuardExceeded("taylor", guards.taylor, m, "Taylor basis is 2^m")
    exps = [g.exponents for g in I.gens]
    lcms: list[ExponentVector] = [()] * (1 << m)
    lcms[0] = (0,) * I.n
    strands: dict[ExponentVector, list[int]] = defaultdict(list)
    for mask in range(1, 1 << m):
        low = mask & -mask
        j = low.bit_length() - 1
        lcms[mask] = tuple(map(max, lcms[mask ^ low], exps[j]))
        strands[lcms[mask]].append(mask)
    entries = {}
    for a, masks in strands.items():
        dims = _taylor_strand(masks, lcms, a, fld.characteristic)
        for i, h in dims.items():
            entries[(i, a)] = h
    return BettiTable(dict(sorted(entries.items())), fld, I.n)


def _taylor_strand(masks, lcms, a, char) -> dict[int, int]:
    by_deg: dict[int, list[int]] = defaultdict(list)
    for mk in masks:
        by_deg[bin(mk).count("1") - 1].append(mk)
    index = {d: {mk: i for i, mk in enumerate(sorted(v))} for d, v in by_deg.items()}
    ranks = {}
    for d in by_deg:
        if d == 0:
            continue
        lower = index.get(d - 1, {})
        rows = []
        for mk in index[d]:
            row = {}
            sign = 1
            bits = mk
            while bits:
                low = bits & -bits
                face = mk ^ low
                if face in lower and lcms[face] == a:
                    row[lower[face]] = sign
                sign = -sign
                bits ^= low
            rows.append(row)
        ranks[d] = linalg.rank(rows, char)
    out = {}
    for d, fs in by_deg.items():
        h = len(fs) - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if h:
            out[d] = h
    return out


# -- depth ---------------------------------------------------------------

def proj_dim(I: MonomialIdeal, fld: Field | None = None, guards: Guards = DEFAULT_GUARDS, jobs: int = 1) -> int:
    """Projective dimension of S/I (0 for the zero ideal)."""
    if I.is_zero:
        return 0
    return betti_table(I, fld, guards, jobs).proj_dim


def depth(I: MonomialIdeal, fld: Field | None = None, guards: Guards = DEFAULT_GUARDS, jobs: int = 1) -> int:
    """depth S/I; the zero ideal gives n by convention."""
    if I.is_unit:
        raise PreconditionError("depth of S/I is undefined for the unit ideal")
    return I.n - proj_dim(I, fld, guards, jobs)


@dataclass
class DepthReport:
    ideal: MonomialIdeal
    depth: int
    proj_dim: int
    series: list[int]
    field: Field
    limit_claim: dict | None = None
    guards_hit: list[str] = field(default_factory=list)

    @property
    def k_max(self) -> int:
        return len(self.series)

    @property
    def constant_up_to(self) -> int:
        """Largest k such that depth S/I^j is the same for all j <= k."""
        k = 0
        for d in self.series:
            if d != self.series[0]:
                break
            k += 1
        return k

    @property
    def is_constant_prefix(self) -> bool:
        return bool(self.series) and self.constant_up_to == len(self.series)

    def to_dict(self) -> dict:
        out = {
            "depth": self.depth,
            "proj_dim": self.proj_dim,
            "series": list(self.series),
            "constant_up_to": self.constant_up_to,
            "field": str(self.field),
            "guards_hit": list(self.guards_hit),
        }
        if self.limit_claim is not None:
            out["limit_claim"] = self.limit_claim
        return out


def depth_series(I: MonomialIdeal, k_max: int, fld: Field | None = None, guards: Guards = DEFAULT_GUARDS,
                 jobs: int = 1, stop_on_guard: bool = False) -> DepthReport:
    """depth S/I^k for k = 1..k_max.

    With ``stop_on_guard`` a guard violation truncates the series and is
    recorded in ``guards_hit``; otherwise it propagates, naming the power.
    """
    if k_max < 1:
        raise PreconditionError("k_max must be at least 1")
    if not I.is_proper_nonzero:
        raise PreconditionError("depth series needs a proper nonzero ideal")
    fld = fld or I.context.field
    series: list[int] = []
    hit: list[str] = []
    Ik = I
    for k in range(1, k_max + 1):
        if k > 1:
            Ik = power(I, k) if k == 2 else Ik * I
        try:
            series.append(depth(Ik, fld, guards, jobs))
        except GuardExceeded as exc:
            exc.where = f"power k={k}" + (f"; {exc.where}" if exc.where else "")
            exc.args = (f"resource guard '{exc.guard}' exceeded at I^{k}: {exc.actual} > {exc.limit}",)
            if not stop_on_guard:
                raise
            hit.append(str(exc))
            break
        log.debug("depth S/I^%d = %d", k, series[-1])
    if not series:
        raise PreconditionError("no power could be computed within the guards: " + "; ".join(hit))
    return DepthReport(I, series[0], I.n - series[0], series, fld, guards_hit=hit)
