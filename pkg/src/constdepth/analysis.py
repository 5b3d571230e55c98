"""End-to-end constancy analysis of a single ideal.

Cohen-Macaulayness of the Rees ring is never computed: it is granted by a
recognized class (bipartite edge ideal, matroidal, class C, facet ideal of
a simplicial forest) or by an explicit user assertion.  With an exact
spread and a CM guarantee the certificate decides constancy for all powers;
otherwise the verdict rests on the computed depth series.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

from . import betti, edge, forest, matroidal
from .errors import InternalInconsistency, PreconditionError
from .families import ConstancyReport, in_class_C
from .monomial import Field, MonomialIdeal, is_equigenerated, restrict_context, support, variable_disjoint_blocks
from .spread import (
    UNKNOWN_CM,
    Certificate,
    ReesCMStatus,
    SpreadResult,
    Verdict,
    certify_constant,
    spread_exponent_rank,
)

log = logging.getLogger(__name__)


def _as_graph(I: MonomialIdeal) -> edge.Graph | None:
    equi, d = is_equigenerated(I)
    if not (equi and d == 2 and I.is_squarefree()):
        return None
    return edge.Graph.from_edges(tuple(sorted(g.support)) for g in I.gens)


def _forest_of(I: MonomialIdeal) -> forest.SimplicialComplex | None:
    if not I.is_squarefree() or len(I.gens) > forest.FOREST_GUARD:
        return None
    D = forest.complex_of_ideal(I)
    return D if forest.is_forest(D) else None


def recognize_cm(I: MonomialIdeal) -> ReesCMStatus:
    """Class-based Cohen-Macaulay guarantee for R(I), or unknown."""
    if not I.is_proper_nonzero or not I.is_squarefree():
        return UNKNOWN_CM
    G = _as_graph(I)
    if G is not None and edge.is_bipartite(G) is not None:
        return ReesCMStatus.by_class("bipartite_edge")
    if is_equigenerated(I)[0] and matroidal.is_matroidal(I):
        return ReesCMStatus.by_class("matroidal")
    c = in_class_C(I)
    if c:
        return ReesCMStatus.by_class("prime_power_product" if len(c.presentation) == 1 else "disjoint_sum_of_CM")
    if _forest_of(I) is not None:
        return ReesCMStatus.by_class("simplicial_forest")
    return UNKNOWN_CM


def exact_spread(I: MonomialIdeal) -> SpreadResult | None:
    """An exact analytic spread when some route applies, else None.

    Blocks in disjoint variables add up; each block needs the exponent-rank
    route (equigenerated) or the forest formula.
    """
    if not I.is_proper_nonzero:
        raise PreconditionError("analytic spread needs a proper nonzero ideal")
    blocks = variable_disjoint_blocks(I)
    total = 0
    methods = []
    for block in blocks:
        B = MonomialIdeal(I.context, block)
        if is_equigenerated(B)[0]:
            r = spread_exponent_rank(B)
        else:
            sub = restrict_context(B, sorted(support(B)))
            D = _forest_of(sub)
            if D is None:
                return None
            r = forest.spread_forest(D)
        total += r.value
        methods.append(r.method)
    if len(blocks) == 1:
        return SpreadResult(total, methods[0])
    return SpreadResult(total, "disjoint_sum")


@dataclass
class Analysis:
    ideal: MonomialIdeal
    report: betti.DepthReport
    cm: ReesCMStatus
    spread: SpreadResult | None
    certificate: Certificate | None
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if self.certificate is not None and self.certificate.verdict is not Verdict.EVIDENCE_ONLY:
            return "CONSTANT" if self.certificate.verdict is Verdict.CONSTANT else "NOT_CONSTANT"
        if not self.report.is_constant_prefix:
            return "NOT_CONSTANT"
        return f"CONSTANT_UP_TO_K{self.report.k_max}"

    @property
    def constant(self) -> bool | None:
        v = self.verdict
        if v == "CONSTANT":
            return True
        if v == "NOT_CONSTANT":
            return False
        return None

    def to_dict(self) -> dict:
        out = {
            "ideal": self.ideal.format(),
            "vars": list(self.ideal.context.var_names),
            "report": self.report.to_dict(),
            "cm": self.cm.label(),
            "spread": self.spread.to_dict() if self.spread else None,
            "certificate": self.certificate.to_dict() if self.certificate else None,
            "verdict": self.verdict,
        }
        if self.notes:
            out["notes"] = list(self.notes)
        return out

    def constancy_report(self) -> ConstancyReport:
        if self.spread is None or self.constant is None:
            raise PreconditionError("no certified verdict to combine")
        return ConstancyReport(self.ideal, self.constant, self.cm, self.spread.value)


def analyze(I: MonomialIdeal, k_max: int = 3, fld: Field | None = None, guards: betti.Guards = betti.DEFAULT_GUARDS,
            jobs: int = 1, assert_cm: bool = False, cm: ReesCMStatus | None = None,
            spread: SpreadResult | None = None) -> Analysis:
    if not I.is_proper_nonzero:
        raise PreconditionError("constancy analysis needs a proper nonzero ideal")
    report = betti.depth_series(I, k_max, fld, guards, jobs, stop_on_guard=True)
    notes: list[str] = []
    if cm is None:
        cm = recognize_cm(I)
        if not cm.known and assert_cm:
            cm = ReesCMStatus.asserted()
            notes.append("Rees ring Cohen-Macaulayness asserted by the user")
    if spread is None:
        spread = exact_spread(I)
    cert = None
    if spread is not None:
        cert = certify_constant(I, cm, report.depth, spread)
        if cert.verdict is Verdict.CONSTANT:
            if not report.is_constant_prefix:
                raise InternalInconsistency(
                    f"certificate says constant but the computed series is {report.series}"
                )
            report.limit_claim = {"value": cert.n_minus_ell, "justification": cm.label()}
        elif cert.verdict is Verdict.NOT_CONSTANT:
            report.limit_claim = {"value": cert.n_minus_ell, "justification": cm.label()}
    else:
        notes.append("no exact analytic spread route applies")
    if report.guards_hit:
        notes.append("series truncated by a resource guard")
    return Analysis(I, report, cm, spread, cert, notes)

