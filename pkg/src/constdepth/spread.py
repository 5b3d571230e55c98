"""Analytic spread, the Burch bound and the constancy certificate.

For a monomial ideal the fiber ring R(I)/mR(I) has Hilbert function
k -> |G(I^k)|, and for an equigenerated ideal it is the toric ring of the
generators, so its dimension is the rank of the exponent matrix.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import GuardExceeded, InternalInconsistency, PreconditionError
from .linalg import dense_rank
from .monomial import MonomialIdeal, is_equigenerated

EXACT = "exact"
HEURISTIC = "heuristic_lower_bound"

SPREAD_METHODS = (
    "exponent_rank", "mu_growth", "edge_formula", "matroidal_formula",
    "forest_formula", "disjoint_sum", "disjoint_product",
)

CM_REASONS = (
    "matroidal", "bipartite_edge", "simplicial_forest",
    "disjoint_sum_of_CM", "disjoint_product_of_CM", "prime_power_product",
)


@dataclass(frozen=True)
class SpreadResult:
    value: int
    method: str
    confidence: str = EXACT

    def __post_init__(self):
        if self.method.split("(")[0] not in SPREAD_METHODS:
            raise ValueError(f"unknown spread method {self.method!r}")
        if self.confidence not in (EXACT, HEURISTIC):
            raise ValueError(f"unknown confidence {self.confidence!r}")

    @property
    def exact(self) -> bool:
        return self.confidence == EXACT

    def to_dict(self):
        return {"value": self.value, "method": self.method, "confidence": self.confidence}


@dataclass(frozen=True)
class ReesCMStatus:
    status: str = "unknown"
    reason: str | None = None

    def __post_init__(self):
        if self.status not in ("guaranteed_by_class", "asserted_by_user", "unknown"):
            raise ValueError(f"bad CM status {self.status!r}")
        if self.status == "guaranteed_by_class" and self.reason not in CM_REASONS:
            raise ValueError(f"bad CM reason tag {self.reason!r}")

    @classmethod
    def by_class(cls, reason: str) -> "ReesCMStatus":
        return cls("guaranteed_by_class", reason)

    @classmethod
    def asserted(cls) -> "ReesCMStatus":
        return cls("asserted_by_user")

    @property
    def known(self) -> bool:
        return self.status != "unknown"

    def label(self) -> str:
        if self.status == "guaranteed_by_class":
            return f"class:{self.reason}"
        return self.status


UNKNOWN_CM = ReesCMStatus()


def _require_proper(I: MonomialIdeal):
    if not I.is_proper_nonzero:
        raise PreconditionError("analytic spread needs a proper nonzero ideal")


def spread_exponent_rank(I: MonomialIdeal) -> SpreadResult:
    _require_proper(I)
    equi, _ = is_equigenerated(I)
    if not equi:
        raise PreconditionError("exponent-rank spread needs an equigenerated ideal")
    return SpreadResult(dense_rank(I.exponent_matrix()), "exponent_rank")


def hilbert_function_fiber(I: MonomialIdeal, k_max: int, max_generators: int = 200_000) -> list[int]:
    """[|G(I^0)|, |G(I^1)|, ..., |G(I^k_max)|] with |G(I^0)| = 1."""
    _require_proper(I)
    values = [1]
    Ik = None
    for k in range(1, k_max + 1):
        Ik = I if Ik is None else Ik * I
        if len(Ik.gens) > max_generators:
            raise GuardExceeded("power_generators", max_generators, len(Ik.gens), f"I^{k}")
        values.append(len(Ik.gens))
    return values


def _differences(seq):
    return [b - a for a, b in zip(seq, seq[1:])]


def spread_mu_growth(I: MonomialIdeal, k_max: int = 5, max_generators: int = 200_000) -> SpreadResult:
    """Degree of the Hilbert polynomial of the fiber ring, plus one.

    Exact only when some difference level ends in three equal positive
    values (two stable steps); otherwise a heuristic lower bound.
    """
    if k_max < 3:
        raise PreconditionError("mu-growth needs k_max >= 3")
    h = hilbert_function_fiber(I, k_max, max_generators)
    level = h
    d = 0
    best = 0
    while len(level) >= 1:
        if level[-1] > 0:
            best = d
        if len(level) >= 3 and level[-1] > 0 and level[-1] == level[-2] == level[-3]:
            return SpreadResult(d + 1, f"mu_growth({k_max})", EXACT)
        level = _differences(level)
        d += 1
    return SpreadResult(min(best + 1, I.n), f"mu_growth({k_max})", HEURISTIC)


def spread_sum_disjoint(l_i: int, l_j: int) -> int:
    return l_i + l_j


def spread_product_disjoint(l_i: int, l_j: int) -> int:
    return l_i + l_j - 1


def burch_bound(I: MonomialIdeal, spread: SpreadResult) -> int:
    """Upper bound n - l(I) on the limit depth of S/I^t."""
    if not spread.exact:
        raise PreconditionError("the Burch bound needs an exact analytic spread")
    return I.n - spread.value


class Verdict(str, Enum):
    CONSTANT = "CONSTANT_FOR_ALL_POWERS"
    NOT_CONSTANT = "NOT_CONSTANT"
    EVIDENCE_ONLY = "EVIDENCE_ONLY"


@dataclass(frozen=True)
class Certificate:
    verdict: Verdict
    method: str
    cm_basis: str
    n_minus_ell: int
    depth1: int

    def to_dict(self):
        return {
            "verdict": self.verdict.value,
            "method": self.method,
            "cm_basis": self.cm_basis,
            "n_minus_ell": self.n_minus_ell,
            "depth1": self.depth1,
        }


def certify_constant(I: MonomialIdeal, cm: ReesCMStatus, depth1: int, spread: SpreadResult) -> Certificate:
    """Decide constancy from depth S/I and n - l(I) when R(I) is Cohen-Macaulay.

    With a Cohen-Macaulay Rees ring the minimum of the depth function is
    n - l(I) and is attained from the first power on iff depth S/I equals it.
    Without a CM guarantee the answer is EVIDENCE_ONLY.
    """
    if not spread.exact:
        raise PreconditionError("certificate needs an exact analytic spread")
    nl = I.n - spread.value
    if not cm.known:
        return Certificate(Verdict.EVIDENCE_ONLY, spread.method, cm.label(), nl, depth1)
    if depth1 < nl:
        raise InternalInconsistency(
            f"depth S/I = {depth1} < n - l(I) = {nl} although R(I) is taken to be Cohen-Macaulay "
            f"({cm.label()}); the minimum of the depth function cannot exceed depth S/I"
        )
    verdict = Verdict.CONSTANT if depth1 == nl else Verdict.NOT_CONSTANT
    return Certificate(verdict, spread.method, cm.label(), nl, depth1)
