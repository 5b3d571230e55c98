import pytest

from constdepth.betti import depth
from constdepth.edge import complete_bipartite, edge_ideal
from constdepth.errors import InternalInconsistency, PreconditionError
from constdepth.monomial import maximal_ideal, parse_ideal, PolyContext, power
from constdepth.spread import (
    HEURISTIC,
    UNKNOWN_CM,
    ReesCMStatus,
    SpreadResult,
    Verdict,
    burch_bound,
    certify_constant,
    hilbert_function_fiber,
    spread_exponent_rank,
    spread_mu_growth,
    spread_product_disjoint,
    spread_sum_disjoint,
)

from oracles import naive_power

CUBIC_TRIANGLE = "x1*x2*x3, x3*x4*x5, x1*x5*x6"


def test_exponent_rank_values():
    assert spread_exponent_rank(parse_ideal(CUBIC_TRIANGLE)).value == 3
    assert spread_exponent_rank(parse_ideal("x1*x2")).value == 1
    assert spread_exponent_rank(edge_ideal(complete_bipartite(2, 3))).value == 4


def test_exponent_rank_needs_equigenerated_input():
    with pytest.raises(PreconditionError):
        spread_exponent_rank(parse_ideal("x1, x2*x3"))


def test_fiber_hilbert_function_counts_generators():
    I = parse_ideal(CUBIC_TRIANGLE)
    gens = [g.exponents for g in I.gens]
    assert hilbert_function_fiber(I, 4) == [1] + [len(naive_power(gens, k)) for k in range(1, 5)]


def test_mu_growth_values():
    r = spread_mu_growth(parse_ideal("x1*x2"))
    assert (r.value, r.exact) == (1, True)
    r = spread_mu_growth(parse_ideal("x1, x2"))
    assert (r.value, r.exact) == (2, True)
    assert spread_mu_growth(parse_ideal(CUBIC_TRIANGLE), 5).value == 3


def test_mu_growth_short_window_is_heuristic():
    r = spread_mu_growth(parse_ideal("x1, x2, x3"), 3)
    assert r.confidence == HEURISTIC
    with pytest.raises(PreconditionError):
        spread_mu_growth(parse_ideal("x1, x2"), 2)


def test_disjoint_rules():
    assert spread_sum_disjoint(2, 3) == 5
    assert spread_product_disjoint(2, 3) == 4
    assert spread_product_disjoint(1, 1) == 1
    assert spread_exponent_rank(parse_ideal("x1, x2, x3, x4")).value == spread_sum_disjoint(2, 2)


def test_burch_bound():
    assert burch_bound(parse_ideal(CUBIC_TRIANGLE), SpreadResult(3, "exponent_rank")) == 3
    m = maximal_ideal(PolyContext(4))
    assert burch_bound(m, spread_exponent_rank(m)) == 0
    K23 = edge_ideal(complete_bipartite(2, 3))
    assert burch_bound(K23, spread_exponent_rank(K23)) == 1
    with pytest.raises(PreconditionError):
        burch_bound(m, SpreadResult(4, "mu_growth", HEURISTIC))


def test_certificate_decides_with_cm_guarantee():
    I = parse_ideal(CUBIC_TRIANGLE)
    c = certify_constant(I, ReesCMStatus.asserted(), depth(I), spread_exponent_rank(I))
    assert c.verdict is Verdict.CONSTANT and c.n_minus_ell == 3
    m = maximal_ideal(PolyContext(3))
    assert certify_constant(m, ReesCMStatus.by_class("matroidal"), 0, spread_exponent_rank(m)).verdict is Verdict.CONSTANT


def test_certificate_without_cm_is_evidence_only():
    C3 = parse_ideal("x1*x2, x2*x3, x1*x3")
    c = certify_constant(C3, UNKNOWN_CM, 1, spread_exponent_rank(C3))
    assert c.verdict is Verdict.EVIDENCE_ONLY and c.n_minus_ell == 0


def test_certificate_flags_impossible_depth():
    I = parse_ideal("x1*x2, x2*x3, x1*x3")
    with pytest.raises(InternalInconsistency):
        certify_constant(I, ReesCMStatus.asserted(), -1, spread_exponent_rank(I))


def test_status_validation():
    with pytest.raises(ValueError):
        ReesCMStatus.by_class("made_up")
    with pytest.raises(ValueError):
        SpreadResult(1, "guesswork")
    assert ReesCMStatus.by_class("matroidal").label() == "class:matroidal"


def test_limit_depth_reaches_burch_bound_for_cm_class():
    K23 = edge_ideal(complete_bipartite(2, 3))
    nl = burch_bound(K23, spread_exponent_rank(K23))
    assert depth(power(K23, 3)) == nl
