from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from constdepth.betti import depth, depth_series
from constdepth.errors import PreconditionError
from constdepth.matroidal import (
    classify_matroidal,
    depth_formula_matroidal,
    is_matroidal,
    is_normalized,
    linear_relation_graph,
    normalize,
    spread_matroidal,
)
from constdepth.monomial import (
    Monomial,
    PolyContext,
    colon,
    ideal_product,
    parse_ideal,
    prime_ideal,
    squarefree_ideal,
    unit_ideal,
)
from constdepth.spread import spread_exponent_rank


def uniform(d, n):
    return squarefree_ideal(PolyContext(n), combinations(range(n), d))


def transversal(*blocks):
    n = sum(blocks)
    ctx = PolyContext(n)
    I, start = unit_ideal(ctx), 0
    for b in blocks:
        I = ideal_product(I, prime_ideal(ctx, range(start, start + b)))
        start += b
    return I


def colon_factors(I):
    """Peel primes off with I : x, as an independent route to the factorization."""
    out = []
    while not I.is_unit:
        x = min(I.gens[0].support)
        J = colon(I, Monomial.from_support(I.n, [x]))
        P = sorted(y for y in range(I.n) if all(I.contains(g * Monomial.from_support(I.n, [y])) for g in J.gens))
        if ideal_product(prime_ideal(I.context, P), J) != I:
            return None
        out.append(P)
        I = J
    return sorted(out)


def test_exchange_property_examples():
    assert is_matroidal(uniform(2, 4))
    check = is_matroidal(parse_ideal("x1*x2, x3*x4"))
    assert not check and check.witness is not None
    assert "exchange fails" in check.describe(("x1", "x2", "x3", "x4"))
    assert is_matroidal(parse_ideal("x1*x3, x1*x4, x2*x3, x2*x4"))


def test_exchange_check_rejects_bad_input():
    with pytest.raises(PreconditionError):
        is_matroidal(parse_ideal("x1^2, x2^2"))
    with pytest.raises(PreconditionError):
        is_matroidal(parse_ideal("x1, x2*x3"))


def test_linear_relation_graph_examples():
    g = linear_relation_graph(parse_ideal("x1*x3, x1*x4, x2*x3, x2*x4"))
    assert g.edges == ((0, 1), (2, 3)) and g.s == 2
    assert linear_relation_graph(uniform(2, 4)).s == 1
    assert linear_relation_graph(parse_ideal("x1*x2")).r == 0


def test_classifier_transversal_and_uniform():
    v = classify_matroidal(transversal(2, 2))
    assert v.constant and v.d == v.s == 2
    assert v.factors == [["x1", "x2"], ["x3", "x4"]]
    v = classify_matroidal(uniform(2, 4))
    assert not v.constant and (v.s, v.d) == (1, 2)
    assert depth_series(uniform(2, 4), 3).series == [1, 0, 0]
    v = classify_matroidal(transversal(2, 2, 2))
    assert v.constant and len(v.factors) == 3
    assert depth_series(transversal(2, 2, 2), 2).series == [2, 2]


def test_classifier_normalizes_and_records_it():
    I = parse_ideal("vars: x1 x2 x3 x4 x5 x6\nx5*x1*x3, x5*x1*x4, x5*x2*x3, x5*x2*x4")
    v = classify_matroidal(I)
    assert v.normalized_by == {"gcd": "x5", "dropped": ["x5", "x6"]}
    assert v.constant and v.d == 2


def test_classifier_on_non_matroidal_input():
    v = classify_matroidal(parse_ideal("x1*x2, x3*x4"))
    assert not v.matroidal and v.witness


def test_principal_ideal_is_trivially_constant():
    v = classify_matroidal(parse_ideal("x1*x2"))
    assert v.matroidal and v.constant and v.spread == 1


def test_depth_formula_matches_engine():
    for I in (transversal(2, 2), uniform(2, 4), transversal(3, 2, 2), uniform(3, 5)):
        assert depth_formula_matroidal(I) == depth(I)
    with pytest.raises(PreconditionError):
        depth_formula_matroidal(parse_ideal("vars: x1 x2 x3\nx1*x2"))


def test_colon_recursion_agrees_with_component_factorization():
    for I in (transversal(2, 2), transversal(1, 3), transversal(2, 1, 2), transversal(3)):
        v = classify_matroidal(I)
        J = normalize(I)[0]
        names = J.context.var_names
        assert colon_factors(J) == sorted([names.index(x) for x in f] for f in v.factors)
    assert colon_factors(uniform(2, 4)) is None


@st.composite
def matroidal_ideals(draw):
    n = draw(st.integers(2, 6))
    d = draw(st.integers(1, min(3, n - 1)))
    pool = list(combinations(range(n), d))
    chosen = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=8, unique=True))
    return squarefree_ideal(PolyContext(n), chosen)


@given(matroidal_ideals())
def test_matroidal_invariants(I):
    if not is_matroidal(I):
        return
    J, _, _ = normalize(I)
    if J.is_unit:
        return
    assert is_normalized(J)
    g = linear_relation_graph(J)
    d = J.gens[0].degree
    assert g.s <= d
    assert g.vertices == tuple(range(J.n))
    for gen in J.gens:
        for comp in g.components:
            assert gen.support & set(comp)
    assert spread_matroidal(J).value == spread_exponent_rank(J).value
    v = classify_matroidal(I)
    if v.constant:
        assert colon_factors(J) is not None
    elif J.n <= 5:
        assert len(set(depth_series(J, 3).series)) > 1
