import random

import pytest

from constdepth.betti import (
    AbstractComplex,
    Guards,
    betti_table,
    depth,
    depth_series,
    lcm_lattice_degrees,
    proj_dim,
    reduced_homology_dims,
    taylor_betti_oracle,
    upper_koszul,
)
from constdepth.errors import GuardExceeded, PreconditionError
from constdepth.monomial import Field, MonomialIdeal, PolyContext, parse_ideal, power

from oracles import has_socle

CUBIC_TRIANGLE = "x1*x2*x3, x3*x4*x5, x1*x5*x6"
TRIANGLE = "x1*x2, x2*x3, x1*x3"


def random_ideal(rng, n_max=5, m_max=5, e_max=2):
    n = rng.randint(1, n_max)
    ctx = PolyContext(n)
    gens = [tuple(rng.randint(0, e_max) for _ in range(n)) for _ in range(rng.randint(1, m_max))]
    return MonomialIdeal(ctx, gens)


def test_lcm_lattice_small_cases():
    assert lcm_lattice_degrees(parse_ideal("x1, x2")) == [(0, 1), (1, 0), (1, 1)]
    assert lcm_lattice_degrees(parse_ideal("x1*x2, x2*x3")) == [(0, 1, 1), (1, 1, 0), (1, 1, 1)]
    assert len(lcm_lattice_degrees(parse_ideal(CUBIC_TRIANGLE))) == 7


def test_lcm_guard_is_named():
    I = parse_ideal("x1, x2, x3, x4")
    with pytest.raises(GuardExceeded) as e:
        lcm_lattice_degrees(I, Guards(lcm=2))
    assert e.value.guard == "lcm"


def test_upper_koszul_small_cases():
    C = upper_koszul(parse_ideal("x1"), (1,))
    assert C.is_irrelevant
    C = upper_koszul(parse_ideal("x1, x2"), (1, 1))
    assert C.faces == frozenset({frozenset(), frozenset({0}), frozenset({1})})
    assert upper_koszul(parse_ideal("x1*x2"), (1, 1)).is_irrelevant


def test_reduced_homology_of_standard_complexes():
    hollow_edge = AbstractComplex.from_facets([{1}, {2}])
    assert reduced_homology_dims(hollow_edge) == {0: 1}
    assert reduced_homology_dims(AbstractComplex.from_facets([set()])) == {-1: 1}
    circle = AbstractComplex.from_facets([{1, 2}, {2, 3}, {1, 3}])
    assert reduced_homology_dims(circle) == {1: 1}
    assert reduced_homology_dims(AbstractComplex.from_facets([{1, 2, 3}])) == {}
    assert reduced_homology_dims(AbstractComplex((), frozenset())) == {}


def test_projective_plane_depends_on_characteristic():
    # minimal 6-vertex triangulation of RP^2
    facets = [{1, 2, 3}, {1, 3, 4}, {1, 4, 5}, {1, 5, 6}, {1, 2, 6}, {2, 3, 5},
              {2, 4, 5}, {2, 4, 6}, {3, 4, 6}, {3, 5, 6}]
    C = AbstractComplex.from_facets(facets)
    assert reduced_homology_dims(C, 0) == {}
    assert reduced_homology_dims(C, 2) == {1: 1, 2: 1}


def test_betti_table_small_cases():
    t = betti_table(parse_ideal("x1, x2"))
    assert t.totals() == {0: 2, 1: 1}
    t = betti_table(parse_ideal("x1*x2, x2*x3"))
    assert t.entries == {(0, (0, 1, 1)): 1, (0, (1, 1, 0)): 1, (1, (1, 1, 1)): 1}
    assert proj_dim(parse_ideal(CUBIC_TRIANGLE)) == 3
    assert depth(parse_ideal(CUBIC_TRIANGLE)) == 3
    assert depth(parse_ideal(TRIANGLE)) == 1


def test_taylor_oracle_agrees_on_fixed_cases():
    for text in ("x1, x2", "x1*x2, x2*x3", CUBIC_TRIANGLE, TRIANGLE, "x1^2, x1*x2, x2^2"):
        I = parse_ideal(text)
        assert betti_table(I) == taylor_betti_oracle(I)


def test_taylor_oracle_agrees_on_random_ideals():
    rng = random.Random(11)
    for _ in range(60):
        I = random_ideal(rng)
        if I.is_proper_nonzero:
            assert betti_table(I) == taylor_betti_oracle(I), I.format()


def test_parallel_table_equals_serial():
    I = power(parse_ideal(CUBIC_TRIANGLE), 2)
    assert betti_table(I, jobs=2) == betti_table(I)


def test_depth_zero_matches_socle_oracle():
    rng = random.Random(17)
    for _ in range(80):
        I = random_ideal(rng, n_max=4, m_max=4)
        if I.is_proper_nonzero:
            gens = [g.exponents for g in I.gens]
            assert (depth(I) == 0) == has_socle(gens), I.format()


def test_depth_series_examples():
    assert depth_series(parse_ideal(CUBIC_TRIANGLE), 3).series == [3, 3, 3]
    assert depth_series(parse_ideal(TRIANGLE), 2).series == [1, 0]
    assert depth_series(parse_ideal("x1*x2"), 3).series == [1, 1, 1]


def test_depth_series_report_fields():
    r = depth_series(parse_ideal(TRIANGLE), 2)
    assert r.depth == 1 and r.proj_dim == 2
    assert r.constant_up_to == 1 and not r.is_constant_prefix
    d = r.to_dict()
    assert d["series"] == [1, 0] and d["field"] == "QQ"


def test_guard_truncates_series_when_requested():
    I = parse_ideal("x1*x2, x2*x3, x3*x4, x4*x1")
    r = depth_series(I, 3, guards=Guards(lcm=4), stop_on_guard=True)
    assert r.series and r.guards_hit
    with pytest.raises(GuardExceeded, match="I\\^"):
        depth_series(I, 3, guards=Guards(lcm=4))


def test_preconditions():
    with pytest.raises(PreconditionError):
        betti_table(MonomialIdeal(PolyContext(2), []))
    with pytest.raises(PreconditionError):
        depth(MonomialIdeal(PolyContext(2), [(0, 0)]))
    assert depth(MonomialIdeal(PolyContext(2), [])) == 2
    with pytest.raises(PreconditionError):
        depth_series(parse_ideal("x1"), 0)


def test_field_is_recorded_and_used():
    I = parse_ideal("x1", Field(3))
    assert str(betti_table(I).field) == "GF(3)"
