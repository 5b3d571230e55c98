import pytest

from constdepth.errors import ContextMismatch, ParseError, PreconditionError
from constdepth.monomial import (
    Field,
    Monomial,
    MonomialIdeal,
    PolyContext,
    colon,
    embed,
    format_ideal_file,
    gcd_of_gens,
    ideal_product,
    ideal_sum,
    intersect,
    is_equigenerated,
    parse_ideal,
    power,
    radical,
    restrict_context,
    support,
    variable_disjoint_blocks,
    zero_ideal,
)

from oracles import naive_power


def ideal(text):
    return parse_ideal(text)


def gens_of(I):
    return sorted(g.exponents for g in I.gens)


def test_minimalization_drops_multiples_and_duplicates():
    ctx = PolyContext(3)
    I = MonomialIdeal(ctx, [(1, 1, 0), (1, 1, 1), (0, 0, 1)])
    assert gens_of(I) == [(0, 0, 1), (1, 1, 0)]
    assert gens_of(MonomialIdeal(PolyContext(1), [(2,), (2,)])) == [(2,)]
    assert MonomialIdeal(ctx, []).is_zero


def test_ideal_operations_on_small_cases():
    ctx = PolyContext(3)
    x1 = MonomialIdeal(ctx, [(1, 0, 0)])
    x2 = MonomialIdeal(ctx, [(0, 1, 0)])
    assert gens_of(intersect(x1, x2)) == [(1, 1, 0)]
    I = MonomialIdeal(ctx, [(1, 1, 0), (0, 0, 1)])
    assert gens_of(colon(I, Monomial((1, 0, 0)))) == [(0, 0, 1), (0, 1, 0)]
    J = MonomialIdeal(ctx, [(1, 1, 0), (0, 1, 1)])
    assert gens_of(power(J, 2)) == [(0, 2, 2), (1, 2, 1), (2, 2, 0)]
    assert gens_of(radical(MonomialIdeal(PolyContext(2), [(2, 2)]))) == [(1, 1)]
    assert gens_of(ideal_sum(x1, x2)) == [(0, 1, 0), (1, 0, 0)]
    assert gens_of(ideal_product(x1, x2)) == [(1, 1, 0)]
    assert J ** 2 == power(J, 2)


def test_power_rejects_nonpositive_exponent():
    with pytest.raises(PreconditionError):
        power(ideal("x1"), 0)


def test_power_matches_brute_force_expansion():
    I = ideal("x1^2*x2, x2*x3^2, x1*x3")
    for k in range(1, 4):
        assert gens_of(power(I, k)) == naive_power([g.exponents for g in I.gens], k)


def test_support_gcd_equigenerated_blocks():
    I = ideal("x1*x2*x3, x3*x4*x5, x1*x5*x6")
    assert support(I) == frozenset(range(6))
    assert gcd_of_gens(I).is_one()
    assert is_equigenerated(I) == (True, 3)
    assert len(variable_disjoint_blocks(ideal("x1*x3, x2*x4"))) == 2
    assert len(variable_disjoint_blocks(ideal("x1*x2, x2*x3"))) == 1
    assert is_equigenerated(ideal("x1, x2*x3")) == (False, None)


def test_context_mismatch_is_rejected():
    with pytest.raises(ContextMismatch):
        ideal_sum(ideal("x1"), ideal("x1, x2"))
    with pytest.raises(ContextMismatch):
        MonomialIdeal(PolyContext(2), [(1, 0, 0)])


def test_parse_with_header_and_comments():
    I = parse_ideal("# a comment\nvars: a b c\na*b^2, c\n")
    assert I.context.var_names == ("a", "b", "c")
    assert gens_of(I) == [(0, 0, 1), (1, 2, 0)]


def test_parse_orders_inferred_names_naturally():
    I = parse_ideal("x10*x2, x1")
    assert I.context.var_names == ("x1", "x2", "x10")


def test_parse_error_positions():
    with pytest.raises(ParseError) as e:
        parse_ideal("vars: x y\nx*z")
    assert (e.value.line, e.value.column) == (2, 3)
    with pytest.raises(ParseError):
        parse_ideal("x1**x2")
    with pytest.raises(ParseError):
        parse_ideal("")


def test_format_round_trip():
    I = parse_ideal("vars: x1 x2 x3\nx1^2*x2, x3, x2*x3")
    assert parse_ideal(format_ideal_file(I)) == I


def test_restrict_and_embed_are_inverse():
    I = parse_ideal("vars: a b c d\na*c, c^2")
    R = restrict_context(I, [0, 2])
    assert R.n == 2
    assert embed(R, I.context, [0, 2]) == I
    with pytest.raises(PreconditionError):
        restrict_context(I, [0])


def test_field_parsing():
    assert str(Field.parse("q")) == "QQ"
    assert str(Field.parse("fp:7")) == "GF(7)"
    with pytest.raises(PreconditionError):
        Field.parse("fp:8")


def test_zero_and_unit_flags():
    ctx = PolyContext(2)
    assert zero_ideal(ctx).is_zero
    assert MonomialIdeal(ctx, [(0, 0)]).is_unit
    assert not MonomialIdeal(ctx, [(0, 0)]).is_proper_nonzero
