from fractions import Fraction

import pytest

from equm.exceptions import EqumError, InfiniteArgument, ParseError, ZeroArgument, ZeroDivisor
from equm.hyperreal import (
    EPSILON,
    ONE,
    ZERO,
    Hyperreal,
    Ordering,
    QualOrdering,
    RatioClass,
    RatioKind,
    add,
    classify_ratio,
    compare_total,
    divide_by_monomial,
    epsilon_power,
    format_literal,
    leading_coefficient,
    mul,
    negate,
    normalize,
    order_of,
    parse_literal,
    qual_compare,
    ratio_standard_part,
    sign,
    standard_part,
)

e = EPSILON


def h(text: str) -> Hyperreal:
    return parse_literal(text)


def test_normalize_merges_and_drops_zeros():
    assert normalize([(0, 1), (0, 1)]).terms == ((0, Fraction(2)),)
    assert normalize([(1, 1), (0, 0)]).terms == ((1, Fraction(1)),)
    assert normalize([]) == ZERO
    assert normalize([(2, 1), (-1, 3), (2, -1)]).terms == ((-1, Fraction(3)),)


def test_add_negate_mul():
    assert add(1 + e, 1 - e) == 2
    assert add(e, e * e).terms == ((1, 1), (2, 1))
    assert add(h("3e2 - 1"), ZERO) == h("3e2 - 1")
    assert negate(e * e) == h("-1e2")
    assert negate(ZERO) == ZERO
    assert negate(h("-1 + 1e1")) == h("1 - 1e1")
    assert mul(e, e) == epsilon_power(2)
    assert mul(1 + e, 1 - e) == h("1 - 1e2")
    assert mul(h("2 + 1e-1"), ONE) == h("2 + 1e-1")


def test_operators_coerce_rationals():
    assert e + Fraction(1, 2) == h("1/2 + 1e1")
    assert 3 - e == h("3 - 1e1")
    assert 2 * e == h("2e1")
    assert h("4e3 + 2e1") / h("2e1") == h("1 + 2e2")
    assert Hyperreal.monomial(0, 5) == ZERO


def test_division_only_by_monomials():
    with pytest.raises(ZeroDivisor):
        divide_by_monomial(ONE, ZERO)
    with pytest.raises(EqumError) as err:
        ONE / (1 + e)
    assert err.value.translation_key == "non_monomial_divisor"


def test_floats_are_rejected():
    with pytest.raises(TypeError):
        Hyperreal([(0, 0.5)])
    with pytest.raises(TypeError):
        Hyperreal.monomial(True)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ("1e-1", "5", Ordering.GT),
        ("1e1", "1e2", Ordering.GT),
        ("1 + 1e1", "1", Ordering.GT),
        ("1e2", "1e1", Ordering.LT),
        ("2 - 1e3", "2 - 1e3", Ordering.EQ),
        ("-1", "1e5", Ordering.LT),
    ],
)
def test_compare_total(x, y, expected):
    assert compare_total(h(x), h(y)) is expected


def test_total_order_operators():
    assert e < 1 < 1 + e
    assert h("1e-1") > 10 ** 9
    assert sorted([h("1"), h("1e1"), h("1e-1"), ZERO]) == [ZERO, h("1e1"), h("1"), h("1e-1")]


def test_order_of_and_leading_coefficient():
    assert order_of(h("1e2 + 1e1")) == 1
    assert order_of(h("3")) == 0
    assert order_of(h("1e-1 + 7")) == -1
    assert leading_coefficient(h("-2/3e4 + 1e5")) == Fraction(-2, 3)
    assert sign(h("-2/3e4 + 1e5")) == -1
    assert sign(ZERO) == 0
    with pytest.raises(ZeroArgument):
        order_of(ZERO)


def test_standard_part():
    assert standard_part(1 + e) == 1
    assert standard_part(e) == 0
    assert standard_part(ZERO) == 0
    with pytest.raises(InfiniteArgument):
        standard_part(h("1e-1"))


def test_classify_ratio():
    assert classify_ratio(e, ONE).kind is RatioKind.INFINITESIMAL
    assert classify_ratio(ONE, e).is_infinite
    assert classify_ratio(2 * e, e) == RatioClass(RatioKind.APPRECIABLE, Fraction(2))
    assert classify_ratio(ZERO, e).is_infinitesimal
    assert classify_ratio(h("-3 + 1e1"), h("6 - 1e2")).standard_part == Fraction(-1, 2)
    with pytest.raises(ZeroDivisor):
        classify_ratio(ONE, ZERO)


def test_ratio_class_invariants():
    with pytest.raises(ValueError):
        RatioClass(RatioKind.APPRECIABLE)
    with pytest.raises(ValueError):
        RatioClass(RatioKind.APPRECIABLE, Fraction(0))
    with pytest.raises(ValueError):
        RatioClass(RatioKind.INFINITE, Fraction(1))


def test_ratio_standard_part():
    assert ratio_standard_part(h("1/3e1 + 1e2"), h("1e1")) == Fraction(1, 3)
    assert ratio_standard_part(h("1e3"), h("1e1")) == 0
    with pytest.raises(InfiniteArgument):
        ratio_standard_part(ONE, e)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ("1 + 1e1", "1", QualOrdering.QEQ),
        ("1e2 + 1e1", "1e2", QualOrdering.QGT),
        ("3", "0", QualOrdering.QGT),
        ("1e1", "-1", QualOrdering.QGT),
        ("0", "0", QualOrdering.QEQ),
        ("0", "-1e4", QualOrdering.QGT),
        ("2e1", "1e1", QualOrdering.QGT),
        ("-1", "-1e1", QualOrdering.QLT),
        ("-1 - 1e1", "-1", QualOrdering.QEQ),
    ],
)
def test_qual_compare(x, y, expected):
    assert qual_compare(h(x), h(y)) is expected


def test_qual_compare_is_antisymmetric():
    flipped = {
        QualOrdering.QGT: QualOrdering.QLT,
        QualOrdering.QLT: QualOrdering.QGT,
        QualOrdering.QEQ: QualOrdering.QEQ,
    }
    for x, y in [("1", "1e1"), ("1 + 1e1", "1"), ("-1", "1e1"), ("-2", "-1")]:
        assert qual_compare(h(y), h(x)) is flipped[qual_compare(h(x), h(y))]


@pytest.mark.parametrize(
    "text, terms",
    [
        ("2e1 + 3", ((0, Fraction(3)), (1, Fraction(2)))),
        ("-1/2e-1", ((-1, Fraction(-1, 2)),)),
        ("0", ()),
        (" 1 -  1e1+2e1 ", ((0, Fraction(1)), (1, Fraction(1)))),
        ("3e+2", ((2, Fraction(3)),)),
    ],
)
def test_parse_literal(text, terms):
    assert parse_literal(text).terms == terms


@pytest.mark.parametrize(
    "value, literal",
    [
        ("0", "0"),
        ("2e1 + 3", "3 + 2e1"),
        ("-1/2e-1", "-1/2e-1"),
        ("1/2 - 3e2 + 1e1", "1/2 + 1e1 - 3e2"),
    ],
)
def test_format_literal_is_canonical(value, literal):
    assert format_literal(h(value)) == literal
    assert parse_literal(literal) == h(value)


@pytest.mark.parametrize("text, position", [("", 0), ("1/0", 3), ("2e", 2), ("1 + ", 4), ("1 x", 2)])
def test_parse_errors_carry_position(text, position):
    with pytest.raises(ParseError) as err:
        parse_literal(text)
    assert err.value.position == position
    assert err.value.exit_code == 2


def test_hash_agrees_with_equality():
    assert hash(h("2")) == hash(Fraction(2)) == hash(2)
    assert len({h("1 + 1e1"), 1 + e, h("1")}) == 2
