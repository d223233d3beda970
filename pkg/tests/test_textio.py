import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qpbw.freealg import Element, TriangleIndexError, beta, gamma
from qpbw.presentations import build_presentation
from qpbw.scalars import Laurent, Rat
from qpbw.textio import ExpressionSyntaxError, format_element, parse_expression


def test_grammar_examples():
    e = parse_expression("b[1,2]*g[2,1] - g[2,1]*b[1,2]", 2)
    assert e.terms[(beta(1, 2), gamma(2, 1))] == Rat.of(1)
    assert e.terms[(gamma(2, 1), beta(1, 2))] == Rat.of(-1)

    e = parse_expression("q^-1*(b[1,1] + 1)", 2)
    assert e.terms[(beta(1, 1),)] == Rat.of(Laurent.monomial(-1))
    assert e.terms[()] == Rat.of(Laurent.monomial(-1))

    from fractions import Fraction

    e = parse_expression("3/2*b[1,1]^2", 2)
    assert e.terms == {(beta(1, 1), beta(1, 1)): Rat.of(Fraction(3, 2))}


def test_triangle_validation():
    with pytest.raises(IndexError):
        parse_expression("b[2,1]", 2)
    with pytest.raises(TriangleIndexError):
        parse_expression("g[1,2]", 2)
    with pytest.raises(TriangleIndexError):
        parse_expression("b[1,3]", 2)


def test_syntax_errors_carry_position():
    with pytest.raises(ExpressionSyntaxError) as err:
        parse_expression("b[1,2]*)(", 2)
    assert err.value.position == 7
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("b[1,2]*", 2)
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("(b[1,1]", 2)
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("q^(1)", 2)


def test_inverse_powers():
    e = parse_expression("b[1,1]^-2", 2)
    assert list(e.terms) == [(gamma(1, 1), gamma(1, 1))]
    e = parse_expression("(b[1,1]*b[2,2])^-1", 2)
    assert list(e.terms) == [(gamma(2, 2), gamma(1, 1))]
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("b[1,2]^-1", 2)
    with pytest.raises(ExpressionSyntaxError):
        parse_expression("(b[1,1] + 1)^-1", 2)


def test_zero_and_unit():
    assert parse_expression("0", 3) == Element.zero()
    assert format_element(Element.zero()) == "0"
    assert parse_expression("1", 3) == Element.unit()
    assert format_element(Element.unit()) == "1"


def _random_element(rng: random.Random, n: int) -> Element:
    gens = [beta(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]
    gens += [gamma(j, i) for i in range(1, n + 1) for j in range(i, n + 1)]
    total = Element.zero()
    for _ in range(rng.randint(1, 4)):
        word = tuple(rng.choice(gens) for _ in range(rng.randint(0, 3)))
        num = Laurent({rng.randint(-3, 3): rng.randint(-5, 5) for _ in range(rng.randint(1, 2))})
        den = Laurent({0: 1}) if rng.random() < 0.7 else Laurent({2: 1, 0: -1})
        if not num:
            continue
        total = total + Element.from_word(word, Rat(num, den))
    return total


def test_roundtrip_seeded():
    rng = random.Random(7)
    for _ in range(300):
        e = _random_element(rng, 3)
        assert parse_expression(format_element(e), 3) == e


coeffs = st.dictionaries(
    st.integers(-3, 3), st.fractions(min_value=-9, max_value=9, max_denominator=4), min_size=1, max_size=3
).map(Laurent).filter(bool)


@given(st.lists(st.tuples(st.integers(0, 5), coeffs), min_size=0, max_size=4))
@settings(max_examples=80, deadline=None)
def test_roundtrip_property(raw):
    gens = [beta(1, 1), beta(1, 2), beta(2, 2), gamma(1, 1), gamma(2, 1), gamma(2, 2)]
    e = Element.zero()
    for word_len, c in raw:
        word = tuple(gens[(word_len * 7 + k) % len(gens)] for k in range(word_len % 4))
        e = e + Element.from_word(word, Rat.of(c))
    assert parse_expression(format_element(e), 2) == e


def test_format_descending_monomial_order():
    pres = build_presentation(2, "gl")
    e = parse_expression("g[2,1] + b[1,2] + b[1,1] + 1", 2)
    text = format_element(e)
    assert text == "b[1,2] + b[1,1] + g[2,1] + 1"
    assert pres.normal_form(e)  # sanity: parses into the presentation
