from fractions import Fraction

import pytest

from qpbw.freealg import Element, TensorElement, beta, gamma
from qpbw.presentations import build_presentation, quantum_determinant
from qpbw.scalars import Cyclo, Laurent
from qpbw.specialize import (
    CommutativeElement,
    NotInIntegerForm,
    UnsupportedLevel,
    classical_limit,
    comm_generator,
    frobenius_check,
    poisson_bracket,
    specialize_root_of_unity,
    verify_poisson_tables,
)
from qpbw.structmaps import derived_generators
from qpbw.textio import parse_expression


@pytest.fixture(scope="module")
def gl2():
    return build_presentation(2, "gl")


def _gen(g, pres):
    return comm_generator(g, pres.n, pres.flavor)


def test_classical_limit_examples(gl2):
    e = parse_expression("b[1,1]*b[1,2] - b[1,2]*b[1,1]", 2)
    assert not classical_limit(e, gl2)
    det = classical_limit(quantum_determinant(2, "upper"), gl2)
    assert det == _gen(beta(1, 1), gl2) * _gen(beta(2, 2), gl2)
    with pytest.raises(NotInIntegerForm):
        classical_limit(derived_generators(2)["E1"].definition, gl2)


def test_classical_limit_is_multiplicative(gl2):
    x = parse_expression("b[1,2]*g[2,1] + q*b[1,1]", 2)
    y = parse_expression("g[2,1] - b[2,2]", 2)
    assert classical_limit(gl2.normal_form(x * y), gl2) == classical_limit(
        x, gl2
    ) * classical_limit(y, gl2)


def test_bracket_examples(gl2):
    b = lambda i, j: Element.from_generator(beta(i, j))
    g = lambda i, j: Element.from_generator(gamma(i, j))
    assert poisson_bracket(b(1, 1), b(1, 2), gl2) == _gen(beta(1, 1), gl2) * _gen(
        beta(1, 2), gl2
    )
    expected = (
        _gen(gamma(1, 1), gl2) * _gen(beta(2, 2), gl2)
        - _gen(beta(1, 1), gl2) * _gen(gamma(2, 2), gl2)
    ).scale(Fraction(2))
    assert poisson_bracket(b(1, 2), g(2, 1), gl2) == expected
    assert poisson_bracket(b(1, 1), g(2, 1), gl2) == -(
        _gen(beta(1, 1), gl2) * _gen(gamma(2, 1), gl2)
    )


def test_commutative_element_inverse_cancellation(gl2):
    prod = _gen(beta(1, 1), gl2) * _gen(gamma(1, 1), gl2)
    assert prod == CommutativeElement(2, "gl", {(): Fraction(1)})


@pytest.mark.parametrize(
    "n,flavor", [(2, "gl"), (3, "gl"), (2, "sl")]
)
def test_poisson_tables(n, flavor):
    records = verify_poisson_tables(n, flavor, random_triples=15)
    bad = [r for r in records if not r.ok]
    assert not bad, [(r.name, r.witness) for r in bad]


def test_specialized_rule_example(gl2):
    spec = specialize_root_of_unity(gl2, 3)
    rule = spec.system.rules[(beta(1, 2), beta(1, 1))]
    # the inverse root reduces to -q - 1 modulo the level-3 modulus
    assert rule == Element.from_word(
        (beta(1, 1), beta(1, 2)), Cyclo(3, [Fraction(-1), Fraction(-1)])
    )
    eps_diff = Cyclo.from_laurent(Laurent({1: 1, -1: -1}), 3)
    assert eps_diff == Cyclo(3, [Fraction(1), Fraction(2)])
    assert eps_diff  # nonzero at level 3


def test_level_validation(gl2):
    with pytest.raises(UnsupportedLevel):
        specialize_root_of_unity(gl2, 1)
    with pytest.raises(UnsupportedLevel):
        specialize_root_of_unity(gl2, 4)
    assert specialize_root_of_unity(gl2, 4, allow_even=True).level == 4


@pytest.mark.parametrize("n,ell,flavor", [(2, 3, "gl"), (2, 3, "sl")])
def test_frobenius_records(n, ell, flavor):
    records = frobenius_check(n, ell, flavor)
    bad = [r for r in records if not r.ok]
    assert not bad, [(r.name, r.witness) for r in bad]
    if flavor == "sl":
        assert any("gcd" in r.name for r in records)


def test_frobenius_coproduct_example(gl2):
    # the cube of the coproduct row collapses to cubed legs at level 3
    spec = specialize_root_of_unity(gl2, 3)
    one = spec.one
    delta = TensorElement(
        2,
        {
            ((beta(1, 1),), (beta(1, 2),)): one,
            ((beta(1, 2),), (beta(2, 2),)): one,
        },
    )
    cube = TensorElement.unit(2, one)
    for _ in range(3):
        cube = cube * delta
    cube = cube.map_legs(spec.system.normal_form_word)
    expected = TensorElement(
        2,
        {
            ((beta(1, 1),) * 3, (beta(1, 2),) * 3): one,
            ((beta(1, 2),) * 3, (beta(2, 2),) * 3): one,
        },
    )
    assert cube == expected


def test_frobenius_commutation_example(gl2):
    spec = specialize_root_of_unity(gl2, 3)
    x = Element.from_word((beta(1, 2),) * 3, spec.one)
    y = Element.from_word((gamma(2, 1),) * 3, spec.one)
    assert not spec.normal_form(x * y - y * x)
