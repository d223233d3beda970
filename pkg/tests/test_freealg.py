import pytest

from qpbw.freealg import (
    DegreeMismatch,
    Element,
    TensorElement,
    TriangleIndexError,
    beta,
    gamma,
    is_laurent_element,
)
from qpbw.scalars import Q_MINUS_QINV, RAT_ONE, Rat


def test_generator_triangles():
    assert beta(1, 2).kind == "b"
    assert gamma(2, 1).row == 2
    with pytest.raises(TriangleIndexError):
        beta(2, 1)
    with pytest.raises(TriangleIndexError):
        gamma(1, 2)
    with pytest.raises(TriangleIndexError):
        beta(1, 3, n=2)


def test_free_product():
    x = Element.from_generator(beta(1, 1))
    y = Element.from_generator(beta(1, 2))
    assert (x * y).terms == {(beta(1, 1), beta(1, 2)): RAT_ONE}
    assert x * Element.unit() == x
    assert x + (-x) == Element.zero()
    two, three = Element.unit(Rat.of(2)), Rat.of(3)
    assert (two * x).scale(three).terms == {(beta(1, 1),): Rat.of(6)}


def test_product_is_associative_and_degree_additive():
    a = Element.from_generator(beta(1, 2)) + Element.unit(Rat.of(Q_MINUS_QINV))
    b = Element.from_generator(gamma(2, 1)) - Element.unit()
    c = Element.from_generator(beta(2, 2))
    assert (a * b) * c == a * (b * c)
    prod = Element.from_word((beta(1, 2),)) * Element.from_word((gamma(2, 1), beta(2, 2)))
    assert all(len(w) == 3 for w in prod.terms)


def test_tensor_ops():
    t1 = TensorElement.pure(((beta(1, 1),), (beta(1, 2),)))
    t2 = TensorElement.pure(((beta(1, 2),), (beta(2, 2),)))
    prod = t1 * t2
    assert prod.terms == {
        ((beta(1, 1), beta(1, 2)), (beta(1, 2), beta(2, 2))): RAT_ONE
    }
    assert TensorElement.unit(2) * t1 == t1
    with pytest.raises(DegreeMismatch):
        t1 * TensorElement.pure(((beta(1, 1),), (beta(1, 1),), (beta(1, 1),)))
    with pytest.raises(DegreeMismatch):
        t1 + TensorElement.unit(3)


def test_grouplike_square():
    # the coproduct of a diagonal letter squares to the diagonal square
    from qpbw.hopf import coproduct, hopf_context_for

    ctx = hopf_context_for(2, "gl")
    d = coproduct(Element.from_generator(beta(1, 1)), ctx)
    sq = d * d
    assert sq == coproduct(Element.from_word((beta(1, 1), beta(1, 1))), ctx)
    assert sq.terms == {
        ((beta(1, 1), beta(1, 1)), (beta(1, 1), beta(1, 1))): RAT_ONE
    }


def test_laurent_membership():
    ok = Element.from_generator(beta(1, 2)).scale(Rat.of(Q_MINUS_QINV))
    assert is_laurent_element(ok)
    bad = Element.from_generator(beta(1, 2)).scale(Rat.of(Q_MINUS_QINV).inv())
    assert not is_laurent_element(bad)
