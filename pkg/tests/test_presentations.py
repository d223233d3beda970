import pytest

from _vectorrep import vector_representation, vanishes, word_vanishing_difference
from qpbw.freealg import Element, beta, gamma
from qpbw.presentations import (
    DimensionMismatch,
    build_presentation,
    build_r_matrix,
    centrality_checks,
    cross_check_short_presentation,
    expand_rtt,
    generator_matrix,
    inversion_count,
    qmatrix_relations,
    quantum_determinant,
    triangular_system,
)
from qpbw.rewrite import TRIANGULAR_ORDER, orient_relations
from qpbw.scalars import LAURENT_ONE, Laurent, Q_MINUS_QINV
from qpbw.textio import parse_expression


def test_r_matrix_entries():
    r1 = build_r_matrix(1)
    assert r1.dimension == 1 and r1[0, 0] == Laurent.monomial(1)

    r = build_r_matrix(2)
    q = Laurent.monomial(1)
    assert [r[i, i] for i in range(4)] == [q, LAURENT_ONE, LAURENT_ONE, q]
    assert r[1, 2] == Q_MINUS_QINV  # row (1,2), column (2,1)
    assert r[2, 1] == Laurent()

    rop = build_r_matrix(2, "op")
    assert rop[2, 1] == Q_MINUS_QINV
    assert rop[1, 2] == Laurent()

    with pytest.raises(ValueError):
        build_r_matrix(2, "wrong")


def test_qmatrix_relation_counts():
    assert len(qmatrix_relations(1, "full")) == 0
    assert len(qmatrix_relations(2, "full")) == 6
    assert len(qmatrix_relations(2, "upper")) == 3
    assert len(qmatrix_relations(2, "lower")) == 3


def test_qmatrix_relations_full_n2_content():
    rels = qmatrix_relations(2, "full")
    expected = [
        "b[1,1]*b[1,2] - q*b[1,2]*b[1,1]",
        "g[2,1]*b[2,2] - q*b[2,2]*g[2,1]",
        "b[1,1]*g[2,1] - q*g[2,1]*b[1,1]",
        "b[1,2]*b[2,2] - q*b[2,2]*b[1,2]",
        "b[1,2]*g[2,1] - g[2,1]*b[1,2]",
        "b[1,1]*b[2,2] - b[2,2]*b[1,1] - (q - q^-1)*b[1,2]*g[2,1]",
    ]
    assert [str(r) for r in rels] == [str(parse_expression(t, 2)) for t in expected]


def test_expand_rtt_shape_and_equivalence():
    R = build_r_matrix(2)
    B = generator_matrix(2, "upper")
    rels = expand_rtt(R, B, B)
    assert len(rels) == 16  # many trivially zero
    nonzero = [r for r in rels if r]
    family = triangular_system(2, "upper")
    assert all(not family.normal_form(r) for r in nonzero)
    # and conversely
    expanded = orient_relations(nonzero, TRIANGULAR_ORDER, n=2, integer_form=True)
    assert all(not expanded.normal_form(r) for r in qmatrix_relations(2, "upper"))

    with pytest.raises(DimensionMismatch):
        expand_rtt(build_r_matrix(3), B, B)


def test_mixed_braid_expansion_reduces_to_zero():
    pres = build_presentation(2, "gl")
    rop = build_r_matrix(2, "op")
    rels = expand_rtt(
        rop, generator_matrix(2, "lower_conj"), generator_matrix(2, "upper_conj"), "12"
    )
    nonzero = [r for r in rels if r]
    assert nonzero  # the compact identity has content
    assert all(not pres.normal_form(r) for r in nonzero)


def test_quantum_determinant():
    assert quantum_determinant(1, "full") == Element.from_generator(beta(1, 1))
    det = quantum_determinant(2, "full")
    assert det == parse_expression("b[1,1]*b[2,2] - q*b[1,2]*g[2,1]", 2)
    assert quantum_determinant(2, "upper") == parse_expression("b[1,1]*b[2,2]", 2)
    assert quantum_determinant(2, "lower") == parse_expression("g[1,1]*g[2,2]", 2)
    assert inversion_count((3, 1, 2)) == 2


def test_build_presentation_examples():
    p2 = build_presentation(2, "gl")
    assert len(p2.generators) == 6
    nf = p2.normal_form(parse_expression("b[1,2]*g[2,1]", 2))
    assert nf == parse_expression(
        "g[2,1]*b[1,2] + (q - q^-1)*g[1,1]*b[2,2] - (q - q^-1)*b[1,1]*g[2,2]", 2
    )

    s2 = build_presentation(2, "sl")
    assert s2.normal_form(parse_expression("b[2,2]", 2)) == parse_expression("g[1,1]", 2)

    p1 = build_presentation(1, "gl")
    assert p1.normal_form(parse_expression("g[1,1]", 1)) == Element.from_generator(gamma(1, 1))

    with pytest.raises(ValueError):
        build_presentation(2, "so")


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("flavor", ["gl", "sl"])
def test_systems_locally_confluent(n, flavor):
    assert build_presentation(n, flavor).ambiguities == []


@pytest.mark.parametrize("n", [2, 3])
def test_qmatrix_system_confluent(n):
    assert build_presentation(n, "qmatrix").ambiguities == []


@pytest.mark.parametrize("n", [2, 3, 4])
def test_every_rule_vanishes_in_vector_representation(n):
    rep = vector_representation(n)
    pres = build_presentation(n, "gl")
    for lhs, rhs in pres.system.rules.items():
        assert word_vanishing_difference(lhs, rhs, n, rep), lhs


@pytest.mark.parametrize("n", [2, 3])
def test_relations_vanish_in_vector_representation(n):
    rep = vector_representation(n)
    for rel in build_presentation(n, "gl").relations:
        assert vanishes(rel, n, rep)


def test_inverted_recursions_recover_entries():
    """Solving the middle-index bracket relations for the long entry must
    recover it exactly; the lower-family solve carries the inverse diagonal
    letter (b[k,k]), mirroring the upper one (g[k,k])."""
    from qpbw.scalars import Rat

    qq_inv = Rat.of(Q_MINUS_QINV).inv()
    for n in (3, 4):
        pres = build_presentation(n, "gl")
        nf = pres.normal_form
        for i in range(1, n + 1):
            for k in range(i + 1, n + 1):
                for j in range(k + 1, n + 1):
                    rec = (
                        Element.from_word((beta(i, k), beta(k, j)))
                        - Element.from_word((beta(k, j), beta(i, k)))
                    ) * Element.from_generator(gamma(k, k))
                    assert nf(rec.scale(qq_inv)) == nf(Element.from_generator(beta(i, j)))
                    rec = (
                        Element.from_word((gamma(k, i), gamma(j, k)))
                        - Element.from_word((gamma(j, k), gamma(k, i)))
                    ) * Element.from_generator(beta(k, k))
                    assert nf(rec.scale(qq_inv)) == nf(Element.from_generator(gamma(j, i)))


@pytest.mark.parametrize("n", [2, 3])
def test_short_presentation_cross_checks(n):
    records = cross_check_short_presentation(n)
    assert records and all(r.ok for r in records)


@pytest.mark.parametrize("n", [2, 3])
def test_centrality(n):
    records = centrality_checks(n)
    assert records and all(r.ok for r in records)


def test_scaled_variant():
    from qpbw.presentations import scaled_variant
    from qpbw.scalars import rat_monomial

    B = generator_matrix(2, "upper")
    plus = scaled_variant(B, +1)
    assert plus[1, 1] == Element.from_generator(beta(1, 1)).scale(rat_monomial(1))
    assert plus[1, 2] == B[1, 2]
    minus = scaled_variant(B, -1)
    assert minus[2, 2] == Element.from_generator(beta(2, 2)).scale(rat_monomial(-1))


def test_presentation_document():
    doc = build_presentation(2, "sl").to_document()
    assert doc["schema"] == 1
    assert doc["flavor"] == "sl"
    assert doc["diagonal_quotient"] is True
    assert len(doc["generators"]) == 6
    assert doc["unresolved_ambiguities"] == []
    assert all("lhs" in r and "rhs" in r for r in doc["rules"])
