import pytest

from qpbw.freealg import Element, beta, gamma
from qpbw.presentations import build_presentation
from qpbw.scalars import Q_MINUS_QINV, Rat, rat_monomial
from qpbw.structmaps import (
    ValidationFailed,
    build_algebra_antimap,
    check_antimap_properties,
    check_l_operator_identities,
    check_rootvector_identities,
    derived_generators,
    export_tables,
    integer_form_checks,
    l_operator_matrices,
    projection_map,
    quantum_root_vectors,
    toral_inversion_antimap,
    verify_jimbo_presentation,
)
from qpbw.textio import parse_expression


def test_derived_generator_definitions():
    t = derived_generators(2)
    pres = build_presentation(2, "gl")
    qq_inv = Rat.of(Q_MINUS_QINV).inv()
    e1 = parse_expression("b[1,2]*g[2,2]", 2).scale(-qq_inv)
    assert t["E1"].definition == pres.normal_form(e1)
    f1 = parse_expression("b[2,2]*g[2,1]", 2).scale(qq_inv)
    assert t["F1"].definition == pres.normal_form(f1)
    assert t["G1"].definition == Element.from_generator(beta(1, 1))
    assert t["G1inv"].definition == Element.from_generator(gamma(1, 1))
    assert t["K1"].definition == pres.normal_form(parse_expression("b[1,1]*g[2,2]", 2))
    assert t["L2"].definition == pres.normal_form(parse_expression("b[1,1]*b[2,2]", 2))


@pytest.mark.parametrize("n", [2, 3])
def test_jimbo_presentation(n):
    records = verify_jimbo_presentation(n)
    bad = [r for r in records if not r.ok]
    assert not bad, [(r.name, r.witness) for r in bad]
    if n == 3:
        assert any("braid" in r.name for r in records)


def test_root_vector_base_and_recursion():
    rv = quantum_root_vectors(3)
    t = derived_generators(3)
    for sign in (1, -1):
        assert rv[("E", sign, 1, 2)] == t["E1"].definition
        assert rv[("F", sign, 2, 3)] == t["F2"].definition
    # minus-family long vector as an explicit bracket
    pres = build_presentation(3, "gl")
    e1, e2 = t["E1"].definition, t["E2"].definition
    explicit = pres.normal_form(e1 * e2 - (e2 * e1).scale(rat_monomial(-1)))
    assert rv[("E", -1, 1, 3)] == explicit
    # dotted rescaling
    assert rv[("Ed", -1, 1, 3)] == pres.normal_form(explicit.scale(Rat.of(Q_MINUS_QINV)))


def test_splitting_independence_at_rank_four():
    # at rank 4 the middle index of a length-3 interval can be chosen two ways
    rv = quantum_root_vectors(4)
    pres = build_presentation(4, "gl")
    for sign in (1, -1):
        a = rat_monomial(sign)
        left = pres.normal_form(
            rv[("E", sign, 1, 2)] * rv[("E", sign, 2, 4)]
            - (rv[("E", sign, 2, 4)] * rv[("E", sign, 1, 2)]).scale(a)
        )
        right = pres.normal_form(
            rv[("E", sign, 1, 3)] * rv[("E", sign, 3, 4)]
            - (rv[("E", sign, 3, 4)] * rv[("E", sign, 1, 3)]).scale(a)
        )
        assert left == right == rv[("E", sign, 1, 4)]
        a = rat_monomial(-sign)
        left = pres.normal_form(
            rv[("F", sign, 1, 4)]
            - (
                rv[("F", sign, 2, 4)] * rv[("F", sign, 1, 2)]
                - (rv[("F", sign, 1, 2)] * rv[("F", sign, 2, 4)]).scale(a)
            )
        )
        right = pres.normal_form(
            rv[("F", sign, 1, 4)]
            - (
                rv[("F", sign, 3, 4)] * rv[("F", sign, 1, 3)]
                - (rv[("F", sign, 1, 3)] * rv[("F", sign, 3, 4)]).scale(a)
            )
        )
        assert not left and not right


@pytest.mark.parametrize("n", [2, 3])
def test_rootvector_identities(n):
    records = check_rootvector_identities(n)
    assert records and all(r.ok for r in records)


def test_antimap_validation_and_involution():
    psi = toral_inversion_antimap(2)
    assert not psi.failures
    e = Element.from_generator(beta(1, 2))
    assert psi.apply(psi.apply(e)) == psi.target.normal_form(e)

    records = check_antimap_properties(3)
    assert all(r.ok for r in records)


def test_antimap_exchange_example():
    # the plus corner vector maps to -q times the minus one at rank 3
    pres = build_presentation(3, "gl")
    psi = toral_inversion_antimap(3)
    rv = quantum_root_vectors(3)
    lhs = psi.apply(rv[("E", 1, 1, 3)])
    rhs = pres.normal_form(rv[("E", -1, 1, 3)].scale(rat_monomial(1, -1)))
    assert lhs == rhs


def test_invalid_images_rejected():
    pres = build_presentation(2, "gl")
    t = derived_generators(2)
    images = {
        "E1": t["E1"].definition.scale(rat_monomial(1)),  # spoiled by a q factor
        "F1": t["F1"].definition,
        "G1": t["G1inv"].definition,
        "G1inv": t["G1"].definition,
        "G2": t["G2inv"].definition,
        "G2inv": t["G2"].definition,
    }
    with pytest.raises(ValidationFailed):
        build_algebra_antimap(images, pres)


def test_l_operator_matrices_shape():
    lp, lm = l_operator_matrices(2)
    t = derived_generators(2)
    assert lp[1, 1] == t["G1"].definition
    assert lm[1, 1] == t["G1inv"].definition
    assert not lp[2, 1]
    assert not lm[1, 2]
    pres = build_presentation(2, "gl")
    assert pres.normal_form(lp[1, 1] * lm[1, 1]) == Element.unit()


@pytest.mark.parametrize("n", [2, 3])
def test_l_operator_identities(n):
    records = check_l_operator_identities(n)
    bad = [r for r in records if not r.ok]
    assert not bad, [(r.name, r.witness) for r in bad]


@pytest.mark.parametrize("n", [2, 3])
def test_integer_form_checks(n):
    records = integer_form_checks(n)
    assert all(r.ok for r in records)


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("sign", [1, -1])
def test_projections_validate(sign, n):
    pm = projection_map(n, sign)
    assert not pm.failures
    # a full-matrix generator lands on its triangular image or on zero
    src = pm.source.generators
    imgs = [pm.apply(Element.from_generator(g)) for g in src]
    assert any(not e for e in imgs)  # the opposite triangle dies


def test_export_tables():
    tables = export_tables(2, "derived")
    assert tables["schema"] == 1 and "E1" in tables["entries"]
    tables = export_tables(3, "rootvectors")
    assert "E-[1,3]" in tables["entries"] and "F+[3,1]" in tables["entries"]
    tables = export_tables(2, "loperators")
    assert "L+[1,2]" in tables["entries"] and "L-[2,1]" in tables["entries"]
    with pytest.raises(ValueError):
        export_tables(2, "nothing")
