"""Coproduct, counit and antipode on the presented algebras, with mechanical
verification of the Hopf axioms.

The coproduct is the matrix one on each triangular family, the counit is the
Kronecker delta on entries, and the antipode table is obtained by solving the
triangular inversion identities by back-substitution; nothing is assumed
beyond the generator tables.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .freealg import Element, Generator, TensorElement, beta, gamma
from .presentations import PresentationSpec, build_presentation
from .reports import CheckRecord, zero_check
from .scalars import RAT_ONE, RAT_ZERO, Rat


@dataclass
class HopfContext:
    presentation: PresentationSpec
    delta_table: dict[Generator, TensorElement]
    counit_table: dict[Generator, Rat]
    _antipode_table: dict[Generator, Element] = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.presentation.n

    def antipode_of(self, g: Generator) -> Element:
        if not self._antipode_table:
            self._antipode_table.update(_solve_antipode(self.presentation))
        return self._antipode_table[g]


def _delta_generator(g: Generator) -> TensorElement:
    if g.kind == "b":
        i, j = g.row, g.col
        terms = {((beta(i, k),), (beta(k, j),)): RAT_ONE for k in range(i, j + 1)}
    else:
        j, i = g.row, g.col
        terms = {((gamma(j, k),), (gamma(k, i),)): RAT_ONE for k in range(i, j + 1)}
    return TensorElement(2, terms)


def hopf_context(presentation: PresentationSpec) -> HopfContext:
    if presentation.flavor not in ("gl", "sl"):
        raise ValueError("Hopf structure lives on the gl/sl presentations")
    delta = {g: _delta_generator(g) for g in presentation.generators}
    eps = {
        g: RAT_ONE if g.diagonal else RAT_ZERO for g in presentation.generators
    }
    return HopfContext(presentation, delta, eps)


def coproduct(e: Element, ctx: HopfContext) -> TensorElement:
    """Multiplicative extension of the generator table; legs are kept in
    normal form so tensor equality is structural."""
    total = TensorElement(2)
    for word, c in e.terms.items():
        part = TensorElement.unit(2, c)
        for g in word:
            part = part * ctx.delta_table[g]
        total = total + part
    return total.map_legs(ctx.presentation.system.normal_form_word)


def counit(e: Element, ctx: HopfContext) -> Rat:
    total = RAT_ZERO
    for word, c in e.terms.items():
        if all(g.diagonal for g in word):
            total = total + c
    return total


def _solve_antipode(presentation: PresentationSpec) -> dict[Generator, Element]:
    """Back-substitute the triangular identities sum_k S(x_ik) x_kj = d_ij."""
    n = presentation.n
    nf = presentation.normal_form
    table: dict[Generator, Element] = {}
    for k in range(1, n + 1):
        table[beta(k, k)] = Element.from_generator(gamma(k, k))
        table[gamma(k, k)] = Element.from_generator(beta(k, k))
    for span in range(1, n):
        for i in range(1, n + 1 - span):
            j = i + span
            acc = Element.zero()
            for k in range(i, j):
                acc = acc + table[beta(i, k)] * Element.from_generator(beta(k, j))
            table[beta(i, j)] = nf((-acc) * Element.from_generator(gamma(j, j)))
            acc = Element.zero()
            for k in range(i + 1, j + 1):
                acc = acc + table[gamma(j, k)] * Element.from_generator(gamma(k, i))
            table[gamma(j, i)] = nf((-acc) * Element.from_generator(beta(i, i)))
    return table


def antipode(e: Element, ctx: HopfContext) -> Element:
    """Antimultiplicative extension of the antipode table."""
    total = Element.zero()
    for word, c in e.terms.items():
        part = Element.unit(c)
        for g in reversed(word):
            part = part * ctx.antipode_of(g)
        total = total + part
    return ctx.presentation.normal_form(total)


def tensor_coproduct_leg(t: TensorElement, position: int, ctx: HopfContext) -> TensorElement:
    """Apply the coproduct to one leg, raising the tensor degree by one."""
    out = TensorElement(t.degree + 1)
    for key, c in t.terms.items():
        inner = coproduct(Element.from_word(key[position]), ctx)
        for (u, v), c2 in inner.terms.items():
            new_key = key[:position] + (u, v) + key[position + 1 :]
            out = out + TensorElement.pure(new_key, c * c2)
    return out.map_legs(ctx.presentation.system.normal_form_word)


def counit_contract(t: TensorElement, position: int, ctx: HopfContext) -> Element:
    """Contract one tensor leg with the counit."""
    total = Element.zero()
    for key, c in t.terms.items():
        eps = counit(Element.from_word(key[position]), ctx)
        if eps:
            rest = key[:position] + key[position + 1 :]
            word = rest[0] if len(rest) == 1 else tuple(x for leg in rest for x in leg)
            total = total + Element.from_word(word, c * eps)
    return ctx.presentation.normal_form(total)


def antipode_contract(t: TensorElement, position: int, ctx: HopfContext) -> Element:
    """Multiply the legs back together after applying the antipode to one."""
    total = Element.zero()
    for key, c in t.terms.items():
        legs = [Element.from_word(w) for w in key]
        legs[position] = antipode(legs[position], ctx)
        part = Element.unit(c)
        for leg in legs:
            part = part * leg
        total = total + part
    return ctx.presentation.normal_form(total)


def diagonal_product(n: int) -> Element:
    word = tuple(beta(k, k) for k in range(1, n + 1))
    return Element.from_word(word)


def verify_hopf_axioms(ctx: HopfContext) -> list[CheckRecord]:
    pres = ctx.presentation
    nf = pres.normal_form
    tag = "2.16" if pres.flavor == "gl" else "3.6"
    records: list[CheckRecord] = []

    for g in pres.generators:
        e = Element.from_generator(g)
        d = coproduct(e, ctx)
        records.append(
            zero_check(
                f"coassociativity {g}",
                tag,
                tensor_coproduct_leg(d, 0, ctx) - tensor_coproduct_leg(d, 1, ctx),
            )
        )
        records.append(
            zero_check(f"left counit {g}", "2.1", counit_contract(d, 0, ctx) - nf(e))
        )
        records.append(
            zero_check(f"right counit {g}", "2.1", counit_contract(d, 1, ctx) - nf(e))
        )
        unit_scaled = Element.unit(counit(e, ctx))
        records.append(
            zero_check(
                f"left antipode {g}", tag, antipode_contract(d, 0, ctx) - unit_scaled
            )
        )
        records.append(
            zero_check(
                f"right antipode {g}", tag, antipode_contract(d, 1, ctx) - unit_scaled
            )
        )
        records.append(
            zero_check(
                f"counit of antipode {g}",
                tag,
                counit(ctx.antipode_of(g), ctx) - counit(e, ctx),
            )
        )

    for idx, rel in enumerate(pres.relations):
        records.append(
            zero_check(f"coproduct kills relation {idx}", tag, coproduct(rel, ctx))
        )
        records.append(
            zero_check(f"counit kills relation {idx}", "2.1", counit(rel, ctx))
        )

    prod = diagonal_product(pres.n)
    dprod = nf(prod)
    lhs = coproduct(prod, ctx)
    rhs = TensorElement(2)
    for w1, c1 in dprod.terms.items():
        for w2, c2 in dprod.terms.items():
            rhs = rhs + TensorElement.pure((w1, w2), c1 * c2)
    records.append(zero_check("diagonal product grouplike", "2.1", lhs - rhs))
    records.append(
        zero_check("counit of diagonal product", "2.1", counit(prod, ctx) - RAT_ONE)
    )
    if pres.flavor == "sl":
        records.append(
            zero_check("diagonal product is 1", "3.2", dprod - Element.unit())
        )
        gprod = nf(Element.from_word(tuple(gamma(k, k) for k in range(1, pres.n + 1))))
        records.append(zero_check("inverse diagonal product is 1", "3.2", gprod - Element.unit()))
    return records


def hopf_context_for(n: int, flavor: str = "gl") -> HopfContext:
    return hopf_context(build_presentation(n, flavor))
