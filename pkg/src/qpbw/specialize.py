"""Semiclassical limit at q = 1 with its Poisson bracket, root-of-unity
specializations, and the ell-th power embedding of the commutative limit.

The bracket is computed by the commutator-divide-evaluate pipeline; the
closed-form bracket tables live only in the comparison fixtures, never in
the computation.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .freealg import Element, Generator, TensorElement, Word, beta, gamma
from .presentations import PresentationSpec, build_presentation
from .reports import CheckRecord, check, zero_check
from .rewrite import RewriteSystem
from .scalars import Cyclo, Laurent, NotDivisible, Rat
from .textio import format_element


class NotInIntegerForm(ValueError):
    """A coefficient has a pole at q = 1 (the element leaves the Laurent span)."""


class UnsupportedLevel(ValueError):
    pass


def _limit_coeff(c: Rat) -> Laurent:
    if not (isinstance(c, Rat) and c.is_laurent()):
        raise NotInIntegerForm(f"coefficient {c} is not a Laurent polynomial")
    return c.num


@dataclass
class CommutativeElement:
    """Polynomial in the barred generators, with the diagonal inversions (and
    the determinant normalization for the sl flavor) applied; monomials are
    stored as canonically sorted words."""

    n: int
    flavor: str
    terms: dict[Word, Fraction]

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, CommutativeElement)
            and self.n == other.n
            and self.flavor == other.flavor
            and self.terms == other.terms
        )

    def __add__(self, other: "CommutativeElement") -> "CommutativeElement":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w, 0) + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return CommutativeElement(self.n, self.flavor, terms)

    def __neg__(self) -> "CommutativeElement":
        return CommutativeElement(self.n, self.flavor, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "CommutativeElement") -> "CommutativeElement":
        return self + (-other)

    def scale(self, c: Fraction) -> "CommutativeElement":
        if not c:
            return CommutativeElement(self.n, self.flavor, {})
        return CommutativeElement(self.n, self.flavor, {w: v * c for w, v in self.terms.items()})

    def __mul__(self, other: "CommutativeElement") -> "CommutativeElement":
        terms: dict[Word, Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = _canonical_monomial(Counter(w1) + Counter(w2), self.n, self.flavor)
                s = terms.get(w, 0) + c1 * c2
                if s:
                    terms[w] = s
                else:
                    terms.pop(w, None)
        return CommutativeElement(self.n, self.flavor, terms)

    def lift(self) -> Element:
        """A representative of this class with constant Laurent coefficients."""
        return Element({w: Rat.of(Fraction(c)) for w, c in self.terms.items()})

    def __str__(self) -> str:
        return format_element(Element({w: Rat.of(c) for w, c in self.terms.items()}))

    def __repr__(self) -> str:
        return f"CommutativeElement({self})"


def _canonical_monomial(counts: Counter, n: int, flavor: str) -> Word:
    from .rewrite import triangular_gen_key

    diag = [0] * n
    off: list[Generator] = []
    for g, e in counts.items():
        if g.diagonal:
            diag[g.row - 1] += e if g.kind == "b" else -e
        else:
            off.extend([g] * e)
    if flavor == "sl" and diag[-1]:
        shift = diag[-1]
        diag = [v - shift for v in diag]
    run: list[Generator] = []
    for k, e in enumerate(diag, start=1):
        if e > 0:
            run.extend([beta(k, k)] * e)
        elif e < 0:
            run.extend([gamma(k, k)] * (-e))
    gammas = sorted((g for g in off if g.kind == "g"), key=triangular_gen_key)
    betas = sorted((g for g in off if g.kind == "b"), key=triangular_gen_key)
    return tuple(gammas) + tuple(run) + tuple(betas)


def comm_generator(g: Generator, n: int, flavor: str) -> CommutativeElement:
    return CommutativeElement(n, flavor, {_canonical_monomial(Counter([g]), n, flavor): Fraction(1)})


def classical_limit(e: Element, presentation: PresentationSpec) -> CommutativeElement:
    """Normal-form, then evaluate every coefficient at q = 1; raises
    NotInIntegerForm on coefficients with poles there."""
    nf = presentation.normal_form(e)
    terms: dict[Word, Fraction] = {}
    for w, c in nf.terms.items():
        value = _limit_coeff(c).eval_at_one()
        if value:
            terms[w] = value
    return CommutativeElement(presentation.n, presentation.flavor, terms)


def poisson_bracket(x: Element, y: Element, presentation: PresentationSpec) -> CommutativeElement:
    """Class of (xy - yx)/(q - 1); exact at every step."""
    comm = presentation.normal_form(x * y - y * x)
    terms: dict[Word, Fraction] = {}
    for w, c in comm.terms.items():
        lau = _limit_coeff(c)
        try:
            quo = lau.quotient_q_minus_one()
        except NotDivisible as exc:  # impossible for integer-form inputs
            raise NotInIntegerForm(
                f"commutator coefficient {lau} not divisible at q = 1"
            ) from exc
        value = quo.eval_at_one()
        if value:
            terms[w] = value
    return CommutativeElement(presentation.n, presentation.flavor, terms)


# -- closed-form bracket tables (comparison fixtures) -------------------------


def _entry(kind: str, r: int, c: int, n: int, flavor: str) -> CommutativeElement:
    zero = CommutativeElement(n, flavor, {})
    if kind == "b":
        if r > c:
            return zero
        g = beta(r, c)
    else:
        if r < c:
            return zero
        g = gamma(r, c)
    return comm_generator(g, n, flavor)


def poisson_table_same(kind: str, p1: tuple[int, int], p2: tuple[int, int],
                       n: int, flavor: str) -> CommutativeElement:
    """Bracket of two entries of one triangular family."""
    (a, b), (c, d) = p1, p2
    zero = CommutativeElement(n, flavor, {})
    if (a, b) == (c, d):
        return zero
    if a == c:  # same row
        prod = _entry(kind, a, b, n, flavor) * _entry(kind, a, d, n, flavor)
        return prod if b < d else -prod
    if b == d:  # same column
        prod = _entry(kind, a, b, n, flavor) * _entry(kind, c, b, n, flavor)
        return prod if a < c else -prod
    if a == b and c == d:  # two diagonal entries
        return zero
    if (a < c and b > d) or (a > c and b < d):
        return zero
    if a < c and b < d:
        return (_entry(kind, a, d, n, flavor) * _entry(kind, c, b, n, flavor)).scale(Fraction(2))
    return (_entry(kind, c, b, n, flavor) * _entry(kind, a, d, n, flavor)).scale(Fraction(-2))


def poisson_table_mixed(bpos: tuple[int, int], gpos: tuple[int, int],
                        n: int, flavor: str) -> CommutativeElement:
    """Bracket of an upper entry b[j,s] with a lower entry g[i,k]."""
    (j, s), (i, k) = bpos, gpos
    d = lambda a, b: 1 if a == b else 0
    total = (_entry("b", j, s, n, flavor) * _entry("g", i, k, n, flavor)).scale(
        Fraction(d(i, j) - d(k, s))
    )
    if i > j:
        total = total + (_entry("g", j, k, n, flavor) * _entry("b", i, s, n, flavor)).scale(Fraction(2))
    if s > k:
        total = total - (_entry("b", j, k, n, flavor) * _entry("g", i, s, n, flavor)).scale(Fraction(2))
    return total


def _table_bracket(g1: Generator, g2: Generator, n: int, flavor: str) -> CommutativeElement:
    if g1.kind == "b" and g2.kind == "b":
        return poisson_table_same("b", (g1.row, g1.col), (g2.row, g2.col), n, flavor)
    if g1.kind == "g" and g2.kind == "g":
        return poisson_table_same("g", (g1.row, g1.col), (g2.row, g2.col), n, flavor)
    if g1.kind == "b":
        return poisson_table_mixed((g1.row, g1.col), (g2.row, g2.col), n, flavor)
    return -poisson_table_mixed((g2.row, g2.col), (g1.row, g1.col), n, flavor)


def _random_integer_form_element(rng: random.Random, gens, max_len=2) -> Element:
    total = Element.zero()
    for _ in range(rng.randint(1, 2)):
        word = tuple(rng.choice(gens) for _ in range(rng.randint(1, max_len)))
        coeff = Rat.of(Laurent.monomial(rng.randint(-1, 1), rng.randint(1, 3)))
        total = total + Element.from_word(word, coeff)
    return total or Element.unit()


def verify_poisson_tables(n: int, flavor: str = "gl", *, random_triples: int = 100,
                          seed: int = 20061) -> list[CheckRecord]:
    """Pipeline vs closed-form table for every generator pair, plus the
    bracket laws on seeded random elements."""
    pres = build_presentation(n, flavor)
    gens = pres.generators
    tag_same = "2.17" if flavor == "gl" else "3.7"
    tag_mixed = "2.18" if flavor == "gl" else "3.8"
    records = []
    for idx1 in range(len(gens)):
        for idx2 in range(idx1 + 1, len(gens)):
            g1, g2 = gens[idx1], gens[idx2]
            got = poisson_bracket(
                Element.from_generator(g1), Element.from_generator(g2), pres
            )
            want = _table_bracket(g1, g2, n, flavor)
            tag = tag_same if g1.kind == g2.kind else tag_mixed
            records.append(zero_check(f"bracket({g1}, {g2})", tag, got - want))
    rng = random.Random(seed)
    antisym_fail = jacobi_fail = leibniz_fail = None
    for _ in range(random_triples):
        x = _random_integer_form_element(rng, gens)
        y = _random_integer_form_element(rng, gens)
        z = _random_integer_form_element(rng, gens)
        if (poisson_bracket(x, y, pres) + poisson_bracket(y, x, pres)) and antisym_fail is None:
            antisym_fail = (x, y)
        jac = (
            poisson_bracket(x, poisson_bracket(y, z, pres).lift(), pres)
            + poisson_bracket(y, poisson_bracket(z, x, pres).lift(), pres)
            + poisson_bracket(z, poisson_bracket(x, y, pres).lift(), pres)
        )
        if jac and jacobi_fail is None:
            jacobi_fail = (x, y, z)
        lhs = poisson_bracket(x, y * z, pres)
        rhs = poisson_bracket(x, y, pres) * classical_limit(z, pres) + classical_limit(
            y, pres
        ) * poisson_bracket(x, z, pres)
        if (lhs - rhs) and leibniz_fail is None:
            leibniz_fail = (x, y, z)
    records.append(
        check(f"antisymmetry on {random_triples} random pairs", "2.10",
              antisym_fail is None, antisym_fail)
    )
    records.append(
        check(f"Jacobi identity on {random_triples} random triples", "2.10",
              jacobi_fail is None, jacobi_fail)
    )
    records.append(
        check(f"Leibniz rule on {random_triples} random triples", "2.10",
              leibniz_fail is None, leibniz_fail)
    )
    return records


# -- roots of unity -----------------------------------------------------------


@dataclass
class SpecializedSystem:
    presentation: PresentationSpec
    level: int
    system: RewriteSystem

    @property
    def one(self) -> Cyclo:
        return Cyclo.of(1, self.level)

    def embed(self, e: Element) -> Element:
        """Reduce an integer-form element's coefficients at the root."""
        return Element(
            {w: Cyclo.from_laurent(_limit_coeff(c), self.level) for w, c in e.terms.items()}
        )

    def normal_form(self, e: Element, strategy: str = "leftmost") -> Element:
        return self.system.normal_form(e, strategy)


def specialize_root_of_unity(
    presentation: PresentationSpec, level: int, *, allow_even: bool = False
) -> SpecializedSystem:
    """The same straightening rules with coefficients reduced at a primitive
    level-th root of unity.  Odd levels >= 3 by default; even levels only
    behind the flag (their theory is weaker, callers get reports not proofs)."""
    if level < 2:
        raise UnsupportedLevel("level must be >= 2; q = 1 is the classical limit")
    if level % 2 == 0 and not allow_even:
        raise UnsupportedLevel("even levels only with allow_even=True")
    base = presentation.system
    system = RewriteSystem(
        order=base.order,
        n=base.n,
        one=Cyclo.of(1, level),
        diagonal_quotient=base.diagonal_quotient,
    )
    for lhs, rhs in base.rules.items():
        system.add_rule(
            lhs,
            Element(
                {w: Cyclo.from_laurent(_limit_coeff(c), level) for w, c in rhs.terms.items()}
            ),
        )
    return SpecializedSystem(presentation, level, system)


def frobenius_check(
    n: int,
    level: int,
    flavor: str = "gl",
    *,
    allow_even: bool = False,
    include_coalgebra: bool = True,
) -> list[CheckRecord]:
    """The ell-th power map from the commutative limit: images of all
    generators commute, image relations hold, and the coproduct restricts to
    ell-th powers entrywise."""
    pres = build_presentation(n, flavor)
    spec = specialize_root_of_unity(pres, level, allow_even=allow_even)
    tag = "2.12" if flavor == "gl" else "3.8"
    gens = pres.generators
    records = []
    if flavor == "sl":
        records.append(
            check(f"gcd(level, n) = {gcd(level, n)} (reported, not enforced)", "3.8", True)
        )
    powers = {
        g: spec.normal_form(Element.from_word((g,) * level, spec.one)) for g in gens
    }
    for i1 in range(len(gens)):
        for i2 in range(i1 + 1, len(gens)):
            x, y = powers[gens[i1]], powers[gens[i2]]
            records.append(
                zero_check(
                    f"[{gens[i1]}^{level}, {gens[i2]}^{level}] = 0",
                    tag,
                    spec.normal_form(x * y - y * x),
                )
            )
    one = Element.unit(spec.one)
    for k in range(1, n + 1):
        prod = spec.normal_form(powers[beta(k, k)] * powers[gamma(k, k)])
        records.append(zero_check(f"b[{k},{k}]^{level} g[{k},{k}]^{level} = 1", tag, prod - one))
    if flavor == "sl":
        det = Element.unit(spec.one)
        for k in range(1, n + 1):
            det = det * powers[beta(k, k)]
        records.append(
            zero_check(f"determinant of {level}-th powers = 1", "3.8",
                       spec.normal_form(det) - one)
        )
    if include_coalgebra:
        records.extend(_frobenius_coalgebra_checks(spec, tag))
    return records


def _delta_tensor_specialized(g: Generator, spec: SpecializedSystem) -> TensorElement:
    if g.kind == "b":
        i, j = g.row, g.col
        keys = [((beta(i, k),), (beta(k, j),)) for k in range(i, j + 1)]
    else:
        j, i = g.row, g.col
        keys = [((gamma(j, k),), (gamma(k, i),)) for k in range(i, j + 1)]
    return TensorElement(2, {key: spec.one for key in keys})


def _frobenius_coalgebra_checks(spec: SpecializedSystem, tag: str) -> list[CheckRecord]:
    level = spec.level
    records = []
    nf = spec.normal_form
    for g in spec.presentation.generators:
        delta = _delta_tensor_specialized(g, spec)
        lhs = TensorElement.unit(2, spec.one)
        for _ in range(level):
            lhs = lhs * delta
        lhs = lhs.map_legs(spec.system.normal_form_word)
        rhs = TensorElement(2)
        if g.kind == "b":
            i, j = g.row, g.col
            pieces = [((beta(i, k),), (beta(k, j),)) for k in range(i, j + 1)]
        else:
            j, i = g.row, g.col
            pieces = [((gamma(j, k),), (gamma(k, i),)) for k in range(i, j + 1)]
        for u, v in pieces:
            rhs = rhs + TensorElement.pure((u * level, v * level), spec.one)
        rhs = rhs.map_legs(spec.system.normal_form_word)
        records.append(
            zero_check(f"coproduct of {g}^{level} is the entrywise power row", tag, lhs - rhs)
        )
    return records
