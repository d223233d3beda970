"""Noncommutative straightening: oriented rules, normal forms, local confluence.

Rules rewrite a fixed leading word to a combination of strictly smaller words
under a degree-first, leftmost-precedence monomial order.  Normal forms are
computed through a memoized DAG of single-step reductions, so repeated
identity checks against one system stay cheap.
"""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from .freealg import Element, Generator, Word, beta, gamma
from .scalars import RAT_ONE, Rat

DEFAULT_STEP_BUDGET = 10**6
STEP_BUDGET_ENV = "QPBW_STEP_BUDGET"


class NonTermination(RuntimeError):
    """Step budget exceeded; signals a mis-oriented rule set."""


class NonUnitLeadingCoefficient(ValueError):
    """Leading coefficient is not invertible over the Laurent ring."""


class ZeroRelationWarning(UserWarning):
    pass


def triangular_gen_key(g: Generator) -> tuple:
    """Precedence for PBW straightening: lower-triangle entries, then the
    diagonal, then upper-triangle entries, so normal words read as a sorted
    g-part, a diagonal run, and a sorted b-part."""
    if g.kind == "g" and g.row > g.col:
        return (0, g.col, g.row, 0)
    if g.row == g.col:
        return (1, g.row, 0 if g.kind == "b" else 1, 0)
    return (2, g.row, g.col, 0)


def rowmajor_gen_key(g: Generator) -> tuple:
    """Plain matrix-position precedence, used for untriangulated q-matrices."""
    return (g.row, g.col, 0, 0)


@dataclass(frozen=True)
class MonomialOrder:
    name: str
    gen_key: Callable[[Generator], tuple]

    def word_key(self, word: Word) -> tuple:
        return (len(word), tuple(self.gen_key(g) for g in word))

    def less(self, a: Word, b: Word) -> bool:
        return self.word_key(a) < self.word_key(b)

    def leading_word(self, e: Element) -> Word:
        return max(e.terms, key=self.word_key)


TRIANGULAR_ORDER = MonomialOrder("triangular", triangular_gen_key)
ROWMAJOR_ORDER = MonomialOrder("rowmajor", rowmajor_gen_key)


@dataclass(frozen=True)
class RewriteRule:
    lhs: Word
    rhs: Element


@dataclass
class Ambiguity:
    """An overlap whose two one-step reductions end in different normal forms."""

    word: Word
    left_lhs: Word
    right_lhs: Word
    difference: Element

    def to_dict(self) -> dict:
        from .textio import format_element, word_str

        return {
            "word": word_str(self.word),
            "left_rule": word_str(self.left_lhs),
            "right_rule": word_str(self.right_lhs),
            "difference": format_element(self.difference),
        }


def _step_budget() -> int:
    raw = os.environ.get(STEP_BUDGET_ENV)
    if raw:
        return int(raw)
    return DEFAULT_STEP_BUDGET


@dataclass
class RewriteSystem:
    order: MonomialOrder
    n: int
    one: object = RAT_ONE
    diagonal_quotient: bool = False
    rules: dict[Word, Element] = field(default_factory=dict)
    step_budget: int = field(default_factory=_step_budget)
    _by_first: dict[Generator, list[Word]] = field(default_factory=dict, repr=False)
    _nf_cache: dict[str, dict[Word, Element]] = field(default_factory=dict, repr=False)
    _steps: int = field(default=0, repr=False)

    def add_rule(self, lhs: Word, rhs: Element) -> None:
        if lhs in self.rules:
            raise ValueError(f"duplicate rule for {lhs}")
        self.rules[lhs] = rhs
        self._by_first.setdefault(lhs[0], []).append(lhs)
        self._nf_cache.clear()

    def drop_rule(self, lhs: Word) -> None:
        del self.rules[lhs]
        self._by_first[lhs[0]].remove(lhs)
        self._nf_cache.clear()

    def rule_list(self) -> list[RewriteRule]:
        key = self.order.word_key
        return [RewriteRule(lhs, self.rules[lhs]) for lhs in sorted(self.rules, key=key)]

    # -- reduction ----------------------------------------------------------

    def find_redex(self, word: Word, strategy: str = "leftmost"):
        positions = range(len(word)) if strategy == "leftmost" else range(len(word) - 1, -1, -1)
        for pos in positions:
            for lhs in self._by_first.get(word[pos], ()):
                if word[pos : pos + len(lhs)] == lhs:
                    return pos, lhs
        return None

    def is_reduced_word(self, word: Word) -> bool:
        return self.find_redex(word) is None

    def _reduce_word(self, word: Word, strategy: str) -> Element:
        cache = self._nf_cache.setdefault(strategy, {})
        hit = cache.get(word)
        if hit is not None:
            return hit
        stack = [word]
        pending: dict[Word, list[tuple[Word, object]]] = {}
        while stack:
            w = stack[-1]
            if w in cache:
                stack.pop()
                continue
            children = pending.get(w)
            if children is None:
                redex = self.find_redex(w, strategy)
                if redex is None:
                    cache[w] = Element.from_word(w, self.one)
                    stack.pop()
                    continue
                pos, lhs = redex
                rhs = self.rules[lhs]
                children = [
                    (w[:pos] + u + w[pos + len(lhs) :], c) for u, c in rhs.terms.items()
                ]
                pending[w] = children
            missing = [cw for cw, _ in children if cw not in cache]
            if missing:
                stack.extend(missing)
                continue
            self._steps += 1
            if self._steps > self.step_budget:
                raise NonTermination(
                    f"step budget {self.step_budget} exceeded while reducing {w}"
                )
            total = Element.zero()
            for cw, c in children:
                total = total + cache[cw].scale(c)
            cache[w] = total
            del pending[w]
            stack.pop()
        return cache[word]

    def normal_form(self, e: Element, strategy: str = "leftmost") -> Element:
        """Fully reduced representative; linear in the input, idempotent."""
        self._steps = 0
        total = Element.zero()
        for w, c in e.terms.items():
            total = total + self._reduce_word(w, strategy).scale(c)
        if self.diagonal_quotient:
            total = self._quotient_diagonal(total)
        return total

    def normal_form_word(self, word: Word, strategy: str = "leftmost") -> Element:
        return self.normal_form(Element.from_word(word, self.one), strategy)

    def is_zero(self, e: Element) -> bool:
        return not self.normal_form(e)

    # -- lattice view of the diagonal part -----------------------------------

    def pbw_parts(self, word: Word) -> tuple[Word, tuple[int, ...], Word]:
        """Split a reduced word into (g-part, diagonal exponent vector, b-part);
        a diagonal g letter counts as exponent -1 of the matching b letter."""
        gammas, betas = [], []
        diag = [0] * self.n
        for g in word:
            if g.diagonal:
                diag[g.row - 1] += 1 if g.kind == "b" else -1
            elif g.kind == "g":
                gammas.append(g)
            else:
                betas.append(g)
        return tuple(gammas), tuple(diag), tuple(betas)

    def assemble_word(self, gammas: Word, diag: Sequence[int], betas: Word) -> Word:
        run: list[Generator] = []
        for k, e in enumerate(diag, start=1):
            if e > 0:
                run.extend([beta(k, k)] * e)
            elif e < 0:
                run.extend([gamma(k, k)] * (-e))
        return tuple(gammas) + tuple(run) + tuple(betas)

    def _quotient_diagonal(self, e: Element) -> Element:
        out = Element.zero()
        for w, c in e.terms.items():
            gammas, diag, betas = self.pbw_parts(w)
            shift = diag[-1]
            if shift:
                diag = tuple(v - shift for v in diag)
                w = self.assemble_word(gammas, diag, betas)
            out = out + Element.from_word(w, c)
        return out

    # -- local confluence -----------------------------------------------------

    def confluence_check(self) -> list[Ambiguity]:
        """Resolve every overlap and inclusion ambiguity; returns the ones
        whose two reductions disagree (empty list = locally confluent)."""
        key = self.order.word_key
        ordered = sorted(self.rules, key=key)
        out: list[Ambiguity] = []
        for lhs_a in ordered:
            for lhs_b in ordered:
                for word, pos_b in _ambiguity_words(lhs_a, lhs_b):
                    left = self._apply_at(word, 0, lhs_a)
                    right = self._apply_at(word, pos_b, lhs_b)
                    diff = self.normal_form(left) - self.normal_form(right)
                    if self.diagonal_quotient:
                        diff = self._quotient_diagonal(diff)
                    if diff:
                        out.append(Ambiguity(word, lhs_a, lhs_b, diff))
        return out

    def _apply_at(self, word: Word, pos: int, lhs: Word) -> Element:
        rhs = self.rules[lhs]
        prefix, suffix = word[:pos], word[pos + len(lhs) :]
        return Element({prefix + u + suffix: c for u, c in rhs.terms.items()})


def _ambiguity_words(lhs_a: Word, lhs_b: Word):
    """Overlap words: a proper suffix of lhs_a equals a proper prefix of
    lhs_b, or lhs_b sits strictly inside lhs_a."""
    la, lb = len(lhs_a), len(lhs_b)
    for k in range(1, min(la, lb)):
        if lhs_a[la - k :] == lhs_b[:k]:
            yield lhs_a + lhs_b[k:], la - k
    if lb < la:
        for pos in range(1, la - lb):
            if lhs_a[pos : pos + lb] == lhs_b:
                yield lhs_a, pos


def orient_relations(
    relations: Iterable[Element],
    order: MonomialOrder,
    *,
    n: int,
    diagonal_quotient: bool = False,
    integer_form: bool = False,
) -> RewriteSystem:
    """Orient relations into rules, reducing each relation by the rules
    collected so far; redundant relations drop out, so every leading word
    carries exactly one rule.

    In integer-form mode a relation whose current leading coefficient is not
    a Laurent unit is deferred: other rules usually rewrite its leading word
    away (e.g. a diagonal-led term of a commutator family).  Only a full pass
    with no progress raises.

    The diagonal-lattice quotient is switched on only once the rules are in
    place: its word normalization is sound only for fully reduced words, and
    orientation reduces against a partial system."""
    system = RewriteSystem(order=order, n=n)
    pending = []
    for rel in relations:
        if not rel:
            warnings.warn("zero relation skipped", ZeroRelationWarning, stacklevel=2)
            continue
        pending.append(rel)

    def unit_inverse(coeff):
        if isinstance(coeff, Rat):
            if integer_form and not (coeff.is_laurent() and coeff.laurent().is_monomial()):
                return None
            return coeff.inv()
        if hasattr(coeff, "inv"):
            return coeff.inv()
        return None

    while pending:
        deferred = []
        progressed = False
        for rel in pending:
            reduced = system.normal_form(rel) if system.rules else rel
            if not reduced:
                progressed = True
                continue
            lead = order.leading_word(reduced)
            inv = unit_inverse(reduced.terms[lead])
            if inv is None:
                deferred.append(rel)
                continue
            rest = Element({w: c for w, c in reduced.terms.items() if w != lead})
            rhs = (-rest).scale(inv)
            for w in rhs.terms:
                if not order.less(w, lead):
                    raise ValueError(f"mis-oriented relation: {w} not below {lead}")
            system.add_rule(lead, rhs)
            progressed = True
        if deferred and not progressed:
            bad = system.normal_form(deferred[0])
            lead = order.leading_word(bad)
            raise NonUnitLeadingCoefficient(
                f"leading coefficient {bad.terms[lead]} of {bad} is not a Laurent unit"
            )
        pending = deferred
    system.diagonal_quotient = diagonal_quotient
    return system


def commutator(x: Element, y: Element) -> Element:
    return x * y - y * x
