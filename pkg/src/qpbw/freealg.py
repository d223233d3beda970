"""Free associative algebra on triangular matrix-entry generators.

Generators come in two kinds: ``b`` entries live on or above the diagonal,
``g`` entries on or below it.  Words are plain tuples of generators, elements
are finite linear combinations with scalar coefficients (k(q) by default, any
ring with +/*/- and truthiness works, e.g. cyclotomic residues).
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple

from .scalars import RAT_ONE, Rat


class TriangleIndexError(IndexError):
    """A generator index pair leaves the triangle its kind allows."""


class DegreeMismatch(ValueError):
    """Tensor operands of different tensor degree."""


class Generator(NamedTuple):
    kind: str  # "b" or "g"
    row: int
    col: int

    @property
    def diagonal(self) -> bool:
        return self.row == self.col

    def __str__(self) -> str:
        return f"{self.kind}[{self.row},{self.col}]"


def beta(row: int, col: int, n: int | None = None) -> Generator:
    if row < 1 or col < 1 or (n is not None and (row > n or col > n)):
        raise TriangleIndexError(f"b[{row},{col}] out of range")
    if row > col:
        raise TriangleIndexError(f"b[{row},{col}] lies below the diagonal")
    return Generator("b", row, col)


def gamma(row: int, col: int, n: int | None = None) -> Generator:
    if row < 1 or col < 1 or (n is not None and (row > n or col > n)):
        raise TriangleIndexError(f"g[{row},{col}] out of range")
    if row < col:
        raise TriangleIndexError(f"g[{row},{col}] lies above the diagonal")
    return Generator("g", row, col)


Word = tuple[Generator, ...]

EMPTY_WORD: Word = ()


def word_str(word: Word) -> str:
    if not word:
        return "1"
    parts = []
    i = 0
    while i < len(word):
        j = i
        while j < len(word) and word[j] == word[i]:
            j += 1
        run = j - i
        parts.append(str(word[i]) if run == 1 else f"{word[i]}^{run}")
        i = j
    return "*".join(parts)


class Element:
    """Finite linear combination of words; no zero coefficients stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Word, object] | None = None):
        clean = {}
        if terms:
            for w, c in terms.items():
                if c:
                    clean[w] = c
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero() -> "Element":
        return Element()

    @staticmethod
    def unit(coeff=RAT_ONE) -> "Element":
        return Element({EMPTY_WORD: coeff})

    @staticmethod
    def from_word(word: Word, coeff=RAT_ONE) -> "Element":
        return Element({word: coeff})

    @staticmethod
    def from_generator(gen: Generator, coeff=RAT_ONE) -> "Element":
        return Element({(gen,): coeff})

    # -- predicates ---------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return isinstance(other, Element) and self.terms == other.terms

    def __hash__(self):
        raise TypeError("Element is not hashable")

    # -- linear structure ----------------------------------------------------

    def __add__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w)
            s = c if s is None else s + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        out = Element.__new__(Element)
        out.terms = terms
        return out

    def __neg__(self) -> "Element":
        out = Element.__new__(Element)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, coeff) -> "Element":
        if not coeff:
            return Element()
        out = Element.__new__(Element)
        out.terms = {w: c * coeff for w, c in self.terms.items()}
        return out

    # -- multiplication (free, unreduced) -------------------------------------

    def __mul__(self, other: "Element") -> "Element":
        if not isinstance(other, Element):
            return NotImplemented
        terms: dict[Word, object] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                s = terms.get(w)
                s = c if s is None else s + c
                if s:
                    terms[w] = s
                else:
                    terms.pop(w, None)
        out = Element.__new__(Element)
        out.terms = terms
        return out

    def __pow__(self, n: int) -> "Element":
        if n < 0:
            raise ValueError("free elements have no inverses")
        out = Element.unit()
        for _ in range(n):
            out = out * self
        return out

    def coefficient(self, word: Word):
        return self.terms.get(word)

    def words(self) -> Iterable[Word]:
        return self.terms.keys()

    def map_coefficients(self, fn) -> "Element":
        return Element({w: fn(c) for w, c in self.terms.items()})

    def __str__(self) -> str:
        from .textio import format_element

        return format_element(self)

    def __repr__(self) -> str:
        return f"Element({self})"


def element_sum(parts: Iterable[Element]) -> Element:
    total = Element.zero()
    for p in parts:
        total = total + p
    return total


def is_laurent_element(e: Element) -> bool:
    """Whether every coefficient lies in k[q, q^-1] (no denominators)."""
    return all(not isinstance(c, Rat) or c.is_laurent() for c in e.terms.values())


def laurent_violations(e: Element) -> list[tuple[Word, object]]:
    out = [
        (w, c)
        for w, c in e.terms.items()
        if isinstance(c, Rat) and not c.is_laurent()
    ]
    out.sort(key=lambda item: item[0])
    return out


class TensorElement:
    """Linear combination of tensors of words, all of one tensor degree.

    Multiplication is componentwise concatenation with no sign rule:
    (u (x) v)(u' (x) v') = uu' (x) vv'.
    """

    __slots__ = ("degree", "terms")

    def __init__(self, degree: int, terms: Mapping[tuple[Word, ...], object] | None = None):
        if degree < 1:
            raise ValueError("tensor degree must be >= 1")
        clean = {}
        if terms:
            for key, c in terms.items():
                if len(key) != degree:
                    raise DegreeMismatch(f"expected degree {degree}, got {len(key)}")
                if c:
                    clean[key] = c
        self.degree = degree
        self.terms = clean

    @staticmethod
    def unit(degree: int, coeff=RAT_ONE) -> "TensorElement":
        return TensorElement(degree, {(EMPTY_WORD,) * degree: coeff})

    @staticmethod
    def pure(words: tuple[Word, ...], coeff=RAT_ONE) -> "TensorElement":
        return TensorElement(len(words), {words: coeff})

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorElement)
            and self.degree == other.degree
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("TensorElement is not hashable")

    def _check(self, other: "TensorElement"):
        if self.degree != other.degree:
            raise DegreeMismatch(f"degree {self.degree} vs {other.degree}")

    def __add__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key)
            s = c if s is None else s + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        out = TensorElement.__new__(TensorElement)
        out.degree = self.degree
        out.terms = terms
        return out

    def __neg__(self) -> "TensorElement":
        out = TensorElement.__new__(TensorElement)
        out.degree = self.degree
        out.terms = {key: -c for key, c in self.terms.items()}
        return out

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, coeff) -> "TensorElement":
        if not coeff:
            return TensorElement(self.degree)
        out = TensorElement.__new__(TensorElement)
        out.degree = self.degree
        out.terms = {key: c * coeff for key, c in self.terms.items()}
        return out

    def __mul__(self, other: "TensorElement") -> "TensorElement":
        if not isinstance(other, TensorElement):
            return NotImplemented
        self._check(other)
        terms: dict[tuple[Word, ...], object] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                c = c1 * c2
                s = terms.get(key)
                s = c if s is None else s + c
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        out = TensorElement.__new__(TensorElement)
        out.degree = self.degree
        out.terms = terms
        return out

    def map_legs(self, fn) -> "TensorElement":
        """Apply a Word -> Element map to every leg and re-expand."""
        total = TensorElement(self.degree)
        for key, c in self.terms.items():
            legs = [fn(w) for w in key]
            expanded = TensorElement.unit(self.degree, c)
            for pos, leg in enumerate(legs):
                step = TensorElement(self.degree)
                for key2, c2 in expanded.terms.items():
                    for w, cw in leg.terms.items():
                        new_key = key2[:pos] + (key2[pos] + w,) + key2[pos + 1 :]
                        s = step.terms.get(new_key)
                        s = c2 * cw if s is None else s + c2 * cw
                        if s:
                            step.terms[new_key] = s
                        else:
                            step.terms.pop(new_key, None)
                expanded = step
            total = total + expanded
        return total

    def __str__(self) -> str:
        from .textio import format_tensor

        return format_tensor(self)

    def __repr__(self) -> str:
        return f"TensorElement({self})"
