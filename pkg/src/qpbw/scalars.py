"""Exact coefficient arithmetic over k[q, q^-1], k(q) and cyclotomic quotients.

Everything is rational-exact: coefficients are `fractions.Fraction`, never
floats.  Values are immutable and safe to share between workers.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping


class NotDivisible(ArithmeticError):
    """Exact division was requested but no exact quotient exists."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


class Laurent:
    """Laurent polynomial in q with rational coefficients.

    Stored as a map from integer exponent to nonzero Fraction; two equal
    values always hold identical maps.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[int, Fraction] | None = None):
        clean = {}
        if terms:
            for e, c in terms.items():
                c = _as_fraction(c)
                if c:
                    clean[int(e)] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Laurent values are immutable")

    # -- constructors ----------------------------------------------------

    @staticmethod
    def monomial(exp: int, coeff=1) -> "Laurent":
        return Laurent({exp: _as_fraction(coeff)})

    @staticmethod
    def of(value) -> "Laurent":
        if isinstance(value, Laurent):
            return value
        return Laurent({0: _as_fraction(value)})

    # -- predicates ------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_one(self) -> bool:
        return self.terms == {0: Fraction(1)}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def min_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero has no exponent range")
        return min(self.terms)

    @property
    def max_exp(self) -> int:
        if not self.terms:
            raise ValueError("zero has no exponent range")
        return max(self.terms)

    # -- ring operations ---------------------------------------------------

    def __add__(self, other: "Laurent") -> "Laurent":
        if not isinstance(other, Laurent):
            return NotImplemented
        if not other.terms:
            return self
        if not self.terms:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, _F0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return Laurent(terms)

    def __neg__(self) -> "Laurent":
        return Laurent({e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def __mul__(self, other: "Laurent") -> "Laurent":
        if not isinstance(other, Laurent):
            return NotImplemented
        if not self.terms or not other.terms:
            return LAURENT_ZERO
        if other.is_one():
            return self
        if self.is_one():
            return other
        terms: dict[int, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = e1 + e2
                s = terms.get(e, _F0) + c1 * c2
                if s:
                    terms[e] = s
                else:
                    terms.pop(e, None)
        return Laurent(terms)

    def scale(self, coeff) -> "Laurent":
        coeff = _as_fraction(coeff)
        if not coeff:
            return LAURENT_ZERO
        return Laurent({e: c * coeff for e, c in self.terms.items()})

    def shift(self, k: int) -> "Laurent":
        """Multiply by q^k."""
        if k == 0:
            return self
        return Laurent({e + k: c for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "Laurent":
        if n < 0:
            if self.is_monomial():
                (e, c), = self.terms.items()
                return Laurent({e * n: c**n})
            raise NotDivisible("negative power of a non-monomial Laurent polynomial")
        out = LAURENT_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Laurent) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(tuple(sorted(self.terms.items())))

    # -- division ---------------------------------------------------------

    def exact_div(self, other: "Laurent") -> "Laurent":
        """Exact quotient in k[q, q^-1]; raises NotDivisible otherwise."""
        if not other.terms:
            raise ZeroDivisionError("division by zero Laurent polynomial")
        if not self.terms:
            return LAURENT_ZERO
        if other.is_monomial():
            (e, c), = other.terms.items()
            return Laurent({e1 - e: c1 / c for e1, c1 in self.terms.items()})
        # Shift both to ordinary polynomials and long-divide.
        sa, sb = self.min_exp, other.min_exp
        num = _to_poly(self.shift(-sa))
        den = _to_poly(other.shift(-sb))
        quo, rem = _poly_divmod(num, den)
        if any(rem):
            raise NotDivisible("no exact Laurent quotient")
        return _from_poly(quo).shift(sa - sb)

    def eval_at_one(self) -> Fraction:
        return sum(self.terms.values(), _F0)

    def eval_rational(self, value: Fraction) -> Fraction:
        value = _as_fraction(value)
        if not value:
            raise ZeroDivisionError("Laurent polynomials are singular at 0")
        return sum(c * value**e for e, c in self.terms.items()) or _F0

    def quotient_q_minus_one(self) -> "Laurent":
        """Exact quotient by (q - 1); defined iff the value at q = 1 is 0."""
        if not self.terms:
            return LAURENT_ZERO
        if self.eval_at_one():
            raise NotDivisible("value at q = 1 is nonzero")
        return self.exact_div(Laurent({1: _F1, 0: -_F1}))

    # -- printing ----------------------------------------------------------

    def __str__(self) -> str:
        return format_laurent(self)

    def __repr__(self) -> str:
        return f"Laurent({format_laurent(self)})"


_F0 = Fraction(0)
_F1 = Fraction(1)

LAURENT_ZERO = Laurent()
LAURENT_ONE = Laurent({0: 1})
Q = Laurent({1: 1})
Q_INV = Laurent({-1: 1})
Q_MINUS_QINV = Laurent({1: 1, -1: -1})
TWO_BRACKET = Laurent({1: 1, -1: 1})  # q + q^-1


# -- dense polynomial helpers (coefficient lists, index = exponent) --------

def _to_poly(a: Laurent) -> list[Fraction]:
    deg = a.max_exp
    out = [_F0] * (deg + 1)
    for e, c in a.terms.items():
        out[e] = c
    return out


def _from_poly(coeffs: Iterable[Fraction]) -> Laurent:
    return Laurent({e: c for e, c in enumerate(coeffs) if c})


def _poly_trim(p: list[Fraction]) -> list[Fraction]:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(num: list[Fraction], den: list[Fraction]):
    num = _poly_trim(list(num))
    den = _poly_trim(list(den))
    if not den:
        raise ZeroDivisionError
    quo = [_F0] * max(len(num) - len(den) + 1, 0)
    while len(num) >= len(den):
        shift = len(num) - len(den)
        factor = num[-1] / den[-1]
        quo[shift] = factor
        for i, c in enumerate(den):
            num[i + shift] -= factor * c
        _poly_trim(num)
    return quo, num


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [_F0] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if not ca:
            continue
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return _poly_trim(out)


def _poly_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    if a:
        lead = a[-1]
        a = [c / lead for c in a]
    return a


def laurent_gcd(a: Laurent, b: Laurent) -> Laurent:
    """Monic gcd with lowest exponent 0 (defined up to units of k[q,q^-1])."""
    if not a.terms:
        b = b if not b.terms else b.shift(-b.min_exp)
        if b.terms:
            b = b.scale(1 / b.terms[b.max_exp])
        return b
    if not b.terms:
        return laurent_gcd(b, a)
    g = _poly_gcd(_to_poly(a.shift(-a.min_exp)), _to_poly(b.shift(-b.min_exp)))
    out = _from_poly(g)
    return out.shift(-out.min_exp)


class Rat:
    """Element of k(q) as a reduced fraction of Laurent polynomials.

    Normal form: the denominator has lowest exponent 0, leading coefficient 1
    and no common factor with the numerator, so equality is structural.
    Values inside k[q, q^-1] always carry denominator 1.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Laurent, den: Laurent = LAURENT_ONE, *, _reduced=False):
        if not den.terms:
            raise ZeroDivisionError("zero denominator")
        if not _reduced and not den.is_one():
            num, den = _reduce(num, den)
        if not num.terms:
            den = LAURENT_ONE
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Rat values are immutable")

    @staticmethod
    def of(value) -> "Rat":
        if isinstance(value, Rat):
            return value
        if isinstance(value, Laurent):
            return Rat(value)
        return Rat(Laurent.of(value))

    def __bool__(self) -> bool:
        return bool(self.num.terms)

    def is_laurent(self) -> bool:
        return self.den.is_one()

    def laurent(self) -> Laurent:
        if not self.den.is_one():
            raise NotDivisible(f"not a Laurent polynomial: {self}")
        return self.num

    def __add__(self, other: "Rat") -> "Rat":
        if not isinstance(other, Rat):
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return Rat(self.num + other.num, _reduced=True)
        if self.den == other.den:
            return Rat(self.num + other.num, self.den)
        return Rat(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "Rat":
        return Rat(-self.num, self.den, _reduced=True)

    def __sub__(self, other: "Rat") -> "Rat":
        return self + (-other)

    def __mul__(self, other: "Rat") -> "Rat":
        if not isinstance(other, Rat):
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return Rat(self.num * other.num, _reduced=True)
        return Rat(self.num * other.num, self.den * other.den)

    def inv(self) -> "Rat":
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero")
        return Rat(self.den, self.num)

    def __truediv__(self, other: "Rat") -> "Rat":
        return self * other.inv()

    def __pow__(self, n: int) -> "Rat":
        if n < 0:
            return self.inv() ** (-n)
        out = RAT_ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, Rat) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __str__(self) -> str:
        return format_rat(self)

    def __repr__(self) -> str:
        return f"Rat({format_rat(self)})"


def _reduce(num: Laurent, den: Laurent) -> tuple[Laurent, Laurent]:
    g = laurent_gcd(num, den)
    if not g.is_one():
        num = num.exact_div(g)
        den = den.exact_div(g)
    # Unit normalization: den gets lowest exponent 0 and leading coefficient 1.
    shift = den.min_exp
    lead = den.terms[den.max_exp]
    den = den.shift(-shift).scale(1 / lead)
    num = num.shift(-shift).scale(1 / lead)
    if den.is_one():
        return num, LAURENT_ONE
    return num, den


RAT_ZERO = Rat(LAURENT_ZERO)
RAT_ONE = Rat(LAURENT_ONE)
RAT_Q = Rat(Q)
RAT_Q_INV = Rat(Q_INV)
RAT_Q_MINUS_QINV = Rat(Q_MINUS_QINV)


def rat_monomial(exp: int, coeff=1) -> Rat:
    return Rat(Laurent.monomial(exp, coeff))


# -- cyclotomic arithmetic ---------------------------------------------------


@lru_cache(maxsize=None)
def cyclotomic_polynomial(level: int) -> tuple[Fraction, ...]:
    """Dense coefficients of the level-th cyclotomic polynomial."""
    if level < 1:
        raise ValueError("level must be >= 1")
    poly = [-_F1] + [_F0] * (level - 1) + [_F1]  # q^level - 1
    for d in range(1, level):
        if level % d == 0:
            quo, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not rem
            poly = quo
    return tuple(poly)


class Cyclo:
    """Residue modulo the level-th cyclotomic polynomial; models a primitive
    level-th root of unity adjoined to the rationals."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: Iterable[Fraction] = ()):
        if level < 2:
            raise ValueError("level must be >= 2")
        phi = list(cyclotomic_polynomial(level))
        coeffs = [_as_fraction(c) for c in coeffs]
        if len(coeffs) >= len(phi):
            _, coeffs = _poly_divmod(coeffs, phi)
        coeffs += [_F0] * (len(phi) - 1 - len(coeffs))
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", tuple(coeffs[: len(phi) - 1]))

    def __setattr__(self, name, value):  # pragma: no cover
        raise AttributeError("Cyclo values are immutable")

    @staticmethod
    def from_laurent(a: Laurent, level: int) -> "Cyclo":
        """Reduce at a primitive root: q^e maps to q^(e mod level)."""
        phi_deg = len(cyclotomic_polynomial(level)) - 1
        coeffs = [_F0] * level
        for e, c in a.terms.items():
            coeffs[e % level] += c
        val = Cyclo(level, coeffs)
        assert len(val.coeffs) == phi_deg
        return val

    @staticmethod
    def of(value, level: int) -> "Cyclo":
        if isinstance(value, Cyclo):
            if value.level != level:
                raise ValueError("mixed cyclotomic levels")
            return value
        if isinstance(value, Laurent):
            return Cyclo.from_laurent(value, level)
        return Cyclo(level, [_as_fraction(value)])

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def _check(self, other: "Cyclo"):
        if self.level != other.level:
            raise ValueError("mixed cyclotomic levels")

    def __add__(self, other: "Cyclo") -> "Cyclo":
        if not isinstance(other, Cyclo):
            return NotImplemented
        self._check(other)
        return Cyclo(self.level, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "Cyclo":
        return Cyclo(self.level, [-a for a in self.coeffs])

    def __sub__(self, other: "Cyclo") -> "Cyclo":
        return self + (-other)

    def __mul__(self, other: "Cyclo") -> "Cyclo":
        if not isinstance(other, Cyclo):
            return NotImplemented
        self._check(other)
        return Cyclo(self.level, _poly_mul(list(self.coeffs), list(other.coeffs)))

    def inv(self) -> "Cyclo":
        """Inverse via the extended Euclidean algorithm (the modulus is
        irreducible, so every nonzero residue is invertible)."""
        if not self:
            raise ZeroDivisionError("inverse of zero residue")
        phi = list(cyclotomic_polynomial(self.level))
        r0, r1 = phi, _poly_trim(list(self.coeffs))
        s0: list[Fraction] = []
        s1: list[Fraction] = [_F1]
        while r1:
            quo, rem = _poly_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _poly_trim(
                [a - b for a, b in _zip_pad(s0, _poly_mul(quo, s1))]
            )
        # r0 is a nonzero constant gcd
        c = r0[0]
        return Cyclo(self.level, [a / c for a in s0])

    def __pow__(self, n: int) -> "Cyclo":
        if n < 0:
            return self.inv() ** (-n)
        out = Cyclo(self.level, [_F1])
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Cyclo)
            and self.level == other.level
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.level, self.coeffs))

    def __str__(self) -> str:
        return format_cyclo(self)

    def __repr__(self) -> str:
        return f"Cyclo[{self.level}]({format_cyclo(self)})"


def _zip_pad(a: list[Fraction], b: list[Fraction]):
    n = max(len(a), len(b))
    a = a + [_F0] * (n - len(a))
    b = b + [_F0] * (n - len(b))
    return zip(a, b)


# -- specialization entry points --------------------------------------------


def specialize_at_one(a: Laurent) -> Fraction:
    return a.eval_at_one()


def specialize_at_root(a: Laurent, level: int) -> Cyclo:
    if level < 2:
        raise ValueError("root-of-unity level must be >= 2")
    return Cyclo.from_laurent(a, level)


# -- canonical text ----------------------------------------------------------


def _format_coeff(c: Fraction, with_sign: bool) -> str:
    sign = "-" if c < 0 else ("+" if with_sign else "")
    mag = abs(c)
    body = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
    return sign, body


def format_laurent(a: Laurent) -> str:
    """Terms in decreasing exponent, e.g. ``q^2 - 2 + 3*q^-1``."""
    if not a.terms:
        return "0"
    parts = []
    for e in sorted(a.terms, reverse=True):
        c = a.terms[e]
        sign, body = _format_coeff(c, with_sign=bool(parts))
        if e == 0:
            text = body
        else:
            qpow = "q" if e == 1 else f"q^{e}"
            text = qpow if body == "1" else f"{body}*{qpow}"
        if parts:
            parts.append(f" {sign} {text}")
        else:
            parts.append(f"{sign}{text}")
    return "".join(parts)


def format_rat(a: Rat) -> str:
    if a.is_laurent():
        return format_laurent(a.num)
    num = format_laurent(a.num)
    den = format_laurent(a.den)
    if len(a.num.terms) > 1:
        num = f"({num})"
    return f"{num}*({den})^-1"


def format_cyclo(a: Cyclo) -> str:
    return format_laurent(Laurent({e: c for e, c in enumerate(a.coeffs) if c}))
