"""Exact arithmetic: rationals, integer Laurent polynomials, rational multisets.

Rationals are plain :class:`fractions.Fraction` values.  The extended value
``+inf`` used for invariants that may be infinite is ``math.inf``; it only ever
appears as a sentinel and is never combined with a rational in arithmetic
except through :func:`ext_sub`.
"""

from __future__ import annotations

import math
import re
from collections import Counter
from fractions import Fraction
from itertools import product as _cartesian
from typing import Iterable, Iterator, Mapping, Union

from .errors import DomainError

Rational = Fraction
INF = math.inf

# A finite integer / rational, or +inf.
ExtValue = Union[int, Fraction, float]

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a canonical Fraction."""
    m = _RATIONAL_RE.match(text)
    if not m:
        raise DomainError(f"not a rational number: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise DomainError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def render_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def is_inf(x) -> bool:
    return isinstance(x, float) and x == INF


def render_ext(x) -> str:
    return "inf" if is_inf(x) else render_rational(x)


def parse_ext(text: str) -> ExtValue:
    if text.strip() in ("inf", "+inf"):
        return INF
    value = parse_rational(text)
    return int(value) if value.denominator == 1 else value


def ext_sub(x: ExtValue, k: int) -> ExtValue:
    """``x - k`` with ``+inf - k = +inf``."""
    return INF if is_inf(x) else x - k


def ext_json(x):
    """JSON-friendly form: ints stay ints, other rationals become "p/q"."""
    if is_inf(x):
        return "inf"
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else render_rational(x)


class LaurentPoly:
    """Immutable Laurent polynomial in ``q`` with integer coefficients.

    The zero polynomial has no terms; asking for its degrees raises.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        for e, v in (coeffs or {}).items():
            if int(e) != e or int(v) != v:
                raise DomainError("Laurent exponents and coefficients must be integers")
            if v:
                c[int(e)] = int(v)
        object.__setattr__(self, "_c", dict(sorted(c.items())))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentPoly is immutable")

    @classmethod
    def monomial(cls, exponent: int, coeff: int = 1) -> LaurentPoly:
        return cls({exponent: coeff})

    @classmethod
    def one(cls) -> LaurentPoly:
        return cls({0: 1})

    def terms(self) -> list[tuple[int, int]]:
        return list(self._c.items())

    def coeff(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def exponents(self) -> list[int]:
        return list(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def min_degree(self) -> int:
        if not self._c:
            raise DomainError("degree of the zero Laurent polynomial is undefined")
        return next(iter(self._c))

    def max_degree(self) -> int:
        if not self._c:
            raise DomainError("degree of the zero Laurent polynomial is undefined")
        return next(reversed(self._c))

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(tuple(self._c.items())))
        return self._hash

    def __add__(self, other):
        other = _as_laurent(other)
        c = dict(self._c)
        for e, v in other._c.items():
            c[e] = c.get(e, 0) + v
        return LaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        return self + (-_as_laurent(other))

    def __rsub__(self, other):
        return _as_laurent(other) - self

    def __mul__(self, other):
        other = _as_laurent(other)
        c: dict[int, int] = {}
        for (e1, v1), (e2, v2) in _cartesian(self._c.items(), other._c.items()):
            c[e1 + e2] = c.get(e1 + e2, 0) + v1 * v2
        return LaurentPoly(c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative powers are not supported")
        result = LaurentPoly.one()
        for _ in range(k):
            result = result * self
        return result

    def scale(self, k: int) -> LaurentPoly:
        return LaurentPoly({e: k * v for e, v in self._c.items()})

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by ``q**k``."""
        return LaurentPoly({e + k: v for e, v in self._c.items()})

    def substitute(self, step: int) -> LaurentPoly:
        """Evaluate at ``q**step``."""
        if step == 0:
            raise DomainError("substitution q -> q^0 is not allowed")
        return LaurentPoly({e * step: v for e, v in self._c.items()})

    def evaluate(self, x):
        x = Fraction(x)
        return sum((v * x**e for e, v in self._c.items()), Fraction(0))

    def divexact(self, other: LaurentPoly) -> LaurentPoly:
        """Exact quotient; raises DomainError if ``other`` does not divide."""
        other = _as_laurent(other)
        if other.is_zero():
            raise DomainError("division by the zero Laurent polynomial")
        if self.is_zero():
            return LaurentPoly()
        lo, lead = other.min_degree(), other.coeff(other.min_degree())
        top = self.max_degree() - other.max_degree()
        rem = dict(self._c)
        quot: dict[int, int] = {}
        while rem:
            e = min(rem)
            v = rem[e]
            if v % lead:
                raise DomainError("inexact Laurent division")
            t_e, t_v = e - lo, v // lead
            if t_e > top:
                raise DomainError("inexact Laurent division")
            quot[t_e] = t_v
            for oe, ov in other._c.items():
                k = oe + t_e
                nv = rem.get(k, 0) - t_v * ov
                if nv:
                    rem[k] = nv
                else:
                    rem.pop(k, None)
        return LaurentPoly(quot)

    def __str__(self):
        if not self._c:
            return "0"
        return " + ".join(f"{v}*q^{e}" for e, v in self._c.items())

    def __repr__(self):
        return f"LaurentPoly('{self}')"


def _as_laurent(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly({0: x})
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


_TERM_RE = re.compile(r"^\s*([+-]?\d+)\s*\*\s*q\s*\^\s*([+-]?\d+)\s*$")


def parse_laurent(text: str) -> LaurentPoly:
    """Inverse of ``str(LaurentPoly)``."""
    if text.strip() == "0":
        return LaurentPoly()
    c: dict[int, int] = {}
    for part in text.split(" + "):
        m = _TERM_RE.match(part)
        if not m:
            raise DomainError(f"bad Laurent term {part!r}")
        e = int(m.group(2))
        c[e] = c.get(e, 0) + int(m.group(1))
    return LaurentPoly(c)


q = LaurentPoly.monomial(1)


def qbinomial(a: int, b: int, step: int = 1) -> LaurentPoly:
    """Gaussian binomial coefficient evaluated at ``q**step``.

    Computed as the exact quotient of ``(1-q^a)...(1-q^(a-b+1))`` by
    ``(1-q^b)...(1-q)``.
    """
    if b < 0 or a < b:
        raise DomainError(f"q-binomial needs a >= b >= 0, got ({a}, {b})")
    if step == 0:
        raise DomainError("q-binomial step must be nonzero")
    b = min(b, a - b)
    num = LaurentPoly.one()
    for i in range(b):
        num = num * (1 - LaurentPoly.monomial(a - i))
    for i in range(1, b + 1):
        num = num.divexact(1 - LaurentPoly.monomial(i))
    return num.substitute(step)


class RationalMultiset:
    """Immutable finite multiset of rationals with positive multiplicities."""

    __slots__ = ("_m",)

    def __init__(self, counts: Mapping | Iterable = ()):
        m: Counter = Counter()
        if isinstance(counts, Mapping):
            for x, k in counts.items():
                if int(k) != k or k < 0:
                    raise DomainError(f"bad multiplicity {k!r}")
                if k:
                    m[Fraction(x)] += int(k)
        else:
            for x in counts:
                m[Fraction(x)] += 1
        object.__setattr__(self, "_m", dict(sorted(m.items())))

    def __setattr__(self, name, value):
        raise AttributeError("RationalMultiset is immutable")

    def mult(self, x) -> int:
        return self._m.get(Fraction(x), 0)

    def __contains__(self, x):
        return Fraction(x) in self._m

    def items(self) -> list[tuple[Fraction, int]]:
        return list(self._m.items())

    def distinct(self) -> list[Fraction]:
        return list(self._m)

    def __iter__(self) -> Iterator[Fraction]:
        for x, k in self._m.items():
            for _ in range(k):
                yield x

    def __len__(self):
        return sum(self._m.values())

    def __bool__(self):
        return bool(self._m)

    def __eq__(self, other):
        if not isinstance(other, RationalMultiset):
            return NotImplemented
        return self._m == other._m

    def __hash__(self):
        return hash(tuple(self._m.items()))

    def __add__(self, other: RationalMultiset) -> RationalMultiset:
        """Multiset union (multiplicities add)."""
        m = Counter(self._m)
        m.update(other._m)
        return RationalMultiset(m)

    def min(self) -> Fraction:
        if not self._m:
            raise DomainError("min of an empty multiset")
        return next(iter(self._m))

    def max(self) -> Fraction:
        if not self._m:
            raise DomainError("max of an empty multiset")
        return next(reversed(self._m))

    def to_set(self) -> RationalMultiset:
        return RationalMultiset({x: 1 for x in self._m})

    def remove_one(self, x) -> RationalMultiset:
        x = Fraction(x)
        if x not in self._m:
            raise DomainError(f"{render_rational(x)} is not in the multiset")
        m = dict(self._m)
        m[x] -= 1
        return RationalMultiset(m)

    def sumset(self, other: RationalMultiset) -> RationalMultiset:
        """All pairwise sums, multiplicities multiplied."""
        m: Counter = Counter()
        for (a, ka), (b, kb) in _cartesian(self._m.items(), other._m.items()):
            m[a + b] += ka * kb
        return RationalMultiset(m)

    def __str__(self):
        body = ", ".join(f"{render_rational(x)}:{k}" for x, k in self._m.items())
        return "{" + body + "}"

    __repr__ = __str__


def multiset_sumset(a: RationalMultiset, b: RationalMultiset) -> RationalMultiset:
    return a.sumset(b)
