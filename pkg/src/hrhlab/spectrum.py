"""Spectra of diagonal isolated hypersurface singularities and the HRH level.

A Brieskorn-Pham polynomial ``x_1^a_1 + ... + x_n^a_n`` has spectrum
``{ sum_j i_j / a_j : 1 <= i_j <= a_j - 1 }``.  From the spectrum we read off
the minimal integer spectral number, the Hodge numbers ``s_p`` of the Milnor
fiber cohomology and the HRH level.  Link-invariant tables can be checked
against the vanishing criterion for ``HRH_x >= k`` at an isolated point.
"""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from itertools import product
from math import prod
from typing import Sequence

from .errors import DomainError
from .exactnum import INF, ExtValue, RationalMultiset, ext_json, is_inf, render_rational

DEFAULT_MAX_MU = 10**6


def max_mu() -> int:
    """Enumeration cap, overridable through ``HRHLAB_MAX_MU``."""
    raw = os.environ.get("HRHLAB_MAX_MU")
    if not raw:
        return DEFAULT_MAX_MU
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"HRHLAB_MAX_MU must be an integer, got {raw!r}") from None
    if value < 1:
        raise DomainError("HRHLAB_MAX_MU must be positive")
    return value


@dataclass(frozen=True)
class BPSpec:
    """Exponents of a Brieskorn-Pham polynomial."""

    exponents: tuple[int, ...]

    def __init__(self, exponents: Sequence[int]):
        exps = tuple(int(a) for a in exponents)
        if not exps:
            raise DomainError("a Brieskorn-Pham polynomial needs at least one variable")
        for a in exps:
            if a < 2:
                raise DomainError(f"exponent must be >= 2, got {a}")
        object.__setattr__(self, "exponents", exps)

    @property
    def n(self) -> int:
        return len(self.exponents)

    @property
    def milnor_number(self) -> int:
        return prod(a - 1 for a in self.exponents)

    def __add__(self, other: BPSpec) -> BPSpec:
        """Thom-Sebastiani sum in disjoint variables."""
        return BPSpec(self.exponents + other.exponents)

    def __str__(self):
        return "bp(" + ",".join(map(str, self.exponents)) + ")"


@dataclass(frozen=True)
class SpectrumData:
    values: RationalMultiset
    ambient_vars: int

    def __post_init__(self):
        if self.ambient_vars < 1:
            raise DomainError("ambient_vars must be positive")
        for a in self.values.distinct():
            if not 0 < a < self.ambient_vars:
                raise DomainError(
                    f"spectral number {render_rational(a)} outside (0, {self.ambient_vars})"
                )

    @property
    def d(self) -> int:
        return self.ambient_vars - 1

    def __len__(self):
        return len(self.values)

    def ts(self, other: SpectrumData) -> SpectrumData:
        """Spectrum of the Thom-Sebastiani sum."""
        return SpectrumData(self.values.sumset(other.values), self.ambient_vars + other.ambient_vars)

    def to_json(self) -> dict:
        return {
            "ambient_vars": self.ambient_vars,
            "values": [{"alpha": render_rational(a), "mult": k} for a, k in self.values.items()],
        }

    @classmethod
    def from_json(cls, data: dict) -> SpectrumData:
        from .exactnum import parse_rational

        counts = {parse_rational(v["alpha"]): int(v["mult"]) for v in data["values"]}
        return cls(RationalMultiset(counts), int(data["ambient_vars"]))


def _variable_spectrum(a: int) -> RationalMultiset:
    return RationalMultiset({Fraction(i, a): 1 for i in range(1, a)})


def bp_spectrum(spec: BPSpec) -> SpectrumData:
    """Spectrum by iterated convolution of the one-variable spectra."""
    cap = max_mu()
    acc = RationalMultiset({0: 1})
    for a in spec.exponents:
        if len(acc.distinct()) * (a - 1) > cap:
            raise DomainError(f"spectrum convolution exceeds HRHLAB_MAX_MU={cap}")
        acc = acc.sumset(_variable_spectrum(a))
    return SpectrumData(acc, spec.n)


def enumerate_bp_spectrum(spec: BPSpec) -> SpectrumData:
    """Brute-force spectrum over all index tuples; the reference route."""
    cap = max_mu()
    if spec.milnor_number > cap:
        raise DomainError(
            f"Milnor number {spec.milnor_number} exceeds HRHLAB_MAX_MU={cap}"
        )
    values = (
        sum((Fraction(i, a) for i, a in zip(idx, spec.exponents)), Fraction(0))
        for idx in product(*(range(1, a) for a in spec.exponents))
    )
    return SpectrumData(RationalMultiset(values), spec.n)


def sp_min_int(sp: SpectrumData) -> ExtValue:
    """Smallest integer spectral number, or +inf."""
    for a in sp.values.distinct():
        if a.denominator == 1:
            return int(a)
    return INF


class HRHKind(str, enum.Enum):
    EXACT = "exact"
    LOWER_BOUND = "lower_bound"
    INTERVAL = "interval"


@dataclass(frozen=True)
class HRHValue:
    """HRH level: an exact value, a lower bound, or a closed interval.

    Values are integers >= -1 or ``INF``.
    """

    lo: ExtValue
    hi: ExtValue
    kind: HRHKind

    def __post_init__(self):
        for v in (self.lo, self.hi):
            if not is_inf(v) and (int(v) != v or v < -1):
                raise DomainError(f"HRH values are integers >= -1 or inf, got {v!r}")
        if self.lo > self.hi:
            raise DomainError(f"empty HRH interval [{self.lo}, {self.hi}]")

    @classmethod
    def exact(cls, v: ExtValue) -> HRHValue:
        v = v if is_inf(v) else int(v)
        return cls(v, v, HRHKind.EXACT)

    @classmethod
    def interval(cls, lo: ExtValue, hi: ExtValue) -> HRHValue:
        if lo == hi:
            return cls.exact(lo)
        return cls(lo, hi, HRHKind.INTERVAL)

    @classmethod
    def lower_bound(cls, lo: int) -> HRHValue:
        return cls(lo, INF, HRHKind.LOWER_BOUND)

    @property
    def is_exact(self) -> bool:
        return self.kind is HRHKind.EXACT

    @property
    def value(self) -> ExtValue:
        if not self.is_exact:
            raise DomainError(f"HRH is only known as {self}")
        return self.lo

    def contains(self, k: ExtValue) -> bool:
        return self.lo <= k <= self.hi

    def to_json(self):
        if self.is_exact:
            return ext_json(self.lo)
        return {"kind": self.kind.value, "lo": ext_json(self.lo), "hi": ext_json(self.hi)}

    def __str__(self):
        fmt = lambda v: "+inf" if is_inf(v) else str(v)  # noqa: E731
        if self.is_exact:
            return fmt(self.lo)
        if self.kind is HRHKind.LOWER_BOUND:
            return f">= {fmt(self.lo)}"
        return f"[{fmt(self.lo)}, {fmt(self.hi)}]"


def promote(k: int, d: int) -> ExtValue:
    """A finite HRH level above (d-3)/2 forces a rational homology manifold."""
    return INF if 2 * k > d - 3 else k


def hrh_isolated_hypersurface(sp: SpectrumData) -> HRHValue:
    """HRH = Sp_min,Z - 2 at an isolated hypersurface singular point."""
    m = sp_min_int(sp)
    return HRHValue.exact(INF if is_inf(m) else m - 2)


@dataclass(frozen=True)
class MilnorVector:
    d: int
    s: tuple[int, ...]

    def __post_init__(self):
        if self.d < 0 or len(self.s) != self.d + 1:
            raise DomainError("MilnorVector needs d >= 0 and exactly d+1 entries")
        if any(x < 0 for x in self.s):
            raise DomainError("Milnor fiber Hodge numbers are non-negative")


def milnor_s(sp: SpectrumData) -> MilnorVector:
    """``s_p`` = number of spectral values in ``(d-p, d-p+1]``."""
    d = sp.d
    if d < 0:
        raise DomainError("dimension must be non-negative")
    s = [0] * (d + 1)
    for a, k in sp.values.items():
        # a in (d-p, d-p+1]  <=>  p = d + 1 - ceil(a)
        ceil_a = -((-a.numerator) // a.denominator)
        p = d + 1 - ceil_a
        if 0 <= p <= d:
            s[p] += k
    return MilnorVector(d, tuple(s))


def hrh_from_milnor(ms: MilnorVector) -> HRHValue:
    """Largest k with ``s_{d-p} = s_p`` for all ``p <= k``, promoted to +inf when forced."""
    k = -1
    for p in range(ms.d + 1):
        if ms.s[ms.d - p] != ms.s[p]:
            break
        k = p
    if k < 0:
        return HRHValue.exact(-1)
    return HRHValue.exact(promote(k, ms.d))


@dataclass(frozen=True)
class CheckReport:
    holds: bool
    failures: tuple = ()

    def __bool__(self):
        return self.holds


def check_duality(sp: SpectrumData) -> CheckReport:
    """``m_alpha = m_{d+1-alpha}`` for every non-integer spectral number."""
    top = sp.ambient_vars
    bad = tuple(
        (a, k, sp.values.mult(top - a))
        for a, k in sp.values.items()
        if a.denominator != 1 and sp.values.mult(top - a) != k
    )
    return CheckReport(not bad, bad)


class LinkVerdict(str, enum.Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INVALID_TABLE = "invalid_table"


@dataclass(frozen=True)
class LinkTable:
    """Link invariants ``l^{p,q}`` for ``0 <= p, q <= d``; unset entries are 0."""

    d: int
    a: int
    entries: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.d < 0 or self.a < 0:
            raise DomainError("LinkTable needs d >= 0 and a >= 0")
        clean = {}
        for (p, q), v in self.entries.items():
            if not (0 <= p <= self.d and 0 <= q <= self.d):
                raise DomainError(f"link entry ({p},{q}) outside 0..{self.d}")
            if v < 0:
                raise DomainError(f"negative link invariant at ({p},{q})")
            if v:
                clean[(p, q)] = int(v)
        object.__setattr__(self, "entries", clean)

    def ell(self, p: int, q: int) -> int:
        return self.entries.get((p, q), 0)

    def serre_violations(self) -> list[tuple[int, int]]:
        d = self.d
        return [
            (p, q)
            for p in range(d + 1)
            for q in range(d + 1)
            if self.ell(p, q) != self.ell(d - p, d - q - 1)
        ]

    def __hash__(self):
        return hash((self.d, self.a, tuple(sorted(self.entries.items()))))


def link_table_verdict(lt: LinkTable, k: int) -> LinkVerdict:
    """Does the vanishing criterion for ``HRH_x >= k`` hold on this table?"""
    if k < 0:
        raise DomainError("k must be non-negative")
    if lt.serre_violations():
        return LinkVerdict.INVALID_TABLE
    d, a = lt.d, lt.a
    for i in range(k + 1):
        for q in range(d, d + a + 1):
            if lt.ell(d - i, q - d + i):
                return LinkVerdict.FAILS
    for i in range(1, k + 1):
        if lt.ell(d - i, d - 1 + i):
            return LinkVerdict.FAILS
    return LinkVerdict.HOLDS


def eqmf_consistency(lt: LinkTable, ms: MilnorVector) -> CheckReport:
    """``s_{d-p} - s_p = l^{p,d-p-1} - l^{p,d-p}`` for all ``0 <= p <= d``."""
    if lt.d != ms.d:
        raise DomainError(f"dimension mismatch: link table d={lt.d}, Milnor vector d={ms.d}")
    d = lt.d
    bad = tuple(
        p
        for p in range(d + 1)
        if ms.s[d - p] - ms.s[p] != lt.ell(p, d - p - 1) - lt.ell(p, d - p)
    )
    return CheckReport(not bad, bad)


def ts_spectrum(*spectra: SpectrumData) -> SpectrumData:
    return reduce(SpectrumData.ts, spectra)
