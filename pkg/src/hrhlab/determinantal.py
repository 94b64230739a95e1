"""Local cohomology classes of determinantal varieties and derived invariants.

For generic, skew-symmetric (odd and even size) and symmetric matrices, the
generating series ``H_p(q) = sum_j [H^j_{Z_p}(O_X)] q^j`` is expanded in the
classes ``[D_s]`` of intersection-cohomology D-modules.  Codimension, the
local cohomological dimension and ``lcdef_gen`` are read off the series and
compared against their closed forms; any disagreement raises
:class:`ConsistencyError`.

``Z_p`` is the locus of rank <= p (generic, symmetric) or rank <= 2p (skew).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import NamedTuple

from .errors import ConsistencyError, DomainError
from .exactnum import INF, ExtValue, LaurentPoly, ext_json, qbinomial
from .spectrum import HRHValue


class MatrixCase(str, enum.Enum):
    GENERIC = "generic"
    SKEW_ODD = "skew-odd"
    SKEW_EVEN = "skew-even"
    SYMMETRIC = "symmetric"


@dataclass(frozen=True)
class DetSpec:
    """``m``/``n`` follow the case: generic m x n; skew (2m+1) or 2m square; symmetric n x n."""

    case: MatrixCase
    p: int
    m: int | None = None
    n: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "case", MatrixCase(self.case))
        if self.case is MatrixCase.GENERIC:
            if self.m is None or self.n is None or not self.m >= self.n >= 1:
                raise DomainError("generic matrices need m >= n >= 1")
        elif self.case is MatrixCase.SYMMETRIC:
            if self.n is None or self.n < 1 or self.m is not None:
                raise DomainError("symmetric matrices need n >= 1 (and no m)")
        else:
            if self.m is None or self.m < 1 or self.n is not None:
                raise DomainError("skew-symmetric matrices need m >= 1 (and no n)")
        if not 0 <= self.p <= self.p_max:
            raise DomainError(f"rank parameter p={self.p} outside 0..{self.p_max}")

    @classmethod
    def generic(cls, m: int, n: int, p: int) -> DetSpec:
        return cls(MatrixCase.GENERIC, p, m=m, n=n)

    @classmethod
    def skew_odd(cls, m: int, p: int) -> DetSpec:
        return cls(MatrixCase.SKEW_ODD, p, m=m)

    @classmethod
    def skew_even(cls, m: int, p: int) -> DetSpec:
        return cls(MatrixCase.SKEW_EVEN, p, m=m)

    @classmethod
    def symmetric(cls, n: int, p: int) -> DetSpec:
        return cls(MatrixCase.SYMMETRIC, p, n=n)

    @property
    def p_max(self) -> int:
        """Rank parameter at which Z_p is the whole space."""
        if self.case in (MatrixCase.GENERIC, MatrixCase.SYMMETRIC):
            return self.n
        return self.m

    @property
    def ambient_dim(self) -> int:
        c, m, n = self.case, self.m, self.n
        if c is MatrixCase.GENERIC:
            return m * n
        if c is MatrixCase.SKEW_ODD:
            return comb(2 * m + 1, 2)
        if c is MatrixCase.SKEW_EVEN:
            return comb(2 * m, 2)
        return comb(n + 1, 2)

    @property
    def in_range(self) -> bool:
        """Singular, non-rationally-smooth range treated by the closed forms."""
        if self.case is MatrixCase.SYMMETRIC:
            return 2 <= self.p < self.n
        return 1 <= self.p < self.p_max

    def with_p(self, p: int) -> DetSpec:
        return DetSpec(self.case, p, self.m, self.n)

    def __str__(self):
        if self.case is MatrixCase.GENERIC:
            return f"det generic m={self.m} n={self.n} p={self.p}"
        if self.case is MatrixCase.SYMMETRIC:
            return f"det symmetric n={self.n} p={self.p}"
        return f"det {self.case.value} m={self.m} p={self.p}"


GrothVector = dict  # class index s -> LaurentPoly coefficient of [D_s]


def groth_vector(spec: DetSpec) -> dict[int, LaurentPoly]:
    """Expand ``H_p(q)`` in the classes ``[D_s]``."""
    c, p, m, n = spec.case, spec.p, spec.m, spec.n
    if p >= spec.p_max:
        raise DomainError(f"the local cohomology series needs p < {spec.p_max}")
    terms: list[tuple[int, int, int, int, int]] = []  # (s, shift, a, b, step)
    if c is MatrixCase.GENERIC:
        for s in range(p + 1):
            terms.append((s, (n - p) ** 2 + (n - s) * (m - n), n - s - 1, p - s, 2))
    elif c is MatrixCase.SKEW_ODD:
        for s in range(p + 1):
            terms.append((s, 2 * (m - p) ** 2 + (m - p) + 2 * (p - s), m - 1 - s, p - s, 4))
    elif c is MatrixCase.SKEW_EVEN:
        for s in range(p + 1):
            terms.append((s, 2 * (m - p) ** 2 - (m - p), m - 1 - s, p - s, 4))
    else:
        for ell in range(p // 2 + 1):
            shift = 1 + comb(n - p + 2 * ell + 1, 2) - comb(2 * ell + 2, 2)
            terms.append((p - 2 * ell, shift, (n - p + 2 * ell - 1) // 2, ell, -4))
    vec: dict[int, LaurentPoly] = {}
    for s, shift, a, b, step in terms:
        poly = qbinomial(a, b, step).shift(shift)
        vec[s] = vec.get(s, LaurentPoly()) + poly
    for s, poly in vec.items():
        if poly.is_zero() or any(v < 0 for _, v in poly.terms()):
            raise ConsistencyError(f"class [D_{s}] has a zero or negative coefficient series")
    return dict(sorted(vec.items()))


def codim(spec: DetSpec) -> int:
    c, p, m, n = spec.case, spec.p, spec.m, spec.n
    if c is MatrixCase.GENERIC:
        return (m - p) * (n - p)
    if c is MatrixCase.SKEW_ODD:
        return (m - p) * (2 * (m - p) + 1)
    if c is MatrixCase.SKEW_EVEN:
        return (m - p) * (2 * (m - p) - 1)
    return comb(n - p + 1, 2)


def dim(spec: DetSpec) -> int:
    return spec.ambient_dim - codim(spec)


def _min_exponent(vec) -> int:
    return min(poly.min_degree() for poly in vec.values())


def _max_exponent(vec) -> int:
    return max(poly.max_degree() for poly in vec.values())


def codim_from_series(spec: DetSpec) -> int:
    """Lowest nonvanishing local cohomology degree."""
    return _min_exponent(groth_vector(spec))


def _ic_closed_form(spec: DetSpec) -> bool:
    c = spec.case
    if c is MatrixCase.GENERIC:
        return spec.m > spec.n
    if c is MatrixCase.SKEW_ODD:
        return True
    if c is MatrixCase.SKEW_EVEN:
        return False
    return (spec.n - spec.p) % 2 == 0


def ic_equals_h(spec: DetSpec) -> bool:
    """Is the lowest local cohomology module equal to the intersection complex?"""
    if spec.p == spec.p_max:
        return True
    vec = groth_vector(spec)
    c_p = _min_exponent(vec)
    present = [s for s, poly in vec.items() if poly.coeff(c_p)]
    computed = present == [spec.p] and vec[spec.p].coeff(c_p) == 1
    if spec.in_range and computed != _ic_closed_form(spec):
        raise ConsistencyError(f"{spec}: series gives ic_equals_h={computed}, closed form disagrees")
    return computed


class LcdefData(NamedTuple):
    lcdef_gen: int
    lcd: int
    lcdef: int


def _witness_class(spec: DetSpec) -> int:
    # D_{p-1}, or D_{p-2} for symmetric matrices: the class supported on Z_{p,nRS}
    return spec.p - (2 if spec.case is MatrixCase.SYMMETRIC else 1)


def _lcdef_gen_closed_form(spec: DetSpec) -> int:
    c, p, m, n = spec.case, spec.p, spec.m, spec.n
    if c is MatrixCase.GENERIC:
        return m + n - 2 * p - 2
    if c is MatrixCase.SKEW_ODD:
        return 4 * (m - p - 1) + 2
    if c is MatrixCase.SKEW_EVEN:
        return 4 * (m - p - 1)
    return 2 * (n - p - 1)


def _lcd_closed_form(spec: DetSpec) -> int:
    c, p, m, n = spec.case, spec.p, spec.m, spec.n
    if c is MatrixCase.GENERIC:
        return m * n - (p + 1) ** 2 + 1
    if c is MatrixCase.SKEW_ODD:
        return comb(2 * m + 1, 2) - comb(2 * p + 2, 2) + 1
    if c is MatrixCase.SKEW_EVEN:
        return comb(2 * m, 2) - comb(2 * p + 2, 2) + 1
    if p % 2 == 0:
        return 1 + comb(n + 1, 2) - comb(p + 2, 2)
    return 1 + comb(n, 2) - comb(p + 1, 2)


def _lcdef_gap_closed_form(spec: DetSpec) -> int:
    """lcdef - lcdef_gen."""
    c, p, m, n = spec.case, spec.p, spec.m, spec.n
    if c is MatrixCase.GENERIC:
        return (p - 1) * (m + n - 2 * p - 2)
    if c is MatrixCase.SKEW_ODD:
        return 2 * (p - 1) * (2 * (m - p - 1) + 1)
    if c is MatrixCase.SKEW_EVEN:
        return 4 * (p - 1) * (m - p - 1)
    if p % 2 == 0:
        return (n - p - 1) * (p - 2)
    return (n - p - 1) * (p - 3)


def lcdef_invariants(spec: DetSpec) -> LcdefData:
    """(lcdef_gen, lcd, lcdef), read off the series and checked against closed forms."""
    if spec.p == spec.p_max:
        return LcdefData(0, 0, 0)
    vec = groth_vector(spec)
    c_p = _min_exponent(vec)
    lcd = _max_exponent(vec)
    lcdef = lcd - c_p
    w = _witness_class(spec)
    lcdef_gen = vec[w].max_degree() - c_p if w in vec and spec.in_range else 0
    if spec.in_range:
        checks = {
            "codim": (c_p, codim(spec)),
            "lcdef_gen": (lcdef_gen, _lcdef_gen_closed_form(spec)),
            "lcd": (lcd, _lcd_closed_form(spec)),
            "lcdef - lcdef_gen": (lcdef - lcdef_gen, _lcdef_gap_closed_form(spec)),
        }
        for name, (series, closed) in checks.items():
            if series != closed:
                raise ConsistencyError(f"{spec}: {name} is {series} from the series but {closed} in closed form")
    return LcdefData(lcdef_gen, lcd, lcdef)


def _nrs_closed_form(spec: DetSpec) -> int:
    c, p, m, n = spec.case, spec.p, spec.m, spec.n
    if c is MatrixCase.GENERIC:
        return m + n - 2 * p + 1
    if c is MatrixCase.SKEW_ODD:
        return 4 * (m - p) + 3
    if c is MatrixCase.SKEW_EVEN:
        return 4 * (m - p) + 1
    return 2 * (n - p) + 3


def nrs_codim(spec: DetSpec) -> ExtValue:
    """Codimension in Z_p of the locus where Z_p is not rationally smooth (+inf if empty)."""
    if not spec.in_range:
        return INF
    lower = spec.with_p(_witness_class(spec))
    from_codims = codim(lower) - codim(spec)
    closed = _nrs_closed_form(spec)
    if from_codims != closed:
        raise ConsistencyError(f"{spec}: nRS codimension {from_codims} vs closed form {closed}")
    return closed


@dataclass(frozen=True)
class DetReport:
    spec: DetSpec
    codim: int
    dim: int
    ic_equals_h: bool
    lcdef_gen: int
    lcd: int
    lcdef: int
    nrs_codim: ExtValue
    hrh: HRHValue
    is_rhm: bool

    def to_json(self) -> dict:
        return {
            "input": str(self.spec),
            "codim": self.codim,
            "dim": self.dim,
            "ic_equals_h": self.ic_equals_h,
            "lcdef_gen": self.lcdef_gen,
            "lcd": self.lcd,
            "lcdef": self.lcdef,
            "nrs_codim": ext_json(self.nrs_codim),
            "HRH": self.hrh.to_json(),
            "is_rhm": self.is_rhm,
        }


def det_report(spec: DetSpec) -> DetReport:
    c_p = codim(spec)
    inv = lcdef_invariants(spec)
    ic = ic_equals_h(spec)
    nrs = nrs_codim(spec)
    # rationally smooth iff no higher local cohomology and the lowest one is IC
    is_rhm = inv.lcdef == 0 and ic
    if spec.in_range:
        if is_rhm:
            raise ConsistencyError(f"{spec}: in-range determinantal variety came out rationally smooth")
        # rational singularities give HRH >= 0; the nRS codimension bound caps it
        hi = (nrs - inv.lcdef_gen - 3) // 2
        if hi < 0:
            raise ConsistencyError(f"{spec}: nRS codimension bound leaves no room for HRH >= 0")
        hrh = HRHValue.interval(0, hi)
        if inv.lcdef_gen > inv.lcdef or inv.lcdef_gen + 2 * hrh.lo + 3 > nrs:
            raise ConsistencyError(f"{spec}: defect inequalities violated")
    else:
        if not is_rhm:
            raise ConsistencyError(f"{spec}: boundary case expected to be rationally smooth")
        hrh = HRHValue.exact(INF)
    return DetReport(spec, c_p, dim(spec), ic, inv.lcdef_gen, inv.lcd, inv.lcdef, nrs, hrh, is_rhm)


def in_range_grid(max_size: int = 8):
    """Every in-range spec with matrix size parameters up to ``max_size``."""
    for m in range(2, max_size + 1):
        for n in range(2, m + 1):
            for p in range(1, n):
                yield DetSpec.generic(m, n, p)
    for m in range(2, max_size + 1):
        for p in range(1, m):
            yield DetSpec.skew_odd(m, p)
            yield DetSpec.skew_even(m, p)
    for n in range(3, max_size + 1):
        for p in range(2, n):
            yield DetSpec.symmetric(n, p)
