"""Bernstein-Sato root sets for diagonal hypersurfaces and their tuples.

A root ``g`` in a :class:`RootSet` stands for the factor ``(s + g)`` of the
full Bernstein-Sato polynomial ``b_f``.  The reduced polynomial divides out one
copy of ``(s + r)`` with ``r`` the codimension.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from .errors import DomainError
from .exactnum import INF, ExtValue, RationalMultiset, ext_json, ext_sub, render_rational
from .spectrum import BPSpec, HRHValue, SpectrumData, bp_spectrum


@dataclass(frozen=True)
class RootSet:
    roots: RationalMultiset
    r: int

    def __post_init__(self):
        if self.r < 1:
            raise DomainError("codimension r must be positive")
        if any(g <= 0 for g in self.roots.distinct()):
            raise DomainError("Bernstein-Sato roots here are positive rationals")

    def reduced(self) -> RationalMultiset:
        """Roots of ``b_f(s) / (s + r)``."""
        if self.r not in self.roots:
            raise DomainError(f"root {self.r} (the factor s+{self.r}) is missing")
        return self.roots.remove_one(self.r)

    def to_json(self) -> dict:
        return {"r": self.r, "roots": [render_rational(g) for g in self.roots]}


def spectrum_bfunction(sp: SpectrumData) -> RootSet:
    """Full b-function roots of a quasi-homogeneous isolated hypersurface.

    The reduced roots are the distinct spectral numbers.
    """
    reduced = sp.values.to_set()
    return RootSet(reduced + RationalMultiset([1]), 1)


def bp_bfunction(spec: BPSpec) -> RootSet:
    return spectrum_bfunction(bp_spectrum(spec))


def bp_reduced_roots(spec: BPSpec) -> RationalMultiset:
    return bp_spectrum(spec).values.to_set()


def tuple_ts_roots(a: RootSet, b: RootSet) -> RootSet:
    """Roots for the tuple ``(f, g)`` of functions in disjoint variables.

    Every pairwise sum of roots, kept as a set.
    """
    return RootSet(a.roots.sumset(b.roots).to_set(), a.r + b.r)


def tuple_roots(*parts: RootSet) -> RootSet:
    return reduce(tuple_ts_roots, parts)


def alpha_tilde_int(rs: RootSet) -> ExtValue:
    """Smallest integer root of the reduced b-function, or +inf."""
    for g in rs.reduced().distinct():
        if g.denominator == 1:
            return int(g)
    return INF


@dataclass(frozen=True)
class Inequality:
    lhs: ExtValue
    rhs: ExtValue
    cite: str

    @property
    def holds(self) -> bool:
        # +inf <= +inf counts as holding
        return self.lhs <= self.rhs

    def to_json(self) -> dict:
        return {"lhs": ext_json(self.lhs), "rhs": ext_json(self.rhs), "holds": self.holds, "cite": self.cite}


@dataclass(frozen=True)
class IneqReport:
    entries: dict = field(default_factory=dict)

    @property
    def holds(self) -> bool:
        return all(e.holds for e in self.entries.values())

    def __getitem__(self, name) -> Inequality:
        return self.entries[name]


def check_cor_bs(
    alpha_z: ExtValue,
    r: int,
    hrh: HRHValue,
    sp_min: ExtValue | None = None,
    p_q: int | None = None,
    n: int | None = None,
) -> IneqReport:
    """Check the b-function lower bounds on HRH and on Sp_min,Z.

    Interval-valued HRH is compared through its lower end, so "holds" means
    the inequality is guaranteed.  ``p_q`` is the Hodge-filtration index
    ``p(Q, F)``; the corresponding bound also needs the ambient dimension ``n``.
    """
    entries = {
        "alpha_vs_hrh": Inequality(ext_sub(alpha_z, r + 1), hrh.lo, "alpha_tilde_Z - r - 1 <= HRH"),
    }
    if sp_min is not None:
        entries["alpha_vs_sp_min"] = Inequality(
            ext_sub(alpha_z, r - 1), sp_min, "alpha_tilde_Z - r + 1 <= Sp_min,Z"
        )
    if p_q is not None:
        if n is None:
            raise DomainError("the p(Q,F) bound needs the ambient dimension n")
        entries["alpha_vs_pq"] = Inequality(alpha_z, p_q + n + r, "alpha_tilde_Z <= p(Q,F) + n + r")
    return IneqReport(entries)


def literal_rootset(r: int, roots) -> RootSet:
    """A user-supplied b-function, e.g. one printed in the literature."""
    return RootSet(RationalMultiset(Fraction(g) for g in roots), r)

