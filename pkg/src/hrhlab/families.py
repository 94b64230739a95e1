"""HRH verdicts for affine cones, normal affine toric varieties and secant varieties."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DomainError
from .exactnum import INF
from .spectrum import HRHValue, promote


@dataclass(frozen=True)
class HodgeDiamond:
    """Hodge numbers ``h^{p,q}`` of a smooth projective variety of dimension ``n``."""

    n: int
    h: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = self.n
        if n < 0 or len(self.h) != n + 1 or any(len(row) != n + 1 for row in self.h):
            raise DomainError("Hodge diamond must be an (n+1) x (n+1) table")
        for p in range(n + 1):
            for q in range(n + 1):
                v = self.h[p][q]
                if v < 0:
                    raise DomainError(f"negative Hodge number h^{p},{q}")
                if v != self.h[q][p]:
                    raise DomainError(f"Hodge symmetry fails at ({p},{q})")
                if v != self.h[n - p][n - q]:
                    raise DomainError(f"Serre symmetry fails at ({p},{q})")
        if self.h[0][0] < 1:
            raise DomainError("h^{0,0} must be at least 1")

    @classmethod
    def from_entries(cls, n: int, entries: Iterable[Sequence[int]]) -> HodgeDiamond:
        """Build from ``(p, q, value)`` triples, filling in the symmetric entries.

        Unlisted entries are 0; conflicting entries raise.
        """
        if n < 0:
            raise DomainError("dimension must be non-negative")
        table: dict[tuple[int, int], int] = {}
        for p, q, v in entries:
            if not (0 <= p <= n and 0 <= q <= n):
                raise DomainError(f"Hodge index ({p},{q}) outside 0..{n}")
            for key in ((p, q), (q, p), (n - p, n - q), (n - q, n - p)):
                if table.setdefault(key, v) != v:
                    raise DomainError(f"conflicting Hodge numbers at {key}")
        h = tuple(tuple(table.get((p, q), 0) for q in range(n + 1)) for p in range(n + 1))
        return cls(n, h)

    @classmethod
    def from_json(cls, data: dict) -> HodgeDiamond:
        return cls.from_entries(int(data["n"]), [tuple(e) for e in data["h"]])

    def to_json(self) -> dict:
        return {"n": self.n, "h": [[p, q, v] for p, q, v in self.entries()]}

    def entries(self) -> list[tuple[int, int, int]]:
        """Nonzero entries as ``(p, q, value)``."""
        return [
            (p, q, self.h[p][q])
            for p in range(self.n + 1)
            for q in range(self.n + 1)
            if self.h[p][q]
        ]

    def hodge(self, p: int, q: int) -> int:
        if 0 <= p <= self.n and 0 <= q <= self.n:
            return self.h[p][q]
        return 0

    def betti(self, k: int) -> int:
        return sum(self.hodge(p, k - p) for p in range(self.n + 1))

    def transpose(self) -> HodgeDiamond:
        return HodgeDiamond(self.n, tuple(zip(*self.h)))


def projective_space(n: int) -> HodgeDiamond:
    return HodgeDiamond.from_entries(n, [(p, p, 1) for p in range(n + 1)])


DIAMONDS = {
    "P1": projective_space(1),
    "P2": projective_space(2),
    "P3": projective_space(3),
    "P1xP1": HodgeDiamond.from_entries(2, [(0, 0, 1), (1, 1, 2)]),
    # p_g = q = 0, h^{1,1} = 9
    "godeaux": HodgeDiamond.from_entries(2, [(0, 0, 1), (1, 1, 9)]),
    "K3": HodgeDiamond.from_entries(2, [(0, 0, 1), (0, 2, 1), (1, 1, 20)]),
    "elliptic": HodgeDiamond.from_entries(1, [(0, 0, 1), (0, 1, 1)]),
}


def cone_hrh(dia: HodgeDiamond) -> HRHValue:
    """HRH of the affine cone over ``X`` for an ample line bundle.

    Level ``k`` needs ``H^i(Omega^p) = 0`` for ``i != p`` and one-dimensional
    ``H^p(Omega^p)`` for every ``p <= k``.  The cup-product maps by ``c_1(L)``
    are injective in that range, so being isomorphisms is a dimension count
    anchored at ``h^{0,0} = 1``.
    """
    n = dia.n
    k0 = -1
    for p in range((n + 1) // 2 + 1):
        off_diagonal = any(dia.hodge(p, q) for q in range(n + 1) if q != p)
        if off_diagonal or dia.hodge(p, p) != 1:
            break
        k0 = p
    if k0 < 0:
        return HRHValue.exact(-1)
    return HRHValue.exact(promote(k0, n + 1))


def cone_lcdef(dia: HodgeDiamond) -> int:
    """Smallest ``c >= 0`` with ``b_i = b_{i+2}`` for ``-1 <= i <= n-3-c`` (``b_{-1} = 0``)."""
    n = dia.n
    b = lambda i: dia.betti(i) if i >= 0 else 0  # noqa: E731
    c = 0
    while any(b(i) != b(i + 2) for i in range(-1, n - 3 - c + 1)):
        c += 1
    return c


def _primitive(ray: Sequence[int]) -> tuple[int, ...]:
    g = 0
    for x in ray:
        g = gcd(g, int(x))
    if g == 0:
        raise DomainError("zero ray")
    return tuple(int(x) // g for x in ray)


@dataclass(frozen=True)
class ToricCone:
    rays: tuple[tuple[int, ...], ...]

    def __init__(self, rays: Iterable[Sequence[int]]):
        prim = []
        for r in rays:
            pr = _primitive(r)
            if pr not in prim:
                prim.append(pr)
        if not prim:
            raise DomainError("a cone needs at least one ray")
        if len({len(r) for r in prim}) != 1:
            raise DomainError("rays must live in the same lattice")
        object.__setattr__(self, "rays", tuple(prim))

    def to_json(self) -> dict:
        return {"rays": [list(r) for r in self.rays]}

    def __str__(self):
        return ",".join("(" + ",".join(map(str, r)) + ")" for r in self.rays)


def exact_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q by fraction-exact Gaussian elimination."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] != 0), None)
        if pivot is None:
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        for i in range(len(mat)):
            if i != rank and mat[i][col] != 0:
                f = mat[i][col] / mat[rank][col]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rank])]
        rank += 1
    return rank


def is_simplicial(cone: ToricCone) -> bool:
    return exact_rank(cone.rays) == len(cone.rays)


def toric_hrh(cone: ToricCone) -> HRHValue:
    """+inf for simplicial cones, 0 otherwise."""
    return HRHValue.exact(INF if is_simplicial(cone) else 0)


def secant_hrh(is_p1: bool, has_vanishing_hi_O: bool) -> HRHValue:
    """Secant variety of a sufficiently positive embedding of ``X``.

    ``has_vanishing_hi_O`` means ``H^i(O_X) = 0`` for all ``i >= 1``.
    """
    if is_p1:
        return HRHValue.exact(INF)
    if has_vanishing_hi_O:
        return HRHValue.exact(0)
    return HRHValue.exact(-1)
