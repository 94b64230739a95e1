"""Built-in verification suite, run by ``hrhlab verify``.

Each criterion recomputes a family of results end to end and compares against
independently known values.  Randomized checks use pinned seeds, so a run is
reproducible.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import comb, prod
from typing import Callable

from . import bsato, determinantal as det
from .dsl import BP, TS, Command, RootsLit, Secant, SpLit, Tuple, parse, render
from .exactnum import INF, is_inf, qbinomial
from .families import DIAMONDS, ToricCone, cone_hrh, toric_hrh
from .spectrum import (
    BPSpec,
    HRHValue,
    bp_spectrum,
    check_duality,
    enumerate_bp_spectrum,
    hrh_from_milnor,
    hrh_isolated_hypersurface,
    milnor_s,
    sp_min_int,
)

SEED = 20240611


@dataclass(frozen=True)
class Result:
    number: int
    name: str
    suite: str
    ok: bool
    detail: str


class _Fail(Exception):
    pass


def _expect(cond: bool, what: str):
    if not cond:
        raise _Fail(what)


def _bp(*a: int) -> BPSpec:
    return BPSpec(tuple(a))


def quadric_family():
    """bp(2 x 2m): HRH = m - 2 and b-function roots {1, m}."""
    for m in range(2, 9):
        spec = _bp(*[2] * (2 * m))
        hrh = hrh_isolated_hypersurface(bp_spectrum(spec))
        _expect(hrh.is_exact and hrh.value == m - 2, f"m={m}: HRH {hrh}")
        roots = bsato.bp_bfunction(spec).roots.to_set()
        _expect(set(roots) == {1, m}, f"m={m}: roots {roots}")
    return "m = 2..8"


def sp_min_two_family():
    """bp(m x 2m) for m = 3..5: Sp_min,Z = 2 and HRH = 0."""
    for m in range(3, 6):
        sp = bp_spectrum(_bp(*[m] * (2 * m)))
        _expect(sp_min_int(sp) == 2, f"m={m}: Sp_min_Z {sp_min_int(sp)}")
        _expect(hrh_isolated_hypersurface(sp).value == 0, f"m={m}: HRH not 0")
    return "m = 3..5"


def quadric_tuple():
    f = bsato.bp_bfunction(_bp(2, 2, 2))
    rs = bsato.tuple_ts_roots(f, f)
    _expect(set(rs.roots) == {2, Fraction(5, 2), 3}, f"roots {rs.roots}")
    alpha = bsato.alpha_tilde_int(rs)
    _expect(alpha == 3, f"alpha_tilde_Z {alpha}")
    report = bsato.check_cor_bs(alpha, rs.r, HRHValue.exact(INF))
    _expect(report.holds, "inequalities fail")
    return "roots {2, 5/2, 3}, alpha_tilde_Z = 3"


def ts_failure():
    for n, m in product((3, 5, 7), repeat=2):
        for k in (n, m):
            sp = bp_spectrum(_bp(*[2] * k))
            _expect(is_inf(hrh_isolated_hypersurface(sp).value), f"quadric in {k} variables not RHM")
        total = bp_spectrum(_bp(*[2] * n)).ts(bp_spectrum(_bp(*[2] * m)))
        _expect(sp_min_int(total) == (n + m) // 2, f"n={n}, m={m}: Sp_min_Z {sp_min_int(total)}")
    return "n, m in {3, 5, 7}"


def determinantal_grid():
    count = 0
    for spec in det.in_range_grid(8):
        count += 1
        rep = det.det_report(spec)  # raises if series and closed forms disagree
        _expect(det.codim_from_series(spec) == rep.codim, f"{spec}: codim")
        _expect(rep.lcdef_gen <= rep.lcdef, f"{spec}: lcdef_gen > lcdef")
        bound = rep.lcdef_gen + 2 * rep.hrh.lo + 3
        _expect(bound <= rep.nrs_codim, f"{spec}: defect bound fails")
        if spec.case is det.MatrixCase.GENERIC:
            _expect(bound == rep.nrs_codim, f"{spec}: defect bound not sharp")
            _expect(rep.hrh.is_exact and rep.hrh.value == 0, f"{spec}: HRH {rep.hrh}")
    return f"{count} specs"


def pfaffian_crosscheck():
    rep = det.det_report(det.DetSpec.skew_even(2, 1))
    _expect((rep.hrh.lo, rep.hrh.hi) == (0, 1), f"det interval {rep.hrh}")
    hrh = hrh_isolated_hypersurface(bp_spectrum(_bp(*[2] * 6)))
    _expect(hrh.value == 1 and rep.hrh.contains(hrh.value), f"spectrum HRH {hrh}")
    _expect(rep.lcdef_gen + 2 * hrh.value + 3 == rep.nrs_codim, "bound not attained")
    return "interval [0, 1] contains 1"


def cone_examples():
    _expect(is_inf(cone_hrh(DIAMONDS["P2"]).value), "C(P2, O(2)) not RHM")
    _expect(cone_hrh(DIAMONDS["godeaux"]).value == 0, "Godeaux cone HRH not 0")
    return "P2 -> +inf, Godeaux -> 0"


def toric_crosscheck():
    square = ToricCone([(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)])
    t = toric_hrh(square).value
    q = hrh_isolated_hypersurface(bp_spectrum(_bp(2, 2, 2, 2))).value
    _expect(t == q == 0, f"toric {t}, quadric {q}")
    return "both 0"


def random_bp(rng: random.Random, max_mu: int = 10**4) -> BPSpec:
    while True:
        exps = tuple(rng.randint(2, 9) for _ in range(rng.randint(1, 5)))
        if prod(a - 1 for a in exps) <= max_mu:
            return BPSpec(exps)


def property_suite():
    rng = random.Random(SEED)
    for _ in range(50):
        spec = random_bp(rng)
        sp = bp_spectrum(spec)
        n = len(spec.exponents)
        _expect(len(sp) == prod(a - 1 for a in spec.exponents), f"{spec}: count")
        _expect(all(sp.values.mult(a) == sp.values.mult(n - a) for a in sp.values.distinct()), f"{spec}: symmetry")
        _expect(check_duality(sp).holds, f"{spec}: duality")
        _expect(hrh_from_milnor(milnor_s(sp)) == hrh_isolated_hypersurface(sp), f"{spec}: HRH routes")
    for _ in range(20):
        a, b = random_bp(rng, 300), random_bp(rng, 300)
        conv = bp_spectrum(a).ts(bp_spectrum(b))
        _expect(conv.values == enumerate_bp_spectrum(a + b).values, f"{a} + {b}: convolution")
    for a in range(13):
        for b in range(a + 1):
            poly = qbinomial(a, b)
            coeffs = [poly.coeff(e) for e in range(poly.max_degree() + 1)]
            _expect(coeffs == coeffs[::-1], f"[{a},{b}] not palindromic")
            _expect(poly.evaluate(1) == comb(a, b), f"[{a},{b}] at q=1")
            low = qbinomial(a, b, -4)
            _expect(low.min_degree() == -4 * b * (a - b), f"[{a},{b}]_-4 lowest degree")
            _expect(low.coeff(low.min_degree()) == 1, f"[{a},{b}]_-4 lowest coefficient")
    return "50 spectra, 20 convolutions, q-binomials up to 12"


def random_expr(rng: random.Random, depth: int = 0, hypersurface: bool = False):
    roll = rng.random()
    if depth >= 2 or roll < 0.5:
        return BP(BPSpec(tuple(rng.randint(2, 5) for _ in range(rng.randint(1, 3)))))
    if roll < 0.6:
        k = rng.randint(1, 3)
        return SpLit(k, tuple(Fraction(rng.randint(1, 4 * k - 1), 4) for _ in range(rng.randint(1, 3))))
    if roll < 0.65 and not hypersurface:
        return RootsLit(rng.randint(1, 3), tuple(Fraction(rng.randint(1, 12), rng.randint(1, 4)) for _ in range(2)))
    if roll < 0.85 or hypersurface:
        return TS(random_expr(rng, depth + 1, True), random_expr(rng, depth + 1, True))
    return Tuple(random_expr(rng, depth + 1), random_expr(rng, depth + 1))


def random_command(rng: random.Random) -> Command:
    verb = rng.choice(("spectrum", "hrh", "bsato", "det", "cone", "toric", "secant", "verify"))
    fmt = rng.choice(("text", "json"))
    if verb in ("spectrum", "hrh", "bsato"):
        target = random_expr(rng)
    elif verb == "det":
        target = rng.choice(list(det.in_range_grid(5)))
    elif verb == "cone":
        target = DIAMONDS[rng.choice(sorted(DIAMONDS))]
    elif verb == "toric":
        dim = rng.randint(1, 3)
        rays = [tuple(rng.randint(-2, 2) for _ in range(dim)) for _ in range(rng.randint(1, 4))]
        rays = [r for r in rays if any(r)] or [(1,) * dim]
        target = ToricCone(rays)
    elif verb == "secant":
        target = Secant(rng.random() < 0.5, rng.random() < 0.5)
    else:
        target = rng.choice(("all", "spectrum", "det", "families", "cli"))
    return Command(verb, target, fmt)


BATCH_SAMPLE = [
    "hrh bp(2,2,2,2)",
    "spectrum bp(3,4) --format=json",
    "bsato tuple(bp(2,2,2), bp(2,2,2))",
    "det generic m=4 n=3 p=2 --format=json",
    "det symmetric n=5 p=3",
    "cone godeaux",
    "toric rays=(0,0,1),(1,0,1),(0,1,1),(1,1,1)",
    "secant p1=no vanishing=yes",
    "hrh ts(bp(2,2,2), bp(2,2,2,2,2))",
    "hrh bp(1,2)",
    "hrh sp(3: 1/2)",
]

CRAFTED_FAILURES = [
    ("hrh bp(1,2)", 2),  # exponent below 2
    ("hrh bp(2,2", 2),  # unbalanced parenthesis
    ("hrh sp(3: 1/2)", 3),  # the two HRH routes disagree on an inconsistent spectrum
]


def cli_suite():
    from .cli import execute, run_batch

    rng = random.Random(SEED + 1)
    for _ in range(200):
        cmd = random_command(rng)
        text = render(cmd)
        _expect(parse(text) == cmd, f"round trip fails on {text!r}")
    lines = BATCH_SAMPLE * 3
    _expect(run_batch(lines, jobs=1) == run_batch(lines, jobs=4), "batch differs from sequential")
    for line, code in CRAFTED_FAILURES:
        got, _ = execute(line)
        _expect(got == code, f"{line!r} exited {got}, expected {code}")
    return "200 round trips, batch identity, 3 exit codes"


CRITERIA: list[tuple[int, str, str, Callable[[], str]]] = [
    (1, "quadric family", "spectrum", quadric_family),
    (2, "Sp_min_Z = 2 family", "spectrum", sp_min_two_family),
    (3, "tuple b-function roots", "spectrum", quadric_tuple),
    (4, "Thom-Sebastiani failure", "spectrum", ts_failure),
    (5, "determinantal grid", "det", determinantal_grid),
    (6, "Pfaffian cross-check", "det", pfaffian_crosscheck),
    (7, "cone examples", "families", cone_examples),
    (8, "toric cross-check", "families", toric_crosscheck),
    (9, "property suites", "spectrum", property_suite),
    (10, "command line", "cli", cli_suite),
]


def run_criterion(number: int) -> Result:
    num, name, suite, fn = CRITERIA[number - 1]
    try:
        detail = fn()
        return Result(num, name, suite, True, detail)
    except _Fail as exc:
        return Result(num, name, suite, False, str(exc))
    except Exception as exc:  # a crash is a failed criterion, not a crashed suite
        return Result(num, name, suite, False, f"{type(exc).__name__}: {exc}")


def run_suite(suite: str = "all") -> list[Result]:
    return [run_criterion(num) for num, _, s, _ in CRITERIA if suite in ("all", s)]
