"""Command language for the hrhlab CLI.

Grammar (whitespace-insensitive)::

    command  := verb target flag*
    flag     := "--" NAME "=" VALUE
    expr     := "bp(" int ("," int)* ")"
              | "sp(" int ":" rational ("," rational)* ")"
              | "roots(" int ":" rational ("," rational)* ")"
              | "ts(" expr "," expr ")"
              | "tuple(" expr "," expr ")"

``spectrum``, ``hrh`` and ``bsato`` take an ``expr``.  ``det``, ``cone``,
``toric``, ``secant`` take ``key=value`` forms, and ``verify`` takes only
flags.  :func:`render` is the inverse of :func:`parse`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .determinantal import DetSpec, MatrixCase
from .errors import DomainError
from .exactnum import render_rational
from .families import DIAMONDS, HodgeDiamond, ToricCone
from .spectrum import BPSpec

VERBS = ("spectrum", "hrh", "bsato", "det", "cone", "toric", "secant", "verify")
FORMATS = ("text", "json")
SUITES = ("all", "spectrum", "det", "families", "cli")


class ParseError(DomainError):
    """Malformed command.  ``position`` is a byte offset into the input."""

    def __init__(self, code: str, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.code = code
        self.position = position


# error codes
E_SYNTAX = "syntax"
E_EXPONENT = "exponent"
E_DET_RANGE = "det_range"
E_VALUE = "value"


@dataclass(frozen=True)
class BP:
    spec: BPSpec


@dataclass(frozen=True)
class SpLit:
    ambient_vars: int
    values: tuple[Fraction, ...]


@dataclass(frozen=True)
class RootsLit:
    r: int
    roots: tuple[Fraction, ...]


@dataclass(frozen=True)
class TS:
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Tuple:
    left: "Expr"
    right: "Expr"


Expr = Union[BP, SpLit, RootsLit, TS, Tuple]


@dataclass(frozen=True)
class Secant:
    is_p1: bool
    has_vanishing_hi_O: bool


@dataclass(frozen=True)
class Command:
    verb: str
    target: object
    format: str = "text"


def is_hypersurface(expr: Expr) -> bool:
    if isinstance(expr, (BP, SpLit)):
        return True
    if isinstance(expr, TS):
        return is_hypersurface(expr.left) and is_hypersurface(expr.right)
    return False


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def byte_offset(self, pos: int) -> int:
        return len(self.text[:pos].encode("utf-8"))

    def error(self, code: str, message: str, pos: int | None = None) -> ParseError:
        return ParseError(code, message, self.byte_offset(self.pos if pos is None else pos))

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def at_end(self) -> bool:
        return self.peek() == ""

    def expect(self, s: str):
        self.skip_ws()
        if not self.text.startswith(s, self.pos):
            found = self.text[self.pos : self.pos + 1] or "end of input"
            raise self.error(E_SYNTAX, f"expected {s!r}, found {found!r}")
        self.pos += len(s)

    def accept(self, s: str) -> bool:
        self.skip_ws()
        if self.text.startswith(s, self.pos):
            self.pos += len(s)
            return True
        return False

    def word(self) -> tuple[str, int]:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] in "_-"):
            self.pos += 1
        if start == self.pos:
            found = self.text[start : start + 1] or "end of input"
            raise self.error(E_SYNTAX, f"expected a name, found {found!r}")
        return self.text[start : self.pos], start

    def integer(self) -> tuple[int, int]:
        self.skip_ws()
        start = self.pos
        if self.pos < len(self.text) and self.text[self.pos] in "+-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if digits == self.pos:
            self.pos = start
            found = self.text[start : start + 1] or "end of input"
            raise self.error(E_SYNTAX, f"expected an integer, found {found!r}")
        return int(self.text[start : self.pos]), start

    def rational(self) -> tuple[Fraction, int]:
        num, start = self.integer()
        if self.accept("/"):
            den, dpos = self.integer()
            if den <= 0:
                raise self.error(E_VALUE, "denominator must be positive", dpos)
            return Fraction(num, den), start
        return Fraction(num), start


def _parse_expr(sc: _Scanner) -> Expr:
    name, start = sc.word()
    sc.expect("(")
    if name == "bp":
        exps = []
        while True:
            a, apos = sc.integer()
            if a < 2:
                raise sc.error(E_EXPONENT, "exponent must be ≥ 2", apos)
            exps.append(a)
            if not sc.accept(","):
                break
        sc.expect(")")
        return BP(BPSpec(exps))
    if name in ("sp", "roots"):
        head, hpos = sc.integer()
        if head < 1:
            raise sc.error(E_VALUE, f"{name} literal needs a positive leading integer", hpos)
        sc.expect(":")
        vals = []
        while True:
            v, vpos = sc.rational()
            if v <= 0 or (name == "sp" and v >= head):
                bound = f"(0, {head})" if name == "sp" else "(0, inf)"
                raise sc.error(E_VALUE, f"value {render_rational(v)} outside {bound}", vpos)
            vals.append(v)
            if not sc.accept(","):
                break
        sc.expect(")")
        return SpLit(head, tuple(vals)) if name == "sp" else RootsLit(head, tuple(vals))
    if name in ("ts", "tuple"):
        sc.skip_ws()
        lpos = sc.pos
        left = _parse_expr(sc)
        sc.expect(",")
        sc.skip_ws()
        rpos = sc.pos
        right = _parse_expr(sc)
        sc.expect(")")
        if name == "ts":
            for operand, pos in ((left, lpos), (right, rpos)):
                if not is_hypersurface(operand):
                    raise sc.error(E_VALUE, "ts() needs hypersurface operands (bp, sp or ts)", pos)
            return TS(left, right)
        return Tuple(left, right)
    raise sc.error(E_SYNTAX, f"unknown expression {name!r}", start)


def _parse_keyvals(sc: _Scanner, allowed: dict) -> dict:
    """``key=value`` pairs until a flag or end; returns key -> (value, pos)."""
    out: dict = {}
    while not sc.at_end() and not sc.text.startswith("--", sc.pos):
        key, kpos = sc.word()
        if key not in allowed:
            raise sc.error(E_SYNTAX, f"unknown key {key!r}", kpos)
        if key in out:
            raise sc.error(E_SYNTAX, f"duplicate key {key!r}", kpos)
        sc.expect("=")
        out[key] = allowed[key](sc)
    return out


def _yes_no(sc: _Scanner):
    w, pos = sc.word()
    if w in ("yes", "true"):
        return True, pos
    if w in ("no", "false"):
        return False, pos
    raise sc.error(E_VALUE, f"expected yes/no, found {w!r}", pos)


def _parse_det(sc: _Scanner) -> DetSpec:
    case_word, cpos = sc.word()
    try:
        case = MatrixCase(case_word)
    except ValueError:
        raise sc.error(E_SYNTAX, f"unknown matrix case {case_word!r}", cpos) from None
    need = {"generic": ("m", "n", "p"), "symmetric": ("n", "p")}.get(case.value, ("m", "p"))
    kv = _parse_keyvals(sc, {k: _Scanner.integer for k in need})
    for k in need:
        if k not in kv:
            raise sc.error(E_SYNTAX, f"det {case.value} needs {k}=")
    vals = {k: v for k, (v, _) in kv.items()}
    try:
        return DetSpec(case, vals["p"], vals.get("m"), vals.get("n"))
    except DomainError as exc:
        # blame p when only the rank parameter is off, else the size
        blame = "p"
        try:
            DetSpec(case, 0, vals.get("m"), vals.get("n"))
        except DomainError:
            blame = need[0]
        raise sc.error(E_DET_RANGE, str(exc), kv[blame][1]) from None


def _parse_cone(sc: _Scanner) -> HodgeDiamond:
    save = sc.pos
    name, npos = sc.word()
    if not sc.accept("="):
        if name not in DIAMONDS:
            raise sc.error(E_VALUE, f"unknown Hodge diamond preset {name!r}", npos)
        return DIAMONDS[name]
    sc.pos = save
    sc.expect("n")
    sc.expect("=")
    n, dpos = sc.integer()
    if n < 0:
        raise sc.error(E_VALUE, "dimension must be non-negative", dpos)
    entries = []
    while not sc.at_end() and not sc.text.startswith("--", sc.pos):
        sc.skip_ws()
        epos = sc.pos
        sc.expect("h")
        sc.expect("(")
        p, _ = sc.integer()
        sc.expect(",")
        q, _ = sc.integer()
        sc.expect(")")
        sc.expect("=")
        v, vpos = sc.integer()
        if v < 0:
            raise sc.error(E_VALUE, "Hodge numbers are non-negative", vpos)
        entries.append((p, q, v, epos))
    try:
        return HodgeDiamond.from_entries(n, [e[:3] for e in entries])
    except DomainError as exc:
        raise sc.error(E_VALUE, str(exc), entries[-1][3] if entries else dpos) from None


def _parse_ray(sc: _Scanner) -> tuple[int, ...]:
    sc.expect("(")
    coords = [sc.integer()[0]]
    while sc.accept(","):
        coords.append(sc.integer()[0])
    sc.expect(")")
    return tuple(coords)


def _parse_toric(sc: _Scanner) -> ToricCone:
    sc.expect("rays")
    sc.expect("=")
    sc.skip_ws()
    start = sc.pos
    rays = [_parse_ray(sc)]
    while sc.accept(","):
        rays.append(_parse_ray(sc))
    try:
        return ToricCone(rays)
    except DomainError as exc:
        raise sc.error(E_VALUE, str(exc), start) from None


def _parse_secant(sc: _Scanner) -> Secant:
    kv = _parse_keyvals(sc, {"p1": _yes_no, "vanishing": _yes_no})
    for k in ("p1", "vanishing"):
        if k not in kv:
            raise sc.error(E_SYNTAX, f"secant needs {k}=yes|no")
    return Secant(kv["p1"][0], kv["vanishing"][0])


def parse(text: str) -> Command:
    """Parse one command line."""
    sc = _Scanner(text)
    verb, vpos = sc.word()
    if verb not in VERBS:
        raise sc.error(E_SYNTAX, f"unknown verb {verb!r}", vpos)
    target: object
    if verb in ("spectrum", "hrh", "bsato"):
        target = _parse_expr(sc)
    elif verb == "det":
        target = _parse_det(sc)
    elif verb == "cone":
        target = _parse_cone(sc)
    elif verb == "toric":
        target = _parse_toric(sc)
    elif verb == "secant":
        target = _parse_secant(sc)
    else:
        target = "all"
    fmt = "text"
    seen = set()
    while not sc.at_end():
        sc.expect("--")
        flag, fpos = sc.word()
        allowed = ("format", "suite") if verb == "verify" else ("format",)
        if flag not in allowed or flag in seen:
            raise sc.error(E_SYNTAX, f"unexpected flag --{flag}", fpos)
        seen.add(flag)
        sc.expect("=")
        value, valpos = sc.word()
        if flag == "format":
            if value not in FORMATS:
                raise sc.error(E_VALUE, f"format must be text or json, got {value!r}", valpos)
            fmt = value
        else:
            if value not in SUITES:
                raise sc.error(E_VALUE, f"unknown suite {value!r}", valpos)
            target = value
    return Command(verb, target, fmt)


def render_expr(expr: Expr) -> str:
    if isinstance(expr, BP):
        return str(expr.spec)
    if isinstance(expr, SpLit):
        return f"sp({expr.ambient_vars}: " + ", ".join(map(render_rational, expr.values)) + ")"
    if isinstance(expr, RootsLit):
        return f"roots({expr.r}: " + ", ".join(map(render_rational, expr.roots)) + ")"
    if isinstance(expr, TS):
        return f"ts({render_expr(expr.left)}, {render_expr(expr.right)})"
    if isinstance(expr, Tuple):
        return f"tuple({render_expr(expr.left)}, {render_expr(expr.right)})"
    raise TypeError(f"not an expression: {expr!r}")


def _render_diamond(dia: HodgeDiamond) -> str:
    n = dia.n
    reps = []
    for p, q, v in dia.entries():
        orbit = {(p, q), (q, p), (n - p, n - q), (n - q, n - p)}
        if (p, q) == min(orbit):
            reps.append(f"h({p},{q})={v}")
    return " ".join([f"n={n}"] + reps)


def render_target(cmd: Command) -> str:
    t = cmd.target
    if cmd.verb in ("spectrum", "hrh", "bsato"):
        return render_expr(t)
    if cmd.verb == "det":
        return str(t)[len("det ") :]
    if cmd.verb == "cone":
        return _render_diamond(t)
    if cmd.verb == "toric":
        return f"rays={t}"
    if cmd.verb == "secant":
        yn = lambda b: "yes" if b else "no"  # noqa: E731
        return f"p1={yn(t.is_p1)} vanishing={yn(t.has_vanishing_hi_O)}"
    return f"--suite={t}"


def render(cmd: Command) -> str:
    """Canonical text form; ``parse(render(c)) == c``."""
    parts = [cmd.verb, render_target(cmd)]
    if cmd.format != "text":
        parts.append(f"--format={cmd.format}")
    return " ".join(parts)
