"""Turn a parsed :class:`~hrhlab.dsl.Command` into a report."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import bsato, determinantal, families
from .dsl import BP, TS, Command, RootsLit, Secant, SpLit, Tuple, is_hypersurface, render
from .errors import ConsistencyError, DomainError
from .exactnum import INF, RationalMultiset, ext_json, is_inf, render_ext, render_rational
from .spectrum import (
    HRHValue,
    SpectrumData,
    bp_spectrum,
    check_duality,
    hrh_from_milnor,
    hrh_isolated_hypersurface,
    milnor_s,
    sp_min_int,
)

# formulas cited next to the values they produce
CITE_SP_MIN = "HRH = Sp_min,Z - 2"
CITE_MILNOR = "HRH >= k iff s_{d-p} = s_p for all p <= k"
CITE_FINITE = "finite HRH <= (d-3)/2"
CITE_NRS_BOUND = "lcdef_gen + 2 HRH + 3 <= codim_Z(Z_nRS)"
CITE_OBVNEQ = "lcdef_gen <= lcdef"
CITE_QH = "alpha_tilde_Z = Sp_min,Z (quasi-homogeneous)"
CITE_PRODUCT = "product of rational homology manifolds"


@dataclass
class Report:
    input: str
    verb: str
    values: dict = field(default_factory=dict)
    cites: dict = field(default_factory=dict)
    checks: list = field(default_factory=list)
    verdict: str = ""

    def set(self, name: str, value, cite: str | None = None):
        self.values[name] = value
        if cite:
            self.cites[name] = cite

    def check(self, name: str, lhs, rhs, cite: str, relation: str = "<="):
        holds = lhs <= rhs if relation == "<=" else lhs == rhs
        self.checks.append(
            {"name": name, "lhs": ext_json(lhs), "rhs": ext_json(rhs), "relation": relation, "holds": holds, "cite": cite}
        )

    @property
    def ok(self) -> bool:
        return all(c["holds"] for c in self.checks)

    def to_json(self) -> dict:
        return {
            "input": self.input,
            "verb": self.verb,
            "values": self.values,
            "citations": self.cites,
            "checks": self.checks,
            "verdict": self.verdict,
        }

    def render_json(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)

    def render_text(self) -> str:
        lines = [f"input: {self.input}"]
        for name, value in self.values.items():
            cite = self.cites.get(name)
            lines.append(f"{name} = {_show(value)}" + (f" (via {cite})" if cite else ""))
        for c in self.checks:
            if self.verb == "verify":
                lines.append(f"{c['name']}: {'pass' if c['holds'] else 'FAIL'} ({c['lhs']})")
                continue
            status = "holds" if c["holds"] else "FAILS"
            lines.append(f"check {c['name']}: {c['lhs']} {c['relation']} {c['rhs']} {status} ({c['cite']})")
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)

    def render(self, fmt: str) -> str:
        return self.render_json() if fmt == "json" else self.render_text()


def _show(value) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, dict) and "kind" in value:
        if value["kind"] == "lower_bound":
            return f">= {value['lo']}"
        return f"[{value['lo']}, {value['hi']}]"
    if isinstance(value, (list, dict)):
        return json.dumps(value, ensure_ascii=False)
    return str(value)


def eval_spectrum(expr) -> SpectrumData:
    """Spectrum of a hypersurface expression; Thom-Sebastiani sums convolve."""
    if isinstance(expr, BP):
        return bp_spectrum(expr.spec)
    if isinstance(expr, SpLit):
        return SpectrumData(RationalMultiset(expr.values), expr.ambient_vars)
    if isinstance(expr, TS):
        return eval_spectrum(expr.left).ts(eval_spectrum(expr.right))
    raise DomainError("expected a hypersurface expression (bp, sp or ts)")


def tuple_factors(expr) -> list:
    if isinstance(expr, Tuple):
        return tuple_factors(expr.left) + tuple_factors(expr.right)
    return [expr]


def _hypersurface_hrh(sp: SpectrumData) -> HRHValue:
    via_spectrum = hrh_isolated_hypersurface(sp)
    via_milnor = hrh_from_milnor(milnor_s(sp))
    if via_spectrum != via_milnor:
        raise ConsistencyError(
            f"HRH from Sp_min,Z is {via_spectrum} but the Milnor fiber Hodge numbers give {via_milnor}"
        )
    return via_spectrum


def _spectrum_json(sp: SpectrumData) -> list:
    return [{"alpha": render_rational(a), "mult": k} for a, k in sp.values.items()]


def _rootset(expr) -> bsato.RootSet:
    if isinstance(expr, RootsLit):
        return bsato.literal_rootset(expr.r, expr.roots)
    if isinstance(expr, Tuple):
        return bsato.tuple_ts_roots(_rootset(expr.left), _rootset(expr.right))
    return bsato.spectrum_bfunction(eval_spectrum(expr))


def _product_hrh(factors) -> HRHValue | None:
    """HRH of a product, known here only when every factor is rationally smooth."""
    if not all(is_hypersurface(f) for f in factors):
        return None
    if all(is_inf(_hypersurface_hrh(eval_spectrum(f)).value) for f in factors):
        return HRHValue.exact(INF)
    return None


def _run_spectrum(cmd: Command, rep: Report):
    if not is_hypersurface(cmd.target):
        raise DomainError("spectrum needs a hypersurface expression (bp, sp or ts)")
    sp = eval_spectrum(cmd.target)
    rep.set("ambient_vars", sp.ambient_vars)
    rep.set("d", sp.d)
    rep.set("mu", len(sp))
    rep.set("spectrum", _spectrum_json(sp))
    rep.set("Sp_min_Z", ext_json(sp_min_int(sp)))
    rep.set("milnor_s", list(milnor_s(sp).s), "s_p = #spectral numbers in (d-p, d-p+1]")
    dual = check_duality(sp)
    rep.set("duality", dual.holds, "m_alpha = m_{d+1-alpha} for non-integer alpha")
    rep.verdict = f"isolated hypersurface singularity, mu = {len(sp)}"
    if not dual.holds:
        rep.verdict += "; spectral duality fails"


def _run_hrh(cmd: Command, rep: Report):
    target = cmd.target
    if isinstance(target, Tuple):
        factors = tuple_factors(target)
        hrh = _product_hrh(factors)
        if hrh is None:
            raise DomainError("HRH of a tuple is only determined here when every factor is a rationally smooth hypersurface")
        rep.set("HRH", hrh.to_json(), CITE_PRODUCT)
        rep.verdict = "rational homology manifold"
        return
    if not is_hypersurface(target):
        raise DomainError("hrh needs a hypersurface expression or a tuple of them")
    sp = eval_spectrum(target)
    hrh = _hypersurface_hrh(sp)
    d = sp.d
    sp_min = sp_min_int(sp)
    rep.set("HRH", hrh.to_json(), CITE_SP_MIN)
    rep.set("Sp_min_Z", ext_json(sp_min))
    rep.set("milnor_s", list(milnor_s(sp).s), CITE_MILNOR)
    rep.set("d", d)
    rep.set("lcdef", 0)
    rep.set("lcdef_gen", 0)
    # isolated singular point: the nRS locus is the point itself unless empty
    nrs = INF if is_inf(hrh.value) else d
    rep.set("nrs_codim", ext_json(nrs))
    if not is_inf(hrh.value):
        rep.check("finiteness", 2 * hrh.value, d - 3, CITE_FINITE)
        if hrh.value >= 0:
            rep.check("nrs_bound", 0 + 2 * hrh.value + 3, nrs, CITE_NRS_BOUND)
        rep.verdict = f"HRH = {hrh}; not a rational homology manifold"
    else:
        rep.verdict = "rational homology manifold"


def _run_bsato(cmd: Command, rep: Report):
    target = cmd.target
    rs = _rootset(target)
    alpha = bsato.alpha_tilde_int(rs)
    rep.set("r", rs.r)
    rep.set("roots", [render_rational(g) for g in rs.roots])
    rep.set("reduced_roots", [render_rational(g) for g in rs.reduced()])
    rep.set("alpha_tilde_Z", ext_json(alpha), "min integer root of b_f(s)/(s+r)")
    hrh = sp_min = None
    if is_hypersurface(target):
        sp = eval_spectrum(target)
        sp_min = sp_min_int(sp)
        if sp_min != alpha:
            raise ConsistencyError(f"alpha_tilde_Z = {render_ext(alpha)} but Sp_min,Z = {render_ext(sp_min)}")
        hrh = _hypersurface_hrh(sp)
        rep.set("Sp_min_Z", ext_json(sp_min), CITE_QH)
        rep.set("HRH", hrh.to_json(), CITE_SP_MIN)
    elif isinstance(target, Tuple):
        hrh = _product_hrh(tuple_factors(target))
        if hrh is not None:
            rep.set("HRH", hrh.to_json(), CITE_PRODUCT)
    if hrh is not None:
        ineqs = bsato.check_cor_bs(alpha, rs.r, hrh, sp_min)
        for name, ineq in ineqs.entries.items():
            rep.check(name, ineq.lhs, ineq.rhs, ineq.cite)
    rep.verdict = (
        "no integer root of the reduced b-function" if is_inf(alpha) else f"alpha_tilde_Z = {alpha}"
    )


def _run_det(cmd: Command, rep: Report):
    dr = determinantal.det_report(cmd.target)
    data = dr.to_json()
    del data["input"]
    cites = {
        "codim": "lowest exponent of H_p(q)",
        "lcd": "highest exponent of H_p(q)",
        "lcdef": "lcd - codim",
        "lcdef_gen": "top degree of the class supported on Z_nRS, minus codim",
        "HRH": "rational singularities and " + CITE_NRS_BOUND,
    }
    for name, value in data.items():
        rep.set(name, value, cites.get(name))
    rep.check("lcdef_gen_vs_lcdef", dr.lcdef_gen, dr.lcdef, CITE_OBVNEQ)
    if dr.spec.in_range:
        rep.check("nrs_bound", dr.lcdef_gen + 2 * dr.hrh.lo + 3, dr.nrs_codim, CITE_NRS_BOUND)
    rep.verdict = "rational homology manifold" if dr.is_rhm else f"not a rational homology manifold; HRH {dr.hrh}"


def _run_cone(cmd: Command, rep: Report):
    dia = cmd.target
    hrh = families.cone_hrh(dia)
    lcdef = families.cone_lcdef(dia)
    rep.set("n", dia.n)
    rep.set("d", dia.n + 1)
    rep.set("HRH", hrh.to_json(), "H^i(Omega^p) = 0 for i != p and h^{p,p} = 1 for p <= k")
    rep.set("lcdef", lcdef, "cup with c_1(L) iso on H^i for -1 <= i <= n-3-c")
    rep.set("lcdef_gen", lcdef, "singular only at the cone point")
    rep.verdict = "rational homology manifold" if is_inf(hrh.value) else f"HRH = {hrh}"


def _run_toric(cmd: Command, rep: Report):
    cone = cmd.target
    hrh = families.toric_hrh(cone)
    rep.set("rays", [list(r) for r in cone.rays])
    rep.set("rank", families.exact_rank(cone.rays))
    rep.set("simplicial", families.is_simplicial(cone))
    rep.set("HRH", hrh.to_json(), "+inf if simplicial, else 0")
    rep.verdict = "rational homology manifold" if is_inf(hrh.value) else f"HRH = {hrh}"


def _run_secant(cmd: Command, rep: Report):
    t: Secant = cmd.target
    hrh = families.secant_hrh(t.is_p1, t.has_vanishing_hi_O)
    rep.set("HRH", hrh.to_json(), "+inf for P^1; 0 if H^i(O_X) = 0 for i >= 1; else -1")
    rep.verdict = "rational homology manifold" if is_inf(hrh.value) else f"HRH = {hrh}"


def _run_verify(cmd: Command, rep: Report):
    from .verify import run_suite

    results = run_suite(cmd.target)
    for res in results:
        rep.checks.append(
            {"name": f"criterion {res.number} {res.name}", "lhs": res.detail, "rhs": "pass",
             "relation": "==", "holds": res.ok, "cite": res.suite}
        )
    passed = sum(r.ok for r in results)
    rep.set("passed", passed)
    rep.set("total", len(results))
    rep.verdict = "all criteria pass" if passed == len(results) else f"{len(results) - passed} criteria fail"


_DISPATCH = {
    "spectrum": _run_spectrum,
    "hrh": _run_hrh,
    "bsato": _run_bsato,
    "det": _run_det,
    "cone": _run_cone,
    "toric": _run_toric,
    "secant": _run_secant,
    "verify": _run_verify,
}


def run(cmd: Command) -> Report:
    rep = Report(input=render(Command(cmd.verb, cmd.target)), verb=cmd.verb)
    _DISPATCH[cmd.verb](rep=rep, cmd=cmd)
    return rep
