"""Pull a hypergeometric-type equation back by a cover and compare with a linear template."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from garnierx import events
from garnierx.algebra.parser import parse
from garnierx.algebra.ratfunc import RatFunc, coefficients_in, substitute
from garnierx.algebra.relations import equals_mod, reduce_mod
from garnierx.algebra.series import INF, Point, format_point, laurent_coeffs
from garnierx.errors import UnknownIdentifierError
from garnierx.formal.catalog import degenerate_confluent
from garnierx.garnier.solutions import AlgebraicSolutionRecord, builtin_solution
from garnierx.garnier.systems import (
    HamiltonianSystem,
    derived_system,
    hamiltonian_system,
    specialize_template,
)
from garnierx.odes.accessory import solve_accessory
from garnierx.odes.local import apparent_obstruction, local_invariants
from garnierx.odes.scalar import (
    GeneralScalar,
    RationalMap,
    SLForm,
    find_poles,
    free_critical_points,
    sl_normalize,
    sl_pullback,
)


@dataclass(frozen=True)
class PullbackReport:
    case: str
    # "equal", "fallback" (local structure matches, forms differ) or "mismatch"
    status: str
    difference: RatFunc | None = None
    poles: tuple[tuple[str, int], ...] = ()
    invariants: dict[str, str] = field(default_factory=dict)
    extracted: dict[str, RatFunc] = field(default_factory=dict)
    expected: dict[str, RatFunc] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status != "mismatch"

    def to_json(self) -> dict:
        out: dict = {"case": self.case, "status": self.status}
        if self.difference is not None:
            out["difference"] = str(self.difference)
        out["poles"] = [{"point": p, "order": k} for p, k in self.poles]
        if self.invariants:
            out["invariants"] = dict(self.invariants)
        if self.extracted:
            out["extracted"] = {k: str(v) for k, v in self.extracted.items()}
            out["expected"] = {k: str(v) for k, v in self.expected.items()}
        return out


@dataclass(frozen=True)
class _Case:
    system: str
    cover: str
    cover_symbols: tuple[str, ...]
    # finite fibers known to be critical, in the cover's symbols
    known_fibers: tuple[str, ...]
    # (point, kappa, theta) the pulled-back form must show when the forms differ
    local: tuple[tuple[str, str, str], ...]


_KIM_BASE = degenerate_confluent(Fraction(2, 3))

_CASES = {
    "kim122": _Case(
        "Kim122",
        "t2^2*(2*x-4*q1*x+q1^2+q1)^3/(16*q1^3*(q1+1)^3*x^2*(x-1)^2)",
        ("x", "q1", "t1", "t2"),
        (),
        (("0", "1", "0"), ("1", "1", "0"), ("inf", "0", "1/3")),
    ),
    "kim23": _Case(
        "Kim23",
        "(3*x^2+8*t1*x+4*q1*t1+6*q1^2)^3/(6912*x^2)",
        ("x", "q1", "t1", "t2"),
        (),
        (("0", "1", "0"), ("inf", "2", "0")),
    ),
    "kaw4": _Case(
        "Kaw4",
        "(x^2+3*t1*x-3*t2)^2/(36*x)",
        ("x", "t1", "t2"),
        ("0",),
        (),
    ),
}


def base_form(case: str) -> SLForm:
    """SL form of the equation being pulled back, in the coordinate x."""
    if case == "kaw4":
        return SLForm("x", parse("1/x - 3/(16*x^2)", ("x",)))
    base = _KIM_BASE
    return sl_normalize(GeneralScalar("x", parse(base.f, ("x",)), parse(base.g, ("x",))))


def _template_form(system: HamiltonianSystem, sol: AlgebraicSolutionRecord) -> SLForm:
    """The linear template at the solution, accessory parameters included."""
    derived = derived_system(system.name, {k: v for k, v in sol.params.items() if k in system.params})
    template = specialize_template(system.template, sol.params)
    form = sl_normalize(template) if isinstance(template, GeneralScalar) else template
    filled = substitute(form.Q, dict(zip(system.accessory, derived.hamiltonians)))
    filled = substitute(filled, sol.assignments)
    return SLForm(form.indep, reduce_mod(filled, sol.ctx), sol.ctx)


def _poles(form: SLForm) -> tuple[tuple[str, int], ...]:
    locus = find_poles(form)
    return tuple((format_point(p), k) for p, k in locus.poles)


def _local_structure(form: SLForm, case: _Case, symbols: tuple[str, ...]) -> tuple[bool, dict[str, str]]:
    seen: dict[str, str] = {}
    ok = True
    for point, kappa, theta in case.local:
        center: Point = INF if point == INF else parse(point, symbols)
        inv = local_invariants(form, center)
        seen[point] = f"kappa={inv.kappa}, theta={inv.theta}"
        ok = ok and str(inv.kappa) == kappa and str(inv.theta) == theta
    return ok, seen


def verify_pullback(case: str) -> PullbackReport:
    key = case.strip().lower()
    if key not in _CASES:
        raise UnknownIdentifierError(f"unknown pull-back case {case!r}")
    entry = _CASES[key]
    if key == "kaw4":
        return _verify_kaw4(entry)

    system = hamiltonian_system(entry.system)
    _, sol = builtin_solution(key)
    ctx = sol.ctx
    phi = RationalMap("x", parse(entry.cover, entry.cover_symbols))
    pulled = sl_pullback(SLForm("x", base_form(key).Q, ctx), phi)
    pulled = SLForm("x", reduce_mod(pulled.Q, ctx), ctx)
    events.emit("verification_step", {"case": key, "step": "pullback"})

    target = _template_form(system, sol)
    events.emit("verification_step", {"case": key, "step": "template"})
    diff = reduce_mod(pulled.Q - target.Q, ctx)
    poles = _poles(SLForm("x", pulled.Q))
    if equals_mod(pulled.Q, target.Q, ctx):
        events.emit("verification_step", {"case": key, "step": "equal"})
        return PullbackReport(key, "equal", None, poles)
    ok, seen = _local_structure(pulled, entry, phi.value.symbols)
    apparent = all(
        apparent_obstruction(pulled, sol.assignments[c]).is_zero() for c in system.apparent
    )
    status = "fallback" if ok and apparent else "mismatch"
    return PullbackReport(key, status, diff, poles, seen)


def _coefficient(r: RatFunc, v: str, k: int) -> RatFunc:
    piece = coefficients_in(r.num, v).get(k, r.ring.zero)
    return RatFunc.from_polys(piece, r.den)


def _verify_kaw4(entry: _Case) -> PullbackReport:
    """Read (u, v) off the pulled-back form at generic free critical points q1, q2."""
    phi = RationalMap("x", parse(entry.cover, entry.cover_symbols))
    pulled = sl_pullback(base_form("kaw4"), phi)
    poles = _poles(pulled)

    crit = free_critical_points(phi, [parse(z, entry.cover_symbols) for z in entry.known_fibers])
    events.emit("verification_step", {"case": "kaw4", "step": "critical points", "poly": str(crit)})
    u1 = -_coefficient(crit, "x", 1)
    u2 = _coefficient(crit, "x", 0)

    # name the critical points: t1 = -(q1 + q2), t2 = q1 q2
    syms = ("x", "q1", "q2")
    q1, q2 = RatFunc.var("q1", syms), RatFunc.var("q2", syms)
    split = {"t1": -(q1 + q2), "t2": q1 * q2}
    at_q = substitute(pulled.Q, split)
    p1 = -laurent_coeffs(at_q, "x", q1, -1, 1)[0]
    p2 = -laurent_coeffs(at_q, "x", q2, -1, 1)[0]
    v1 = (q1 + q2) / ((q1 - q2) ** 2 * 2) + (p1 * q1 - p2 * q2) / (q1 - q2)
    v2 = -1 / (q1 - q2) ** 2 - (p1 - p2) / (q1 - q2)

    system = hamiltonian_system("Kaw4")
    points = [RatFunc.var(c, ("x", c)) for c in system.apparent]
    solved = solve_accessory(system.template, list(system.accessory), points)
    target = substitute(system.template.Q, solved)
    target = substitute(target, {"q1": q1, "q2": q2, "p1": p1, "p2": p2, **split})
    diff = at_q - target

    _, sol = builtin_solution("kaw4")
    expected = dict(sol.assignments)
    extracted = {"u1": u1, "u2": u2, "v1": v1, "v2": v2}
    agree = all(substitute(extracted[k], split) == substitute(expected[k], split) for k in extracted)
    status = "equal" if diff.is_zero() and agree else "mismatch"
    return PullbackReport(
        "kaw4", status, None if diff.is_zero() else diff, poles, {}, extracted, expected
    )
