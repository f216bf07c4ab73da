from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from garnierx.algebra.parser import parse
from garnierx.algebra.ratfunc import RatFunc
from garnierx.algebra.relations import AlgebraicContext
from garnierx.classifier.tables import ALGEBRAIC_PAINLEVE, AlgebraicPainleveRow
from garnierx.errors import UnknownIdentifierError
from garnierx.garnier.systems import HamiltonianSystem, PainleveEquation, builtin_system, painleve_equation


@dataclass(frozen=True)
class AlgebraicSolutionRecord:
    label: str
    assignments: dict[str, RatFunc]
    ctx: AlgebraicContext | None = None
    # values of the system parameters (thetas, alpha, ...)
    params: dict[str, RatFunc] = field(default_factory=dict)
    # Painleve rows: t = uniformizer(indep); indep is "t" when no radical is involved
    indep: str = "t"
    uniformizer: RatFunc | None = None

    def to_json(self) -> dict:
        out: dict = {}
        if self.ctx is not None:
            out.update(self.ctx.to_json())
        out["label"] = self.label
        out["assignments"] = {k: str(v) for k, v in self.assignments.items()}
        if self.params:
            out["params"] = {k: str(v) for k, v in self.params.items()}
        if self.uniformizer is not None and self.indep != "t":
            out["uniformizer"] = {"t": str(self.uniformizer), "indep": self.indep}
        return out


_KIM_SYMBOLS = ("q1", "t1", "t2")


def _kim122() -> AlgebraicSolutionRecord:
    ctx = AlgebraicContext.from_text(
        "q1", ("t1", "t2"), "(q1*(q1+1))^3*t1^2 - t2^2*((q1-1)*(q1-2))^3", label="G1"
    )
    texts = {
        "q1": "q1",
        "q2": "(q1+1)/(2*q1-1)",
        "p1": "-t1/(2*(q1-1)^2) - t2/(2*q1^2) - (2*q1-1)/(6*q1*(q1-1))",
        "p2": "-(2*q1-1)^2*t1/(2*(q1-2)^2) - (2*q1-1)^2*t2/(2*(q1+1)^2)"
        " + (2*q1-1)/(2*(q1-2)*(q1+1))",
    }
    params = {
        "theta0": RatFunc.const(0),
        "theta1": RatFunc.const(0),
        "thetainf": RatFunc.const(Fraction(1, 3)),
    }
    return AlgebraicSolutionRecord(
        "Kim122", {k: parse(v, _KIM_SYMBOLS) for k, v in texts.items()}, ctx, params
    )


def _kim23() -> AlgebraicSolutionRecord:
    ctx = AlgebraicContext.from_text("q1", ("t1", "t2"), "(q1*(3*q1+2*t1))^3 - 54*t2^2", label="G2")
    texts = {
        "q1": "q1",
        "q2": "-q1 - 2*t1/3",
        "p1": "q1/4 + t1/2 - 1/(6*q1) - t2/(2*q1^2)",
        "p2": "-q1/4 + t1/3 + 1/(2*(3*q1+2*t1)) - 9*t2/(2*(3*q1+2*t1)^2)",
    }
    params = {"theta0": RatFunc.const(0), "thetainf": RatFunc.const(-1)}
    return AlgebraicSolutionRecord(
        "Kim23", {k: parse(v, _KIM_SYMBOLS) for k, v in texts.items()}, ctx, params
    )


def _kaw4() -> AlgebraicSolutionRecord:
    texts = {"u1": "-t1", "u2": "t2", "v1": "0", "v2": "3/(4*t2)"}
    return AlgebraicSolutionRecord("Kaw4", {k: parse(v, ("t1", "t2")) for k, v in texts.items()})


# (t as a function of the uniformizer s, q as a function of s) for rows with radicals
_UNIFORMIZED = {
    "pv-alg": ("s^2", "2*s/theta + 1"),
    "piii-d6": ("s^2", "s"),
    "piii-d8": ("s^2", "s"),
    "piii-d7": ("-2*s^3", "s"),
}


def _painleve_record(row: AlgebraicPainleveRow) -> AlgebraicSolutionRecord:
    names = ("t", "s", "theta")
    eq = painleve_equation(row.equation)
    params = {p: parse(v, names) for p, v in zip(eq.params, row.params)}
    if row.name in _UNIFORMIZED:
        t_text, q_text = _UNIFORMIZED[row.name]
        return AlgebraicSolutionRecord(
            row.name, {"q": parse(q_text, names)}, None, params, "s", parse(t_text, names)
        )
    _, _, q_text = row.solution.partition("=")
    return AlgebraicSolutionRecord(
        row.name, {"q": parse(q_text, names)}, None, params, "t", RatFunc.var("t", names)
    )


def painleve_row(name: str) -> AlgebraicPainleveRow:
    for row in ALGEBRAIC_PAINLEVE:
        if row.name == name.strip().lower():
            return row
    raise UnknownIdentifierError(f"unknown Painleve solution {name!r}")


_GARNIER = {"kim122": ("Kim122", _kim122), "kim23": ("Kim23", _kim23), "kaw4": ("Kaw4", _kaw4)}

SOLUTION_IDS = (*_GARNIER, *(row.name for row in ALGEBRAIC_PAINLEVE))


def builtin_solution(
    name: str,
) -> tuple[HamiltonianSystem | PainleveEquation, AlgebraicSolutionRecord]:
    key = name.strip().lower()
    if key in _GARNIER:
        system_id, build = _GARNIER[key]
        return builtin_system(system_id), build()
    row = painleve_row(key)
    return painleve_equation(row.equation), _painleve_record(row)
