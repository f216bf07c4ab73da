from __future__ import annotations

from dataclasses import replace

import pytest

from garnierx.algebra.parser import parse
from garnierx.algebra.ratfunc import RatFunc
from garnierx.algebra.relations import AlgebraicContext, equals_mod, is_zero_mod
from garnierx.classifier.tables import ALGEBRAIC_PAINLEVE
from garnierx.covers.analysis import analyze_cover
from garnierx.covers.passport import parse_passport
from garnierx.errors import PreconditionError, UnknownIdentifierError, UnsupportedInputError
from garnierx.formal.calculus import pullback_local
from garnierx.formal.data import BaseEquation
from garnierx.formal.literal import parse_formal_data
from garnierx.garnier.pullback import base_form, verify_pullback
from garnierx.garnier.solutions import AlgebraicSolutionRecord, builtin_solution, painleve_row
from garnierx.garnier.systems import (
    builtin_system,
    compare_hamiltonians,
    derived_system,
    hamiltonian_system,
    painleve_equation,
    painleve_name,
)
from garnierx.garnier.verify import (
    hamilton_residual,
    implicit_derivative,
    painleve_residual,
    residual_labels,
)


def _custom(q: str) -> AlgebraicSolutionRecord:
    return AlgebraicSolutionRecord("custom", {"q": parse(q, ("t",))}, None, {}, "t", RatFunc.var("t"))


def test_painleve_names():
    assert painleve_name("PainleveIII") == "PIII"
    assert painleve_name("piv") == "PIV"
    assert painleve_name("PIII'") == "PIII'"
    with pytest.raises(UnknownIdentifierError):
        painleve_name("PVII")


def test_painleve_equation_parameters():
    assert painleve_equation("PI").params == ()
    assert painleve_equation("PVI").params == ("alpha", "beta", "gamma", "delta")


@pytest.mark.parametrize("name", [row.name for row in ALGEBRAIC_PAINLEVE])
def test_algebraic_painleve_solutions(name):
    eq, sol = builtin_solution(name)
    assert eq.name == painleve_row(name).equation
    assert painleve_residual(eq.name, None, sol).is_zero()


def test_hermite_parameters_are_needed():
    assert painleve_residual("PIV", [0, -2], _custom("-2*t")).is_zero()
    assert not painleve_residual("PIV", [0, -2], _custom("-t")).is_zero()
    assert painleve_residual("PIV", {"alpha": 0, "beta": -2}, _custom("-2*t")).is_zero()


def test_painleve_residual_parameter_count():
    with pytest.raises(PreconditionError):
        painleve_residual("PIV", [0], _custom("-2*t"))


def test_kaw4_solution():
    system, sol = builtin_solution("kaw4")
    residuals = hamilton_residual(system, sol)
    assert len(residuals) == 8
    assert len(residual_labels(system)) == 8
    assert residual_labels(system)[:2] == ["du1/dt1", "dv1/dt1"]
    assert all(r.is_zero() for r in residuals)


def test_perturbed_kaw4_solution_fails():
    system, sol = builtin_solution("kaw4")
    bad = replace(sol, assignments={**sol.assignments, "v1": RatFunc.const(1)})
    assert not all(r.is_zero() for r in hamilton_residual(system, bad))


def test_missing_assignment():
    system, sol = builtin_solution("kaw4")
    partial = replace(sol, assignments={k: v for k, v in sol.assignments.items() if k != "v2"})
    with pytest.raises(PreconditionError):
        hamilton_residual(system, partial)


def test_implicit_derivative():
    ctx = AlgebraicContext.from_text("s", ("t",), "s^2 - t")
    s = RatFunc.var("s", ("s", "t"))
    assert equals_mod(implicit_derivative(s, "t", ctx), parse("1/(2*s)", ("s", "t")), ctx)
    assert implicit_derivative(parse("t^2", ("t",)), "t", None) == parse("2*t", ("t",))


def test_builtin_system_lookup():
    assert builtin_system("Kim23").name == "Kim23"
    assert builtin_system("PainleveII").name == "PII"
    with pytest.raises(UnknownIdentifierError):
        builtin_system("Kim99")
    with pytest.raises(UnknownIdentifierError):
        hamiltonian_system("PainleveII")


def test_kaw4_accessory_parameters_are_not_its_hamiltonians():
    with pytest.raises(UnsupportedInputError):
        derived_system("Kaw4")


def test_kaw4_base_form():
    assert base_form("kaw4").Q == parse("1/x - 3/(16*x^2)", ("x",))


def test_kaw4_pullback():
    report = verify_pullback("kaw4")
    assert report.status == "equal"
    assert report.ok
    assert set(report.extracted) == {"u1", "u2", "v1", "v2"}


def test_unknown_pullback_case():
    with pytest.raises(UnknownIdentifierError):
        verify_pullback("kim99")


@pytest.mark.slow
def test_kim23_printed_hamiltonians():
    system, sol = builtin_solution("kim23")
    assert all(r.is_zero() for r in hamilton_residual(system, sol))
    assert compare_hamiltonians("Kim23").agree == (True, True)


@pytest.mark.slow
def test_kim122_needs_derived_hamiltonians():
    system, sol = builtin_solution("kim122")
    params = {k: v for k, v in sol.params.items() if k in system.params}
    derived = derived_system("Kim122", params)
    assert all(r.is_zero() for r in hamilton_residual(derived, sol))
    assert False in compare_hamiltonians("Kim122").agree


@pytest.mark.slow
@pytest.mark.parametrize("case", ["kim122", "kim23"])
def test_kim_pullbacks(case):
    report = verify_pullback(case)
    assert report.status in ("equal", "fallback")
    assert report.poles


def _order(fd) -> int:
    return fd.kappa.twice_value + 2


def _cover_analysis(base: str, passport: str):
    base_eq = BaseEquation(0, tuple(parse_formal_data(base)))
    return base_eq, analyze_cover(base_eq, parse_passport(passport))


def test_kaw4_pullback_poles_follow_the_cover():
    base, a = _cover_analysis("(0,1/2; 1/2,0)", "d=4; poles=[2,2],[3,1]; free=simple*2")
    report = verify_pullback("kaw4")
    irregular = base.poles[1]
    # x = inf and x = 0 lie over the irregular pole with indices 3 and 1
    expected = {
        "inf": _order(pullback_local(irregular, 3)),
        "0": _order(pullback_local(irregular, 1)),
    }
    assert dict(report.poles) == expected
    assert sorted(k for _, k in report.poles) == sorted(_order(fd) for fd in a.target)


@pytest.mark.parametrize("name", ["kim122", "kim23"])
def test_kim_relations_are_conserved(name):
    _, sol = builtin_solution(name)
    ctx = sol.ctx
    for t in ctx.base_params:
        assert is_zero_mod(implicit_derivative(ctx.relation, t, ctx), ctx)


@pytest.mark.slow
@pytest.mark.parametrize("name", ["kim122", "kim23"])
def test_kim_time_derivatives_commute(name):
    _, sol = builtin_solution(name)
    ctx = sol.ctx
    for coord in ("q1", "q2"):
        x = sol.assignments[coord]
        d12 = implicit_derivative(implicit_derivative(x, "t1", ctx), "t2", ctx)
        d21 = implicit_derivative(implicit_derivative(x, "t2", ctx), "t1", ctx)
        assert equals_mod(d12, d21, ctx)


@pytest.mark.slow
def test_kim23_pullback_poles_follow_the_cover():
    _, a = _cover_analysis("(0,1/2; 1/3,0)", "d=6; poles=[3,3],[4,2]; free=simple*2")
    assert sorted(_order(fd) for fd in a.target) == [4, 6]
    found = dict(verify_pullback("kim23").poles)
    assert found["0"] == 4
    assert found["inf"] == 6
    # the remaining poles are the apparent points q1, q2
    assert all(k == 2 for p, k in found.items() if p not in ("0", "inf"))
