from __future__ import annotations

import io
import json
from fractions import Fraction

import pytest

from garnierx import events
from garnierx.algebra.parser import parse
from garnierx.algebra.ratfunc import RatFunc
from garnierx.algebra.series import INF
from garnierx.errors import (
    InconsistentPassportError,
    PreconditionError,
    SingularSystemError,
    UnsupportedInputError,
)
from garnierx.formal.calculus import gauge_key, pullback_local
from garnierx.formal.data import REMOVED, Exponent, FormalDatum, HalfInt
from garnierx.garnier.systems import derived_system, hamiltonian_system
from garnierx.odes.accessory import gauss_solve, linear_system, solve_accessory
from garnierx.odes.local import apparent_obstruction, local_invariants
from garnierx.odes.scalar import (
    GeneralScalar,
    RationalMap,
    SLForm,
    compose,
    find_poles,
    free_critical_points,
    schwarzian,
    sl_normalize,
    sl_pullback,
)

X = ("x",)


def _form(text: str, symbols=X) -> SLForm:
    return SLForm("x", parse(text, symbols))


def _map(text: str, symbols=X) -> RationalMap:
    return RationalMap("x", parse(text, symbols))


def test_sl_normalize_degenerate_confluent(kim_base):
    e = GeneralScalar("x", parse(kim_base.f, X), parse(kim_base.g, X))
    assert sl_normalize(e).Q == parse("1/x - 2/(9*x^2)", X)


def test_sl_normalize_airy(airy_base):
    e = GeneralScalar("x", parse(airy_base.f, X), parse(airy_base.g, X))
    assert sl_normalize(e).Q == parse("x", X)


def test_schwarzian():
    assert schwarzian(_map("(x + 1)/(x - 1)")).is_zero()
    assert schwarzian(_map("x^2")) == parse("-3/(2*x^2)", X)
    with pytest.raises(PreconditionError):
        RationalMap("x", parse("3", X))


def test_pullback_of_trivial_equation():
    zero = SLForm("x", RatFunc.const(0, X))
    assert sl_pullback(zero, _map("x^2")).Q == parse("3/(4*x^2)", X)


def test_compose():
    assert compose(_map("x^2"), _map("x + 1")).value == parse("(x + 1)^2", X)


def test_invariants_of_degenerate_confluent():
    form = _form("1/x - 2/(9*x^2)")
    at_zero = local_invariants(form, RatFunc.const(0, X))
    assert at_zero.pole_order == 2
    assert at_zero.kappa == HalfInt(0)
    assert at_zero.theta == Exponent.rational(Fraction(1, 3))
    at_inf = local_invariants(form, INF)
    assert at_inf.pole_order == 3
    assert at_inf.kappa == HalfInt(1)
    assert at_inf.theta.is_zero()


def test_regular_point():
    inv = local_invariants(_form("1/x - 2/(9*x^2)"), RatFunc.const(1, X))
    assert inv.pole_order == 0
    assert inv.kappa is None
    assert inv.to_json() == {"kappa": None, "theta": None, "pole_order": 0}


def test_weber_exponent_at_infinity():
    syms = ("x", "a")
    inv = local_invariants(_form("x^2 - 2*a", syms), INF)
    assert inv.kappa == HalfInt(4)
    assert inv.theta == (Exponent.param("a") * 2 - 1).normalized()


def test_non_square_leading_coefficient():
    with pytest.raises(UnsupportedInputError):
        local_invariants(_form("2*x^2"), INF)


def test_apparent_singularity():
    apparent = _form("3/(4*x^2)")
    zero = RatFunc.const(0, X)
    assert apparent_obstruction(apparent, zero).is_zero()
    assert local_invariants(apparent, zero).apparent is True

    logarithmic = _form("3/(4*x^2) + 1/x")
    assert apparent_obstruction(logarithmic, zero) == -1
    assert local_invariants(logarithmic, zero).apparent is False


def test_apparent_obstruction_needs_a_logarithmic_pole():
    with pytest.raises(PreconditionError):
        apparent_obstruction(_form("3/(4*x^2)"), RatFunc.const(1, X))
    with pytest.raises(PreconditionError):
        apparent_obstruction(_form("1/x - 2/(9*x^2)"), RatFunc.const(0, X))


def test_find_poles():
    locus = find_poles(_form("1/x - 2/(9*x^2) + 1/(x^2 - 4)^2"))
    found = {str(p): k for p, k in locus.poles}
    assert found["0"] == 2
    assert found["2"] == 2
    assert found["-2"] == 2
    assert locus.unresolved == ()


def test_free_critical_points():
    phi = _map("x^3 - 3*x")
    assert free_critical_points(phi, []) == parse("x^2 - 1", X)
    # the critical point x = 1 lies over -2
    assert free_critical_points(phi, [parse("-2", X)]) == parse("x + 1", X)


def test_gauss_solve():
    a = [[parse("1", X), parse("1", X)], [parse("1", X), parse("-1", X)]]
    b = [parse("x", X), parse("1", X)]
    h = gauss_solve(a, b)
    assert h == [parse("(x + 1)/2", X), parse("(x - 1)/2", X)]


def test_singular_system():
    one = parse("1", X)
    with pytest.raises(SingularSystemError):
        gauss_solve([[one, one], [one, one]], [one, one])
    with pytest.raises(SingularSystemError):
        gauss_solve([[one, one]], [one])


def test_linear_system_rejects_nonlinear_unknowns():
    syms = ("x", "h")
    with pytest.raises(PreconditionError):
        linear_system([parse("h^2 + x", syms)], ["h"])


def test_accessory_parameter_of_linear_painleve_ii():
    system = hamiltonian_system("PII")
    q = RatFunc.var("q", ("x", *system.symbols))
    solved = solve_accessory(system.template, ["H"], [q])
    assert solved["H"] == system.hamiltonians[0]


def test_derived_painleve_ii_hamiltonian():
    printed = hamiltonian_system("PII")
    assert derived_system("PII").hamiltonians == printed.hamiltonians


def test_free_critical_points_of_the_kaw4_cover():
    syms = ("x", "t1", "t2")
    phi = _map("(x^2 + 3*t1*x - 3*t2)^2/(36*x)", syms)
    assert free_critical_points(phi, [parse("0", syms), INF]) == parse("x^2 + t1*x + t2", syms)
    assert free_critical_points(_map("x^2"), []) == parse("x", X)
    assert free_critical_points(_map("(2*x + 1)/(x - 3)"), []) == 1


def test_free_critical_points_reject_a_fiber_that_moves_with_x():
    phi = _map("x^3 - 3*x")
    with pytest.raises(InconsistentPassportError):
        free_critical_points(phi, [parse("x^3 - 3*x + (x - 5)^2", X)])


_APPARENT_FORMS = [
    "3/(4*x^2)",
    "3/(4*x^2) + 1/x",
    "3/(4*x^2) - 1/(2*x) + 1/(x - 1)",
    "3/(4*x^2) + 1/(x + 1)^2",
]


@pytest.mark.parametrize("text", _APPARENT_FORMS)
@pytest.mark.parametrize("shift", [1, -3, Fraction(1, 2)])
def test_apparent_obstruction_moves_with_translation(text, shift):
    form = _form(text)
    moved = sl_pullback(form, RationalMap("x", RatFunc.var("x", X) + shift))
    zero = RatFunc.const(0, X)
    assert apparent_obstruction(moved, RatFunc.const(-shift, X)) == apparent_obstruction(form, zero)


@pytest.mark.parametrize("text", _APPARENT_FORMS)
@pytest.mark.parametrize("mobius", ["x/(x + 1)", "2*x/(1 - 3*x)", "-x/(x - 2)"])
def test_apparentness_survives_mobius_changes(text, mobius):
    form = _form(text)
    zero = RatFunc.const(0, X)
    moved = sl_pullback(form, _map(mobius))
    before = apparent_obstruction(form, zero).is_zero()
    assert apparent_obstruction(moved, zero).is_zero() == before


@pytest.mark.parametrize(
    "text, symbols, center, cover, m",
    [
        ("1/x - 2/(9*x^2)", X, 0, "x^2", 2),
        ("1/x - 2/(9*x^2)", X, INF, "x^2", 2),
        ("1/x - 2/(9*x^2)", X, INF, "x^3", 3),
        ("x^2 - 2*a", ("x", "a"), INF, "x^2", 2),
        ("x^2 - 2*a", ("x", "a"), INF, "x^3", 3),
    ],
)
def test_invariants_multiply_by_the_ramification_index(text, symbols, center, cover, m):
    form = _form(text, symbols)
    point = INF if center == INF else RatFunc.const(center, symbols)
    base = local_invariants(form, point)
    pulled = local_invariants(sl_pullback(form, _map(cover, symbols)), point)
    expected = pullback_local(FormalDatum(base.kappa, base.theta), m)
    assert gauge_key(FormalDatum(pulled.kappa, pulled.theta)) == gauge_key(expected)


def test_exponent_one_third_disappears_under_a_triple_cover():
    form = _form("1/x - 2/(9*x^2)")
    pulled = sl_pullback(form, _map("x^3"))
    assert pulled.Q == parse("9*x", X)
    assert pullback_local(FormalDatum(HalfInt(0), Exponent.rational(Fraction(1, 3))), 3) is REMOVED
    assert local_invariants(pulled, RatFunc.const(0, X)).pole_order == 0


def test_accessory_solving_reports_each_obstruction():
    stream = io.StringIO()
    events.configure(True, stream)
    system = hamiltonian_system("PII")
    q = RatFunc.var("q", ("x", *system.symbols))
    solve_accessory(system.template, ["H"], [q])
    steps = [json.loads(line) for line in stream.getvalue().splitlines()]
    assert [s["step"] for s in steps] == ["obstruction"]
    assert steps[0]["event"] == "verification_step"
    assert steps[0]["point"] == "q"
