"""The five degenerate hypergeometric equations on the sphere.

Each constructor returns the formal data at the poles together with the
scalar equation u'' + f u' + g u = 0 written in the expression grammar.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from garnierx.formal.data import BaseEquation, Exponent, FormalDatum, HalfInt, as_exponent
from garnierx.formal.literal import exponent_from_text

ParamLike = Union[Exponent, int, Fraction, str]

ZERO = HalfInt(0)
HALF = HalfInt(1)
ONE = HalfInt(2)
THREE_HALVES = HalfInt(3)
TWO = HalfInt(4)


def _exp(value: ParamLike) -> Exponent:
    if isinstance(value, str):
        return exponent_from_text(value)
    return as_exponent(value)


def _p(e: Exponent) -> str:
    return f"({e})"


def _params(*exps: Exponent) -> tuple[str, ...]:
    return tuple(dict.fromkeys(s for e in exps for s in e.symbols))


def gauss(a: ParamLike, b: ParamLike, c: ParamLike) -> BaseEquation:
    a, b, c = _exp(a), _exp(b), _exp(c)
    return BaseEquation(
        genus0=0,
        poles=(
            FormalDatum(ZERO, c - 1),
            FormalDatum(ZERO, a + b - c),
            FormalDatum(ZERO, a - b),
        ),
        catalog_id="Gauss",
        f=f"(({_p(a)} + {_p(b)} + 1)*x - {_p(c)})/(x*(x - 1))",
        g=f"{_p(a)}*{_p(b)}/(x*(x - 1))",
        positions=("0", "1", "inf"),
        params=_params(a, b, c),
    )


def kummer(a: ParamLike, c: ParamLike) -> BaseEquation:
    a, c = _exp(a), _exp(c)
    return BaseEquation(
        genus0=0,
        poles=(FormalDatum(ZERO, c), FormalDatum(ONE, a * 2 - c)),
        catalog_id="Kummer",
        f=f"{_p(c)}/x - 1",
        g=f"-{_p(a)}/x",
        positions=("0", "inf"),
        params=_params(a, c),
    )


def weber(a: ParamLike) -> BaseEquation:
    a = _exp(a)
    return BaseEquation(
        genus0=0,
        poles=(FormalDatum(TWO, a * 2 - 1),),
        catalog_id="Weber",
        f="0",
        g=f"-(x^2 - 2*{_p(a)})",
        positions=("inf",),
        params=_params(a),
    )


def degenerate_confluent(c: ParamLike) -> BaseEquation:
    c = _exp(c)
    return BaseEquation(
        genus0=0,
        poles=(FormalDatum(ZERO, c), FormalDatum(HALF, Exponent())),
        catalog_id="DegenerateConfluent",
        f=f"{_p(c)}/x",
        g="-1/x",
        positions=("0", "inf"),
        params=_params(c),
    )


def airy() -> BaseEquation:
    return BaseEquation(
        genus0=0,
        poles=(FormalDatum(THREE_HALVES, Exponent()),),
        catalog_id="Airy",
        f="0",
        g="-x",
        positions=("inf",),
    )


_SHAPES = {
    (ZERO, ZERO, ZERO): "Gauss",
    (ZERO, ONE): "Kummer",
    (TWO,): "Weber",
    (ZERO, HALF): "DegenerateConfluent",
    (THREE_HALVES,): "Airy",
}


def identify(poles) -> str | None:
    """Catalog family of a genus-0 list of formal data, from its irregularity indices."""
    return _SHAPES.get(tuple(sorted(p.kappa for p in poles)))


def _in_2z(e: Exponent) -> bool:
    return e.is_integer() and e.shift.numerator % 2 == 0


def catalog_reducible(base: BaseEquation) -> bool:
    """Formal criterion for a reducible or dihedral Galois group."""
    if base.genus0 != 0:
        return False
    family = base.catalog_id or identify(base.poles)
    by_kappa = {p.kappa: p.theta for p in base.poles}
    if family == "Kummer":
        t0, tinf = by_kappa[ZERO], by_kappa[ONE]
        return _in_2z(tinf - t0) or _in_2z(tinf + t0)
    if family == "Weber":
        return _in_2z(by_kappa[TWO])
    if family == "DegenerateConfluent":
        t0 = by_kappa[ZERO]
        return t0.is_rational() and (t0.shift - Fraction(1, 2)).denominator == 1
    return False
