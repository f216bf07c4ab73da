from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce

from sympy import divisors
from sympy.polys.rings import PolyElement

from garnierx.algebra.ratfunc import (
    RatFunc,
    coefficients_in,
    differentiate,
    lift,
    poly_ring,
    ring_names,
    substitute,
    to_fraction,
    union_symbols,
    used_names,
)
from garnierx.algebra.relations import AlgebraicContext, degree_in, leading_coeff_in
from garnierx.algebra.series import INF, Point, recenter, valuation
from garnierx.errors import InconsistentPassportError, PreconditionError


@dataclass(frozen=True)
class GeneralScalar:
    """u'' + f u' + g u = 0."""

    indep: str
    f: RatFunc
    g: RatFunc
    ctx: AlgebraicContext | None = None


@dataclass(frozen=True)
class SLForm:
    """v'' = Q v."""

    indep: str
    Q: RatFunc
    ctx: AlgebraicContext | None = None


@dataclass(frozen=True)
class RationalMap:
    indep: str
    value: RatFunc

    def __post_init__(self) -> None:
        if self.indep not in self.value.variables:
            raise PreconditionError(f"map {self.value} is constant in {self.indep}")

    def derivative(self) -> RatFunc:
        return differentiate(self.value, self.indep)


def sl_normalize(e: GeneralScalar) -> SLForm:
    f = e.f
    q = f * f / 4 + differentiate(f, e.indep) / 2 - e.g
    return SLForm(e.indep, q, e.ctx)


def schwarzian(phi: RationalMap) -> RatFunc:
    d1 = phi.derivative()
    if d1.is_zero():
        raise PreconditionError("the Schwarzian of a constant map is undefined")
    r = differentiate(d1, phi.indep) / d1
    return differentiate(r, phi.indep) - r * r / 2


def sl_pullback(form: SLForm, phi: RationalMap) -> SLForm:
    """Q~ = (Q o phi) phi'^2 - {phi, x}/2."""
    d1 = phi.derivative()
    composed = substitute(form.Q, {form.indep: phi.value})
    return SLForm(phi.indep, composed * d1 * d1 - schwarzian(phi) / 2, form.ctx)


def compose(phi: RationalMap, psi: RationalMap) -> RationalMap:
    return RationalMap(psi.indep, substitute(phi.value, {phi.indep: psi.value}))


@dataclass(frozen=True)
class PoleLocus:
    poles: tuple[tuple[Point, int], ...]
    unresolved: tuple[RatFunc, ...] = field(default=())


def _eval(coeffs: list[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in coeffs:
        acc = acc * x + c
    return acc


def _rational_roots(p: PolyElement, v: str) -> list[Fraction]:
    """Rational roots of a univariate polynomial with constant coefficients."""
    pieces = coefficients_in(p, v)
    top = max(pieces)
    coeffs = [to_fraction(pieces[k].LC) if k in pieces else Fraction(0) for k in range(top, -1, -1)]
    roots: list[Fraction] = []
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
        if Fraction(0) not in roots:
            roots.append(Fraction(0))
    if len(coeffs) <= 1:
        return roots
    scale = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * scale) for c in coeffs]
    for a in divisors(abs(ints[-1])):
        for b in divisors(abs(ints[0])):
            for cand in (Fraction(a, b), Fraction(-a, b)):
                if cand not in roots and _eval(coeffs, cand) == 0:
                    roots.append(cand)
    return roots


def _pole_order(form: SLForm, point: Point) -> int:
    local = recenter(form.Q, form.indep, point)
    if point == INF:
        w = RatFunc.var(form.indep, local.symbols)
        local = local / w**4
    val = valuation(local, form.indep, 0, form.ctx)
    return 0 if val is None or val >= 0 else -val


def find_poles(form: SLForm) -> PoleLocus:
    """Finite poles with rational (or parameter-rational) location, their orders, and infinity."""
    x = form.indep
    den = form.Q.den
    poles: list[tuple[Point, int]] = []
    unresolved: list[RatFunc] = []
    if degree_in(den, x) > 0:
        _, factors = den.sqf_list()
        for factor, _mult in factors:
            deg = degree_in(factor, x)
            if deg == 0:
                continue
            if deg == 1:
                parts = coefficients_in(factor, x)
                c0 = RatFunc.from_polys(parts[0]) if 0 in parts else RatFunc.const(0, form.Q.symbols)
                root = -c0 / RatFunc.from_polys(parts[1])
                poles.append((root, _pole_order(form, root)))
                continue
            if used_names(factor) <= {x}:
                roots = _rational_roots(factor, x)
                for r in roots:
                    poles.append((RatFunc.const(r, form.Q.symbols), _pole_order(form, r)))
                if len(roots) == deg:
                    continue
            unresolved.append(RatFunc.from_polys(factor))
    at_inf = _pole_order(form, INF)
    if at_inf:
        poles.append((INF, at_inf))
    return PoleLocus(tuple(poles), tuple(unresolved))


def free_critical_points(phi: RationalMap, known_fibers: list[Point]) -> RatFunc:
    """Monic polynomial in x vanishing at the critical points of phi outside the declared fibers."""
    x = phi.indep
    crit = phi.derivative().num
    for z0 in known_fibers:
        level = phi.value.den if z0 == INF else (phi.value - z0).num
        ring = poly_ring(union_symbols(ring_names(crit.ring), ring_names(level.ring), (x,)))
        level = lift(level, ring)
        gen = ring.gens[ring_names(ring).index(x)]
        repeated = level.gcd(level.diff(gen))
        # keep only the factors that vary with x
        repeated = repeated.exquo(reduce(lambda a, b: a.gcd(b), coefficients_in(repeated, x).values()))
        crit, rest = lift(crit, ring).div(repeated)
        if rest:
            raise InconsistentPassportError(
                f"ramification over {z0} does not divide the critical locus of {phi.value}"
            )
    if degree_in(crit, x) < 1:
        return RatFunc.const(1, phi.value.symbols)
    return RatFunc.from_polys(crit) / RatFunc.from_polys(leading_coeff_in(crit, x))
