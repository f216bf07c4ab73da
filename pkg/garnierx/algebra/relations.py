"""Arithmetic on the curve cut out by a single polynomial relation G(s, params) = 0."""

from __future__ import annotations

from dataclasses import dataclass, field

from sympy.polys.rings import PolyElement

from garnierx.algebra.parser import parse
from garnierx.algebra.ratfunc import (
    RatFunc,
    lift,
    poly_ring,
    ring_names,
    union_symbols,
)
from garnierx.errors import PreconditionError, SingularOnCurveError


def degree_in(p: PolyElement, v: str) -> int:
    names = ring_names(p.ring)
    if not p or v not in names:
        return 0 if p else -1
    d = p.degree(p.ring.gens[names.index(v)])
    return int(d)


def leading_coeff_in(p: PolyElement, v: str) -> PolyElement:
    names = ring_names(p.ring)
    if v not in names:
        return p
    i = names.index(v)
    top = degree_in(p, v)
    terms = {m[:i] + (0,) + m[i + 1:]: c for m, c in p.items() if m[i] == top}
    return p.ring.from_dict(terms)


def pseudo_remainder(a: PolyElement, g: PolyElement, v: str) -> tuple[PolyElement, int]:
    """(r, e) with lc_v(g)^e * a = quotient * g + r and deg_v r < deg_v g."""
    dg = degree_in(g, v)
    lc = leading_coeff_in(g, v)
    gen = a.ring.gens[ring_names(a.ring).index(v)]
    e = 0
    while a and degree_in(a, v) >= dg:
        da = degree_in(a, v)
        a = a * lc - leading_coeff_in(a, v) * gen ** (da - dg) * g
        e += 1
    return a, e


@dataclass(frozen=True)
class AlgebraicContext:
    generator: str
    base_params: tuple[str, ...]
    relation: RatFunc
    label: str = field(default="", compare=False)

    def __post_init__(self) -> None:
        if not self.relation.is_polynomial():
            raise PreconditionError("the defining relation must be a polynomial")
        if degree_in(self.relation.num, self.generator) < 1:
            raise PreconditionError(
                f"relation has no positive degree in {self.generator}"
            )

    @classmethod
    def from_text(
        cls, generator: str, base_params: tuple[str, ...] | list[str], text: str, label: str = ""
    ) -> "AlgebraicContext":
        symbols = (generator, *base_params)
        rel = parse(text, symbols)
        # clear denominators: the curve is the zero set of the numerator
        rel = RatFunc.from_polys(rel.num)
        return cls(generator, tuple(base_params), rel, label)

    @property
    def symbols(self) -> tuple[str, ...]:
        return (self.generator, *self.base_params)

    def _lifted(self, r: RatFunc) -> tuple[PolyElement, PolyElement, PolyElement]:
        ring = poly_ring(union_symbols(r.symbols, self.relation.symbols))
        return lift(r.num, ring), lift(r.den, ring), lift(self.relation.num, ring)

    def reduce(self, r: RatFunc) -> RatFunc:
        num, den, g = self._lifted(r)
        if degree_in(num, self.generator) < degree_in(g, self.generator) and degree_in(
            den, self.generator
        ) < degree_in(g, self.generator):
            return r
        lc = leading_coeff_in(g, self.generator)
        rn, en = pseudo_remainder(num, g, self.generator)
        rd, ed = pseudo_remainder(den, g, self.generator)
        if not rd:
            raise SingularOnCurveError(f"denominator of {r} vanishes on {self.relation} = 0")
        return RatFunc.from_polys(rn * lc**ed, rd * lc**en)

    def is_zero(self, r: RatFunc) -> bool:
        num, den, g = self._lifted(r)
        if not pseudo_remainder(den, g, self.generator)[0]:
            raise SingularOnCurveError(f"denominator of {r} vanishes on {self.relation} = 0")
        return not pseudo_remainder(num, g, self.generator)[0]

    def equals(self, a: RatFunc, b: RatFunc) -> bool:
        self.is_zero(a)
        self.is_zero(b)
        return self.is_zero(a - b)

    def to_json(self) -> dict:
        return {
            "relation": str(self.relation),
            "generator": self.generator,
            "base_params": list(self.base_params),
        }


def reduce_mod(r: RatFunc, ctx: AlgebraicContext | None) -> RatFunc:
    return r if ctx is None else ctx.reduce(r)


def equals_mod(a: RatFunc, b: RatFunc, ctx: AlgebraicContext | None) -> bool:
    if ctx is None:
        return a == b
    return ctx.equals(a, b)


def is_zero_mod(r: RatFunc, ctx: AlgebraicContext | None) -> bool:
    if ctx is None:
        return r.is_zero()
    return ctx.is_zero(r)
