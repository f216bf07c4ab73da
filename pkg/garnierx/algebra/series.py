from __future__ import annotations

from fractions import Fraction
from typing import Union

from garnierx.algebra.parser import parse
from garnierx.algebra.ratfunc import RatFunc, as_ratfunc, coefficients_in, substitute
from garnierx.algebra.relations import AlgebraicContext, is_zero_mod, reduce_mod
from garnierx.errors import PreconditionError, SingularOnCurveError, ZeroDenominatorError

INF = "inf"

Point = Union[str, int, Fraction, RatFunc]


def parse_point(text: str, symbols: tuple[str, ...]) -> Point:
    text = text.strip()
    if text in (INF, "oo", "infinity"):
        return INF
    return parse(text, symbols)


def format_point(p: Point) -> str:
    return INF if p == INF else str(p)


def recenter(r: RatFunc, v: str, center: Point) -> RatFunc:
    """r expressed in the local coordinate at ``center`` (1/v at infinity)."""
    x = RatFunc.var(v, r.symbols)
    if isinstance(center, str):
        if center != INF:
            raise PreconditionError(f"unknown point {center!r}")
        return substitute(r, {v: 1 / x})
    c = as_ratfunc(center, r.symbols)
    if v in c.variables:
        raise PreconditionError(f"center {c} depends on {v}")
    if c.is_zero():
        return r
    return substitute(r, {v: x + c})


def _local_parts(r: RatFunc, v: str, ctx: AlgebraicContext | None):
    nums = {k: reduce_mod(RatFunc.from_polys(p), ctx) for k, p in coefficients_in(r.num, v).items()}
    dens = {k: reduce_mod(RatFunc.from_polys(p), ctx) for k, p in coefficients_in(r.den, v).items()}
    nums = {k: c for k, c in nums.items() if not is_zero_mod(c, ctx)}
    dens = {k: c for k, c in dens.items() if not is_zero_mod(c, ctx)}
    if not dens:
        if ctx is None:
            raise ZeroDenominatorError("center makes the denominator vanish identically")
        raise SingularOnCurveError("center makes the denominator vanish on the curve")
    return nums, dens


def valuation(
    r: RatFunc, v: str, center: Point = 0, ctx: AlgebraicContext | None = None
) -> int | None:
    """Order of ``r`` at ``center`` (negative for poles); None for the zero function."""
    nums, dens = _local_parts(recenter(r, v, center), v, ctx)
    if not nums:
        return None
    return min(nums) - min(dens)


def laurent_coeffs(
    r: RatFunc,
    v: str,
    center: Point,
    from_order: int,
    count: int,
    ctx: AlgebraicContext | None = None,
) -> list[RatFunc]:
    """Coefficients of (v - center)^k, k = from_order .. from_order + count - 1."""
    local = recenter(r, v, center)
    zero = RatFunc.const(0, local.symbols)
    nums, dens = _local_parts(local, v, ctx)
    if not nums or count <= 0:
        return [zero] * max(count, 0)
    kn, kd = min(nums), min(dens)
    shift = kn - kd
    needed = from_order + count - 1 - shift
    if needed < 0:
        return [zero] * count

    d0 = dens[kd]
    series: list[RatFunc] = []
    for j in range(needed + 1):
        acc = nums.get(kn + j, zero)
        for i in range(1, j + 1):
            di = dens.get(kd + i)
            if di is not None:
                acc = acc - di * series[j - i]
        series.append(reduce_mod(acc / d0, ctx))

    out = []
    for k in range(from_order, from_order + count):
        j = k - shift
        out.append(series[j] if j >= 0 else zero)
    return out
