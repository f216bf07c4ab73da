"""Formal invariants of v'' = Q v at a single point."""

from __future__ import annotations

from dataclasses import dataclass

from garnierx.algebra.ratfunc import RatFunc, sqrt_ratfunc
from garnierx.algebra.relations import is_zero_mod, reduce_mod
from garnierx.algebra.series import INF, Point, format_point, laurent_coeffs, recenter, valuation
from garnierx.errors import PreconditionError, UnsupportedInputError
from garnierx.formal.data import Exponent, HalfInt
from garnierx.formal.literal import exponent_from_ratfunc
from garnierx.odes.scalar import SLForm


@dataclass(frozen=True)
class LocalInvariant:
    kappa: HalfInt | None
    theta: Exponent | None
    pole_order: int
    apparent: bool | None = None
    # exponent difference before gauge normalization; set even when theta is not integer-affine
    difference: RatFunc | None = None
    theta_squared: RatFunc | None = None

    def to_json(self) -> dict:
        out: dict = {
            "kappa": None if self.kappa is None else str(self.kappa),
            "theta": None if self.theta is None else str(self.theta),
            "pole_order": self.pole_order,
        }
        if self.apparent is not None:
            out["apparent"] = self.apparent
        if self.theta is None and self.difference is not None:
            out["difference"] = str(self.difference)
        if self.theta is None and self.difference is None and self.theta_squared is not None:
            out["theta_squared"] = str(self.theta_squared)
        return out


def local_form(form: SLForm, center: Point) -> RatFunc:
    """Q in the local coordinate at center; at infinity the weight w^-4 is included."""
    local = recenter(form.Q, form.indep, center)
    if center == INF:
        w = RatFunc.var(form.indep, local.symbols)
        local = local / w**4
    return local


def _as_theta(diff: RatFunc) -> Exponent | None:
    try:
        return exponent_from_ratfunc(diff).normalized()
    except UnsupportedInputError:
        return None


def riccati_residues(local: RatFunc, x: str, order: int, ctx=None) -> tuple[RatFunc, RatFunc]:
    """Residues of the two formal solutions of w' + w^2 = Q at a pole of even order >= 4."""
    m = order // 2
    q = dict(zip(range(-order, 0), laurent_coeffs(local, x, 0, -order, order, ctx)))
    lead = sqrt_ratfunc(reduce_mod(q[-order], ctx))
    if lead is None:
        raise UnsupportedInputError(
            f"leading coefficient {q[-order]} is not a square; adjoin its square root first"
        )
    residues = []
    for sign in (1, -1):
        w = {-m: lead * sign}
        for s in range(1, m):
            n = -2 * m + s
            acc = q[n]
            for i in range(-m + 1, -m + s):
                acc = acc - w[i] * w[n - i]
            if n + 1 == -m:
                acc = acc - w[-m] * (n + 1)
            w[-m + s] = reduce_mod(acc / (w[-m] * 2), ctx)
        residues.append(w[-1])
    return residues[0], residues[1]


def local_invariants(form: SLForm, center: Point) -> LocalInvariant:
    ctx = form.ctx
    x = form.indep
    local = local_form(form, center)
    val = valuation(local, x, 0, ctx)
    order = 0 if val is None or val >= 0 else -val
    if order == 0:
        return LocalInvariant(None, None, 0)

    if order <= 2:
        c2 = laurent_coeffs(local, x, 0, -2, 1, ctx)[0]
        theta_sq = reduce_mod(c2 * 4 + 1, ctx)
        diff = sqrt_ratfunc(theta_sq)
        if diff is None:
            return LocalInvariant(HalfInt(0), None, order, theta_squared=theta_sq)
        theta = _as_theta(diff)
        apparent = None
        if diff.is_constant() and diff.constant().denominator == 1:
            n = abs(int(diff.constant()))
            apparent = n >= 1 and is_zero_mod(_obstruction(local, x, n, ctx), ctx)
        return LocalInvariant(HalfInt(0), theta, order, apparent, diff, theta_sq)

    kappa = HalfInt(order - 2)
    if order % 2:
        return LocalInvariant(kappa, Exponent(), order)
    plus, minus = riccati_residues(local, x, order, ctx)
    diff = reduce_mod(plus - minus, ctx)
    return LocalInvariant(kappa, _as_theta(diff), order, difference=diff)


def _obstruction(local: RatFunc, x: str, n: int, ctx) -> RatFunc:
    # a_j * j * (j - n) = sum_{i<j} q_{j-i-2} a_i for the smaller exponent; step n must be consistent
    q = laurent_coeffs(local, x, 0, -2, n + 1, ctx)
    a = [RatFunc.const(1, local.symbols)]
    for j in range(1, n):
        acc = sum((q[j - i] * a[i] for i in range(j)), RatFunc.const(0, local.symbols))
        a.append(reduce_mod(acc / (j * (j - n)), ctx))
    acc = sum((q[n - i] * a[i] for i in range(n)), RatFunc.const(0, local.symbols))
    return reduce_mod(acc, ctx)


def apparent_obstruction(form: SLForm, center: Point) -> RatFunc:
    """Resonance obstruction of the Frobenius series; zero exactly when center is apparent."""
    x, ctx = form.indep, form.ctx
    local = local_form(form, center)
    val = valuation(local, x, 0, ctx)
    if val is None or val >= 0 or val < -2:
        raise PreconditionError(f"{format_point(center)} is not a logarithmic pole")
    c2 = laurent_coeffs(local, x, 0, -2, 1, ctx)[0]
    diff = sqrt_ratfunc(reduce_mod(c2 * 4 + 1, ctx))
    if diff is None or not diff.is_constant() or diff.constant().denominator != 1 or diff.is_zero():
        raise PreconditionError(f"{format_point(center)} has no positive integer exponent difference")
    return _obstruction(local, x, abs(int(diff.constant())), ctx)
