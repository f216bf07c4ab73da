"""Accessory parameters fixed by apparentness of designated singular points."""

from __future__ import annotations

from garnierx import events
from garnierx.algebra.ratfunc import RatFunc, differentiate, substitute
from garnierx.algebra.relations import is_zero_mod, reduce_mod
from garnierx.algebra.series import Point, format_point
from garnierx.errors import PreconditionError, SingularSystemError
from garnierx.odes.local import apparent_obstruction
from garnierx.odes.scalar import GeneralScalar, SLForm, sl_normalize


def linear_system(
    obstructions: list[RatFunc], unknowns: list[str], ctx=None
) -> tuple[list[list[RatFunc]], list[RatFunc]]:
    """Split affine obstructions into A h = b."""
    zeros = {u: 0 for u in unknowns}
    rows: list[list[RatFunc]] = []
    rhs: list[RatFunc] = []
    for ob in obstructions:
        row = [reduce_mod(differentiate(ob, u), ctx) for u in unknowns]
        for u, a in zip(unknowns, row):
            if any(v in a.variables for v in unknowns):
                raise PreconditionError(f"obstruction is not affine in {u}")
        rows.append(row)
        rhs.append(reduce_mod(-substitute(ob, zeros), ctx))
    return rows, rhs


def gauss_solve(a: list[list[RatFunc]], b: list[RatFunc], ctx=None) -> list[RatFunc]:
    n = len(a)
    if any(len(row) != n for row in a) or len(b) != n:
        raise SingularSystemError(f"system is not square ({len(a)} equations)")
    m = [list(row) + [rhs] for row, rhs in zip(a, b)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if not is_zero_mod(m[r][col], ctx)), None)
        if pivot is None:
            raise SingularSystemError(f"no pivot in column {col}")
        m[col], m[pivot] = m[pivot], m[col]
        p = m[col][col]
        for r in range(n):
            if r == col or is_zero_mod(m[r][col], ctx):
                continue
            factor = m[r][col] / p
            m[r] = [reduce_mod(v - factor * w, ctx) for v, w in zip(m[r], m[col])]
    return [reduce_mod(m[i][n] / m[i][i], ctx) for i in range(n)]


def solve_accessory(
    template: GeneralScalar | SLForm, unknowns: list[str], apparent_points: list[Point]
) -> dict[str, RatFunc]:
    form = sl_normalize(template) if isinstance(template, GeneralScalar) else template
    obstructions = []
    for point in apparent_points:
        ob = apparent_obstruction(form, point)
        events.emit(
            "verification_step", {"step": "obstruction", "point": format_point(point), "terms": len(ob.num)}
        )
        obstructions.append(ob)
    a, b = linear_system(obstructions, unknowns, form.ctx)
    return dict(zip(unknowns, gauss_solve(a, b, form.ctx)))
