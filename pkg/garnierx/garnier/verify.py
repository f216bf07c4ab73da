"""Exact verification of solutions by implicit differentiation along the defining curve."""

from __future__ import annotations

from typing import Mapping, Sequence

from garnierx import events
from garnierx.algebra.ratfunc import RatFunc, as_ratfunc, differentiate, substitute
from garnierx.algebra.relations import AlgebraicContext, is_zero_mod, reduce_mod
from garnierx.errors import PreconditionError, SingularOnCurveError
from garnierx.garnier.solutions import AlgebraicSolutionRecord
from garnierx.garnier.systems import HamiltonianSystem, painleve_equation


def implicit_derivative(x: RatFunc, t: str, ctx: AlgebraicContext | None) -> RatFunc:
    """dX/dt along G = 0, the generator being an implicit function of the times."""
    if ctx is None:
        return differentiate(x, t)
    s = ctx.generator
    g = ctx.relation
    gs = differentiate(g, s)
    if is_zero_mod(gs, ctx):
        raise SingularOnCurveError(f"the relation is degenerate in {s}")
    ds = -differentiate(g, t) / gs
    return reduce_mod(differentiate(x, t) + differentiate(x, s) * ds, ctx)


def residual_labels(system: HamiltonianSystem) -> list[str]:
    labels = []
    for t in system.times:
        for q, p in zip(system.coords, system.momenta):
            labels.append(f"d{q}/d{t}")
            labels.append(f"d{p}/d{t}")
    return labels


def hamilton_residual(system: HamiltonianSystem, sol: AlgebraicSolutionRecord) -> list[RatFunc]:
    """dq_j/dt_i - dH_i/dp_j and dp_j/dt_i + dH_i/dq_j, in the order of residual_labels."""
    missing = [s for s in (*system.coords, *system.momenta) if s not in sol.assignments]
    if missing:
        raise PreconditionError(f"solution {sol.label} does not assign {', '.join(missing)}")
    ctx = sol.ctx
    bindings = {**sol.params, **sol.assignments}

    def at_solution(r: RatFunc) -> RatFunc:
        return reduce_mod(substitute(r, bindings), ctx)

    out: list[RatFunc] = []
    for t, h in zip(system.times, system.hamiltonians):
        for q, p in zip(system.coords, system.momenta):
            dq = implicit_derivative(sol.assignments[q], t, ctx)
            dp = implicit_derivative(sol.assignments[p], t, ctx)
            rq = reduce_mod(dq - at_solution(differentiate(h, p)), ctx)
            rp = reduce_mod(dp + at_solution(differentiate(h, q)), ctx)
            for name, r in ((f"d{q}/d{t}", rq), (f"d{p}/d{t}", rp)):
                zero = is_zero_mod(r, ctx)
                events.emit("verification_step", {"residual": name, "zero": zero})
            out.extend((rq, rp))
    return out


def painleve_residual(
    name: str, params: Sequence[object] | Mapping[str, object] | None, sol: AlgebraicSolutionRecord
) -> RatFunc:
    """Residual of the second-order equation along q(s), t = rho(s); d/dt = (1/rho') d/ds."""
    eq = painleve_equation(name)
    if params is None:
        values = dict(sol.params)
    elif isinstance(params, Mapping):
        values = {k: as_ratfunc(v) for k, v in params.items()}
    else:
        if len(params) != len(eq.params):
            raise PreconditionError(f"{eq.name} takes {len(eq.params)} parameters")
        values = dict(zip(eq.params, (as_ratfunc(v) for v in params)))
    s = sol.indep
    rho = sol.uniformizer if sol.uniformizer is not None else RatFunc.var(s)
    drho = differentiate(rho, s)
    if drho.is_zero():
        raise PreconditionError("the uniformizer is constant")
    q = sol.assignments["q"]
    dq = differentiate(q, s) / drho
    ddq = differentiate(dq, s) / drho
    bindings = {**values, "t": rho, "q": q, "dq": dq, "ddq": ddq}
    return substitute(eq.residual, bindings)
