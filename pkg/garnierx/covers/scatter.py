from __future__ import annotations

from dataclasses import dataclass

from garnierx.covers.analysis import analyze_cover
from garnierx.covers.passport import Partition, Passport, ramification, simple_fiber
from garnierx.formal.calculus import orbifold_order
from garnierx.formal.data import BaseEquation, FormalDatum


def _split(fiber: Partition, period: int) -> tuple[list[int], int]:
    """Euclidean division of each part by ``period``; returns new parts and extra simple fibers."""
    parts: list[int] = []
    extra = 0
    for m in fiber:
        s0, s1 = divmod(m, period)
        parts.extend([period] * s0 + [1] * s1)
        extra += s0 + s1 - 1
    return parts, extra


def scatter_pole_fiber(pole: FormalDatum, fiber: Partition) -> tuple[Partition, int]:
    d = sum(fiber)
    if pole.kappa.twice_value == 0:
        nu = orbifold_order(pole.theta)
        period = nu if nu is not None and nu > 1 else None
    elif pole.kappa.is_integer():
        period = None
    else:
        period = 2
    if period is None:
        return (1,) * d, ramification(fiber)
    parts, extra = _split(fiber, period)
    return tuple(sorted(parts, reverse=True)), extra


def scatter(base: BaseEquation, passport: Passport) -> Passport:
    d = passport.degree
    simple = sum(ramification(f) for f in passport.free_fibers)
    poles: list[Partition] = []
    for pole, fiber in zip(base.poles, passport.pole_fibers):
        new, extra = scatter_pole_fiber(pole, fiber)
        poles.append(new)
        simple += extra
    return Passport(d, tuple(poles), (simple_fiber(d),) * simple)


def is_scattered(base: BaseEquation, passport: Passport) -> bool:
    return scatter(base, passport) == passport


@dataclass(frozen=True)
class ScatterLedger:
    before: Passport
    after: Passport
    n_minus_b: tuple[int, int]
    t_minus_b: tuple[int, int]
    ramification: tuple[int, int]

    def to_json(self) -> dict:
        return {
            "before": str(self.before),
            "after": str(self.after),
            "N-B": list(self.n_minus_b),
            "T-B": list(self.t_minus_b),
            "R": list(self.ramification),
        }


def scatter_ledger(base: BaseEquation, passport: Passport) -> ScatterLedger:
    after = scatter(base, passport)
    a, b = analyze_cover(base, passport), analyze_cover(base, after)
    return ScatterLedger(
        before=passport,
        after=after,
        n_minus_b=(a.N - a.B, b.N - b.B),
        t_minus_b=(a.T - a.B, b.T - b.B),
        ramification=(passport.total_ramification, after.total_ramification),
    )
