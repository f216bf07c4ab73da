from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from garnierx.covers.passport import Passport, ramification
from garnierx.errors import InconsistentPassportError, NonIntegralCountError
from garnierx.formal.calculus import chi_irr, orbifold_order, polar_degree, pullback_local
from garnierx.formal.data import REMOVED, BaseEquation, FormalDatum


@dataclass(frozen=True)
class CoverAnalysis:
    genus: int
    N_k: tuple[int, ...]
    R_k: tuple[int, ...]
    B: int
    N: int
    T: int
    admissible: bool
    target: tuple[FormalDatum, ...]

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "N_k": list(self.N_k),
            "R_k": list(self.R_k),
            "B": self.B,
            "N": self.N,
            "T": self.T,
            "admissible": self.admissible,
            "target": [p.to_json() for p in self.target],
        }


def rh_genus(d: int, passport: Passport, base_genus: int) -> int:
    """Riemann-Hurwitz: 2 - 2g = d(2 - 2g0) - R."""
    r = passport.total_ramification
    twice = r - d * (2 - 2 * base_genus) + 2
    if twice % 2:
        raise InconsistentPassportError(f"odd total ramification {r} for degree {d}")
    g = twice // 2
    if g < 0:
        raise InconsistentPassportError(f"negative genus {g} from ramification {r}")
    return g


def pole_count(pole: FormalDatum, fiber: tuple[int, ...], d: int) -> int:
    r_k = ramification(fiber)
    kappa = pole.kappa
    if kappa.twice_value == 0:
        nu = orbifold_order(pole.theta)
        value = Fraction(d - r_k)
        if nu is not None:
            value -= sum(1 for m in fiber if m % nu == 0)
    elif kappa.is_integer():
        value = d * (kappa.value + 1) - r_k
    else:
        odd = sum(1 for m in fiber if m % 2)
        value = d * (kappa.value + 1) - r_k + Fraction(odd, 2)
    if value.denominator != 1:
        raise NonIntegralCountError(f"pole count {value} over {pole} is not an integer")
    return int(value)


def pulled_back(pole: FormalDatum, fiber: tuple[int, ...]) -> list[FormalDatum]:
    out = []
    for m in fiber:
        fd = pullback_local(pole, m)
        if fd is not REMOVED:
            out.append(fd)
    return out


def analyze_cover(base: BaseEquation, passport: Passport) -> CoverAnalysis:
    if len(passport.pole_fibers) != len(base.poles):
        raise InconsistentPassportError(
            f"{len(passport.pole_fibers)} pole fibers for {len(base.poles)} poles"
        )
    d = passport.degree
    genus = rh_genus(d, passport, base.genus0)
    counts: list[int] = []
    target: list[FormalDatum] = []
    for pole, fiber in zip(base.poles, passport.pole_fibers):
        n_k = pole_count(pole, fiber, d)
        data = pulled_back(pole, fiber)
        if polar_degree(data) != n_k:
            raise NonIntegralCountError(
                f"pole count {n_k} over {pole} disagrees with pulled-back degree {polar_degree(data)}"
            )
        counts.append(n_k)
        target.extend(data)
    n = sum(counts)
    b = len(passport.free_fibers)
    t = 3 * genus - 3 + n
    return CoverAnalysis(
        genus=genus,
        N_k=tuple(counts),
        R_k=tuple(ramification(f) for f in passport.pole_fibers),
        B=b,
        N=n,
        T=t,
        admissible=1 <= t <= b,
        target=tuple(target),
    )


def bound_margin(base: BaseEquation, passport: Passport) -> tuple[int, Fraction]:
    a = analyze_cover(base, passport)
    return a.T - a.B, a.genus - 1 - passport.degree * chi_irr(base)
