from __future__ import annotations

from collections import Counter
from fractions import Fraction
from typing import Iterable

from garnierx.formal.data import (
    REMOVED,
    BaseEquation,
    Exponent,
    FormalDatum,
    HalfInt,
    Removed,
)


def orbifold_order(theta: Exponent) -> int | None:
    """Order of theta modulo Z; None stands for infinite order."""
    if not theta.is_rational():
        return None
    return theta.shift.denominator


def chi_irr(base: BaseEquation) -> Fraction:
    chi = Fraction(2 - 2 * base.genus0)
    for p in base.poles:
        chi -= 1 + p.kappa.value
        if p.kappa.twice_value == 0:
            nu = orbifold_order(p.theta)
            if nu is not None:
                chi += Fraction(1, nu)
    return chi


def polar_degree(data: Iterable[FormalDatum]) -> int:
    return sum(1 + p.kappa.ceil() for p in data)


def teich_dim(genus: int, data: Iterable[FormalDatum]) -> int:
    return 3 * genus - 3 + polar_degree(data)


def pullback_local(fd: FormalDatum, m: int) -> FormalDatum | Removed:
    if m < 1:
        raise ValueError("ramification index must be at least 1")
    if fd.kappa.twice_value == 0:
        theta = fd.theta * m
        if theta.is_integer():
            return REMOVED
        return FormalDatum(HalfInt(0), theta)
    kappa = fd.kappa.scaled(m)
    if not fd.kappa.is_integer():
        return FormalDatum(kappa, Exponent())
    return FormalDatum(kappa, fd.theta * m)


def gauge_key(fd: FormalDatum) -> tuple:
    return (fd.kappa, fd.theta.normalized())


def gauge_equivalent(a: Iterable[FormalDatum], b: Iterable[FormalDatum]) -> bool:
    """Equal up to reordering poles and theta -> +-theta + n at each pole."""
    return Counter(map(gauge_key, a)) == Counter(map(gauge_key, b))


