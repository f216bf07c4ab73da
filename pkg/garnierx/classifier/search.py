from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterator

from joblib import Parallel, delayed

from garnierx import events
from garnierx.classifier.rows import UNCERTAIN, ClassRow, row_label
from garnierx.classifier.tables import CLASSIFICATION, TableRow
from garnierx.covers.analysis import analyze_cover
from garnierx.covers.monodromy import realizable
from garnierx.covers.passport import Partition, Passport, ramification, simple_fiber
from garnierx.covers.scatter import is_scattered
from garnierx.errors import SearchBoundError, UnsupportedInputError
from garnierx.formal.calculus import chi_irr, gauge_equivalent, gauge_key, orbifold_order
from garnierx.formal.catalog import catalog_reducible, identify
from garnierx.formal.data import BaseEquation, Exponent, FormalDatum, HalfInt
from garnierx.settings import DEFAULTS, SearchSettings


MODES = ("log", "scattered", "confluent")

_PLACEHOLDER = Exponent.param("_")


def partitions(n: int, largest: int | None = None) -> Iterator[Partition]:
    """Partitions of n with parts in decreasing order."""
    largest = n if largest is None else min(largest, n)
    if n == 0:
        yield ()
        return
    for first in range(largest, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def _period(pole: FormalDatum) -> int | None:
    if pole.kappa.twice_value == 0:
        nu = orbifold_order(pole.theta)
        return nu if nu is not None and nu > 1 else None
    if not pole.kappa.is_integer():
        return 2
    return None


def _generic(pole: FormalDatum) -> bool:
    return not pole.theta.is_rational()


def _pole_key(pole: FormalDatum) -> tuple:
    if _generic(pole):
        return (pole.kappa, (1,))
    return (pole.kappa, (0, -pole.theta.shift))


def canonical_pairs(
    poles: list[FormalDatum], fibers: list[Partition] | None = None
) -> tuple[tuple[FormalDatum, ...], tuple[Partition, ...]]:
    """Sort poles (with their fibers) and name generic exponents theta or theta1, theta2, ..."""
    fibers = fibers if fibers is not None else [()] * len(poles)
    pairs = sorted(zip(poles, fibers), key=lambda pf: (_pole_key(pf[0]), tuple(-m for m in pf[1])))
    count = sum(1 for p, _ in pairs if _generic(p))
    names = iter(["theta"] if count == 1 else [f"theta{i}" for i in range(1, count + 1)])
    out = []
    for pole, _ in pairs:
        if _generic(pole):
            pole = FormalDatum(pole.kappa, Exponent.param(next(names)))
        out.append(pole)
    return tuple(out), tuple(f for _, f in pairs)


def _make_base(poles: list[FormalDatum]) -> BaseEquation:
    ordered, _ = canonical_pairs(poles)
    return BaseEquation(genus0=0, poles=ordered, catalog_id=identify(ordered))


def _half_integers(limit: Fraction) -> list[HalfInt]:
    return [HalfInt(k) for k in range(0, int(limit * 2) + 1)]


def _pole_choices(kappa: HalfInt, settings: SearchSettings) -> list[FormalDatum]:
    if kappa.twice_value == 0:
        nus = [FormalDatum(kappa, Exponent.rational(Fraction(1, nu))) for nu in range(2, settings.max_nu + 1)]
        return nus + [FormalDatum(kappa, _PLACEHOLDER)]
    if not kappa.is_integer():
        return [FormalDatum(kappa, Exponent())]
    return [FormalDatum(kappa, _PLACEHOLDER)]


def enumerate_bases(mode: str, settings: SearchSettings = DEFAULTS) -> list[BaseEquation]:
    """Rigid genus-0 bases with -1/2 <= chi_irr < 0 that are not reducible by the formal criteria."""
    logarithmic = mode in ("log", "logarithmic")
    kappas = [HalfInt(0)] if logarithmic else _half_integers(settings.max_kappa)
    seen: set = set()
    bases: list[BaseEquation] = []
    for n in range(1, settings.max_poles + 1):
        for shape in itertools.combinations_with_replacement(kappas, n):
            if sum(1 + k.ceil() for k in shape) != 3:
                continue
            if not logarithmic and all(k.twice_value == 0 for k in shape):
                continue
            for poles in itertools.product(*(_pole_choices(k, settings) for k in shape)):
                if logarithmic and not any(_generic(p) for p in poles):
                    continue
                base = _make_base(list(poles))
                if base.signature in seen:
                    continue
                seen.add(base.signature)
                chi = chi_irr(base)
                if not (Fraction(-1, 2) <= chi < 0):
                    continue
                if catalog_reducible(base):
                    continue
                bases.append(base)
    bases.sort(key=lambda b: (tuple(p.kappa for p in b.poles), tuple(_pole_key(p) for p in b.poles)))
    return bases


def _scattered_fibers(pole: FormalDatum, d: int) -> list[Partition]:
    period = _period(pole)
    if period is None:
        return [(1,) * d]
    return [(period,) * a + (1,) * (d - a * period) for a in range(d // period, -1, -1)]


def _free_multisets(d: int, total: int) -> Iterator[tuple[Partition, ...]]:
    options = [p for p in partitions(d) if p[0] > 1]

    def rec(start: int, remaining: int) -> Iterator[tuple[Partition, ...]]:
        if remaining == 0:
            yield ()
            return
        for i in range(start, len(options)):
            r = ramification(options[i])
            if r <= remaining:
                for rest in rec(i, remaining - r):
                    yield (options[i],) + rest

    return rec(0, total)


def candidate_passports(base: BaseEquation, d: int, mode: str) -> Iterator[Passport]:
    budget = d * (2 - 2 * base.genus0) - 2  # genus-0 covers
    if mode == "confluent":
        choices = [list(partitions(d)) for _ in base.poles]
    else:
        choices = [_scattered_fibers(p, d) for p in base.poles]
    for fibers in itertools.product(*choices):
        free_r = budget - sum(map(ramification, fibers))
        if free_r < 0:
            continue
        if mode == "confluent":
            for free in _free_multisets(d, free_r):
                passport = Passport(d, fibers, free)
                if not is_scattered(base, passport):
                    yield passport
        else:
            yield Passport(d, fibers, (simple_fiber(d),) * free_r)


def collapse_generic(base: BaseEquation, passport: Passport) -> tuple[BaseEquation, Passport]:
    """Replace finite-order exponents that no fiber part exploits by generic parameters."""
    poles = list(base.poles)
    changed = False
    for i, (pole, fiber) in enumerate(zip(base.poles, passport.pole_fibers)):
        if pole.kappa.twice_value == 0 and _period(pole) is not None:
            if not any(m % _period(pole) == 0 for m in fiber):
                poles[i] = FormalDatum(pole.kappa, _PLACEHOLDER)
                changed = True
    if not changed:
        return base, passport
    ordered, fibers = canonical_pairs(poles, list(passport.pole_fibers))
    new_base = BaseEquation(genus0=base.genus0, poles=ordered, catalog_id=identify(ordered))
    return new_base, Passport(passport.degree, fibers, passport.free_fibers)


def _row(base: BaseEquation, passport: Passport) -> ClassRow:
    a = analyze_cover(base, passport)
    return ClassRow(
        base=base,
        degree=passport.degree,
        passport=passport,
        B=a.B,
        target=a.target,
        T=a.T,
        genus=a.genus,
        label=row_label(a.T, a.target),
    )


def max_cover_degree(base: BaseEquation, cap: int) -> int:
    chi = chi_irr(base)
    if chi >= 0:
        return cap
    return min(cap, math.floor(1 / -chi))


def search_base(base: BaseEquation, mode: str, max_degree: int, bound: int) -> list[ClassRow]:
    rows: list[ClassRow] = []
    for d in range(2, max_cover_degree(base, max_degree) + 1):
        for passport in candidate_passports(base, d, mode):
            a = analyze_cover(base, passport)
            if a.genus != 0 or not a.admissible:
                continue
            if not realizable(passport, bound):
                continue
            rows.append(_row(*collapse_generic(base, passport)))
    return rows


def search(
    mode: str, max_degree: int | None = None, settings: SearchSettings = DEFAULTS
) -> list[ClassRow]:
    if mode not in MODES:
        raise UnsupportedInputError(f"unknown mode {mode!r}")
    max_degree = settings.max_degree if max_degree is None else max_degree
    if max_degree > settings.realizability_bound:
        raise SearchBoundError(
            f"max degree {max_degree} exceeds the realizability bound {settings.realizability_bound}"
        )
    bases = enumerate_bases("logarithmic" if mode == "log" else "irregular", settings)
    bound = settings.realizability_bound
    if settings.n_jobs == 1:
        chunks = [search_base(b, mode, max_degree, bound) for b in bases]
    else:
        chunks = Parallel(n_jobs=settings.n_jobs)(
            delayed(search_base)(b, mode, max_degree, bound) for b in bases
        )

    rows: dict[tuple, ClassRow] = {}
    for base, chunk in zip(bases, chunks):
        events.emit("search_base", {"mode": mode, "base": [p.to_json() for p in base.poles], "rows": len(chunk)})
        for row in chunk:
            key = (row.base.signature, row.passport)
            if key not in rows:
                rows[key] = row
                events.emit("row_found", row.to_json())
    return sorted(rows.values(), key=ClassRow.sort_key)


def _pairing(poles, fibers) -> Counter:
    return Counter(zip(map(gauge_key, poles), fibers))


def matches(row: ClassRow, entry: TableRow) -> bool:
    passport = entry.parsed_passport()
    if row.degree != entry.degree or row.passport.free_fibers != passport.free_fibers:
        return False
    base = entry.base_data()
    if not gauge_equivalent(row.base.poles, base):
        return False
    if _pairing(row.base.poles, row.passport.pole_fibers) != _pairing(base, passport.pole_fibers):
        return False
    target = entry.target_data()
    return target is None or gauge_equivalent(row.target, target)


@dataclass(frozen=True)
class TableComparison:
    rows: tuple[ClassRow, ...]
    missing: tuple[TableRow, ...]

    @property
    def ok(self) -> bool:
        return not self.missing and all(UNCERTAIN not in r.flags for r in self.rows)


def compare_with_table(
    rows: list[ClassRow], mode: str, max_degree: int | None = None
) -> TableComparison:
    """Match rows against the published table; entries above max_degree are not expected."""
    table = [e for e in CLASSIFICATION[mode] if max_degree is None or e.degree <= max_degree]
    used: set[int] = set()
    annotated = []
    for row in rows:
        hit = next((i for i, e in enumerate(table) if i not in used and matches(row, e)), None)
        if hit is None:
            annotated.append(replace(row, flags=row.flags + (UNCERTAIN,)))
        else:
            used.add(hit)
            annotated.append(row)
    missing = tuple(e for i, e in enumerate(table) if i not in used)
    return TableComparison(tuple(annotated), missing)
