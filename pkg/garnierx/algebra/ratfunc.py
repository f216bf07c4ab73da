"""Canonical multivariate rational functions over Q.

Values are pairs of sympy sparse polynomials living in a ring whose
generators are the declared symbols, with the graded-lexicographic order.
The pair is always reduced (polynomial gcd removed) and the denominator is
monic, so equal functions over the same ring share one representation.
Operations between values over different rings lift both operands to the
union ring (left operand's symbols first).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Mapping, Union

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

from garnierx.errors import UnknownSymbolError, ZeroDenominatorError

Scalar = Union[int, Fraction]

# A ring needs at least one generator; constants live over this one.
_PLACEHOLDER = ("x",)


@lru_cache(maxsize=None)
def poly_ring(symbols: tuple[str, ...]) -> PolyRing:
    return PolyRing(symbols or _PLACEHOLDER, QQ, grlex)


@lru_cache(maxsize=None)
def ring_names(ring: PolyRing) -> tuple[str, ...]:
    return tuple(str(s) for s in ring.symbols)


def union_symbols(*groups: Iterable[str]) -> tuple[str, ...]:
    out: list[str] = []
    for group in groups:
        for s in group:
            if s not in out:
                out.append(s)
    return tuple(out)


def to_fraction(c) -> Fraction:
    return Fraction(int(c.numerator), int(c.denominator))


def to_qq(value: Scalar):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def lift(p: PolyElement, ring: PolyRing) -> PolyElement:
    """Re-express ``p`` over ``ring`` (exponents of missing symbols must be zero)."""
    if p.ring == ring:
        return p
    dst = ring_names(ring)
    index = [dst.index(s) if s in dst else -1 for s in ring_names(p.ring)]
    n = ring.ngens
    terms = {}
    for monom, coeff in p.items():
        m = [0] * n
        for i, e in zip(index, monom):
            if e:
                if i < 0:
                    raise UnknownSymbolError(
                        f"symbol {ring_names(p.ring)[index.index(i)]} is not in the target ring"
                    )
                m[i] = e
        terms[tuple(m)] = coeff
    return ring.from_dict(terms)


def used_names(p: PolyElement) -> set[str]:
    names = ring_names(p.ring)
    used: set[str] = set()
    for monom in p.itermonoms():
        for s, e in zip(names, monom):
            if e:
                used.add(s)
    return used


def coefficients_in(p: PolyElement, v: str) -> dict[int, PolyElement]:
    """Split ``p`` by powers of ``v``; the pieces are free of ``v``."""
    names = ring_names(p.ring)
    if v not in names:
        return {0: p} if p else {}
    i = names.index(v)
    groups: dict[int, dict] = {}
    for monom, coeff in p.items():
        k = monom[i]
        m = monom[:i] + (0,) + monom[i + 1:]
        groups.setdefault(k, {})[m] = coeff
    return {k: p.ring.from_dict(terms) for k, terms in groups.items()}


def _canonical(num: PolyElement, den: PolyElement) -> tuple[PolyElement, PolyElement]:
    if not den:
        raise ZeroDenominatorError("division by the zero function")
    ring = num.ring
    if not num:
        return ring.zero, ring.one
    if not den.is_ground:
        _, num, den = num.cofactors(den)
    c = den.LC
    if c != ring.domain.one:
        num = num.quo_ground(c)
        den = den.quo_ground(c)
    return num, den


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(p: PolyElement) -> str:
    if not p:
        return "0"
    names = ring_names(p.ring)
    pieces: list[str] = []
    for monom, coeff in p.terms():
        c = to_fraction(coeff)
        factors = []
        for s, e in zip(names, monom):
            if e == 1:
                factors.append(s)
            elif e:
                factors.append(f"{s}^{e}")
        mag = abs(c)
        if not factors:
            body = _format_coeff(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _format_coeff(mag) + "*" + "*".join(factors)
        if not pieces:
            pieces.append(("-" if c < 0 else "") + body)
        else:
            pieces.append((" - " if c < 0 else " + ") + body)
    return "".join(pieces)


@dataclass(frozen=True, eq=False)
class RatFunc:
    num: PolyElement
    den: PolyElement

    @classmethod
    def from_polys(cls, num: PolyElement, den: PolyElement | None = None) -> "RatFunc":
        if den is None:
            den = num.ring.one
        elif den.ring != num.ring:
            ring = poly_ring(union_symbols(ring_names(num.ring), ring_names(den.ring)))
            num, den = lift(num, ring), lift(den, ring)
        return cls(*_canonical(num, den))

    @classmethod
    def const(cls, value: Scalar, symbols: tuple[str, ...] = ()) -> "RatFunc":
        ring = poly_ring(tuple(symbols))
        return cls(ring.ground_new(to_qq(value)), ring.one)

    @classmethod
    def var(cls, name: str, symbols: tuple[str, ...] | None = None) -> "RatFunc":
        symbols = tuple(symbols) if symbols else (name,)
        if name not in symbols:
            raise UnknownSymbolError(f"unknown symbol {name!r}")
        ring = poly_ring(symbols)
        return cls(ring.gens[symbols.index(name)], ring.one)

    @property
    def ring(self) -> PolyRing:
        return self.num.ring

    @property
    def symbols(self) -> tuple[str, ...]:
        return ring_names(self.ring)

    @property
    def variables(self) -> tuple[str, ...]:
        used = used_names(self.num) | used_names(self.den)
        return tuple(s for s in self.symbols if s in used)

    def is_zero(self) -> bool:
        return not self.num

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den.is_ground

    def is_polynomial(self) -> bool:
        return self.den.is_ground

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        if not self.num:
            return Fraction(0)
        return to_fraction(self.num.LC) / to_fraction(self.den.LC)

    def over(self, symbols: tuple[str, ...]) -> "RatFunc":
        ring = poly_ring(union_symbols(self.symbols, symbols))
        return RatFunc.from_polys(lift(self.num, ring), lift(self.den, ring))

    # arithmetic

    def _pair(self, other) -> tuple[PolyElement, PolyElement, PolyElement, PolyElement]:
        other = as_ratfunc(other, self.symbols)
        if other.ring == self.ring:
            return self.num, self.den, other.num, other.den
        ring = poly_ring(union_symbols(self.symbols, other.symbols))
        return (
            lift(self.num, ring),
            lift(self.den, ring),
            lift(other.num, ring),
            lift(other.den, ring),
        )

    def __add__(self, other) -> "RatFunc":
        if not _coercible(other):
            return NotImplemented
        n1, d1, n2, d2 = self._pair(other)
        if d1 == d2:
            return RatFunc.from_polys(n1 + n2, d1)
        return RatFunc.from_polys(n1 * d2 + n2 * d1, d1 * d2)

    def __radd__(self, other) -> "RatFunc":
        return self.__add__(other)

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __sub__(self, other) -> "RatFunc":
        if not _coercible(other):
            return NotImplemented
        n1, d1, n2, d2 = self._pair(other)
        if d1 == d2:
            return RatFunc.from_polys(n1 - n2, d1)
        return RatFunc.from_polys(n1 * d2 - n2 * d1, d1 * d2)

    def __rsub__(self, other) -> "RatFunc":
        return (-self).__add__(other)

    def __mul__(self, other) -> "RatFunc":
        if not _coercible(other):
            return NotImplemented
        n1, d1, n2, d2 = self._pair(other)
        return RatFunc.from_polys(n1 * n2, d1 * d2)

    def __rmul__(self, other) -> "RatFunc":
        return self.__mul__(other)

    def __truediv__(self, other) -> "RatFunc":
        if not _coercible(other):
            return NotImplemented
        n1, d1, n2, d2 = self._pair(other)
        if not n2:
            raise ZeroDenominatorError("division by the zero function")
        return RatFunc.from_polys(n1 * d2, d1 * n2)

    def __rtruediv__(self, other) -> "RatFunc":
        return as_ratfunc(other, self.symbols).__truediv__(self)

    def __pow__(self, k: int) -> "RatFunc":
        if not isinstance(k, int):
            return NotImplemented
        if k >= 0:
            return RatFunc(self.num**k, self.den**k)
        if not self.num:
            raise ZeroDenominatorError("negative power of the zero function")
        return RatFunc.from_polys(self.den ** (-k), self.num ** (-k))

    # identity

    @cached_property
    def _key(self) -> tuple:
        used = tuple(sorted(used_names(self.num) | used_names(self.den)))
        ring = poly_ring(used)
        num, den = _canonical(lift(self.num, ring), lift(self.den, ring))
        return used, frozenset(num.items()), frozenset(den.items())

    def __eq__(self, other) -> bool:
        if not _coercible(other):
            return NotImplemented
        return self._key == as_ratfunc(other)._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __str__(self) -> str:
        num = format_poly(self.num)
        if self.den == self.ring.one:
            return num
        den = format_poly(self.den)
        if len(self.num) > 1:
            num = f"({num})"
        if len(self.den) > 1 or "*" in den:
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _coercible(value) -> bool:
    return isinstance(value, (RatFunc, int, Fraction))


def as_ratfunc(value, symbols: tuple[str, ...] = ()) -> RatFunc:
    if isinstance(value, RatFunc):
        return value
    if isinstance(value, (int, Fraction)):
        return RatFunc.const(value, symbols)
    raise TypeError(f"cannot interpret {value!r} as a rational function")


def differentiate(r: RatFunc, v: str) -> RatFunc:
    if v not in r.symbols:
        return RatFunc(r.ring.zero, r.ring.one)
    x = r.ring.gens[r.symbols.index(v)]
    n, d = r.num, r.den
    if d.is_ground:
        return RatFunc.from_polys(n.diff(x), d)
    return RatFunc.from_polys(n.diff(x) * d - n * d.diff(x), d * d)


def _evaluate(
    p: PolyElement, values: Mapping[str, RatFunc], ring: PolyRing
) -> tuple[PolyElement, PolyElement]:
    """Numerator and denominator of ``p`` with ``values`` plugged in, over ``ring``."""
    names = ring_names(p.ring)
    dst = ring_names(ring)
    bound = [i for i, s in enumerate(names) if s in values]
    free = [(i, dst.index(s)) for i, s in enumerate(names) if s not in values]
    degs = {i: p.degree(p.ring.gens[i]) for i in bound}

    nums = {i: lift(values[names[i]].num, ring) for i in bound}
    dens = {i: lift(values[names[i]].den, ring) for i in bound}
    num_pows = {i: [ring.one] for i in bound}
    den_pows = {i: [ring.one] for i in bound}
    for i in bound:
        for _ in range(max(degs[i], 0)):
            num_pows[i].append(num_pows[i][-1] * nums[i])
            den_pows[i].append(den_pows[i][-1] * dens[i])

    groups: dict[tuple[int, ...], dict] = {}
    for monom, coeff in p.items():
        key = tuple(monom[i] for i in bound)
        m = [0] * ring.ngens
        for i, j in free:
            m[j] = monom[i]
        groups.setdefault(key, {})[tuple(m)] = coeff

    total = ring.zero
    for key, terms in groups.items():
        part = ring.from_dict(terms)
        for i, e in zip(bound, key):
            part = part * num_pows[i][e] * den_pows[i][degs[i] - e]
        total += part
    den = ring.one
    for i in bound:
        den = den * den_pows[i][degs[i]]
    return total, den


def substitute(r: RatFunc, bindings: Mapping[str, object]) -> RatFunc:
    """Simultaneous substitution of symbols by rational functions."""
    used = used_names(r.num) | used_names(r.den)
    active = {v: as_ratfunc(val) for v, val in bindings.items() if v in used}
    if not active:
        return r
    keep = tuple(s for s in r.symbols if s not in active)
    ring = poly_ring(union_symbols(keep, *(val.symbols for val in active.values())))
    nn, nd = _evaluate(r.num, active, ring)
    dn, dd = _evaluate(r.den, active, ring)
    if not dn:
        raise ZeroDenominatorError("substitution makes the denominator vanish identically")
    return RatFunc.from_polys(nn * dd, nd * dn)


def _rational_sqrt(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    a, b = math.isqrt(c.numerator), math.isqrt(c.denominator)
    if a * a == c.numerator and b * b == c.denominator:
        return Fraction(a, b)
    return None


def _poly_sqrt(p: PolyElement) -> PolyElement | None:
    if p.is_ground:
        root = _rational_sqrt(to_fraction(p.LC))
        return None if root is None else p.ring.ground_new(to_qq(root))
    coeff, factors = p.sqf_list()
    root = _rational_sqrt(to_fraction(coeff))
    if root is None:
        return None
    out = p.ring.ground_new(to_qq(root))
    for f, k in factors:
        if k % 2:
            return None
        out = out * f ** (k // 2)
    if out * out != p:
        out = -out
        if out * out != p:
            return None
    return out


def sqrt_ratfunc(r: RatFunc) -> RatFunc | None:
    """A square root of ``r`` inside Q(symbols), or None when there is none."""
    if r.is_zero():
        return r
    num = _poly_sqrt(r.num)
    if num is None:
        return None
    den = _poly_sqrt(r.den)
    if den is None:
        return None
    return RatFunc.from_polys(num, den)
