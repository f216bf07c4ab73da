from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from garnierx.errors import PreconditionError


def format_fraction(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class HalfInt:
    """An element of (1/2)Z stored as twice its value."""

    twice_value: int

    @classmethod
    def of(cls, value: Union[int, Fraction, "HalfInt"]) -> "HalfInt":
        if isinstance(value, HalfInt):
            return value
        twice = Fraction(value) * 2
        if twice.denominator != 1:
            raise PreconditionError(f"{value} is not a half-integer")
        return cls(int(twice))

    @property
    def value(self) -> Fraction:
        return Fraction(self.twice_value, 2)

    def is_integer(self) -> bool:
        return self.twice_value % 2 == 0

    def ceil(self) -> int:
        return math.ceil(self.value)

    def scaled(self, m: int) -> "HalfInt":
        return HalfInt(self.twice_value * m)

    def __str__(self) -> str:
        return format_fraction(self.value)


@dataclass(frozen=True)
class Exponent:
    """theta = sum(coeff * symbol) + shift, integer coefficients on free parameters."""

    coeffs: tuple[tuple[str, int], ...] = ()
    shift: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        cleaned = tuple(sorted((s, int(c)) for s, c in self.coeffs if c))
        object.__setattr__(self, "coeffs", cleaned)
        object.__setattr__(self, "shift", Fraction(self.shift))

    @classmethod
    def rational(cls, value: Union[int, Fraction]) -> "Exponent":
        return cls((), Fraction(value))

    @classmethod
    def param(cls, name: str, shift: Union[int, Fraction] = 0) -> "Exponent":
        return cls(((name, 1),), Fraction(shift))

    def is_rational(self) -> bool:
        return not self.coeffs

    def is_zero(self) -> bool:
        return not self.coeffs and self.shift == 0

    def is_integer(self) -> bool:
        return not self.coeffs and self.shift.denominator == 1

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(s for s, _ in self.coeffs)

    def __neg__(self) -> "Exponent":
        return Exponent(tuple((s, -c) for s, c in self.coeffs), -self.shift)

    def __add__(self, other) -> "Exponent":
        other = as_exponent(other)
        merged = dict(self.coeffs)
        for s, c in other.coeffs:
            merged[s] = merged.get(s, 0) + c
        return Exponent(tuple(merged.items()), self.shift + other.shift)

    def __radd__(self, other) -> "Exponent":
        return self.__add__(other)

    def __sub__(self, other) -> "Exponent":
        return self + (-as_exponent(other))

    def __rsub__(self, other) -> "Exponent":
        return as_exponent(other) - self

    def __mul__(self, m: int) -> "Exponent":
        if not isinstance(m, int):
            return NotImplemented
        return Exponent(tuple((s, c * m) for s, c in self.coeffs), self.shift * m)

    __rmul__ = __mul__

    def normalized(self) -> "Exponent":
        """Gauge representative: rational in [0, 1/2]; affine with positive leading coefficient and shift in [0, 1)."""
        if self.is_rational():
            r = self.shift - math.floor(self.shift)
            return Exponent.rational(1 - r if r > Fraction(1, 2) else r)
        e = -self if self.coeffs[0][1] < 0 else self
        return Exponent(e.coeffs, e.shift - math.floor(e.shift))

    def sort_key(self) -> tuple:
        if self.is_rational():
            return (0, -self.shift)
        return (1, self.coeffs, self.shift)

    def __str__(self) -> str:
        if not self.coeffs:
            return format_fraction(self.shift)
        parts: list[str] = []
        for s, c in self.coeffs:
            body = s if abs(c) == 1 else f"{abs(c)}*{s}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        if self.shift:
            parts.append((" - " if self.shift < 0 else " + ") + format_fraction(abs(self.shift)))
        return "".join(parts)


def as_exponent(value) -> Exponent:
    if isinstance(value, Exponent):
        return value
    if isinstance(value, (int, Fraction)):
        return Exponent.rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exponent")


@dataclass(frozen=True)
class FormalDatum:
    kappa: HalfInt
    theta: Exponent

    def __post_init__(self) -> None:
        object.__setattr__(self, "kappa", HalfInt.of(self.kappa))
        object.__setattr__(self, "theta", as_exponent(self.theta))
        if self.kappa.twice_value < 0:
            raise PreconditionError("irregularity index must be non-negative")
        if not self.kappa.is_integer() and not self.theta.is_zero():
            raise PreconditionError(
                f"a ramified irregular pole (kappa={self.kappa}) has theta = 0"
            )

    def to_json(self) -> dict:
        return {"kappa": str(self.kappa), "theta": str(self.theta)}

    def __str__(self) -> str:
        return f"({self.kappa},{self.theta})"


class Removed:
    """Result of pulling back a pole that becomes apparent."""

    _instance: "Removed | None" = None

    def __new__(cls) -> "Removed":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "REMOVED"


REMOVED = Removed()

CATALOG_IDS = ("Gauss", "Kummer", "Weber", "DegenerateConfluent", "Airy")


@dataclass(frozen=True)
class BaseEquation:
    genus0: int
    poles: tuple[FormalDatum, ...]
    catalog_id: str | None = None
    # scalar form u'' + f u' + g u = 0 in the expression grammar, with pole positions
    f: str | None = None
    g: str | None = None
    positions: tuple[str, ...] = ()
    params: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "poles", tuple(self.poles))
        if self.catalog_id is not None:
            if self.catalog_id not in CATALOG_IDS:
                raise PreconditionError(f"unknown catalog equation {self.catalog_id!r}")
            if self.genus0 != 0:
                raise PreconditionError("catalog equations live on the sphere")

    @property
    def signature(self) -> tuple:
        return (self.genus0, tuple((p.kappa, p.theta) for p in self.poles))

    def to_json(self) -> list[dict]:
        return [p.to_json() for p in self.poles]
