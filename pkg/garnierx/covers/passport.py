from __future__ import annotations

import re
from dataclasses import dataclass

from garnierx.errors import InconsistentPassportError, ParseError

Partition = tuple[int, ...]

_FIBER = re.compile(r"\s*(?:\[([0-9,\s]*)\]|(simple))\s*(?:\*\s*(\d+))?\s*(?:,|$)")


def ramification(part: Partition) -> int:
    return sum(part) - len(part)


def simple_fiber(d: int) -> Partition:
    return (2,) + (1,) * (d - 2)


def canonical_partition(parts) -> Partition:
    return tuple(sorted((int(p) for p in parts), reverse=True))


@dataclass(frozen=True)
class Passport:
    degree: int
    pole_fibers: tuple[Partition, ...]
    free_fibers: tuple[Partition, ...] = ()

    def __post_init__(self) -> None:
        d = self.degree
        if d < 1:
            raise InconsistentPassportError(f"degree must be positive, got {d}")
        poles = tuple(canonical_partition(p) for p in self.pole_fibers)
        free = tuple(sorted((canonical_partition(p) for p in self.free_fibers), reverse=True))
        for part in poles + free:
            if sum(part) != d or any(p < 1 for p in part):
                raise InconsistentPassportError(f"{list(part)} is not a partition of {d}")
        for part in free:
            if max(part) < 2:
                raise InconsistentPassportError("free fibers must be ramified")
        object.__setattr__(self, "pole_fibers", poles)
        object.__setattr__(self, "free_fibers", free)

    @property
    def total_ramification(self) -> int:
        return sum(map(ramification, self.pole_fibers + self.free_fibers))

    @property
    def free_simple(self) -> int:
        simple = simple_fiber(self.degree)
        return sum(1 for f in self.free_fibers if f == simple)

    def nontrivial_fibers(self) -> list[Partition]:
        return [f for f in self.pole_fibers + self.free_fibers if max(f) > 1]

    def sort_key(self) -> tuple:
        return (-self.degree, self.pole_fibers, self.free_fibers)

    def to_json(self) -> dict:
        out = {
            "poles": [list(p) for p in self.pole_fibers],
            "free_simple": self.free_simple,
        }
        others = [list(f) for f in self.free_fibers if f != simple_fiber(self.degree)]
        if others:
            out["free"] = others
        return out

    def __str__(self) -> str:
        poles = ",".join(_fmt(p) for p in self.pole_fibers)
        others = [f for f in self.free_fibers if f != simple_fiber(self.degree)]
        free = [_fmt(f) for f in others]
        if self.free_simple:
            free.append(f"simple*{self.free_simple}")
        return f"d={self.degree}; poles={poles}; free={','.join(free)}"


def _fmt(part: Partition) -> str:
    return "[" + ",".join(map(str, part)) + "]"


def _parse_fibers(text: str, d: int, offset: int) -> list[Partition]:
    fibers: list[Partition] = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _FIBER.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError("expected '[parts]' or 'simple'", offset + pos)
        if m.group(2):
            part = simple_fiber(d)
        else:
            items = [s for s in m.group(1).split(",") if s.strip()]
            part = canonical_partition(items)
        fibers.extend([part] * int(m.group(3) or 1))
        pos = m.end()
    return fibers


def parse_passport(text: str) -> Passport:
    """Reads "d=6; poles=[3,3],[2,2,2]; free=simple*3"."""
    fields: dict[str, tuple[str, int]] = {}
    offset = 0
    for chunk in text.split(";"):
        key, sep, value = chunk.partition("=")
        if not sep:
            if chunk.strip():
                raise ParseError("expected key=value", offset)
        else:
            fields[key.strip()] = (value, offset + len(key) + 1)
        offset += len(chunk) + 1
    if "d" not in fields:
        raise ParseError("missing degree 'd='", 0)
    try:
        d = int(fields["d"][0])
    except ValueError as exc:
        raise ParseError("degree must be an integer", fields["d"][1]) from exc
    poles_text, poles_at = fields.get("poles", ("", 0))
    free_text, free_at = fields.get("free", ("", 0))
    poles = _parse_fibers(poles_text, d, poles_at)
    free = _parse_fibers(free_text, d, free_at)
    return Passport(d, tuple(poles), tuple(free))
