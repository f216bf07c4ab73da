from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import pandas as pd

from garnierx.covers.passport import Passport
from garnierx.formal.calculus import chi_irr
from garnierx.formal.data import BaseEquation, FormalDatum, format_fraction
from garnierx.formal.literal import format_formal_data

UNCERTAIN = "Galois-filter uncertain"

_PAINLEVE = {
    (0, 0, 0, 0): "P_VI",
    (0, 0, 2): "P_V",
    (0, 0, 1): "P_V",
    (0, 4): "P_IV",
    (0, 3): "P_II",
    (2, 2): "P_III^D6",
    (1, 2): "P_III^D7",
    (1, 1): "P_III^D8",
    (6,): "P_II",
    (5,): "P_I",
}


def painleve_label(target) -> str | None:
    """Painleve equation governing rank-one formal data, keyed on twice the kappas."""
    return _PAINLEVE.get(tuple(sorted(p.kappa.twice_value for p in target)))


def row_label(T: int, target) -> str:
    if T == 1:
        name = painleve_label(target)
        if name is not None:
            return name
    kappas = ",".join(str(k) for k in sorted(p.kappa for p in target))
    return f"Gar{T}({kappas})"


@dataclass(frozen=True)
class ClassRow:
    base: BaseEquation
    degree: int
    passport: Passport
    B: int
    target: tuple[FormalDatum, ...]
    T: int
    genus: int = 0
    label: str | None = None
    flags: tuple[str, ...] = field(default=())

    def to_json(self) -> dict:
        out = {
            "base": self.base.to_json(),
            "degree": self.degree,
            "passport": self.passport.to_json(),
            "target": [p.to_json() for p in self.target],
            "T": self.T,
            "B": self.B,
            "genus": self.genus,
            "label": self.label,
        }
        if self.flags:
            out["flags"] = list(self.flags)
        return out

    def sort_key(self) -> tuple:
        return (
            tuple(p.kappa for p in self.base.poles),
            tuple(p.theta.sort_key() for p in self.base.poles),
            self.passport.sort_key(),
        )


def rows_frame(rows: list[ClassRow]) -> pd.DataFrame:
    records = []
    for r in rows:
        records.append(
            {
                "base": format_formal_data(r.base.poles),
                "chi_irr": format_fraction(chi_irr(r.base)),
                "d": r.degree,
                "passport": str(r.passport),
                "B": r.B,
                "T": r.T,
                "g": r.genus,
                "target": format_formal_data(r.target),
                "label": r.label or "",
                "flags": "; ".join(r.flags),
            }
        )
    columns = ["base", "chi_irr", "d", "passport", "B", "T", "g", "target", "label", "flags"]
    return pd.DataFrame(records, columns=columns)


def write_csv(rows: list[ClassRow], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    rows_frame(rows).to_csv(path, index=False)
    return path
