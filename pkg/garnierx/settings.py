from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path


@dataclass(frozen=True)
class SearchSettings:
    max_degree: int
    max_nu: int
    max_kappa: Fraction
    max_poles: int
    realizability_bound: int
    n_jobs: int


DEFAULTS = SearchSettings(
    max_degree=6,
    max_nu=6,
    max_kappa=Fraction(2),
    max_poles=3,
    realizability_bound=8,
    n_jobs=1,
)


def load_settings(path: str | Path) -> SearchSettings:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return SearchSettings(
        max_degree=int(data.get("search/max_degree", DEFAULTS.max_degree)),
        max_nu=int(data.get("search/max_nu", DEFAULTS.max_nu)),
        max_kappa=Fraction(str(data.get("search/max_kappa", DEFAULTS.max_kappa))),
        max_poles=int(data.get("search/max_poles", DEFAULTS.max_poles)),
        realizability_bound=int(
            data.get("covers/realizability_bound", DEFAULTS.realizability_bound)
        ),
        n_jobs=int(data.get("runtime/n_jobs", DEFAULTS.n_jobs)),
    )


def save_settings(path: str | Path, s: SearchSettings) -> None:
    data = {
        "search/max_degree": int(s.max_degree),
        "search/max_nu": int(s.max_nu),
        "search/max_kappa": str(s.max_kappa),
        "search/max_poles": int(s.max_poles),
        "covers/realizability_bound": int(s.realizability_bound),
        "runtime/n_jobs": int(s.n_jobs),
    }
    Path(path).write_text(json.dumps(data, indent=2, ensure_ascii=False), encoding="utf-8")
