"""Plain-text and JSON renderings of the command results."""

from __future__ import annotations

import json

import numpy as np
import pandas as pd

from garnierx.algebra.ratfunc import RatFunc
from garnierx.classifier.rows import row_label, rows_frame
from garnierx.classifier.search import TableComparison
from garnierx.classifier.tables import (
    ALGEBRAIC_PAINLEVE,
    CLASSICAL,
    CLASSIFICATION,
    NO_ALGEBRAIC_SOLUTION,
    NON_CLASSICAL,
    PAINLEVE_TYPES,
)
from garnierx.covers.analysis import analyze_cover
from garnierx.covers.scatter import ScatterLedger
from garnierx.formal.calculus import chi_irr, teich_dim
from garnierx.formal.data import BaseEquation, format_fraction
from garnierx.formal.literal import format_formal_data, parse_formal_data
from garnierx.garnier.pullback import PullbackReport
from garnierx.garnier.systems import HamiltonianComparison
from garnierx.odes.local import LocalInvariant

_TITLES = {
    "log": "Logarithmic bases",
    "scattered": "Scattered covers",
    "confluent": "Confluent covers",
}


def _plain(value):
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    raise TypeError(f"not JSON serializable: {type(value).__name__}")


def dump_json(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False, default=_plain)


def render(df: pd.DataFrame) -> str:
    if df.empty:
        return "(no rows)"
    return df.to_string(index=False)


def classification_text(mode: str, comparison: TableComparison) -> str:
    lines = [f"{len(comparison.rows)} rows ({mode})", render(rows_frame(list(comparison.rows)))]
    if comparison.missing:
        lines.append("published rows not produced:")
        lines.extend(f"  {e.base} d={e.degree} {e.passport}" for e in comparison.missing)
    return "\n".join(lines)


def classification_json(mode: str, comparison: TableComparison) -> dict:
    return {
        "mode": mode,
        "rows": [r.to_json() for r in comparison.rows],
        "missing": [
            {"base": e.base, "degree": e.degree, "passport": e.passport} for e in comparison.missing
        ],
        "ok": comparison.ok,
    }


def residual_frame(labels: list[str], residuals: list[RatFunc]) -> pd.DataFrame:
    return pd.DataFrame(
        {
            "residual": labels,
            "zero": ["yes" if r.is_zero() else "no" for r in residuals],
            "value": [str(r) for r in residuals],
        }
    )


def residual_summary(residuals: list[RatFunc]) -> str:
    zero = sum(1 for r in residuals if r.is_zero())
    return f"{zero}/{len(residuals)} residuals zero"


def comparison_text(c: HamiltonianComparison) -> str:
    lines = [f"Hamiltonians of {c.name}, printed against derived:"]
    for i, (p, d, diff, ok) in enumerate(zip(c.printed, c.derived, c.differences, c.agree), start=1):
        if ok:
            lines.append(f"  H{i}: agree")
            continue
        lines.append(f"  H{i}: differ")
        lines.append(f"    printed:    {p}")
        lines.append(f"    derived:    {d}")
        lines.append(f"    difference: {diff}")
    return "\n".join(lines)


def pullback_text(report: PullbackReport) -> str:
    lines = [f"case {report.case}: {report.status}"]
    if report.poles:
        lines.append("poles: " + ", ".join(f"{p} (order {k})" for p, k in report.poles))
    if report.status == "fallback":
        lines.append("forms differ; local structure and apparent points agree")
    for point, seen in report.invariants.items():
        lines.append(f"  at {point}: {seen}")
    for key, value in report.extracted.items():
        expected = report.expected.get(key)
        mark = "" if expected is None or expected == value else f"  (expected {expected})"
        lines.append(f"{key} = {value}{mark}")
    if report.difference is not None:
        lines.append(f"difference: {report.difference}")
    return "\n".join(lines)


def invariant_text(inv: LocalInvariant, point: str) -> str:
    if inv.pole_order == 0:
        return f"{point}: regular point"
    lines = [f"point {point}", f"pole_order {inv.pole_order}", f"kappa {inv.kappa}"]
    if inv.theta is not None:
        lines.append(f"theta {inv.theta}")
    elif inv.difference is not None:
        lines.append(f"theta {inv.difference} (not in the exponent lattice)")
    elif inv.theta_squared is not None:
        lines.append(f"theta^2 {inv.theta_squared}")
    if inv.apparent is not None:
        lines.append(f"apparent {'yes' if inv.apparent else 'no'}")
    return "\n".join(lines)


def scatter_text(ledger: ScatterLedger) -> str:
    return "\n".join(
        [
            f"before: {ledger.before}",
            f"after:  {ledger.after}",
            f"N-B: {ledger.n_minus_b[0]} -> {ledger.n_minus_b[1]}",
            f"T-B: {ledger.t_minus_b[0]} -> {ledger.t_minus_b[1]}",
            f"R:   {ledger.ramification[0]} -> {ledger.ramification[1]}",
        ]
    )


def _t(data: str) -> int:
    return teich_dim(0, parse_formal_data(data))


def painleve_types_frame() -> pd.DataFrame:
    return pd.DataFrame(
        [
            {"data": r.data, "T": _t(r.data), "equation": r.equation, "params": ", ".join(r.params)}
            for r in PAINLEVE_TYPES
        ]
    )


def algebraic_painleve_frame() -> pd.DataFrame:
    return pd.DataFrame(
        [
            {
                "id": r.name,
                "equation": r.equation,
                "params": ", ".join(r.params),
                "solution": r.solution,
                "data": r.data,
                "T": _t(r.data),
                "galois": r.galois,
                "pullback": "yes" if r.pullback else "no",
                "apparent": "yes" if r.apparent else "no",
            }
            for r in ALGEBRAIC_PAINLEVE
        ]
    )


def classification_table_frame(mode: str) -> pd.DataFrame:
    """Published rows with genus, counts, T, B and chi_irr recomputed from the passport."""
    records = []
    for entry in CLASSIFICATION[mode]:
        base = BaseEquation(0, tuple(entry.base_data()))
        a = analyze_cover(base, entry.parsed_passport())
        chi = chi_irr(base)
        records.append(
            {
                "base": entry.base,
                "chi_irr": format_fraction(chi),
                "d": entry.degree,
                "d*|chi|<=1": "yes" if entry.degree * abs(chi) <= 1 else "no",
                "passport": entry.passport,
                "g": a.genus,
                "N_k": ",".join(map(str, a.N_k)),
                "B": a.B,
                "T": a.T,
                "target": entry.target or format_formal_data(a.target),
                "label": entry.label or "",
                "recomputed": row_label(a.T, a.target),
            }
        )
    return pd.DataFrame(records)


def two_dimensional_frame() -> pd.DataFrame:
    groups = [
        ("non-classical", NON_CLASSICAL),
        *CLASSICAL.items(),
        ("no algebraic solution", NO_ALGEBRAIC_SOLUTION),
    ]
    records = [
        {"group": group, "data": d, "T": _t(d)} for group, items in groups for d in items if _t(d) == 2
    ]
    return pd.DataFrame(records)


def tables_text() -> str:
    parts = [
        "Isomonodromy equations of rank-one formal types",
        render(painleve_types_frame()),
        "",
        "Algebraic Painleve solutions",
        render(algebraic_painleve_frame()),
    ]
    for mode in ("log", "scattered", "confluent"):
        parts.extend(["", _TITLES[mode], render(classification_table_frame(mode))])
    parts.extend(["", "Formal data with T=2 and algebraic solutions", render(two_dimensional_frame())])
    return "\n".join(parts)


def tables_json() -> dict:
    out = {
        "painleve_types": painleve_types_frame().to_dict(orient="records"),
        "algebraic_painleve": algebraic_painleve_frame().to_dict(orient="records"),
        "two_dimensional": two_dimensional_frame().to_dict(orient="records"),
    }
    for mode in ("log", "scattered", "confluent"):
        out[mode] = classification_table_frame(mode).to_dict(orient="records")
    return out
