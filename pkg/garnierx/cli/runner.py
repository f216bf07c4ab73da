from __future__ import annotations

import argparse
import sys
import time
from dataclasses import replace
from typing import Sequence

from garnierx import events
from garnierx.algebra.parser import names_in, parse
from garnierx.algebra.ratfunc import RatFunc, union_symbols
from garnierx.algebra.series import format_point, parse_point
from garnierx.classifier.rows import write_csv
from garnierx.classifier.search import MODES, compare_with_table, search
from garnierx.classifier.tables import ALGEBRAIC_PAINLEVE
from garnierx.cli import reports
from garnierx.covers.passport import parse_passport
from garnierx.covers.scatter import scatter_ledger
from garnierx.errors import GarnierError, PreconditionError, UnknownSymbolError
from garnierx.formal.data import BaseEquation
from garnierx.formal.literal import parse_formal_data
from garnierx.garnier.pullback import verify_pullback
from garnierx.garnier.solutions import SOLUTION_IDS, AlgebraicSolutionRecord, builtin_solution
from garnierx.garnier.systems import (
    HamiltonianSystem,
    compare_hamiltonians,
    derived_system,
    painleve_equation,
)
from garnierx.garnier.verify import hamilton_residual, painleve_residual, residual_labels
from garnierx.odes.local import local_invariants
from garnierx.odes.scalar import SLForm
from garnierx.settings import DEFAULTS, load_settings

# printed Hamiltonians that do not solve their own system; verified in derived form
_DERIVED = ("Kim122",)
_COMPARED = ("Kim122", "Kim23")


def _out(text: str) -> None:
    print(text, flush=True)


def _split_top(text: str) -> list[str]:
    """Comma-separated items, ignoring commas inside parentheses."""
    items, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            items.append(text[start:i])
            start = i + 1
    items.append(text[start:])
    return [s.strip() for s in items if s.strip()]


def _override(sol: AlgebraicSolutionRecord, assignments: list[str]) -> AlgebraicSolutionRecord:
    if not assignments:
        return sol
    values = dict(sol.assignments)
    for item in assignments:
        name, sep, text = item.partition("=")
        name = name.strip()
        if not sep:
            raise PreconditionError(f"expected SYMBOL=EXPR, got {item!r}")
        if name not in values:
            raise UnknownSymbolError(f"{sol.label} has no assignment for {name!r}")
        known = sol.ctx.symbols if sol.ctx is not None else ()
        values[name] = parse(text, union_symbols(known, names_in(text)))
        events.log("INFO", f"override {name} = {values[name]}")
    return replace(sol, assignments=values)


def _classify(args: argparse.Namespace) -> int:
    settings = load_settings(args.settings) if args.settings else DEFAULTS
    if args.max_degree is not None:
        settings = replace(settings, max_degree=args.max_degree)
    if args.jobs is not None:
        settings = replace(settings, n_jobs=args.jobs)
    events.log("INFO", f"Searching {args.mode} covers up to degree {settings.max_degree}")
    rows = search(args.mode, settings.max_degree, settings)
    comparison = compare_with_table(rows, args.mode, settings.max_degree)
    if args.csv:
        path = write_csv(list(comparison.rows), args.csv)
        events.log("INFO", f"Rows written to {path}")
    if args.json:
        _out(reports.dump_json(reports.classification_json(args.mode, comparison)))
    else:
        _out(reports.classification_text(args.mode, comparison))
    if not comparison.ok:
        events.log("WARN", "classification differs from the published table")
        return 1
    events.log("SUCCESS", f"{len(rows)} rows match the published table")
    return 0


def _verify(args: argparse.Namespace) -> int:
    system, sol = builtin_solution(args.solution)
    sol = _override(sol, args.set or [])
    comparison = None
    if isinstance(system, HamiltonianSystem):
        if system.name in _COMPARED:
            comparison = compare_hamiltonians(system.name)
        if system.name in _DERIVED:
            params = {k: v for k, v in sol.params.items() if k in system.params}
            system = derived_system(system.name, params)
            events.log("INFO", f"Using Hamiltonians of {system.name} derived from its template")
        labels = residual_labels(system)
        residuals = hamilton_residual(system, sol)
    else:
        labels = [system.name]
        residuals = [painleve_residual(system.name, None, sol)]

    summary = reports.residual_summary(residuals)
    if args.json:
        data = {
            "solution": sol.to_json(),
            "system": system.to_json(),
            "residuals": [
                {"label": label, "zero": r.is_zero(), "value": str(r)}
                for label, r in zip(labels, residuals)
            ],
            "summary": summary,
        }
        if comparison is not None:
            data["comparison"] = comparison.to_json()
        _out(reports.dump_json(data))
    else:
        _out(f"solution {sol.label} against {system.name}")
        _out(reports.render(reports.residual_frame(labels, residuals)))
        if comparison is not None:
            _out(reports.comparison_text(comparison))
        _out(summary)
    ok = all(r.is_zero() for r in residuals)
    events.log("SUCCESS" if ok else "WARN", summary)
    return 0 if ok else 1


def _pullback(args: argparse.Namespace) -> int:
    report = verify_pullback(args.case)
    if args.json:
        _out(reports.dump_json(report.to_json()))
    else:
        _out(reports.pullback_text(report))
    return 0 if report.ok else 1


def _invariants(args: argparse.Namespace) -> int:
    symbols = union_symbols((args.var,), names_in(args.Q), names_in(args.point))
    form = SLForm(args.var, parse(args.Q, symbols))
    center = parse_point(args.point, symbols)
    inv = local_invariants(form, center)
    if args.json:
        _out(reports.dump_json({"point": format_point(center), **inv.to_json()}))
    else:
        _out(reports.invariant_text(inv, format_point(center)))
    return 0


def _scatter(args: argparse.Namespace) -> int:
    base = BaseEquation(0, tuple(parse_formal_data(args.base)))
    ledger = scatter_ledger(base, parse_passport(args.passport))
    if args.json:
        _out(reports.dump_json(ledger.to_json()))
    else:
        _out(reports.scatter_text(ledger))
    return 0


def _tables(args: argparse.Namespace) -> int:
    if args.json:
        _out(reports.dump_json(reports.tables_json()))
    else:
        _out(reports.tables_text())
    return 0


def _custom_painleve(args: argparse.Namespace) -> tuple[str, RatFunc]:
    eq = painleve_equation(args.equation)
    params = _split_top(args.params or "")
    texts = [args.q, args.t or "", *params]
    names = union_symbols(("t",) if args.t is None else (), *(names_in(s) for s in texts))
    indep = "t" if args.t is None else args.indep
    rho = RatFunc.var("t", names) if args.t is None else parse(args.t, names)
    sol = AlgebraicSolutionRecord("custom", {"q": parse(args.q, names)}, None, {}, indep, rho)
    values = [parse(p, names) for p in params]
    return eq.name, painleve_residual(eq.name, values, sol)


def _check_painleve(args: argparse.Namespace) -> int:
    if args.q is not None:
        if args.equation is None:
            raise PreconditionError("--q needs --equation")
        name, residual = _custom_painleve(args)
        results = [("custom", name, residual)]
    else:
        results = []
        for row in ALGEBRAIC_PAINLEVE:
            eq, sol = builtin_solution(row.name)
            results.append((row.name, eq.name, painleve_residual(eq.name, None, sol)))
            events.emit("verification_step", {"solution": row.name, "zero": results[-1][2].is_zero()})

    if args.json:
        _out(
            reports.dump_json(
                {
                    "results": [
                        {"id": i, "equation": e, "zero": r.is_zero(), "residual": str(r)}
                        for i, e, r in results
                    ]
                }
            )
        )
    else:
        frame = reports.residual_frame([f"{i} ({e})" for i, e, _ in results], [r for _, _, r in results])
        _out(reports.render(frame))
        _out(reports.residual_summary([r for _, _, r in results]))
    return 0 if all(r.is_zero() for _, _, r in results) else 1


_COMMANDS = {
    "classify": _classify,
    "verify": _verify,
    "pullback": _pullback,
    "invariants": _invariants,
    "scatter": _scatter,
    "tables": _tables,
    "check-painleve": _check_painleve,
}


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--events", action="store_true", help="JSON-line progress events on stderr")

    ap = argparse.ArgumentParser(prog="garnierx")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common])
    p.add_argument("--mode", choices=MODES, required=True)
    p.add_argument("--max-degree", type=int)
    p.add_argument("--jobs", type=int)
    p.add_argument("--settings")
    p.add_argument("--csv")

    p = sub.add_parser("verify", parents=[common])
    p.add_argument("--solution", choices=SOLUTION_IDS, required=True)
    p.add_argument("--set", action="append", metavar="SYMBOL=EXPR")

    p = sub.add_parser("pullback", parents=[common])
    p.add_argument("--case", choices=("kim122", "kim23", "kaw4"), required=True)

    p = sub.add_parser("invariants", parents=[common])
    p.add_argument("--Q", required=True)
    p.add_argument("--point", required=True)
    p.add_argument("--var", default="x")

    p = sub.add_parser("scatter", parents=[common])
    p.add_argument("--base", required=True)
    p.add_argument("--passport", required=True)

    sub.add_parser("tables", parents=[common])

    p = sub.add_parser("check-painleve", parents=[common])
    p.add_argument("--equation")
    p.add_argument("--params")
    p.add_argument("--q")
    p.add_argument("--t", help="t as a function of the uniformizer")
    p.add_argument("--indep", default="s", help="uniformizer name when --t is given")
    return ap


def _parse_args(argv: Sequence[str] | None) -> argparse.Namespace:
    return _build_parser().parse_args(argv)


def run(argv: Sequence[str] | None = None) -> int:
    try:
        args = _parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    events.configure(args.events)
    start = time.perf_counter()
    events.emit("run_started", {"command": args.command})
    try:
        code = _COMMANDS[args.command](args)
    except GarnierError as exc:
        events.emit("error", {"message": str(exc)})
        print(f"error: {exc}", file=sys.stderr, flush=True)
        code = exc.exit_code
    elapsed = max(0.0, time.perf_counter() - start)
    events.emit("run_finished", {"command": args.command, "exit_code": code, "seconds": float(elapsed)})
    return code
