from __future__ import annotations

import re
from fractions import Fraction

from garnierx.algebra.parser import names_in, parse
from garnierx.algebra.ratfunc import RatFunc, format_poly, to_fraction
from garnierx.errors import ParseError, UnsupportedInputError
from garnierx.formal.data import Exponent, FormalDatum, HalfInt

_PAIR = re.compile(r"\(\s*([^,()]+?)\s*,\s*([^()]*?(?:\([^()]*\)[^()]*?)*)\s*\)")


def exponent_from_ratfunc(r: RatFunc) -> Exponent:
    if not r.is_polynomial():
        raise UnsupportedInputError(f"exponent {r} is not affine in the parameters")
    scale = to_fraction(r.den.LC)
    coeffs: dict[str, int] = {}
    shift = Fraction(0)
    for monom, c in r.num.items():
        c = to_fraction(c) / scale
        degree = sum(monom)
        if degree == 0:
            shift += c
        elif degree == 1 and c.denominator == 1:
            coeffs[r.symbols[monom.index(1)]] = int(c)
        else:
            raise UnsupportedInputError(
                f"exponent {format_poly(r.num)} must be integer-affine in the parameters"
            )
    return Exponent(tuple(coeffs.items()), shift)


def exponent_from_text(text: str) -> Exponent:
    return exponent_from_ratfunc(parse(text, names_in(text)))


def _kappa_from_text(text: str) -> HalfInt:
    try:
        return HalfInt.of(Fraction(text.strip()))
    except ValueError as exc:
        raise ParseError(f"bad irregularity index {text!r}", 0) from exc


def parse_formal_data(text: str) -> list[FormalDatum]:
    """Accepts "(k1,theta1)(k2,theta2)..." and the table style "(k1,k2; theta1,theta2)"."""
    text = text.strip()
    if ";" in text:
        if not (text.startswith("(") and text.endswith(")")):
            raise ParseError("expected '(kappas; thetas)'", 0)
        kappas, _, thetas = text[1:-1].partition(";")
        ks = [k for k in kappas.split(",") if k.strip()]
        ts = [t for t in thetas.split(",") if t.strip()]
        if len(ks) != len(ts):
            raise ParseError("kappa and theta lists differ in length", text.index(";"))
        return [FormalDatum(_kappa_from_text(k), exponent_from_text(t)) for k, t in zip(ks, ts)]

    data: list[FormalDatum] = []
    pos = 0
    for m in _PAIR.finditer(text):
        if text[pos:m.start()].strip():
            raise ParseError("unexpected text between pairs", pos)
        data.append(FormalDatum(_kappa_from_text(m.group(1)), exponent_from_text(m.group(2))))
        pos = m.end()
    if text[pos:].strip():
        raise ParseError("unexpected trailing text", pos)
    return data


def format_formal_data(data) -> str:
    data = list(data)
    if not data:
        return "()"
    kappas = ",".join(str(p.kappa) for p in data)
    thetas = ",".join(str(p.theta) for p in data)
    return f"({kappas}; {thetas})"
