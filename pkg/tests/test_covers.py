from __future__ import annotations

from fractions import Fraction

import pytest

from garnierx.classifier.tables import CLASSIFICATION
from garnierx.covers.analysis import analyze_cover, bound_margin, pole_count, rh_genus
from garnierx.covers.monodromy import realizable
from garnierx.covers.passport import Passport, parse_passport, simple_fiber
from garnierx.covers.scatter import is_scattered, scatter, scatter_ledger, scatter_pole_fiber
from garnierx.errors import InconsistentPassportError, ParseError, SearchBoundError
from garnierx.formal.calculus import gauge_equivalent
from garnierx.formal.data import BaseEquation
from garnierx.formal.literal import parse_formal_data

SCATTERED_D4 = "d=4; poles=[3,1],[2,2]; free=simple*2"
CONFLUENT_D6 = "d=6; poles=[3,3],[4,2]; free=simple*2"


def _base(text: str) -> BaseEquation:
    return BaseEquation(0, tuple(parse_formal_data(text)))


def test_passport_literal_round_trip():
    text = "d=6; poles=[3,3],[2,2,2]; free=simple*3"
    p = parse_passport(text)
    assert p.degree == 6
    assert p.pole_fibers == ((3, 3), (2, 2, 2))
    assert p.free_fibers == (simple_fiber(6),) * 3
    assert str(p) == text
    assert p.total_ramification == 10


def test_passport_literal_with_explicit_fibers():
    p = parse_passport("d=4; poles=[1,3],[2,2]; free=[2,1,1],[3,1]")
    assert p.pole_fibers == ((3, 1), (2, 2))
    assert p.free_simple == 1
    assert str(p) == "d=4; poles=[3,1],[2,2]; free=[3,1],simple*1"
    assert p.to_json() == {"poles": [[3, 1], [2, 2]], "free_simple": 1, "free": [[3, 1]]}


def test_passport_validation():
    with pytest.raises(InconsistentPassportError):
        Passport(4, ((3, 2),))
    with pytest.raises(InconsistentPassportError):
        Passport(3, ((3,),), ((1, 1, 1),))
    with pytest.raises(ParseError):
        parse_passport("poles=[1]")
    with pytest.raises(ParseError):
        parse_passport("d=2; poles=(1,1)")


def test_riemann_hurwitz():
    assert rh_genus(4, parse_passport(SCATTERED_D4), 0) == 0
    assert rh_genus(4, Passport(4, ((2, 2),) * 4), 0) == 1
    with pytest.raises(InconsistentPassportError):
        rh_genus(3, Passport(3, ((2, 1), (1, 1, 1))), 0)


def test_pole_counts():
    third = parse_formal_data("(0,1/3)")[0]
    half = parse_formal_data("(1/2,0)")[0]
    assert pole_count(third, (3, 1), 4) == 1
    assert pole_count(half, (2, 2), 4) == 4
    assert pole_count(half, (2, 1), 3) == 4
    generic = parse_formal_data("(0,theta)")[0]
    assert pole_count(generic, (2, 1), 3) == 2


def test_analyze_scattered_row():
    a = analyze_cover(_base("(0,1/2; 1/3,0)"), parse_passport(SCATTERED_D4))
    assert (a.genus, a.N_k, a.R_k, a.B, a.N, a.T) == (0, (1, 4), (2, 2), 2, 5, 2)
    assert a.admissible
    assert gauge_equivalent(a.target, parse_formal_data("(0,1,1; 1/3,0,1)"))


def test_analyze_requires_matching_pole_count():
    with pytest.raises(InconsistentPassportError):
        analyze_cover(_base("(0,1/2; 1/3,0)"), Passport(2, ((2,),), ((2,),)))


@pytest.mark.parametrize("mode", ["log", "scattered", "confluent"])
def test_published_rows_recompute(mode):
    for entry in CLASSIFICATION[mode]:
        base = _base(entry.base)
        a = analyze_cover(base, entry.parsed_passport())
        assert a.genus == 0
        assert a.admissible
        assert a.B == len(entry.parsed_passport().free_fibers)
        lhs, rhs = bound_margin(base, entry.parsed_passport())
        assert lhs >= rhs
        if entry.target is not None:
            assert gauge_equivalent(a.target, parse_formal_data(entry.target))


def test_scatter_splits_by_period():
    half = parse_formal_data("(1/2,0)")[0]
    assert scatter_pole_fiber(half, (4, 2)) == ((2, 2, 2), 1)
    third = parse_formal_data("(0,1/3)")[0]
    assert scatter_pole_fiber(third, (4, 2)) == ((3, 1, 1, 1), 2)
    irregular = parse_formal_data("(1,theta)")[0]
    assert scatter_pole_fiber(irregular, (2, 1)) == ((1, 1, 1), 1)


def test_scatter_ledger_for_confluent_row():
    ledger = scatter_ledger(_base("(0,1/2; 1/3,0)"), parse_passport(CONFLUENT_D6))
    assert str(ledger.after) == "d=6; poles=[3,3],[2,2,2]; free=simple*3"
    assert ledger.n_minus_b == (3, 3)
    assert ledger.t_minus_b == (0, 0)
    assert ledger.ramification == (10, 10)


def test_scatter_is_idempotent_on_scattered_rows():
    base = _base("(0,1/2; 1/3,0)")
    p = parse_passport("d=6; poles=[3,3],[2,2,2]; free=simple*3")
    assert is_scattered(base, p)
    assert not is_scattered(base, parse_passport(CONFLUENT_D6))
    assert scatter(base, scatter(base, parse_passport(CONFLUENT_D6))) == p


def test_realizability():
    assert realizable(Passport(3, ((2, 1), (2, 1), (3,))))
    assert not realizable(Passport(4, ((2, 2), (2, 2), (3, 1))))
    assert realizable(parse_passport(CONFLUENT_D6))
    assert realizable(parse_passport(SCATTERED_D4))


def test_realizability_bound():
    with pytest.raises(SearchBoundError):
        realizable(Passport(9, ((9,), (9,))), bound=8)


def test_logarithmic_rows_list_every_unramified_point():
    for entry in CLASSIFICATION["log"]:
        p = entry.parsed_passport()
        assert len(p.pole_fibers) == 3
        assert p.pole_fibers[-1] == (1,) * entry.degree


def test_realizability_of_a_four_point_cover():
    assert realizable(Passport(4, ((3, 1), (2, 2), (2, 1, 1), (2, 1, 1))))
    assert realizable(Passport(2, ((2,), (2,))))
    assert not realizable(Passport(3, ((2, 1),)))


@pytest.mark.parametrize(
    "mode, index, margin",
    [
        ("scattered", 0, (0, 0)),
        ("scattered", 2, (0, Fraction(-1, 2))),
        ("scattered", 6, (0, 0)),
    ],
)
def test_bound_margin_of_published_rows(mode, index, margin):
    entry = CLASSIFICATION[mode][index]
    assert bound_margin(_base(entry.base), entry.parsed_passport()) == margin
