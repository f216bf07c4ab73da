from __future__ import annotations

from fractions import Fraction

import pytest

from garnierx.classifier.tables import CLASSICAL, NO_ALGEBRAIC_SOLUTION, NON_CLASSICAL
from garnierx.errors import ParseError, PreconditionError
from garnierx.formal.calculus import (
    chi_irr,
    gauge_equivalent,
    orbifold_order,
    polar_degree,
    pullback_local,
    teich_dim,
)
from garnierx.formal.catalog import (
    airy,
    catalog_reducible,
    degenerate_confluent,
    gauss,
    identify,
    kummer,
    weber,
)
from garnierx.formal.data import REMOVED, BaseEquation, Exponent, FormalDatum, HalfInt, Removed
from garnierx.formal.literal import format_formal_data, parse_formal_data


def test_half_integers():
    assert HalfInt.of(Fraction(3, 2)).twice_value == 3
    assert str(HalfInt(3)) == "3/2"
    assert HalfInt(4).is_integer()
    assert HalfInt(3).ceil() == 2
    with pytest.raises(PreconditionError):
        HalfInt.of(Fraction(1, 3))


def test_exponent_gauge_representative():
    assert Exponent.rational(Fraction(2, 3)).normalized() == Exponent.rational(Fraction(1, 3))
    assert Exponent.rational(Fraction(-1, 3)).normalized() == Exponent.rational(Fraction(1, 3))
    assert Exponent.rational(7).normalized().is_zero()
    shifted = (Exponent.param("theta") * -1 + Fraction(1, 2)).normalized()
    assert str(shifted) == "theta + 1/2"


def test_ramified_pole_has_zero_exponent():
    with pytest.raises(PreconditionError):
        FormalDatum(HalfInt(1), Exponent.rational(1))
    with pytest.raises(PreconditionError):
        FormalDatum(HalfInt(-2), Exponent())


def test_parse_both_literal_styles():
    expected = [
        FormalDatum(HalfInt(0), Exponent.rational(Fraction(1, 3))),
        FormalDatum(HalfInt(1), Exponent()),
    ]
    assert parse_formal_data("(0,1/2; 1/3,0)") == expected
    assert parse_formal_data("(0,1/3)(1/2,0)") == expected
    assert format_formal_data(expected) == "(0,1/2; 1/3,0)"


def test_parse_formal_data_with_parameters():
    data = parse_formal_data("(0,1,0; theta-1,0,theta)")
    assert [str(p.theta) for p in data] == ["theta - 1", "0", "theta"]


def test_parse_formal_data_rejects_unbalanced_lists():
    with pytest.raises(ParseError):
        parse_formal_data("(0,1/2; 1/3)")
    with pytest.raises(ParseError):
        parse_formal_data("(0,1/3) junk")


def test_orbifold_order():
    assert orbifold_order(Exponent.rational(Fraction(1, 3))) == 3
    assert orbifold_order(Exponent.rational(0)) == 1
    assert orbifold_order(Exponent.param("theta")) is None


@pytest.mark.parametrize(
    "text, chi",
    [
        ("(0,1/2; 1/3,0)", Fraction(-1, 6)),
        ("(0,1/2; 1/4,0)", Fraction(-1, 4)),
        ("(0,0,0; 1/2,1/3,theta)", Fraction(-1, 6)),
        ("(0,1; 1/2,theta)", Fraction(-1, 2)),
        ("(3/2; 0)", Fraction(-1, 2)),
    ],
)
def test_chi_irr_of_table_bases(text, chi):
    assert chi_irr(BaseEquation(0, tuple(parse_formal_data(text)))) == chi


@pytest.mark.parametrize("text", NO_ALGEBRAIC_SOLUTION)
def test_two_dimensional_isomonodromy(text):
    assert teich_dim(0, parse_formal_data(text)) == 2


@pytest.mark.parametrize("text", [d for items in CLASSICAL.values() for d in items])
def test_classical_entries_are_two_dimensional(text):
    assert teich_dim(0, parse_formal_data(text)) == 2


def test_non_classical_dimensions():
    assert [teich_dim(0, parse_formal_data(t)) for t in NON_CLASSICAL] == [2, 2, 3]


def test_polar_degree():
    assert polar_degree(parse_formal_data("(1/2,2; 0,theta)")) == 5


def test_pullback_local():
    third = FormalDatum(HalfInt(0), Exponent.rational(Fraction(1, 3)))
    assert pullback_local(third, 3) is REMOVED
    assert pullback_local(third, 2) == FormalDatum(HalfInt(0), Exponent.rational(Fraction(2, 3)))
    half = FormalDatum(HalfInt(1), Exponent())
    assert pullback_local(half, 2) == FormalDatum(HalfInt(2), Exponent())
    assert pullback_local(half, 3) == FormalDatum(HalfInt(3), Exponent())
    one = FormalDatum(HalfInt(2), Exponent.param("theta"))
    assert pullback_local(one, 2) == FormalDatum(HalfInt(4), Exponent.param("theta") * 2)
    with pytest.raises(ValueError):
        pullback_local(one, 0)


def test_gauge_equivalence():
    a = parse_formal_data("(0,1,1; 1/3,0,1)")
    b = parse_formal_data("(1,0,1; 0,2/3,0)")
    assert gauge_equivalent(a, b)
    assert not gauge_equivalent(a, parse_formal_data("(0,1,1; 1/4,0,0)"))


def test_catalog_formal_data():
    g = gauss("a", "b", "c")
    assert [str(p.theta) for p in g.poles] == ["c - 1", "a + b - c", "a - b"]
    assert g.params == ("a", "b", "c")
    k = kummer("a", "c")
    assert [str(p.kappa) for p in k.poles] == ["0", "1"]
    assert str(k.poles[1].theta) == "2*a - c"
    assert str(weber("a").poles[0].theta) == "2*a - 1"
    assert degenerate_confluent(Fraction(1, 3)).poles[1].kappa == HalfInt(1)
    assert airy().poles == (FormalDatum(HalfInt(3), Exponent()),)


def test_identify_by_irregularity_indices():
    assert identify(parse_formal_data("(1/2,0; 0,1/3)")) == "DegenerateConfluent"
    assert identify(parse_formal_data("(2; theta)")) == "Weber"
    assert identify(parse_formal_data("(0,0,0,0; a,b,c,d)")) is None


def test_catalog_reducibility():
    assert catalog_reducible(kummer(1, Fraction(1, 3)))
    assert not catalog_reducible(kummer(Fraction(1, 2), Fraction(1, 3)))
    assert catalog_reducible(weber(Fraction(1, 2)))
    assert not catalog_reducible(weber(Fraction(1, 3)))
    assert catalog_reducible(degenerate_confluent(Fraction(1, 2)))
    assert not catalog_reducible(degenerate_confluent(Fraction(1, 3)))
    assert not catalog_reducible(airy())
    assert not catalog_reducible(gauss("a", "b", "c"))


def test_unknown_catalog_id():
    with pytest.raises(PreconditionError):
        BaseEquation(0, (), catalog_id="Bessel")


def _random_pole(rng) -> FormalDatum:
    kappa = HalfInt(rng.randint(0, 4))
    if not kappa.is_integer():
        return FormalDatum(kappa, Exponent())
    if kappa.twice_value == 0 and rng.random() < 0.5:
        return FormalDatum(kappa, Exponent.rational(Fraction(rng.randint(-5, 5), rng.randint(1, 6))))
    return FormalDatum(kappa, Exponent.param(rng.choice(["a", "b"])) * rng.choice([1, -1, 2]))


def _random_poles(rng) -> tuple[FormalDatum, ...]:
    return tuple(_random_pole(rng) for _ in range(rng.randint(0, 4)))


def test_chi_irr_is_additive_over_poles(rng):
    for _ in range(500):
        a, b = _random_poles(rng), _random_poles(rng)
        joint = chi_irr(BaseEquation(0, a + b))
        assert joint - 2 == (chi_irr(BaseEquation(0, a)) - 2) + (chi_irr(BaseEquation(0, b)) - 2)


def _gauge_image(rng, fd: FormalDatum) -> FormalDatum:
    if not fd.kappa.is_integer():
        return fd
    return FormalDatum(fd.kappa, fd.theta * rng.choice([1, -1]) + Fraction(rng.randint(-3, 3)))


def _pulled(data, m: int) -> list[FormalDatum]:
    out = (pullback_local(fd, m) for fd in data)
    return [fd for fd in out if not isinstance(fd, Removed)]


def test_gauge_equivalence_survives_a_common_pullback(rng):
    for _ in range(500):
        a = list(_random_poles(rng))
        b = [_gauge_image(rng, fd) for fd in a]
        rng.shuffle(b)
        assert gauge_equivalent(a, b)
        m = rng.randint(1, 6)
        assert gauge_equivalent(_pulled(a, m), _pulled(b, m))
