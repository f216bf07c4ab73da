"""Published classification data kept as literals.

Formal data use the table style "(kappas; thetas)", passports the CLI
literal. Entries are parsed lazily by the accessors below.
"""

from __future__ import annotations

from dataclasses import dataclass

from garnierx.covers.passport import Passport, parse_passport
from garnierx.formal.data import FormalDatum
from garnierx.formal.literal import parse_formal_data


@dataclass(frozen=True)
class TableRow:
    base: str
    degree: int
    passport: str
    target: str | None
    label: str | None

    def base_data(self) -> list[FormalDatum]:
        return parse_formal_data(self.base)

    def target_data(self) -> list[FormalDatum] | None:
        return None if self.target is None else parse_formal_data(self.target)

    def parsed_passport(self) -> Passport:
        return parse_passport(self.passport)


LOGARITHMIC = (
    TableRow("(0,0,0; 1/2,1/3,theta)", 6, "d=6; poles=[2,2,2],[3,3],[1,1,1,1,1,1]; free=simple*3", None, None),
    TableRow("(0,0,0; 1/2,1/3,theta)", 4, "d=4; poles=[2,2],[3,1],[1,1,1,1]; free=simple*2", None, None),
    TableRow("(0,0,0; 1/2,1/3,theta)", 3, "d=3; poles=[2,1],[3],[1,1,1]; free=simple*1", None, None),
    TableRow("(0,0,0; 1/2,1/4,theta)", 4, "d=4; poles=[2,2],[4],[1,1,1,1]; free=simple*1", None, None),
    TableRow("(0,0,0; 1/2,theta1,theta2)", 2, "d=2; poles=[2],[1,1],[1,1]; free=simple*1", None, None),
)

SCATTERED = (
    TableRow("(0,1/2; 1/3,0)", 6, "d=6; poles=[3,3],[2,2,2]; free=simple*3", "(1,1,1; 0,0,1)", "Gar3(1,1,1)"),
    TableRow("(0,1/2; 1/3,0)", 4, "d=4; poles=[3,1],[2,2]; free=simple*2", "(0,1,1; 1/3,0,1)", "Gar2(0,1,1)"),
    TableRow("(0,1/2; 1/3,0)", 3, "d=3; poles=[3],[2,1]; free=simple*1", "(1/2,1; 0,0)", "P_III^D7"),
    TableRow("(0,1/2; 1/4,0)", 4, "d=4; poles=[4],[2,2]; free=simple*1", "(1,1; 0,1)", "P_III^D6"),
    TableRow("(0,1/2; theta,0)", 2, "d=2; poles=[1,1],[2]; free=simple*1", "(0,1,0; theta-1,0,theta)", "P_V"),
    TableRow("(0,1; 1/2,theta)", 2, "d=2; poles=[2],[1,1]; free=simple*1", "(1,1; theta-1,theta)", "P_III^D6"),
    TableRow("(3/2; 0)", 2, "d=2; poles=[2]; free=simple*1", "(3; 0)", "P_II"),
)

CONFLUENT = (
    TableRow("(0,1/2; 1/3,0)", 6, "d=6; poles=[3,3],[4,2]; free=simple*2", "(1,2; 0,1)", "Gar2(1,2)"),
    TableRow("(0,1/2; 1/3,0)", 6, "d=6; poles=[3,3],[6]; free=simple*1", "(3; 1)", "P_II"),
    TableRow("(0,1/2; 1/3,0)", 4, "d=4; poles=[3,1],[4]; free=simple*1", "(0,2; 1/3,1)", "P_IV"),
)

CLASSIFICATION = {"log": LOGARITHMIC, "scattered": SCATTERED, "confluent": CONFLUENT}


@dataclass(frozen=True)
class PainleveRow:
    data: str
    equation: str
    params: tuple[str, ...]


# isomonodromy equation of each rank-one formal type, parameters in the theta's
PAINLEVE_TYPES = (
    PainleveRow(
        "(0,0,0,0; theta0,theta1,thetat,thetainf)",
        "PVI",
        ("(thetainf-1)^2/2", "-theta0^2/2", "theta1^2/2", "(1-thetat^2)/2"),
    ),
    PainleveRow("(0,1,0; theta0,theta1,thetainf)", "PV", ("thetainf^2/2", "-(theta0+1)^2/2", "theta1", "-1/2")),
    PainleveRow("(0,1/2,0; theta0,0,thetainf)", "PV", ("thetainf^2/2", "-(theta0+1)^2/2", "-2", "0")),
    PainleveRow("(0,2; theta0,thetainf)", "PIV", ("thetainf", "-2*(theta0+1)^2")),
    PainleveRow("(0,3/2; theta0,0)", "PII", ("theta0-1/2",)),
    PainleveRow("(1,1; theta0,thetainf)", "PIII", ("4*thetainf", "-4*theta0", "4", "-4")),
    PainleveRow("(1,1/2; theta0,0)", "PIII", ("-8", "-4*theta0", "0", "-4")),
    PainleveRow("(1/2,1/2; 0,0)", "PIII", ("4", "-4", "0", "0")),
    PainleveRow("(3; thetainf)", "PII", ("(1-thetainf)/2",)),
    PainleveRow("(5/2; 0)", "PI", ()),
)


@dataclass(frozen=True)
class AlgebraicPainleveRow:
    name: str
    equation: str
    params: tuple[str, ...]
    solution: str
    data: str
    galois: str
    pullback: bool
    apparent: bool


ALGEBRAIC_PAINLEVE = (
    AlgebraicPainleveRow("pv-rat", "PV", ("theta^2/2", "-theta^2/2", "0", "-1/2"), "q=-1", "(0,1,0; theta-1,0,theta)", "SL2", True, False),
    AlgebraicPainleveRow("pv-lag", "PV", ("theta^2/2", "-1/2", "theta", "-1/2"), "q=t/theta+1", "(0,1,0; 0,theta,theta)", "C_inf", False, True),
    AlgebraicPainleveRow("pv-alg", "PV", ("theta^2/2", "-1/8", "-2", "0"), "q=2*sqrt(t)/theta+1", "(0,1/2,0; 1/2,0,theta)", "D_inf", False, False),
    AlgebraicPainleveRow("piv-rat", "PIV", ("0", "-2/9"), "q=-2*t/3", "(0,2; -2/3,0)", "SL2", True, False),
    AlgebraicPainleveRow("piv-her", "PIV", ("0", "-2"), "q=-2*t", "(0,2; 0,0)", "C_inf", True, True),
    AlgebraicPainleveRow("piii-d6", "PIII'", ("4*theta", "-4*theta", "4", "-4"), "q=sqrt(t)", "(1,1; theta,theta)", "SL2", True, False),
    AlgebraicPainleveRow("piii-d8", "PIII'", ("4", "-4", "0", "0"), "q=sqrt(t)", "(1/2,1/2; 0,0)", "D_inf", True, False),
    AlgebraicPainleveRow("piii-d7", "PIII", ("-8", "0", "0", "-4"), "q=(-t/2)^(1/3)", "(1,1/2; 0,0)", "SL2", True, False),
    AlgebraicPainleveRow("p34", "PII", ("0",), "q=0", "(0,3/2; 1/2,0)", "D_inf", True, False),
    AlgebraicPainleveRow("pii", "PII", ("0",), "q=0", "(3; 1)", "SL2", True, False),
)

NON_CLASSICAL = ("(0,1,1; 1/3,0,1)", "(1,2; 0,1)", "(1,1,1; 0,0,1)")

CLASSICAL = {
    "infinite discrete family": ("(0,0,0,1/2; 1/2,1/2,1/2,0)",),
    "two-parameter": (
        "(0,0,0,1; 1/2,1/2,theta1,theta2)",
        "(0,1/2,0,0; 1/2,0,theta1,theta2)",
        "(0,0,0,1; 0,theta1,theta2,-theta1-theta2)",
    ),
    "one-parameter": (
        "(0,0,2; 1/2,1/2,theta)",
        "(0,1/2,1; 1/2,0,theta)",
        "(1/2,1/2,0; 0,0,theta)",
        "(0,3/2,0; 1/2,0,theta)",
        "(0,0,2; 0,theta,-theta)",
        "(0,1,1; 0,theta,-theta)",
    ),
    "sporadic": ("(1/2,3/2; 0,0)", "(0,5/2; 1/2,0)", "(0,3; 0,0)"),
}

NO_ALGEBRAIC_SOLUTION = ("(1/2,2; 0,theta)", "(1,3/2; theta,0)", "(4; theta)", "(7/2; 0)")

