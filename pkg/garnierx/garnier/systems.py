"""Built-in Garnier and Painleve systems, with the linear equations they deform."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from garnierx.algebra.parser import parse
from garnierx.algebra.ratfunc import RatFunc, as_ratfunc, substitute, union_symbols
from garnierx.errors import PreconditionError, UnknownIdentifierError, UnsupportedInputError
from garnierx.odes.accessory import solve_accessory
from garnierx.odes.scalar import GeneralScalar, SLForm

Template = GeneralScalar | SLForm


@dataclass(frozen=True)
class HamiltonianSystem:
    name: str
    times: tuple[str, ...]
    coords: tuple[str, ...]
    momenta: tuple[str, ...]
    hamiltonians: tuple[RatFunc, ...]
    params: tuple[str, ...] = ()
    template: Template | None = None
    accessory: tuple[str, ...] = ()
    # coordinates whose positions are the apparent points of the template
    apparent: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.times)
        if not (len(self.coords) == len(self.momenta) == len(self.hamiltonians) == n):
            raise PreconditionError(
                f"{self.name}: {n} times need as many coordinates, momenta and Hamiltonians"
            )

    @property
    def symbols(self) -> tuple[str, ...]:
        return union_symbols(self.times, self.coords, self.momenta, self.params)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "times": list(self.times),
            "coords": list(self.coords),
            "momenta": list(self.momenta),
            "params": list(self.params),
            "hamiltonians": [str(h) for h in self.hamiltonians],
        }


@dataclass(frozen=True)
class PainleveEquation:
    """Second-order equation as the residual ddq - F(t, q, dq)."""

    name: str
    params: tuple[str, ...]
    residual: RatFunc
    variables: tuple[str, ...] = field(default=("t", "q", "dq", "ddq"))

    def to_json(self) -> dict:
        return {"name": self.name, "params": list(self.params), "residual": str(self.residual)}


# u'' + f u' + g u = 0 with poles 0, 1, inf and apparent points q1, q2
_LIN_122 = (
    "t2/x^2 + (2-theta0)/x + t1/(x-1)^2 + (2-theta1)/(x-1) - 1/(x-q1) - 1/(x-q2)",
    "((theta0+theta1-1)^2-thetainf^2)/(4*x*(x-1)) - t1*H1/(x*(x-1)^2) + t2*H2/(x^2*(x-1))"
    " + q1*(q1-1)*p1/(x*(x-1)*(x-q1)) + q2*(q2-1)*p2/(x*(x-1)*(x-q2))",
)

# the accessory terms are -t2*H2/x^2 and q_k p_k/(x (x - q_k)); with the other
# signs the apparentness conditions cannot give H(2,3) and x = 1 becomes a pole
_LIN_23 = (
    "t2/x^2 + (2-theta0)/x - t1 - x/2 - 1/(x-q1) - 1/(x-q2)",
    "(theta0+thetainf-1)/8 - H1/(2*x) - t2*H2/x^2 + q1*p1/(x*(x-q1)) + q2*p2/(x*(x-q2))",
)

_LIN_52_32 = (
    "t2^2/(4*x^3) + H1/x^2 + H2/x + t1/2 + x/4"
    " + 3/(4*(x-q1)^2) - p1/(x-q1) + 3/(4*(x-q2)^2) - p2/(x-q2)"
)

_LINEAR_P2 = "x^4 + t*x^2 + 2*alpha*x + 2*H + 3/(4*(x-q)^2) - p/(x-q)"

_KAPPA = "((theta0+theta1-1)^2-thetainf^2)"


def _bracket(k: int, a: str, b: str, mom: str) -> str:
    q = f"q{k}"
    return (
        f"(p{k}^2 - ({a}/{q} - t2/{q}^2 + {b}/({q}-1) - t1/({q}-1)^2)*{mom}"
        f" + {_KAPPA}/(4*{q}*({q}-1)))"
    )


# entered as printed: the q2 brackets end in p1
_HAM_122 = (
    f"-q1^2*(q1-1)^2*(q2-1)/(t1*(q1-q2))*{_bracket(1, 'theta0', '(theta1-1)', 'p1')}"
    f" + (q1-1)*q2^2*(q2-1)^2/(t1*(q1-q2))*{_bracket(2, 'theta0', '(theta1-1)', 'p1')}",
    f"-q1^2*(q1-1)^2*q2/(t2*(q1-q2))*{_bracket(1, '(theta0-1)', 'theta1', 'p1')}"
    f" + q1*q2^2*(q2-1)^2/(t2*(q1-q2))*{_bracket(2, '(theta0-1)', 'theta1', 'p1')}",
)


def _bracket23(k: int, a: str) -> str:
    q = f"q{k}"
    return f"(p{k}^2 - ({a}/{q} - t2/{q}^2 + {q}/2 + t1)*p{k} + (theta0+thetainf-1)/8)"


_HAM_23 = (
    f"2*q1^2/(q1-q2)*{_bracket23(1, 'theta0')} - 2*q2^2/(q1-q2)*{_bracket23(2, 'theta0')}",
    f"-q1^2*q2/(t2*(q1-q2))*{_bracket23(1, '(theta0-1)')}"
    f" + q1*q2^2/(t2*(q1-q2))*{_bracket23(2, '(theta0-1)')}",
)

_KAW_4 = (
    "2*u1*v1^2 + 4*u2*v1*v2 - 4*v1 - u1^2/2 - t1*u1 + u2/2 + t2^2/(2*u2)",
    "(-2*u2*v1^2 + 2*u2^2*v2^2 - 2*u2*v2 + u1*u2/2 + t1*u2 - t2^2*u1/(2*u2))/t2",
)

_TIMES = ("t1", "t2")
_QP = ("q1", "q2", "p1", "p2")
_ACCESSORY = ("H1", "H2")


def _kim122() -> HamiltonianSystem:
    params = ("theta0", "theta1", "thetainf")
    syms = ("x", *_TIMES, *_QP, *params, *_ACCESSORY)
    template = GeneralScalar("x", parse(_LIN_122[0], syms), parse(_LIN_122[1], syms))
    hams = tuple(parse(h, (*_TIMES, *_QP, *params)) for h in _HAM_122)
    return HamiltonianSystem(
        "Kim122", _TIMES, ("q1", "q2"), ("p1", "p2"), hams, params, template, _ACCESSORY, ("q1", "q2")
    )


def _kim23() -> HamiltonianSystem:
    params = ("theta0", "thetainf")
    syms = ("x", *_TIMES, *_QP, *params, *_ACCESSORY)
    template = GeneralScalar("x", parse(_LIN_23[0], syms), parse(_LIN_23[1], syms))
    hams = tuple(parse(h, (*_TIMES, *_QP, *params)) for h in _HAM_23)
    return HamiltonianSystem(
        "Kim23", _TIMES, ("q1", "q2"), ("p1", "p2"), hams, params, template, _ACCESSORY, ("q1", "q2")
    )


def _kaw4() -> HamiltonianSystem:
    syms = ("x", *_TIMES, *_QP, *_ACCESSORY)
    template = SLForm("x", parse(_LIN_52_32, syms))
    hams = tuple(parse(h, (*_TIMES, "u1", "u2", "v1", "v2")) for h in _KAW_4)
    return HamiltonianSystem(
        "Kaw4", _TIMES, ("u1", "u2"), ("v1", "v2"), hams, (), template, _ACCESSORY, ("q1", "q2")
    )


def _pii() -> HamiltonianSystem:
    syms = ("x", "t", "q", "p", "alpha", "H")
    template = SLForm("x", parse(_LINEAR_P2, syms))
    ham = parse("(p^2 - q^4 - t*q^2 - 2*alpha*q)/2", ("t", "q", "p", "alpha"))
    return HamiltonianSystem("PII", ("t",), ("q",), ("p",), (ham,), ("alpha",), template, ("H",), ("q",))


# residual forms ddq - F; PIII' is Okamoto's variant in which q = sqrt(t) solves the D6 and D8 cases
_PAINLEVE = {
    "PI": ((), "ddq - 6*q^2 - t"),
    "PII": (("alpha",), "ddq - 2*q^3 - t*q - alpha"),
    "PIII": (
        ("alpha", "beta", "gamma", "delta"),
        "ddq - dq^2/q + dq/t - (alpha*q^2 + beta)/t - gamma*q^3 - delta/q",
    ),
    "PIII'": (
        ("alpha", "beta", "gamma", "delta"),
        "ddq - dq^2/q + dq/t - q^2*(gamma*q + alpha)/(4*t^2) - beta/(4*t) - delta/(4*q)",
    ),
    "PIV": (
        ("alpha", "beta"),
        "ddq - dq^2/(2*q) - 3*q^3/2 - 4*t*q^2 - 2*(t^2 - alpha)*q - beta/q",
    ),
    "PV": (
        ("alpha", "beta", "gamma", "delta"),
        "ddq - (1/(2*q) + 1/(q-1))*dq^2 + dq/t - (q-1)^2/t^2*(alpha*q + beta/q)"
        " - gamma*q/t - delta*q*(q+1)/(q-1)",
    ),
    "PVI": (
        ("alpha", "beta", "gamma", "delta"),
        "ddq - (1/q + 1/(q-1) + 1/(q-t))*dq^2/2 + (1/t + 1/(t-1) + 1/(q-t))*dq"
        " - q*(q-1)*(q-t)/(t^2*(t-1)^2)"
        "*(alpha + beta*t/q^2 + gamma*(t-1)/(q-1)^2 + delta*t*(t-1)/(q-t)^2)",
    ),
}

_SYSTEMS = {"kim122": _kim122, "kim23": _kim23, "kaw4": _kaw4, "pii": _pii}


def painleve_name(name: str) -> str:
    """'PainleveIII', 'PIII' and 'piii' all name the same equation."""
    key = name.strip()
    if key.lower().startswith("painleve"):
        key = "P" + key[len("painleve"):]
    for known in _PAINLEVE:
        if known.lower() == key.lower():
            return known
    raise UnknownIdentifierError(f"unknown Painleve equation {name!r}")


def painleve_equation(name: str) -> PainleveEquation:
    key = painleve_name(name)
    params, text = _PAINLEVE[key]
    return PainleveEquation(key, params, parse(text, ("t", "q", "dq", "ddq", *params)))


def builtin_system(name: str) -> HamiltonianSystem | PainleveEquation:
    """Hamiltonian systems as printed; Painleve ids give the second-order residual form."""
    builder = _SYSTEMS.get(name.strip().lower())
    if builder is not None:
        return builder()
    if name.strip().lower().startswith("painleve"):
        return painleve_equation(name)
    raise UnknownIdentifierError(f"unknown system {name!r}")


def hamiltonian_system(name: str) -> HamiltonianSystem:
    system = builtin_system(name)
    if not isinstance(system, HamiltonianSystem):
        raise UnknownIdentifierError(f"{name!r} is not a Hamiltonian system")
    return system


def specialize_template(template: Template, values: Mapping[str, object]) -> Template:
    if not values:
        return template
    if isinstance(template, GeneralScalar):
        return GeneralScalar(
            template.indep, substitute(template.f, values), substitute(template.g, values), template.ctx
        )
    return SLForm(template.indep, substitute(template.Q, values), template.ctx)


def derived_system(name: str, params: Mapping[str, object] | None = None) -> HamiltonianSystem:
    """Hamiltonians read off from the accessory parameters that make the template apparent."""
    system = hamiltonian_system(name)
    if system.template is None or system.coords != system.apparent:
        raise UnsupportedInputError(
            f"the accessory parameters of {system.name} are not its Hamiltonians"
        )
    values = {k: as_ratfunc(v) for k, v in (params or {}).items()}
    template = specialize_template(system.template, values)
    solved = solve_accessory(template, list(system.accessory), list(_points(system)))
    hams = tuple(solved[a] for a in system.accessory)
    kept = tuple(p for p in system.params if p not in values)
    return HamiltonianSystem(
        system.name, system.times, system.coords, system.momenta, hams, kept,
        system.template, system.accessory, system.apparent,
    )


def _points(system: HamiltonianSystem) -> list[RatFunc]:
    syms = system.template.indep, *system.symbols
    return [RatFunc.var(c, syms) for c in system.apparent]


@dataclass(frozen=True)
class HamiltonianComparison:
    name: str
    printed: tuple[RatFunc, ...]
    derived: tuple[RatFunc, ...]
    differences: tuple[RatFunc, ...]

    @property
    def agree(self) -> tuple[bool, ...]:
        return tuple(d.is_zero() for d in self.differences)

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "printed": [str(h) for h in self.printed],
            "derived": [str(h) for h in self.derived],
            "difference": [str(d) for d in self.differences],
            "agree": list(self.agree),
        }


def compare_hamiltonians(name: str) -> HamiltonianComparison:
    printed = hamiltonian_system(name)
    derived = derived_system(name)
    diffs = tuple(d - p for p, d in zip(printed.hamiltonians, derived.hamiltonians))
    return HamiltonianComparison(printed.name, printed.hamiltonians, derived.hamiltonians, diffs)
