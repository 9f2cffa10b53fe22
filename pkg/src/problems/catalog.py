from __future__ import annotations

from types import MappingProxyType
from typing import Any, Mapping

from .contracts import ConservationLawProblem, FluxKind, InitialCondition, InitialConditionKind


class UnknownProblemError(KeyError):
    code = "PROBLEM_UNKNOWN"

    def __init__(self, name: str) -> None:
        self.name = name
        self.message = f"unknown problem {name!r}; catalog: {', '.join(PROBLEM_NAMES)}"
        self.detail: dict[str, Any] = {"name": name, "catalog": list(PROBLEM_NAMES)}
        super().__init__(self.message)

    def __str__(self) -> str:
        return self.message


_BURGERS_DOMAIN = (-10.0, 10.0)
_BL_DOMAIN = (-8.0, 8.0)
_T_END = 8.0


def _build() -> dict[str, ConservationLawProblem]:
    burgers = FluxKind.burgers()
    return {
        "burgers-shock": ConservationLawProblem(
            name="burgers-shock",
            flux=burgers,
            ic=InitialCondition(InitialConditionKind.SHOCK),
            x_min=_BURGERS_DOMAIN[0],
            x_max=_BURGERS_DOMAIN[1],
            t_end=_T_END,
        ),
        "burgers-rarefaction": ConservationLawProblem(
            name="burgers-rarefaction",
            flux=burgers,
            ic=InitialCondition(InitialConditionKind.RAREFACTION_FAN),
            x_min=_BURGERS_DOMAIN[0],
            x_max=_BURGERS_DOMAIN[1],
            t_end=_T_END,
        ),
        "burgers-smooth": ConservationLawProblem(
            name="burgers-smooth",
            flux=burgers,
            ic=InitialCondition(InitialConditionKind.SMOOTH),
            x_min=_BURGERS_DOMAIN[0],
            x_max=_BURGERS_DOMAIN[1],
            t_end=_T_END,
        ),
        "bl-shock": ConservationLawProblem(
            name="bl-shock",
            flux=FluxKind.buckley_leverett(a=1.0),
            ic=InitialCondition(InitialConditionKind.SHOCK),
            x_min=_BL_DOMAIN[0],
            x_max=_BL_DOMAIN[1],
            t_end=_T_END,
        ),
    }


PROBLEM_CATALOG: Mapping[str, ConservationLawProblem] = MappingProxyType(_build())
PROBLEM_NAMES: tuple[str, ...] = tuple(PROBLEM_CATALOG)


def get_problem(name: str) -> ConservationLawProblem:
    try:
        return PROBLEM_CATALOG[name]
    except KeyError:
        raise UnknownProblemError(name) from None
