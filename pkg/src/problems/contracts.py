from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from enum import Enum
from typing import Any


class FluxName(str, Enum):
    BURGERS = "burgers"
    BUCKLEY_LEVERETT = "buckley_leverett"


class InitialConditionKind(str, Enum):
    """
    Initial data of the catalog problems.

    Evaluation at exactly x = 0 returns the left state.
    """

    SHOCK = "shock"  # 1 for x < 0, 0 for x > 0
    RAREFACTION_FAN = "rarefaction_fan"  # -1 for x < 0, 1 for x > 0
    SMOOTH = "smooth"  # 0.5 + sin(x)


@dataclass(frozen=True, slots=True)
class FluxKind:
    """
    Flux function H(u).

    Buckley-Leverett carries the mobility ratio `a`. The usual range is 0 < a < 1 but
    a = 1 is the catalog value, so any a > 0 is accepted.
    """

    name: FluxName
    a: float | None = None

    def __post_init__(self) -> None:
        if not isinstance(self.name, FluxName):
            raise TypeError("name must be a FluxName")
        if self.name == FluxName.BUCKLEY_LEVERETT:
            if self.a is None or not math.isfinite(self.a) or self.a <= 0:
                raise ValueError("Buckley-Leverett flux requires a finite a > 0")
        elif self.a is not None:
            raise ValueError("Burgers flux takes no parameter")

    @staticmethod
    def burgers() -> "FluxKind":
        return FluxKind(name=FluxName.BURGERS)

    @staticmethod
    def buckley_leverett(a: float = 1.0) -> "FluxKind":
        return FluxKind(name=FluxName.BUCKLEY_LEVERETT, a=float(a))

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name.value, "a": self.a}


@dataclass(frozen=True, slots=True)
class InitialCondition:
    kind: InitialConditionKind

    def __post_init__(self) -> None:
        if not isinstance(self.kind, InitialConditionKind):
            raise TypeError("kind must be an InitialConditionKind")

    @property
    def is_riemann(self) -> bool:
        return self.kind != InitialConditionKind.SMOOTH


@dataclass(frozen=True, slots=True)
class ConservationLawProblem:
    """
    Cauchy problem u_t + H(u)_x = 0 restricted to [x_min, x_max] x [0, t_end].
    """

    name: str
    flux: FluxKind
    ic: InitialCondition
    x_min: float
    x_max: float
    t_end: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise ValueError("domain bounds must be finite")
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be < x_max")
        if not (math.isfinite(self.t_end) and self.t_end > 0):
            raise ValueError("t_end must be a finite value > 0")

    @property
    def length(self) -> float:
        return self.x_max - self.x_min

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["flux"] = self.flux.to_dict()
        d["ic"] = self.ic.kind.value
        return d
