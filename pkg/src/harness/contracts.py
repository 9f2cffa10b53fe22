from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any, Mapping

from pinn import TrainingConfig
from problems import ConservationLawProblem


class LengthMismatchError(ValueError):
    code = "HARNESS_LENGTH_MISMATCH"

    def __init__(self, left: int, right: int) -> None:
        self.message = f"cannot compare {left} values against {right} values"
        self.detail: dict[str, Any] = {"left": left, "right": right}
        super().__init__(self.message)


class TimeNotRecordedError(KeyError):
    code = "HARNESS_TIME_NOT_RECORDED"

    def __init__(self, t: float, recorded: list[float]) -> None:
        self.message = f"time {t!r} is not recorded; recorded times: {recorded}"
        self.detail: dict[str, Any] = {"t": t, "recorded": recorded}
        super().__init__(self.message)

    def __str__(self) -> str:
        return self.message


class GridMismatchError(ValueError):
    code = "HARNESS_GRID_MISMATCH"

    def __init__(self, message: str, **detail: Any) -> None:
        self.message = message
        self.detail: dict[str, Any] = dict(detail)
        super().__init__(message)


class ConfigError(ValueError):
    code = "HARNESS_CONFIG_INVALID"

    def __init__(self, message: str, **detail: Any) -> None:
        self.message = message
        self.detail: dict[str, Any] = dict(detail)
        super().__init__(message)


@dataclass(frozen=True, slots=True)
class HarnessError:
    code: str
    message: str
    detail: dict[str, Any] | None = None

    @staticmethod
    def from_exception(exc: BaseException) -> "HarnessError":
        return HarnessError(
            code=str(getattr(exc, "code", "HARNESS_INTERNAL")),
            message=str(getattr(exc, "message", None) or exc),
            detail=dict(getattr(exc, "detail", None) or {}) or {"type": type(exc).__name__},
        )


@dataclass(frozen=True, slots=True)
class ErrorSeries:
    """ELF(t) and EEL(t) of the network at each reported time."""

    times: tuple[float, ...]
    elf: tuple[float, ...]
    eel: tuple[float, ...]

    def __post_init__(self) -> None:
        if not (len(self.times) == len(self.elf) == len(self.eel)):
            raise ValueError("times, elf and eel must have one length")
        for v in self.elf + self.eel:
            if not (math.isfinite(v) and v >= 0):
                raise ValueError(f"error values must be finite and >= 0, got {v!r}")

    @property
    def mean_elf(self) -> float:
        return sum(self.elf) / len(self.elf) if self.elf else math.nan

    @property
    def mean_eel(self) -> float:
        return sum(self.eel) / len(self.eel) if self.eel else math.nan

    def to_dict(self) -> dict[str, Any]:
        return {"times": list(self.times), "elf": list(self.elf), "eel": list(self.eel)}


@dataclass(frozen=True, slots=True)
class FvSettings:
    dx: float = 0.01
    cfl_lax_friedrichs: float = 0.4
    cfl_lagrangian_eulerian: float = 0.2

    def __post_init__(self) -> None:
        if not (math.isfinite(self.dx) and self.dx > 0):
            raise ValueError("fv.dx must be a finite value > 0")
        for cfl in (self.cfl_lax_friedrichs, self.cfl_lagrangian_eulerian):
            if not 0.0 < cfl < 0.5:
                raise ValueError("fv CFL numbers must be within (0, 0.5)")


@dataclass(frozen=True, slots=True)
class TrainingSettings:
    n_f: int = 10_000
    n_u: int = 100
    width: int = 40
    viscosity: float = 0.0
    seed: int = 0
    iterations: int = 20_000
    learning_rate: float = 1e-3
    beta1: float = 0.9
    beta2: float = 0.999
    adam_epsilon: float = 1e-8

    def to_training_config(self, problem: ConservationLawProblem, *, log_every: int = 1000) -> TrainingConfig:
        return TrainingConfig(problem=problem, log_every=log_every, **asdict(self))


_INT_FIELDS = frozenset({"n_f", "n_u", "width", "seed", "iterations", "n_compare"})


def _coerce(section: str, key: str, value: Any) -> Any:
    if isinstance(value, bool):
        raise ConfigError(f"{section}{key} must be a number, got {value!r}", key=f"{section}{key}")
    try:
        if key in _INT_FIELDS:
            number = float(value)
            if not number.is_integer():
                raise ValueError
            return int(number)
        return float(value)
    except (TypeError, ValueError):
        raise ConfigError(f"{section}{key} must be a number, got {value!r}", key=f"{section}{key}") from None


def _section(cls: type, data: Any, prefix: str) -> Any:
    if not isinstance(data, Mapping):
        raise ConfigError(f"{prefix.rstrip('.')} must be a mapping", key=prefix.rstrip("."))
    known = set(cls.__dataclass_fields__)
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {[prefix + k for k in unknown]}", keys=unknown)
    try:
        return cls(**{k: _coerce(prefix, k, v) for k, v in data.items()})
    except ValueError as e:
        if isinstance(e, ConfigError):
            raise
        raise ConfigError(str(e)) from None


@dataclass(frozen=True, slots=True)
class ExperimentConfig:
    """
    One fully resolved experiment: problem, reporting times, FV references and
    network training. `to_dict()` is the echo written into reports, and
    `from_dict(to_dict())` rebuilds an equal config.
    """

    name: str
    problem: str
    profile: str
    report_times: tuple[float, ...]
    n_compare: int = 100
    fv: FvSettings = field(default_factory=FvSettings)
    training: TrainingSettings = field(default_factory=TrainingSettings)

    def __post_init__(self) -> None:
        times = tuple(float(t) for t in self.report_times)
        if not times:
            raise ConfigError("report_times must not be empty")
        if any(not math.isfinite(t) or t <= 0 for t in times) or list(times) != sorted(set(times)):
            raise ConfigError("report_times must be distinct, positive and ascending", report_times=list(times))
        if self.n_compare < 2:
            raise ConfigError("n_compare must be >= 2")
        object.__setattr__(self, "report_times", times)

    def to_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "problem": self.problem,
            "profile": self.profile,
            "report_times": list(self.report_times),
            "n_compare": self.n_compare,
            "fv": asdict(self.fv),
            "training": asdict(self.training),
        }

    @staticmethod
    def from_dict(data: Mapping[str, Any]) -> "ExperimentConfig":
        required = {"name", "problem", "profile", "report_times"}
        allowed = required | {"n_compare", "fv", "training"}
        missing = sorted(required - set(data))
        if missing:
            raise ConfigError(f"missing configuration keys: {missing}", keys=missing)
        unknown = sorted(set(data) - allowed)
        if unknown:
            raise ConfigError(f"unknown configuration keys: {unknown}", keys=unknown)
        times = data["report_times"]
        if not isinstance(times, (list, tuple)):
            raise ConfigError("report_times must be a list", key="report_times")
        return ExperimentConfig(
            name=str(data["name"]),
            problem=str(data["problem"]),
            profile=str(data["profile"]),
            report_times=tuple(_coerce("", "report_times", t) for t in times),
            n_compare=_coerce("", "n_compare", data.get("n_compare", 100)),
            fv=_section(FvSettings, data.get("fv", {}), "fv."),
            training=_section(TrainingSettings, data.get("training", {}), "training."),
        )


@dataclass(frozen=True, slots=True)
class EntropyVerdict:
    t_early: float
    t_late: float
    u_left: float
    u_right: float
    speed: float
    speed_resolution: float
    admissible: bool


@dataclass(frozen=True, slots=True)
class ExperimentReport:
    """
    Outcome of one experiment. `ok` is False when any phase failed; in that case
    `errors` explains why and the fields of the phases that did not run are empty.
    """

    ok: bool
    config: dict[str, Any]
    config_source: str | None  # experiment document text as written, when run from one
    series: ErrorSeries | None
    cross_scheme: tuple[float, ...]  # ELF/EEL of LF against LE at each report time
    exact_errors: dict[str, list[float]]  # source -> squared error vs the oracle per report time
    exact_sources: list[str]
    entropy: list[EntropyVerdict]
    final_loss_f: float | None
    final_loss_u: float | None
    timings: dict[str, float]
    artifacts: dict[str, str]  # artifact kind -> file name inside the experiment directory
    errors: list[HarnessError]
    meta: dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> dict[str, Any]:
        return {
            "ok": self.ok,
            "config": self.config,
            "config_source": self.config_source,
            "series": self.series.to_dict() if self.series is not None else None,
            "cross_scheme": list(self.cross_scheme),
            "exact_errors": self.exact_errors,
            "exact_sources": self.exact_sources,
            "entropy": [asdict(v) for v in self.entropy],
            "final_loss_f": self.final_loss_f,
            "final_loss_u": self.final_loss_u,
            "timings": self.timings,
            "artifacts": self.artifacts,
            "errors": [asdict(e) for e in self.errors],
            "meta": self.meta,
        }


@dataclass(frozen=True, slots=True)
class SweepRow:
    width: int
    seed: int
    mean_eel: float
    mean_elf: float
    ok: bool


@dataclass(frozen=True, slots=True)
class SweepResult:
    name: str
    rows: list[SweepRow]
    best: SweepRow | None  # lowest mean EEL among successful runs

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.rows)
