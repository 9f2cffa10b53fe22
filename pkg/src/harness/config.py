from __future__ import annotations

import copy
import logging
from pathlib import Path
from typing import Any, Iterable, Mapping

import yaml

from problems import PROBLEM_NAMES, UnknownProblemError, get_problem

from .contracts import ConfigError, ExperimentConfig, FvSettings, TrainingSettings

logger = logging.getLogger(__name__)

DEFAULT_PROFILE = "quick"
PROFILES = ("quick", "full")

_DOCUMENT_KEYS = frozenset({"problem", "report_times", "n_compare", "fv", "training", "profiles"})
_SECTIONS: dict[str, frozenset[str]] = {
    "fv": frozenset(FvSettings.__dataclass_fields__),
    "training": frozenset(TrainingSettings.__dataclass_fields__),
}
_SCALARS = frozenset({"problem", "report_times", "n_compare"})


def _repo_root() -> Path:
    return Path(__file__).resolve().parents[2].resolve()


def default_config_dir() -> Path:
    return _repo_root() / "configs" / "experiments"


def _document_path(name: str, config_dir: Path | None) -> Path:
    config_dir = config_dir or default_config_dir()
    path = config_dir / f"{name}.yaml"
    if not path.is_file():
        if name not in PROBLEM_NAMES:
            raise UnknownProblemError(name)
        raise ConfigError(f"missing experiment document {path}", path=str(path))
    return path


def load_experiment_source(name: str, *, config_dir: Path | None = None) -> str:
    """The experiment document as written, for echoing into reports."""

    return _document_path(name, config_dir).read_text(encoding="utf-8")


def load_experiment_document(name: str, *, config_dir: Path | None = None) -> dict[str, Any]:
    path = _document_path(name, config_dir)
    document = yaml.safe_load(path.read_text(encoding="utf-8"))
    if not isinstance(document, dict):
        raise ConfigError(f"experiment document {path} must be a mapping", path=str(path))
    unknown = sorted(set(document) - _DOCUMENT_KEYS)
    if unknown:
        raise ConfigError(f"unknown keys in {path.name}: {unknown}", keys=unknown)
    return document


def parse_override(text: str) -> tuple[tuple[str, ...], Any]:
    """`training.width=60` -> (("training", "width"), 60), value read as a YAML scalar."""

    key, sep, raw = text.partition("=")
    path = tuple(p.strip() for p in key.split("."))
    if not sep or not all(path):
        raise ConfigError(f"override must look like section.key=value, got {text!r}", override=text)
    if len(path) == 1 and path[0] in _SCALARS:
        pass
    elif len(path) == 2 and path[1] in _SECTIONS.get(path[0], ()):
        pass
    else:
        raise ConfigError(f"unknown configuration key {key!r}", override=text)
    try:
        value = yaml.safe_load(raw)
    except yaml.YAMLError:
        raise ConfigError(f"override value is not valid YAML: {raw!r}", override=text) from None
    return path, value


def _merge(base: dict[str, Any], patch: Mapping[str, Any], *, where: str) -> None:
    for key, value in patch.items():
        if key in _SECTIONS:
            if not isinstance(value, Mapping):
                raise ConfigError(f"{where}: {key} must be a mapping")
            unknown = sorted(set(value) - _SECTIONS[key])
            if unknown:
                raise ConfigError(f"{where}: unknown keys {[f'{key}.{k}' for k in unknown]}", keys=unknown)
            base.setdefault(key, {}).update(value)
        elif key in _SCALARS:
            base[key] = value
        else:
            raise ConfigError(f"{where}: unknown key {key!r}", key=key)


def resolve_experiment_config(
    name: str,
    document: Mapping[str, Any],
    *,
    profile: str = DEFAULT_PROFILE,
    overrides: Iterable[str] = (),
) -> ExperimentConfig:
    """
    Base document, then the named profile's entries, then dotted overrides in
    order. The problem must be in the catalog and every report time within t_end.
    """

    if profile not in PROFILES:
        raise ConfigError(f"unknown profile {profile!r}; expected one of {list(PROFILES)}", profile=profile)
    resolved = {k: copy.deepcopy(v) for k, v in document.items() if k != "profiles"}
    _merge({}, resolved, where=name)

    profiles = document.get("profiles") or {}
    if not isinstance(profiles, Mapping):
        raise ConfigError(f"{name}: profiles must be a mapping")
    _merge(resolved, profiles.get(profile) or {}, where=f"{name}.profiles.{profile}")

    for text in overrides:
        path, value = parse_override(text)
        if len(path) == 1:
            resolved[path[0]] = value
        else:
            resolved.setdefault(path[0], {})[path[1]] = value
        logger.debug("override %s=%r", ".".join(path), value)

    config = ExperimentConfig.from_dict({"name": name, "profile": profile, **resolved})
    problem = get_problem(config.problem)
    if config.report_times[-1] > problem.t_end:
        raise ConfigError(
            f"report_times exceed t_end={problem.t_end} of {problem.name}",
            report_times=list(config.report_times),
        )
    try:
        config.training.to_training_config(problem)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"invalid training settings: {e}") from None
    return config


def load_experiment_config(
    name: str,
    *,
    profile: str = DEFAULT_PROFILE,
    overrides: Iterable[str] = (),
    config_dir: Path | None = None,
) -> ExperimentConfig:
    document = load_experiment_document(name, config_dir=config_dir)
    return resolve_experiment_config(name, document, profile=profile, overrides=overrides)
