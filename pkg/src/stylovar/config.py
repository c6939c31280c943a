"""Run configuration: defaults, key=value config files, and serialization.

Precedence, lowest to highest: built-in defaults, config file (path from
the STYLOVAR_CONFIG environment variable or --config), command-line flags.
The fully resolved configuration is serialized next to analysis outputs so
a run can be reproduced from its artifacts alone.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Mapping

from .configurational import DEFAULT_EPSILON, MAX_WINDOW, MIN_WINDOW
from .discriminability import (
    DEFAULT_MIN_WINDOWS,
    DEFAULT_ROUNDS,
    DEFAULT_SAMPLE_SIZE,
    DEFAULT_SEED,
)
from .errors import InputError
from .features import DEFAULT_CLAUSE_THRESHOLD
from .stats import DEFAULT_ALPHA

CONFIG_ENV_VAR = "STYLOVAR_CONFIG"
LEXICON_KEY_PREFIX = "lexicon."


@dataclass(frozen=True)
class RunConfig:
    corpus: str | None = None
    format: str = "auto"
    partition: str = "genre"
    output_dir: str = "stylovar-out"
    windows: tuple[int, ...] = (1, 2, 3, 4, 5)
    epsilon: float = DEFAULT_EPSILON
    alpha: float = DEFAULT_ALPHA
    sample_size: int = DEFAULT_SAMPLE_SIZE
    rounds: int = DEFAULT_ROUNDS
    seed: int = DEFAULT_SEED
    min_windows: int = DEFAULT_MIN_WINDOWS
    min_df: int = 2
    top_k: int = 10
    clause_threshold: int = DEFAULT_CLAUSE_THRESHOLD
    min_category_size: int = 2
    abbreviations: str | None = None
    lexicons: Mapping[str, str] = field(default_factory=dict)
    # Execution detail, deliberately excluded from serialization: the same
    # analysis run with a different worker count must reproduce identical
    # output files.
    jobs: int = 1

    def __post_init__(self) -> None:
        if not self.windows:
            raise ValueError("windows must be non-empty")
        for window in self.windows:
            if not MIN_WINDOW <= window <= MAX_WINDOW:
                raise ValueError(f"window {window} outside [{MIN_WINDOW}, {MAX_WINDOW}]")
        if self.epsilon < 0:
            raise ValueError("epsilon must be >= 0")
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must be in (0, 1)")
        for name in ("sample_size", "rounds", "min_df", "top_k", "clause_threshold",
                     "min_category_size", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.min_windows < 1:
            raise ValueError("min_windows must be >= 1")
        if self.partition not in ("genre", "author"):
            raise ValueError(f"partition must be 'genre' or 'author', got {self.partition!r}")


def parse_windows(raw: str) -> tuple[int, ...]:
    try:
        values = tuple(int(part) for part in raw.split(",") if part.strip())
    except ValueError as exc:
        raise InputError(f"bad windows value {raw!r}: {exc}") from exc
    if not values:
        raise InputError(f"bad windows value {raw!r}: no window sizes")
    return values


def _parse_optional_str(raw: str) -> str | None:
    return raw or None

_SCALAR_PARSERS = {
    "corpus": _parse_optional_str,
    "format": str,
    "partition": str,
    "output_dir": str,
    "windows": parse_windows,
    "epsilon": float,
    "alpha": float,
    "sample_size": int,
    "rounds": int,
    "seed": int,
    "min_windows": int,
    "min_df": int,
    "top_k": int,
    "clause_threshold": int,
    "min_category_size": int,
    "abbreviations": _parse_optional_str,
    "jobs": int,
}


def parse_config_file(path: str | Path) -> dict[str, object]:
    """Read a key=value config file into constructor keyword arguments."""
    path = Path(path)
    try:
        raw = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read config file {path}: {exc}") from exc
    values: dict[str, object] = {}
    lexicons: dict[str, str] = {}
    for lineno, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise InputError(f"{path}:{lineno}: expected key=value, got {line!r}")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key.startswith(LEXICON_KEY_PREFIX):
            lexicons[key[len(LEXICON_KEY_PREFIX):]] = value
            continue
        parser = _SCALAR_PARSERS.get(key)
        if parser is None:
            raise InputError(f"{path}:{lineno}: unknown config key {key!r}")
        try:
            values[key] = parser(value)
        except InputError:
            raise
        except ValueError as exc:
            raise InputError(f"{path}:{lineno}: bad value for {key}: {exc}") from exc
    if lexicons:
        values["lexicons"] = lexicons
    return values


def default_config_path() -> Path | None:
    raw = os.environ.get(CONFIG_ENV_VAR)
    return Path(raw) if raw else None


def resolve_config(
    config_path: str | Path | None,
    overrides: Mapping[str, object],
) -> RunConfig:
    """Defaults, then config file, then explicit overrides."""
    if config_path is None:
        config_path = default_config_path()
    config = RunConfig()
    if config_path is not None:
        file_values = parse_config_file(config_path)
        lexicons = dict(file_values.pop("lexicons", {}))
        try:
            config = replace(config, **file_values, lexicons=lexicons)
        except ValueError as exc:
            raise InputError(f"invalid config in {config_path}: {exc}") from exc
    clean = {key: value for key, value in overrides.items() if value is not None}
    merged_lexicons = dict(config.lexicons)
    merged_lexicons.update(clean.pop("lexicons", {}))
    try:
        return replace(config, **clean, lexicons=merged_lexicons)
    except ValueError as exc:
        raise InputError(f"invalid configuration: {exc}") from exc


def serialize_config(config: RunConfig) -> str:
    """Stable key=value rendering of everything that affects output bytes."""
    lines = []
    for field_info in sorted(fields(RunConfig), key=lambda item: item.name):
        name = field_info.name
        if name in ("lexicons", "jobs"):
            continue
        value = getattr(config, name)
        if value is None:
            value = ""
        elif name == "windows":
            value = ",".join(str(window) for window in value)
        lines.append(f"{name}={value}")
    for family in sorted(config.lexicons):
        lines.append(f"{LEXICON_KEY_PREFIX}{family}={config.lexicons[family]}")
    return "\n".join(lines) + "\n"
