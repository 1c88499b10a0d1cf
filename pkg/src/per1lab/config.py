"""Run configuration: defaults, optional key=value file, flag overrides."""

from __future__ import annotations

import os
from dataclasses import dataclass
from pathlib import Path

ENV_CONFIG_PATH = "PER1LAB_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    epsilon: float = 0.005
    tol: float = 1e-6
    escape_radius: float = 10.0
    max_iter: int = 100_000
    output_dir: Path = Path(".")
    jobs: int = 1

    def __post_init__(self):
        if not (0.0 < self.epsilon < 0.01):
            raise ValueError("epsilon must lie in (0, 0.01)")
        if not (1e-12 <= self.tol <= 1e-3):
            raise ValueError("tol must lie in [1e-12, 1e-3]")
        if self.escape_radius < 10.0:
            raise ValueError("escape_radius must be >= 10")
        if self.max_iter < 1:
            raise ValueError("max_iter must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")

    def header_lines(self):
        """Echo of every effective value, for reproducible output."""
        return [
            "# epsilon=%.17g tol=%.17g escape_radius=%.17g max_iter=%d "
            "jobs=%d output_dir=%s"
            % (self.epsilon, self.tol, self.escape_radius, self.max_iter,
               self.jobs, self.output_dir)
        ]


_FIELD_TYPES = {
    "epsilon": float,
    "tol": float,
    "escape_radius": float,
    "max_iter": int,
    "output_dir": Path,
    "jobs": int,
}


def parse_config_file(path) -> dict:
    """key=value lines; blank lines and # comments ignored."""
    values = {}
    text = Path(path).read_text(encoding="utf-8")
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        key = key.strip()
        if key not in _FIELD_TYPES:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        values[key] = _FIELD_TYPES[key](value.strip())
    return values


def load_config(config_path=None, overrides=None) -> RunConfig:
    """Defaults <- config file <- explicit overrides.

    The file path comes from the argument or the PER1LAB_CONFIG
    environment variable (the only thing the environment controls).
    """
    values = {}
    path = config_path or os.environ.get(ENV_CONFIG_PATH)
    if path:
        values.update(parse_config_file(path))
    for key, val in (overrides or {}).items():
        if val is None:
            continue
        if key not in _FIELD_TYPES:
            raise ValueError(f"unknown config key {key!r}")
        values[key] = _FIELD_TYPES[key](val)
    return RunConfig(**values)
