"""Run configuration: a key = value file named by THICKSETS_CONFIG (or --config).

    # comments and blank lines are ignored
    window = 10000
    witness_bound = 100000
    cap = 64
    precision_bits = 512
    seed = 0
"""

from __future__ import annotations

import os
from dataclasses import asdict, dataclass, fields

ENV_VAR = "THICKSETS_CONFIG"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    window: int = 10**4
    witness_bound: int = 10**5
    cap: int = 64
    precision_bits: int = 512
    seed: int = 0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ConfigError(f"{f.name} must be an integer")
            if f.name != "seed" and v <= 0:
                raise ConfigError(f"{f.name} must be positive, got {v}")
            if f.name == "seed" and v < 0:
                raise ConfigError("seed must be non-negative")

    def as_dict(self) -> dict:
        return asdict(self)


def parse_config(text: str, source: str = "<config>") -> Config:
    known = {f.name for f in fields(Config)}
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"{source}:{lineno}: expected key = value")
        key, val = (s.strip() for s in line.split("=", 1))
        if key not in known:
            raise ConfigError(f"{source}:{lineno}: unknown key {key!r}")
        try:
            values[key] = int(val.replace("_", ""))
        except ValueError:
            raise ConfigError(f"{source}:{lineno}: {key} needs an integer, got {val!r}") from None
    return Config(**values)


def load_config(path: str | None = None) -> Config:
    path = path or os.environ.get(ENV_VAR)
    if not path:
        return Config()
    try:
        with open(path, encoding="utf-8") as fh:
            return parse_config(fh.read(), path)
    except OSError as e:
        raise ConfigError(f"cannot read config {path}: {e.strerror}") from None
