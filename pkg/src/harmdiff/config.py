from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, replace
from pathlib import Path

from .representations import DEFAULT_BOUND, EXPONENT_CEILING

# 8 and 3 carry every explicit residue argument; 40/120/240 add the
# last-digit reasoning on top of mod 8; the rest is slack.
DEFAULT_POOL: tuple[int, ...] = (8, 3, 24, 5, 40, 16, 9, 48, 120, 240, 13, 97, 193, 577, 720, 6480)

CACHE_ENV = "HARMDIFF_CACHE"


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class Config:
    modulus_pool: tuple[int, ...] = DEFAULT_POOL
    exponent_bound: int = DEFAULT_BOUND
    jobs: int = 1
    cache_path: Path | None = None

    def __post_init__(self) -> None:
        if not self.modulus_pool:
            raise ConfigError("modulus pool is empty")
        if any(m < 2 for m in self.modulus_pool):
            raise ConfigError("pool entries must be >= 2")
        if not 1 <= self.exponent_bound <= EXPONENT_CEILING:
            raise ConfigError(f"exponent bound must lie in [1, {EXPONENT_CEILING}]")
        if self.jobs < 1:
            raise ConfigError("jobs must be >= 1")

    @property
    def config_hash(self) -> str:
        """Digest of the settings that can change a classification."""
        payload = json.dumps(
            {"pool": list(self.modulus_pool), "bound": self.exponent_bound},
            sort_keys=True,
            separators=(",", ":"),
        )
        return hashlib.sha256(payload.encode()).hexdigest()[:16]

    def with_env(self) -> Config:
        env = os.environ.get(CACHE_ENV)
        return replace(self, cache_path=Path(env)) if env else self


_KEYS = {"pool", "exponent_bound", "jobs", "cache_path"}


def _parse_pool(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(tok) for tok in text.replace(",", " ").split())
    except ValueError as exc:
        raise ConfigError(f"bad modulus pool {text!r}") from exc


def load_config(path: str | Path) -> Config:
    """Read ``key = value`` lines; ``#`` starts a comment."""
    kwargs: dict = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = (part.strip() for part in line.partition("="))
        if not sep or key not in _KEYS:
            raise ConfigError(f"{path}:{lineno}: expected one of {sorted(_KEYS)} = value")
        try:
            if key == "pool":
                kwargs["modulus_pool"] = _parse_pool(value)
            elif key == "cache_path":
                kwargs["cache_path"] = Path(value)
            else:
                kwargs[key] = int(value)
        except ValueError as exc:
            raise ConfigError(f"{path}:{lineno}: {exc}") from exc
    return Config(**kwargs)


__all__ = ["CACHE_ENV", "Config", "ConfigError", "DEFAULT_POOL", "load_config"]
