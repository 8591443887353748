from __future__ import annotations

import os
from dataclasses import dataclass


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    value = int(raw)
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")
    return value


@dataclass(frozen=True)
class Config:
    weyl_cap: int = 10**6
    ideal_cap: int = 10**7
    tuple_cap: int = 10**7
    cache_size: int = 1 << 20
    output_format: str = "text"
    verbosity: int = 0

    @classmethod
    def from_env(cls, **overrides) -> "Config":
        values = dict(
            weyl_cap=_env_int("COMIN_WEYL_CAP", cls.weyl_cap),
            ideal_cap=_env_int("COMIN_IDEAL_CAP", cls.ideal_cap),
            tuple_cap=_env_int("COMIN_TUPLE_CAP", cls.tuple_cap),
            cache_size=_env_int("COMIN_CACHE_SIZE", cls.cache_size),
            output_format=os.environ.get("COMIN_FORMAT", cls.output_format),
            verbosity=int(os.environ.get("COMIN_VERBOSITY", "0") or 0),
        )
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


DEFAULT = Config()
