"""Run configuration. Precedence: command-line flags > config file > defaults.

ANTIPODAL_POOL_CAP in the environment overrides the pool cap from the file and defaults,
but an explicit --pool-cap flag still wins.
"""

from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields, replace
from pathlib import Path

from .errors import SpecMismatch

ENV_POOL_CAP = "ANTIPODAL_POOL_CAP"


@dataclass(frozen=True)
class Config:
    unit_order: int = 4
    pool_cap: int = 200000
    restarts: int = 8
    rank_limit: int = 20
    seed: int = 0
    conductor_limit: int = 64

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise SpecMismatch(f"config field {f.name} must be an integer")
        if self.unit_order not in (2, 4):
            raise SpecMismatch("unit_order must be 2 or 4")
        if self.pool_cap < 1 or self.restarts < 1 or self.rank_limit < 1:
            raise SpecMismatch("pool_cap, restarts and rank_limit must be positive")

    def to_json(self) -> dict:
        return asdict(self)

    def updated(self, **kw) -> "Config":
        kw = {k: v for k, v in kw.items() if v is not None}
        return replace(self, **kw)


def _from_mapping(d: dict, base: Config) -> Config:
    known = {f.name for f in fields(Config)}
    extra = set(d) - known
    if extra:
        raise SpecMismatch(f"unknown config keys: {sorted(extra)}")
    return base.updated(**d)


def load_config(path=None, flags: dict | None = None, env=None) -> Config:
    env = os.environ if env is None else env
    cfg = Config()
    if path is not None:
        cfg = _from_mapping(json.loads(Path(path).read_text()), cfg)
    if env.get(ENV_POOL_CAP):
        try:
            cfg = cfg.updated(pool_cap=int(env[ENV_POOL_CAP]))
        except ValueError:
            raise SpecMismatch(f"{ENV_POOL_CAP} must be an integer") from None
    if flags:
        cfg = _from_mapping(flags, cfg)
    return cfg
