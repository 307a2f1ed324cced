"""Runtime configuration: size caps, seed, parallelism, output format.

Every field can be overridden from the environment (``INTCOMP_<FIELD>``,
upper-case); explicit CLI flags take precedence over the environment.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace

ENV_PREFIX = "INTCOMP_"


@dataclass(frozen=True)
class Config:
    vertex_cap: int = 64
    # counted on the graph handed to the oracle, so 12 = 9 raw vertices + the
    # three augmentation vertices
    oracle_cap: int = 12
    # brute-force base case for DP states: max(4*sqrt(k)+4, event_cap) events
    event_cap: int = 10
    seed: int = 0
    jobs: int = 1
    output: str = "json"

    def __post_init__(self) -> None:
        for name in ("vertex_cap", "oracle_cap", "event_cap", "jobs"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)}")
        if self.output not in ("json", "text"):
            raise ValueError(f"output must be 'json' or 'text', got {self.output!r}")

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None) -> Config:
        environ = os.environ if environ is None else environ
        values = {}
        for f in fields(cls):
            raw = environ.get(ENV_PREFIX + f.name.upper())
            if raw is None:
                continue
            values[f.name] = raw if f.name == "output" else int(raw)
        return cls(**values)

    def override(self, **kwargs) -> Config:
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})


DEFAULT = Config()
