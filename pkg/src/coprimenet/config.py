from __future__ import annotations

import os
import time
from dataclasses import asdict, dataclass, field
from typing import Any

from .network import DEFAULT_MAX_N
from .pseudorandom import DEFAULT_MAX_PAIR_N
from .spectral import DEFAULT_MAX_ITER, DEFAULT_TOL, RNG_NAME

OUT_DIR_ENV = "COPRIMENET_OUT"


def default_out_dir() -> str:
    return os.environ.get(OUT_DIR_ENV, ".")


@dataclass
class RunConfig:
    command: str
    n: int | None = None
    n_range: tuple[int, int] | None = None
    stride: int | None = None
    points: int | None = None
    seed: int = 0
    tol: float = DEFAULT_TOL
    max_iter: int = DEFAULT_MAX_ITER
    out: str = field(default_factory=default_out_dir)
    format: str = "csv"
    max_n: int = DEFAULT_MAX_N
    max_pair_n: int = DEFAULT_MAX_PAIR_N
    extra: dict[str, Any] = field(default_factory=dict)
    timestamp: bool = True

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d["rng"] = RNG_NAME
        if self.timestamp:
            d["timestamp"] = time.strftime("%Y-%m-%dT%H:%M:%S%z")
        else:
            d.pop("timestamp")
        return d
