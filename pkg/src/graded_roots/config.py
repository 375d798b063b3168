"""Run configuration shared by the CLI and the corpus scripts."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BadRange
from .laufer import default_max_iter

FORMATS = ("json", "dot", "text")


@dataclass(frozen=True)
class Config:
    max_iter: int | None = None  # None: GRADED_ROOTS_MAX_ITER, else 10**6
    ar_bound: int | None = None  # None: 1 + sum|e_j| + max valency
    format: str = "json"
    seed: int = 0
    jobs: int = 1

    def __post_init__(self):
        if self.max_iter is not None and self.max_iter < 1:
            raise BadRange("iteration cap must be >= 1")
        if self.ar_bound is not None and self.ar_bound < 1:
            raise BadRange("AR bound must be >= 1")
        if self.format not in FORMATS:
            raise BadRange(f"format must be one of {FORMATS}")
        if self.jobs < 1:
            raise BadRange("jobs must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise BadRange("seed must fit in u64")

    @property
    def cap(self) -> int:
        return default_max_iter() if self.max_iter is None else self.max_iter

    def trace_kwargs(self) -> dict:
        return {"max_steps": self.cap, "max_inner": self.cap}
