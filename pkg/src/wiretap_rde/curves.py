"""Tradeoff-curve container and the ordered parallel map used by the sweeps."""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Optional, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


@dataclass(frozen=True)
class TradeoffCurve:
    """One plotted curve: ``values[i]`` is the scheme's value at ``xs[i]``."""

    scheme: str
    xs: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        xs = tuple(float(x) for x in self.xs)
        values = tuple(float(v) for v in self.values)
        if len(xs) != len(values):
            raise ValueError("xs and values differ in length")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("curve abscissae must be strictly increasing")
        if not all(math.isfinite(v) for v in values):
            raise ValueError("curve values must be finite")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.xs)

    @property
    def samples(self) -> list[tuple[float, str, float]]:
        return [(x, self.scheme, v) for x, v in zip(self.xs, self.values)]

    def at(self, x: float, tol: float = 1e-12) -> float:
        for xi, v in zip(self.xs, self.values):
            if abs(xi - x) <= tol:
                return v
        raise KeyError(x)


def default_threads() -> int:
    return os.cpu_count() or 1


def ordered_map(fn: Callable[[T], R], items: Sequence[T], threads: Optional[int] = None) -> list[R]:
    """``[fn(x) for x in items]``, optionally on a thread pool; order is preserved."""
    n = default_threads() if threads is None else threads
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def check_grid(xs: Iterable[float]) -> tuple[float, ...]:
    grid = tuple(float(x) for x in xs)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be strictly increasing")
    return grid


def iter_samples(curves: Iterable[TradeoffCurve]) -> Iterator[tuple[float, str, float]]:
    for c in curves:
        yield from c.samples
