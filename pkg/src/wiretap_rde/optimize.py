"""Deterministic derivative-free maximisation: coarse grid scan + golden section.

The objectives in this package carry ``[x]_+`` kinks, ``min{.,.}`` and
feasibility constraints, so no gradients are used.  An objective signals an
infeasible point by returning ``None``, ``nan`` or ``-inf``; all three are
treated as minus infinity.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .errors import InfeasibleError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
TIE_TOL = 1e-12


@dataclass(frozen=True)
class SearchSpec:
    lo: float
    hi: float
    coarse_points: int = 2001
    refine_tol: float = 1e-9
    max_refine_iters: int = 200

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got [{self.lo}, {self.hi}]")
        if self.coarse_points < 2:
            raise ValueError("coarse_points must be >= 2")
        if not self.refine_tol > 0:
            raise ValueError("refine_tol must be > 0")
        if self.max_refine_iters < 1:
            raise ValueError("max_refine_iters must be >= 1")

    def grid(self) -> np.ndarray:
        return np.linspace(self.lo, self.hi, self.coarse_points)

    @property
    def step(self) -> float:
        return (self.hi - self.lo) / (self.coarse_points - 1)


class Maximum1D(NamedTuple):
    argmax: float
    value: float


class Maximum2D(NamedTuple):
    argmax: tuple[float, float]
    value: float


def _clean(v) -> float:
    if v is None:
        return -math.inf
    v = float(v)
    return -math.inf if math.isnan(v) else v


def _clean_array(v) -> np.ndarray:
    a = np.asarray(v, dtype=float)
    return np.where(np.isnan(a), -np.inf, a)


def _first_best(values: np.ndarray) -> int:
    """Flat index of the first entry within TIE_TOL of the maximum."""
    flat = values.ravel()
    best = flat.max()
    if not np.isfinite(best):
        raise InfeasibleError("objective infeasible on the whole coarse grid")
    return int(np.flatnonzero(flat >= best - TIE_TOL)[0])


def golden_section_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-9,
    max_iters: int = 200,
) -> tuple[float, float]:
    """Golden-section search for a maximum of ``f`` on ``[lo, hi]``.

    Returns the best point actually evaluated (bracket ends included), so a
    kinked or partially infeasible objective never yields a worse value than
    one that was seen.
    """
    best_x, best_f = lo, _clean(f(lo))
    fh = _clean(f(hi))
    if fh > best_f + TIE_TOL:
        best_x, best_f = hi, fh

    a, b = lo, hi
    x1 = b - INV_PHI * (b - a)
    x2 = a + INV_PHI * (b - a)
    f1, f2 = _clean(f(x1)), _clean(f(x2))
    for _ in range(max_iters):
        if b - a < tol:
            break
        if f1 >= f2:
            b, x2, f2 = x2, x1, f1
            x1 = b - INV_PHI * (b - a)
            f1 = _clean(f(x1))
        else:
            a, x1, f1 = x1, x2, f2
            x2 = a + INV_PHI * (b - a)
            f2 = _clean(f(x2))
    for x, fx in sorted(((x1, f1), (x2, f2))):
        if fx > best_f + TIE_TOL:
            best_x, best_f = x, fx
    return best_x, best_f


def maximize_1d(
    f: Callable,
    spec: SearchSpec,
    vectorized: bool = False,
) -> Maximum1D:
    """Coarse scan of ``spec.coarse_points`` samples, then golden refinement.

    With ``vectorized=True`` the coarse scan calls ``f`` once on the whole
    grid array; refinement always calls it with Python floats.  The smallest
    argmax wins on ties within 1e-12.
    """
    xs = spec.grid()
    if vectorized:
        vals = _clean_array(f(xs))
    else:
        vals = np.array([_clean(f(float(x))) for x in xs])
    i = _first_best(vals)
    x0, f0 = float(xs[i]), float(vals[i])

    lo = float(xs[max(i - 1, 0)])
    hi = float(xs[min(i + 1, len(xs) - 1)])
    xr, fr = golden_section_max(f, lo, hi, spec.refine_tol, spec.max_refine_iters)
    if fr > f0 + TIE_TOL:
        return Maximum1D(xr, fr)
    return Maximum1D(x0, f0)


def maximize_2d(
    f: Callable,
    spec_x: SearchSpec,
    spec_y: SearchSpec,
    vectorized: bool = False,
    rounds: int = 3,
) -> Maximum2D:
    """Full product-grid scan, then alternating per-coordinate golden passes.

    Ties resolve to the lexicographically smallest ``(x, y)``.
    """
    xs, ys = spec_x.grid(), spec_y.grid()
    if vectorized:
        gx, gy = np.meshgrid(xs, ys, indexing="ij")
        vals = _clean_array(f(gx, gy))
    else:
        vals = np.array([[_clean(f(float(x), float(y))) for y in ys] for x in xs])
    k = _first_best(vals)
    i, j = divmod(k, len(ys))
    x, y, fbest = float(xs[i]), float(ys[j]), float(vals[i, j])

    for _ in range(rounds):
        lo = max(spec_x.lo, x - spec_x.step)
        hi = min(spec_x.hi, x + spec_x.step)
        xr, fr = golden_section_max(
            lambda t: f(t, y), lo, hi, spec_x.refine_tol, spec_x.max_refine_iters
        )
        if fr > fbest + TIE_TOL:
            x, fbest = xr, fr
        lo = max(spec_y.lo, y - spec_y.step)
        hi = min(spec_y.hi, y + spec_y.step)
        yr, fr = golden_section_max(
            lambda t: f(x, t), lo, hi, spec_y.refine_tol, spec_y.max_refine_iters
        )
        if fr > fbest + TIE_TOL:
            y, fbest = yr, fr
    return Maximum2D((x, y), fbest)
