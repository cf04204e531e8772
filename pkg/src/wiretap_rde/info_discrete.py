"""Finite-alphabet information measures (all in bits).

Binary-entropy toolkit (``h2``, ``h2_inv``, ``star``, ``mrs_gerber_bound``)
plus entropy / conditional mutual information of a dense joint pmf over
named variables.

The scalar helpers accept either Python floats or numpy arrays; a scalar
input gives a ``float`` back.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

# Interval slack for domain checks on probabilities.
DOMAIN_SLACK = 1e-12
# Masses below this are exact zeros inside entropy sums.
ZERO_MASS = 1e-15
# Negative MI in [-MI_CLAMP, 0) is round-off and is clamped to 0.
MI_CLAMP = 1e-12

H2_INV_TOL = 1e-12
H2_INV_MAX_ITER = 100


def _as_prob(x, lo: float, hi: float, name: str) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)):
        raise DomainError(f"{name} is NaN")
    if np.any(arr < lo - DOMAIN_SLACK) or np.any(arr > hi + DOMAIN_SLACK):
        raise DomainError(f"{name} outside [{lo}, {hi}]: {x!r}")
    return np.clip(arr, lo, hi)


def _out(arr: np.ndarray, like):
    return float(arr) if np.ndim(like) == 0 else np.asarray(arr)


def h2(x):
    """Binary entropy ``-x log2 x - (1-x) log2 (1-x)`` with ``0 log 0 = 0``."""
    p = _as_prob(x, 0.0, 1.0, "x")
    with np.errstate(divide="ignore", invalid="ignore"):
        a = np.where(p > ZERO_MASS, -p * np.log2(p), 0.0)
        b = np.where(1.0 - p > ZERO_MASS, -(1.0 - p) * np.log2(1.0 - p), 0.0)
    return _out(a + b, x)


def h2_inv(y):
    """Inverse of ``h2`` restricted to ``[0, 1/2]``, by bisection.

    Vectorised: every element is bisected in lock-step, so the iteration
    count (and hence the result) does not depend on the batch it sits in.
    """
    t = _as_prob(y, 0.0, 1.0, "y")
    lo = np.zeros_like(t)
    hi = np.full_like(t, 0.5)
    for _ in range(H2_INV_MAX_ITER):
        mid = 0.5 * (lo + hi)
        below = h2(mid) < t
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo < H2_INV_TOL):
            break
    res = 0.5 * (lo + hi)
    res = np.where(t <= 0.0, 0.0, np.where(t >= 1.0, 0.5, res))
    return _out(res, y)


def star(a, b):
    """Binary convolution ``a(1-b) + (1-a)b`` (crossover of cascaded BSCs)."""
    pa = _as_prob(a, 0.0, 1.0, "a")
    pb = _as_prob(b, 0.0, 1.0, "b")
    res = pa * (1.0 - pb) + (1.0 - pa) * pb
    return float(res) if res.ndim == 0 else res


def mrs_gerber_bound(h_in, eps):
    """Lower bound ``h2(eps * h2_inv(h_in))`` on H(output | U) of a BSC(eps)."""
    _as_prob(eps, 0.0, 0.5, "eps")
    return h2(star(eps, h2_inv(h_in)))


@dataclass(frozen=True)
class FiniteJointPmf:
    """Dense joint pmf; axis ``i`` of ``mass`` is the variable ``names[i]``."""

    names: tuple[str, ...]
    mass: np.ndarray

    def __post_init__(self):
        names = tuple(self.names)
        mass = np.array(self.mass, dtype=float)
        if len(set(names)) != len(names):
            raise DomainError(f"duplicate variable names: {names}")
        if mass.ndim != len(names):
            raise DomainError(f"{len(names)} names for a {mass.ndim}-d mass table")
        if np.any(mass < 0):
            raise DomainError("negative probability mass")
        if abs(mass.sum() - 1.0) > 1e-12:
            raise DomainError(f"mass sums to {mass.sum()!r}, not 1")
        mass.setflags(write=False)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "mass", mass)

    @property
    def alphabet_sizes(self) -> tuple[int, ...]:
        return tuple(self.mass.shape)

    def axes(self, variables: Iterable[str]) -> tuple[int, ...]:
        out = []
        for v in variables:
            try:
                out.append(self.names.index(v))
            except ValueError:
                raise DomainError(f"unknown variable {v!r}; have {self.names}") from None
        return tuple(out)

    def marginal(self, variables: Sequence[str]) -> np.ndarray:
        """Marginal table over ``variables`` (axes in the order given)."""
        keep = self.axes(variables)
        drop = tuple(i for i in range(self.mass.ndim) if i not in keep)
        m = self.mass.sum(axis=drop)
        # sum() keeps remaining axes in original order; reorder to request
        order = sorted(keep)
        return np.transpose(m, [order.index(k) for k in keep])

    def prob(self, **symbols: int) -> float:
        """P(var1=s1, var2=s2, ...) for a partial assignment."""
        names = list(symbols)
        return float(self.marginal(names)[tuple(symbols[n] for n in names)])


def _normalize_vars(v) -> tuple[str, ...]:
    if isinstance(v, str):
        return (v,)
    return tuple(v)


def _entropy_of(table: np.ndarray) -> float:
    p = table.ravel()
    p = p[p > ZERO_MASS]
    return float(-(p * np.log2(p)).sum())


def entropy(p: FiniteJointPmf, variables) -> float:
    """Joint entropy H(variables) in bits."""
    vs = _normalize_vars(variables)
    if not vs:
        raise DomainError("entropy needs at least one variable")
    if len(set(vs)) != len(vs):
        raise DomainError(f"repeated variables {vs}")
    return _entropy_of(p.marginal(vs))


def conditional_entropy(p: FiniteJointPmf, x, given=()) -> float:
    xs, zs = _normalize_vars(x), _normalize_vars(given)
    if not zs:
        return entropy(p, xs)
    return entropy(p, xs + zs) - entropy(p, zs)


def conditional_mutual_information(p: FiniteJointPmf, x, y, z=()) -> float:
    """I(x; y | z) in bits; ``z`` may be empty."""
    xs, ys, zs = _normalize_vars(x), _normalize_vars(y), _normalize_vars(z)
    if not xs or not ys:
        raise DomainError("x and y must be non-empty")
    if set(xs) & set(ys) or set(xs) & set(zs) or set(ys) & set(zs):
        raise DomainError(f"overlapping variable sets {xs}, {ys}, {zs}")
    val = (
        conditional_entropy(p, xs, zs)
        + conditional_entropy(p, ys, zs)
        - conditional_entropy(p, xs + ys, zs)
    )
    if val < 0.0:
        if val < -MI_CLAMP:
            raise ArithmeticError(f"negative mutual information {val!r}")
        val = 0.0
    return val


def mutual_information(p: FiniteJointPmf, x, y) -> float:
    return conditional_mutual_information(p, x, y, ())
