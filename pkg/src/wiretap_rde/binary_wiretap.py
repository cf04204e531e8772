"""Binary uniform source, BEC side information at Bob, BSC side information at
Eve, noiseless main channel and BSC wiretap channel (type-II wiretap).

Lossless reconstruction (D = 0) and one channel use per source symbol are
fixed throughout.  Every evaluator returns the largest equivocation rate
Delta (bits) certified by its bound.
"""
from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .curves import TradeoffCurve, check_grid, ordered_map
from .errors import DomainError
from .info_discrete import (
    H2_INV_TOL,
    FiniteJointPmf,
    conditional_entropy,
    conditional_mutual_information as cmi,
    h2,
    h2_inv,
    star,
)
from .optimize import Maximum2D, SearchSpec, maximize_1d, maximize_2d

BINARY_SCHEMES = ("outer", "digital", "analog", "hybrid")

# Search schedules: 501x501 on (u, q) for the 2-D problem, 2001 on u for 1-D.
SPEC_2D = SearchSpec(0.0, 0.5, coarse_points=501, refine_tol=1e-9)
SPEC_1D = SearchSpec(0.0, 0.5, coarse_points=2001, refine_tol=1e-9)

HYBRID_FEAS_TOL = 1e-12


@dataclass(frozen=True)
class BinaryModelParams:
    beta: float
    eps: float
    zeta: float

    def __post_init__(self):
        for name, hi in (("beta", 1.0), ("eps", 0.5), ("zeta", 0.5)):
            v = getattr(self, name)
            if not 0.0 <= v <= hi:
                raise DomainError(f"{name} must lie in [0, {hi}], got {v!r}")

    def with_beta(self, beta: float) -> "BinaryModelParams":
        return BinaryModelParams(beta, self.eps, self.zeta)


class SideInfoOrder(str, enum.Enum):
    MARKOV_ABE = "markov_ABE"
    LESS_NOISY = "less_noisy"
    MORE_CAPABLE = "more_capable"
    UNORDERED = "unordered"


def classify_side_info(m: BinaryModelParams) -> SideInfoOrder:
    """Ordering of Bob's BEC(beta) side info relative to Eve's BSC(eps)."""
    if m.beta <= 2 * m.eps:
        return SideInfoOrder.MARKOV_ABE
    if m.beta <= 4 * m.eps * (1 - m.eps):
        return SideInfoOrder.LESS_NOISY
    if m.beta <= h2(m.eps):
        return SideInfoOrder.MORE_CAPABLE
    return SideInfoOrder.UNORDERED


def analog_delta(m: BinaryModelParams) -> float:
    """Send X = A uncoded: Delta = H(A|E,Z) = h2(eps) + h2(zeta) - h2(zeta*eps)."""
    return max(0.0, h2(m.eps) + h2(m.zeta) - h2(star(m.zeta, m.eps)))


def wiretap_gain(zeta, q):
    """h2(zeta) + h2(q) - h2(zeta*q): the secrecy term of the channel layer."""
    return h2(zeta) + h2(q) - h2(star(zeta, q))


def digital_objective(m: BinaryModelParams, u, q):
    """Equivocation bound shared by the outer and digital regions at (u, q)."""
    source = h2(m.eps) + h2(u) - h2(star(m.eps, u))
    leak = np.maximum(0.0, m.beta * h2(u) - wiretap_gain(m.zeta, q))
    return source - leak


def digital_rate_ok(m: BinaryModelParams, u, q):
    return m.beta * (1.0 - h2(u)) <= 1.0 - h2(q) + 1e-12


def best_q(m: BinaryModelParams, u):
    """Largest q in [0, 1/2] meeting the digital rate constraint at u.

    The objective is nondecreasing in q (the wiretap gain grows with q), so
    this q is optimal for fixed u.
    """
    target = np.clip(1.0 - m.beta * (1.0 - h2(u)), 0.0, 1.0)
    q = h2_inv(target)
    # h2_inv returns a bracket midpoint; step below the root when it overshoots
    return np.where(h2(q) > target, np.maximum(q - H2_INV_TOL, 0.0), q)


def outer_optimum(m: BinaryModelParams) -> Maximum2D:
    """Maximise the outer-bound objective over (u, q) in [0, 1/2]^2, unconstrained."""
    return maximize_2d(lambda u, q: digital_objective(m, u, q), SPEC_2D, SPEC_2D, vectorized=True)


def outer_delta(m: BinaryModelParams) -> float:
    return max(0.0, outer_optimum(m).value)


def digital_optimum(m: BinaryModelParams) -> Maximum2D:
    """Maximise over u with q eliminated analytically (q = ``best_q``)."""
    res = maximize_1d(lambda u: digital_objective(m, u, best_q(m, u)), SPEC_1D, vectorized=True)
    return Maximum2D((res.argmax, float(best_q(m, res.argmax))), res.value)


def digital_delta(m: BinaryModelParams) -> float:
    return max(0.0, digital_optimum(m).value)


# --- hybrid scheme: U = V xor W, V ~ B(1/2) independent of A, X = V xor A ----

HYBRID_VARS = ("A", "E", "B", "V", "W", "U", "X", "Y", "Z")
ERASURE = 1  # BEC output alphabet is {0, e, 1}


def build_hybrid_pmf(m: BinaryModelParams, u: float) -> FiniteJointPmf:
    """Joint pmf of (A, E, B, V, W, U, X, Y, Z) for the hybrid construction."""
    if not 0.0 <= u <= 0.5:
        raise DomainError(f"u must lie in [0, 1/2], got {u!r}")
    mass = np.zeros((2, 2, 3, 2, 2, 2, 2, 2, 2))
    bsc = lambda x, y, p: 1.0 - p if x == y else p  # noqa: E731
    for a, e, b, v, w, z in itertools.product((0, 1), (0, 1), (0, 1, 2), (0, 1), (0, 1), (0, 1)):
        if b == ERASURE:
            pb = m.beta
        elif b == 2 * a:
            pb = 1.0 - m.beta
        else:
            continue
        x = v ^ a
        mass[a, e, b, v, w, v ^ w, x, x, z] += (
            0.25 * bsc(a, e, m.eps) * pb * (u if w else 1.0 - u) * bsc(x, z, m.zeta)
        )
    return FiniteJointPmf(HYBRID_VARS, mass)


class HybridTerms(NamedTuple):
    h_a_ue: float
    i_va_u: float
    i_xz_ue: float
    i_vby_u: float
    i_vaz_u: float
    i_ua: float
    i_uby: float

    @property
    def delta(self) -> float:
        return self.h_a_ue - self.i_va_u - self.i_xz_ue + min(self.i_vby_u, self.i_vaz_u)

    @property
    def feasible(self) -> bool:
        return (
            self.i_ua <= self.i_uby + HYBRID_FEAS_TOL
            and self.i_va_u <= self.i_vby_u + HYBRID_FEAS_TOL
        )


def hybrid_terms(p: FiniteJointPmf) -> HybridTerms:
    """Information terms of the hybrid region, read off a joint pmf."""
    return HybridTerms(
        h_a_ue=conditional_entropy(p, "A", ("U", "E")),
        i_va_u=cmi(p, "V", "A", "U"),
        i_xz_ue=cmi(p, "X", "Z", ("U", "E")),
        i_vby_u=cmi(p, "V", ("B", "Y"), "U"),
        i_vaz_u=cmi(p, "V", ("A", "Z"), "U"),
        i_ua=cmi(p, "U", "A"),
        i_uby=cmi(p, "U", ("B", "Y")),
    )


def hybrid_distortion(p: FiniteJointPmf) -> float:
    """Hamming distortion of Bob's estimate A_hat = V xor Y."""
    t = p.marginal(("A", "V", "Y"))
    return float(sum(t[a, v, y] for a, v, y in itertools.product((0, 1), repeat=3) if a != v ^ y))


def hybrid_objective_pmf(m: BinaryModelParams, u: float) -> Optional[float]:
    """Hybrid equivocation at u from the pmf; ``None`` if the rate conditions fail."""
    t = hybrid_terms(build_hybrid_pmf(m, u))
    return t.delta if t.feasible else None


def hybrid_objective(m: BinaryModelParams, u):
    """Closed form of ``hybrid_objective_pmf`` (always feasible).

    With this construction U is independent of (A, E) and V is independent of
    A, so H(A|UE) = h2(eps), I(V;A|U) = 0, I(X;Z|UE) = h2(u*eps*zeta) - h2(zeta),
    I(V;BY|U) = (1-beta) h2(u) and I(V;AZ|U) = h2(u*zeta) - h2(zeta).
    """
    leak = h2(star(star(u, m.eps), m.zeta)) - h2(m.zeta)
    bob = (1.0 - m.beta) * h2(u)
    eve = h2(star(u, m.zeta)) - h2(m.zeta)
    return h2(m.eps) - leak + np.minimum(bob, eve)


class HybridOptimum(NamedTuple):
    u: float
    value: float
    terms: HybridTerms


def hybrid_optimum(m: BinaryModelParams) -> HybridOptimum:
    """Search u on the closed form, then re-evaluate the argmax on the pmf."""
    res = maximize_1d(lambda u: hybrid_objective(m, u), SPEC_1D, vectorized=True)
    terms = hybrid_terms(build_hybrid_pmf(m, res.argmax))
    value = terms.delta if terms.feasible else 0.0
    return HybridOptimum(res.argmax, value, terms)


def hybrid_delta(m: BinaryModelParams) -> float:
    return max(0.0, hybrid_optimum(m).value)


EVALUATORS = {
    "outer": outer_delta,
    "digital": digital_delta,
    "analog": analog_delta,
    "hybrid": hybrid_delta,
}


def binary_sweep(
    template: BinaryModelParams,
    beta_grid: Iterable[float],
    schemes: Sequence[str] = BINARY_SCHEMES,
    threads: Optional[int] = None,
) -> dict[str, TradeoffCurve]:
    """Delta versus beta for each scheme, other parameters from ``template``."""
    grid = check_grid(beta_grid)
    for s in schemes:
        if s not in EVALUATORS:
            raise ValueError(f"unknown binary scheme {s!r}")
    models = [template.with_beta(b) for b in grid]
    out = {}
    for s in schemes:
        values = ordered_map(EVALUATORS[s], models, threads)
        out[s] = TradeoffCurve(s, grid, values)
    return out
