"""Gaussian source over a Gaussian wiretap channel with side information.

Values are expressed as D_E = 2^(2 Delta) / (2 pi e), Eve's MMSE floor; the
source has unit variance, so every D_E lies in [0, 1].  ``d`` is Bob's mean
squared-error distortion.
"""
from __future__ import annotations

import math
from typing import Iterable, NamedTuple, Optional, Sequence

import numpy as np

from .curves import TradeoffCurve, check_grid, ordered_map
from .errors import DomainError, InfeasibleError
from .info_gaussian import GaussianModelParams, HybridGaussCoef
from .optimize import Maximum1D, SearchSpec, maximize_1d

__all__ = [
    "GaussianModelParams",
    "HybridGaussCoef",
    "GAUSSIAN_SCHEMES",
    "de_from_delta",
    "delta_from_de",
    "d_min",
    "de_cap",
    "prop7_region",
    "prop8_region",
    "prop9_outer",
    "outer_de",
    "prop10_hybrid_point",
    "theorem4_de",
    "alpha_beta_for_target",
    "prop11_digital",
    "prop11_digital_de",
    "prop12_analog_de",
    "hybrid_best",
    "hybrid_frontier",
    "default_d_grid",
    "gaussian_sweep",
]

GAUSSIAN_SCHEMES = ("optimal", "digital", "analog", "hybrid", "outer")

CHANNEL_TIE_TOL = 1e-12
D_REL_TOL = 1e-12
RATE_REL_TOL = 1e-12
BETA_MAX = 1.0 - 1e-6
BETA_POINTS = 2000
MU_POINTS = 2001
TWO_PI_E = 2.0 * math.pi * math.e


def de_from_delta(delta: float) -> float:
    return 2.0 ** (2.0 * delta) / TWO_PI_E


def delta_from_de(de: float) -> float:
    if not de > 0:
        raise DomainError(f"D_E must be > 0, got {de!r}")
    return 0.5 * math.log2(TWO_PI_E * de)


def _clamp(de: float) -> float:
    return min(1.0, max(0.0, de))


def bob_channel_better(m: GaussianModelParams) -> bool:
    """P_Y < P_Z, with near-ties routed to the P_Y >= P_Z side."""
    return m.p_y < m.p_z - CHANNEL_TIE_TOL


def d_min(m: GaussianModelParams) -> float:
    """Smallest distortion reachable at Bob."""
    return 1.0 / ((1.0 + m.inv_pb) * (1.0 + m.snr_y))


def de_cap(m: GaussianModelParams) -> float:
    """Var(A|E): what Eve knows from her side information alone."""
    return 1.0 / (1.0 + 1.0 / m.p_e)


def _check_d(m: GaussianModelParams, d: float, floor: Optional[float] = None):
    lo = d_min(m) if floor is None else floor
    if not math.isfinite(d) or d < lo * (1.0 - D_REL_TOL):
        raise InfeasibleError(f"distortion {d!r} below the minimum {lo!r}")


def _require_no_bob_side_info(m: GaussianModelParams):
    if m.has_bob_side_info:
        raise DomainError("this closed form assumes no side information at Bob (p_b absent)")


def prop7_region(m: GaussianModelParams, d: float) -> float:
    """Bob's side information less noisy (P_B <= P_E): exact region."""
    if m.p_b is None or m.p_b > m.p_e:
        raise DomainError("requires finite p_b <= p_e")
    _check_d(m, d)
    ratio = max(1.0, (1.0 + m.snr_y) / (1.0 + m.snr_z))
    return _clamp(min(de_cap(m), (1.0 + m.inv_pb) / (1.0 + 1.0 / m.p_e) * d * ratio))


def prop8_region(m: GaussianModelParams, d: float) -> float:
    """Eve has better side information and a less noisy channel: exact region."""
    if m.p_b is not None and m.p_b <= m.p_e:
        raise DomainError("requires p_b > p_e")
    if bob_channel_better(m):
        raise DomainError("requires p_y >= p_z")
    _check_d(m, d)
    return _clamp(min(de_cap(m), 1.0 / (1.0 / d + 1.0 / m.p_e - m.inv_pb)))


def prop9_outer(m: GaussianModelParams, d: float) -> float:
    """Outer bound when Eve has better side info but Bob the better channel."""
    if m.p_b is not None and m.p_b <= m.p_e:
        raise DomainError("requires p_b > p_e")
    if not bob_channel_better(m):
        raise DomainError("requires p_y < p_z")
    _check_d(m, d)
    gain = (1.0 + m.snr_z) / (1.0 + m.snr_y)
    return _clamp(min(de_cap(m), 1.0 / (gain / d + 1.0 / m.p_e - m.inv_pb)))


def outer_de(m: GaussianModelParams, d: float) -> float:
    """Best known upper bound on D_E for any parameter regime."""
    if m.p_b is not None and m.p_b <= m.p_e:
        return prop7_region(m, d)
    if not bob_channel_better(m):
        return prop8_region(m, d)
    return prop9_outer(m, d)


class HybridPoint(NamedTuple):
    d: float
    de: float


def _rate_load(c: HybridGaussCoef, m: GaussianModelParams) -> float:
    return c.alpha**2 / c.gamma**2 + m.snr_y * (c.alpha + c.beta) ** 2


def _hybrid_de(load, gamma2, m: GaussianModelParams):
    """D_E of the hybrid code as a function of its rate load and gamma^2.

    Works elementwise on arrays.
    """
    ib, ie = m.inv_pb, 1.0 / m.p_e
    eve = 1.0 / (1.0 + ie + m.snr_z * (1.0 + gamma2 * ie))
    bob = (1.0 + ib + m.snr_y * (1.0 + gamma2 * ib)) / (1.0 + ib + load)
    return eve * np.minimum(bob, 1.0 + gamma2 * m.snr_z)


def prop10_hybrid_point(c: HybridGaussCoef, m: GaussianModelParams) -> Optional[HybridPoint]:
    """(D, D_E) reached by the hybrid code with coefficients ``c``; None if
    the code violates its rate constraint."""
    if not c.gamma > 0:
        raise DomainError("gamma must be > 0")
    load = _rate_load(c, m)
    budget = m.snr_y * (1.0 + c.gamma**2 * m.inv_pb)
    if load > budget + RATE_REL_TOL * (1.0 + budget):
        return None
    d = 1.0 / (1.0 + m.inv_pb + load)
    return HybridPoint(d, _clamp(float(_hybrid_de(load, c.gamma**2, m))))


def theorem4_de(m: GaussianModelParams, d: float) -> float:
    """Optimal D_E with no side information at Bob and P_Y < P_Z."""
    _require_no_bob_side_info(m)
    if not bob_channel_better(m):
        raise DomainError("requires p_y < p_z")
    _check_d(m, d)
    gain = (1.0 + m.snr_z) / (1.0 + m.snr_y)
    return _clamp(1.0 / (max(1.0, gain / d) + 1.0 / m.p_e))


def alpha_beta_for_target(m: GaussianModelParams, d: float) -> HybridGaussCoef:
    """Hybrid coefficients that reach the optimal (d, theorem4_de(d)) point.

    Valid for D_min < d < (1 + P/P_Z)/(1 + P/P_Y); at d = D_min the map gives
    beta = 1 (gamma = 0), which is the uncoded analog limit and not a valid
    coefficient set.
    """
    _require_no_bob_side_info(m)
    if not bob_channel_better(m):
        raise DomainError("requires p_y < p_z")
    lo, hi = d_min(m), (1.0 + m.snr_z) / (1.0 + m.snr_y)
    if not lo < d < hi:
        raise InfeasibleError(f"target distortion {d!r} outside ({lo!r}, {hi!r})")
    beta = math.sqrt(m.p_z / m.p) * math.sqrt(max(0.0, 1.0 + m.snr_z - d * (1.0 + m.snr_y)))
    if beta >= 1.0:
        raise InfeasibleError(f"target distortion {d!r} too close to the minimum")
    gamma2 = 1.0 - beta * beta
    root = math.sqrt((m.snr_y - m.snr_z) / d)
    alpha = (beta + gamma2 * root) / (1.0 + gamma2 * m.snr_y) - beta
    return HybridGaussCoef(alpha, beta)


def _prop11_objective(m: GaussianModelParams, d: float):
    k = d * (1.0 + m.snr_y)

    def f(mu):
        mu = np.asarray(mu, dtype=float)
        denom = 1.0 + mu * m.snr_z - (1.0 - mu) * m.p_y / m.p_z
        return 1.0 / (1.0 / mu + 1.0 / m.p_e) * np.minimum(1.0, k / denom)

    return f


def prop11_digital(m: GaussianModelParams, d: float) -> Maximum1D:
    """Best digital-scheme D_E at distortion d, and the maximising mu."""
    _require_no_bob_side_info(m)
    if not bob_channel_better(m):
        raise DomainError("requires p_y < p_z")
    _check_d(m, d)
    spec = SearchSpec(d_min(m), 1.0, coarse_points=MU_POINTS, refine_tol=1e-12)
    res = maximize_1d(_prop11_objective(m, d), spec, vectorized=True)
    return Maximum1D(res.argmax, _clamp(float(res.value)))


def prop11_digital_de(m: GaussianModelParams, d: float) -> float:
    return prop11_digital(m, d).value


def prop12_analog_de(m: GaussianModelParams, d: float) -> float:
    """Uncoded scaled transmission X = sqrt(tau) A with tau = P_Y (1/d - 1)."""
    _require_no_bob_side_info(m)
    _check_d(m, d)
    excess = max(0.0, (1.0 / d - 1.0) * m.p_y / m.p_z)
    return _clamp(1.0 / (1.0 + 1.0 / m.p_e + excess))


class HybridBest(NamedTuple):
    coef: HybridGaussCoef
    d: float
    de: float


def _best_load(beta, m: GaussianModelParams, d: float):
    """Smallest admissible rate load at each beta for target distortion d.

    D_E decreases in the load, D <= d needs load >= 1/d - 1 - 1/P_B, and the
    load is a convex quadratic in alpha with minimum s beta^2 / (1 + s gamma^2).
    Returns (load, gamma^2, feasible).
    """
    s = m.snr_y
    gamma2 = 1.0 - beta * beta
    floor = s * beta * beta / (1.0 + s * gamma2)
    load = np.maximum(1.0 / d - 1.0 - m.inv_pb, floor)
    budget = s * (1.0 + gamma2 * m.inv_pb)
    return load, gamma2, load <= budget + RATE_REL_TOL * (1.0 + budget)


def _alpha_for_load(beta: float, load: float, m: GaussianModelParams) -> float:
    # smallest root of (1/gamma^2 + s) a^2 + 2 s beta a + s beta^2 - load = 0
    s = m.snr_y
    gamma2 = 1.0 - beta * beta
    qa = 1.0 / gamma2 + s
    disc = max(0.0, (s * beta) ** 2 - qa * (s * beta * beta - load))
    return (-s * beta - math.sqrt(disc)) / qa


def hybrid_best(m: GaussianModelParams, d: float) -> HybridBest:
    """Largest hybrid-scheme D_E with Bob's distortion at most d."""
    _check_d(m, d)

    def objective(beta):
        load, gamma2, ok = _best_load(np.asarray(beta, dtype=float), m, d)
        return np.where(ok, _hybrid_de(load, gamma2, m), -np.inf)

    spec = SearchSpec(0.0, BETA_MAX, coarse_points=BETA_POINTS, refine_tol=1e-12)
    res = maximize_1d(objective, spec, vectorized=True)
    beta = res.argmax
    load, _, _ = _best_load(np.asarray(beta), m, d)
    coef = HybridGaussCoef(_alpha_for_load(beta, float(load), m), beta)
    point = prop10_hybrid_point(coef, m)
    if point is None:
        raise InfeasibleError(f"no admissible hybrid code at d={d!r}")
    return HybridBest(coef, point.d, point.de)


def hybrid_frontier(
    m: GaussianModelParams, d_grid: Iterable[float], threads: Optional[int] = None
) -> TradeoffCurve:
    """Upper envelope of hybrid (D, D_E) points sampled on ``d_grid``."""
    grid = check_grid(d_grid)
    values = ordered_map(lambda d: hybrid_best(m, d).de, grid, threads)
    envelope = np.maximum.accumulate(np.asarray(values, dtype=float)) if values else []
    return TradeoffCurve("hybrid", grid, tuple(envelope))


def default_d_grid(m: GaussianModelParams, n: int = 200) -> np.ndarray:
    lo = d_min(m) * (1.0 + 1e-9)
    return np.geomspace(lo, 1.0, n)


_POINTWISE = {
    "optimal": theorem4_de,
    "digital": prop11_digital_de,
    "analog": prop12_analog_de,
    "outer": outer_de,
}


def gaussian_sweep(
    m: GaussianModelParams,
    d_grid: Iterable[float],
    schemes: Sequence[str] = ("optimal", "digital", "analog"),
    threads: Optional[int] = None,
) -> dict[str, TradeoffCurve]:
    """D_E versus d for each scheme.  Grid points below a scheme's minimum
    distortion are dropped from that scheme's curve."""
    grid = check_grid(d_grid)
    for s in schemes:
        if s not in GAUSSIAN_SCHEMES:
            raise ValueError(f"unknown gaussian scheme {s!r}")
    feasible = [d for d in grid if d >= d_min(m) * (1.0 - D_REL_TOL)]
    out = {}
    for s in schemes:
        if s == "hybrid":
            out[s] = hybrid_frontier(m, feasible, threads)
        else:
            fn = _POINTWISE[s]
            out[s] = TradeoffCurve(s, feasible, ordered_map(lambda d: fn(m, d), feasible, threads))
    return out
