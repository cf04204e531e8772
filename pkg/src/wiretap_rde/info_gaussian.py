"""Jointly Gaussian information quantities for the hybrid Gaussian scheme.

The source is A ~ N(0,1); side informations B = A + N_B, E = A + N_E; the
wiretap channel outputs Y = X + N_Y, Z = X + N_Z.  The hybrid code uses

    V = alpha*A + gamma*N,        X = (beta*A - gamma*N) * sqrt(P),

with N ~ N(0,1) independent of A and gamma = sqrt(1 - beta^2).

Closed forms below are paired with ``structural_covariance``, which builds the
joint covariance directly from those equations so every closed form can be
checked against a Schur complement.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import DomainError, SingularityError

PSD_REL_TOL = 1e-10
SYM_TOL = 1e-12
SINGULAR_REL_TOL = 1e-12


@dataclass(frozen=True)
class GaussianModelParams:
    """Input power and noise powers.  ``p_b=None`` means Bob has no side info."""

    p: float
    p_y: float
    p_z: float
    p_e: float
    p_b: Optional[float] = None

    def __post_init__(self):
        for name in ("p", "p_y", "p_z", "p_e"):
            v = getattr(self, name)
            if not (math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be finite and > 0, got {v!r}")
        if self.p_b is not None and not (math.isfinite(self.p_b) and self.p_b > 0):
            raise DomainError(f"p_b must be finite and > 0 or None, got {self.p_b!r}")

    @property
    def has_bob_side_info(self) -> bool:
        return self.p_b is not None

    @property
    def inv_pb(self) -> float:
        """1/P_B, with the absent-side-information limit 0."""
        return 0.0 if self.p_b is None else 1.0 / self.p_b

    @property
    def snr_y(self) -> float:
        return self.p / self.p_y

    @property
    def snr_z(self) -> float:
        return self.p / self.p_z


@dataclass(frozen=True)
class HybridGaussCoef:
    alpha: float
    beta: float
    gamma: float = field(init=False)

    def __post_init__(self):
        if not math.isfinite(self.alpha):
            raise DomainError(f"alpha must be finite, got {self.alpha!r}")
        if not 0.0 <= self.beta < 1.0:
            raise DomainError(f"beta must lie in [0, 1), got {self.beta!r}")
        object.__setattr__(self, "gamma", math.sqrt(1.0 - self.beta * self.beta))


@dataclass(frozen=True)
class CovMatrix:
    labels: tuple[str, ...]
    entries: np.ndarray

    def __post_init__(self):
        labels = tuple(self.labels)
        g = np.array(self.entries, dtype=float)
        if g.ndim != 2 or g.shape[0] != g.shape[1] or g.shape[0] != len(labels):
            raise DomainError(f"{len(labels)} labels for a matrix of shape {g.shape}")
        if len(set(labels)) != len(labels):
            raise DomainError(f"duplicate labels {labels}")
        if not np.allclose(g, g.T, rtol=0.0, atol=SYM_TOL * max(1.0, np.abs(g).max())):
            raise DomainError("covariance matrix is not symmetric")
        g = 0.5 * (g + g.T)
        if g.size and np.linalg.eigvalsh(g).min() < -PSD_REL_TOL * max(np.trace(g), 1e-300):
            raise DomainError("covariance matrix is not positive semidefinite")
        g.setflags(write=False)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "entries", g)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, names: Sequence[str]) -> list[int]:
        try:
            return [self.labels.index(n) for n in names]
        except ValueError:
            raise DomainError(f"unknown label in {list(names)}; have {self.labels}") from None

    def sub(self, names: Sequence[str]) -> "CovMatrix":
        idx = self.index(names)
        return CovMatrix(tuple(names), self.entries[np.ix_(idx, idx)])

    def var(self, name: str) -> float:
        i = self.labels.index(name)
        return float(self.entries[i, i])


def conditional_covariance(g: CovMatrix, target: Sequence[str], given: Sequence[str]) -> CovMatrix:
    """Covariance of ``target`` given ``given``: the Schur complement A - C B^-1 C^T."""
    target, given = list(target), list(given)
    if set(target) & set(given):
        raise DomainError(f"target {target} and given {given} overlap")
    ti, gi = g.index(target), g.index(given)
    a = g.entries[np.ix_(ti, ti)]
    if not gi:
        return CovMatrix(tuple(target), a)
    b = g.entries[np.ix_(gi, gi)]
    c = g.entries[np.ix_(ti, gi)]
    scale = max(np.trace(b), 1e-300)
    if np.linalg.eigvalsh(b).min() <= SINGULAR_REL_TOL * scale:
        raise SingularityError(f"conditioning block on {given} is singular")
    out = a - c @ np.linalg.solve(b, c.T)
    out = 0.5 * (out + out.T)
    # clip tiny negative diagonal round-off
    d = np.diag(out).copy()
    tol = PSD_REL_TOL * max(np.trace(a), 1e-300)
    if np.any(d < -tol):
        raise ArithmeticError("conditional covariance lost positive semidefiniteness")
    np.fill_diagonal(out, np.maximum(d, 0.0))
    return CovMatrix(tuple(target), out)


def conditional_variance(g: CovMatrix, target: str, given: Sequence[str]) -> float:
    return float(conditional_covariance(g, [target], given).entries[0, 0])


def gaussian_entropy(variance: float) -> float:
    """Differential entropy 0.5*log2(2*pi*e*variance) in bits."""
    if not variance > 0:
        raise DomainError(f"variance must be > 0, got {variance!r}")
    return 0.5 * math.log2(2.0 * math.pi * math.e * variance)


def structural_covariance(c: HybridGaussCoef, m: GaussianModelParams) -> CovMatrix:
    """Joint covariance of (A, V, X, Y, Z, E[, B]) built from the scheme's equations.

    Each variable is written as a linear map of the independent unit-variance
    sources (A, N, N_Y, N_Z, N_E, N_B); the covariance is M M^T.
    """
    sp = math.sqrt(m.p)
    #            A              N                N_Y              N_Z              N_E               N_B
    rows = {
        "A": [1.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        "V": [c.alpha, c.gamma, 0.0, 0.0, 0.0, 0.0],
        "X": [c.beta * sp, -c.gamma * sp, 0.0, 0.0, 0.0, 0.0],
        "Y": [c.beta * sp, -c.gamma * sp, math.sqrt(m.p_y), 0.0, 0.0, 0.0],
        "Z": [c.beta * sp, -c.gamma * sp, 0.0, math.sqrt(m.p_z), 0.0, 0.0],
        "E": [1.0, 0.0, 0.0, 0.0, math.sqrt(m.p_e), 0.0],
    }
    if m.p_b is not None:
        rows["B"] = [1.0, 0.0, 0.0, 0.0, 0.0, math.sqrt(m.p_b)]
    mat = np.array(list(rows.values()))
    return CovMatrix(tuple(rows), mat @ mat.T)


def _check_gamma(c: HybridGaussCoef):
    if not c.gamma > 0:
        raise DomainError("degenerate coefficients: gamma must be > 0")


def lemma_I_V_A(c: HybridGaussCoef) -> float:
    """I(V;A) = 0.5*log2(1 + alpha^2/gamma^2)."""
    _check_gamma(c)
    return 0.5 * math.log2(1.0 + c.alpha**2 / c.gamma**2)


def _rate_load(c: HybridGaussCoef, m: GaussianModelParams) -> float:
    # alpha^2/gamma^2 + (P/P_Y)(alpha+beta)^2, recurring in every closed form
    return c.alpha**2 / c.gamma**2 + m.snr_y * (c.alpha + c.beta) ** 2


def lemma_var_V_BY(c: HybridGaussCoef, m: GaussianModelParams) -> float:
    """Var(V | B, Y); with no side information at Bob this is Var(V | Y)."""
    _check_gamma(c)
    ib = m.inv_pb
    num = 1.0 + ib + _rate_load(c, m)
    den = 1.0 + ib + m.snr_y * (1.0 + c.gamma**2 * ib)
    return c.gamma**2 * num / den


def lemma_var_V_AY(c: HybridGaussCoef, m: GaussianModelParams) -> float:
    """Var(V | A, Y) = gamma^2 / (1 + gamma^2 P/P_Y)."""
    return c.gamma**2 / (1.0 + c.gamma**2 * m.snr_y)


def lemma_var_A_BY(c: HybridGaussCoef, m: GaussianModelParams) -> float:
    """Var(A | B, Y); with no side information at Bob this is Var(A | Y)."""
    ib = m.inv_pb
    return (1.0 + c.gamma**2 * m.snr_y) / (1.0 + ib + m.snr_y * (1.0 + c.gamma**2 * ib))


def lemma_I_X_Z_given_E(c: HybridGaussCoef, m: GaussianModelParams) -> float:
    """I(X; Z | E) in bits."""
    ie = 1.0 / m.p_e
    num = 1.0 + ie + m.snr_z * (1.0 + c.gamma**2 * ie)
    return 0.5 * math.log2(num / (1.0 + ie))


def mi_v_by(c: HybridGaussCoef, m: GaussianModelParams) -> float:
    """I(V; B, Y) = 0.5*log2(Var(V) / Var(V|B,Y))."""
    return 0.5 * math.log2((c.alpha**2 + c.gamma**2) / lemma_var_V_BY(c, m))


def mi_v_az(c: HybridGaussCoef, m: GaussianModelParams) -> float:
    """I(V; A, Z) = 0.5*log2((1 + alpha^2/gamma^2)(1 + gamma^2 P/P_Z))."""
    _check_gamma(c)
    return 0.5 * math.log2((1.0 + c.alpha**2 / c.gamma**2) * (1.0 + c.gamma**2 * m.snr_z))


def mmse_a_vby(c: HybridGaussCoef, m: GaussianModelParams) -> float:
    """Bob's MMSE Var(A | V, B, Y) = Var(A|BY) Var(V|AY) / Var(V|BY)."""
    return lemma_var_A_BY(c, m) * lemma_var_V_AY(c, m) / lemma_var_V_BY(c, m)
