"""Property checks run by ``wiretap-rde verify``.

Each check returns ``(passed, detail)``.  Sample sizes are kept small enough
that the whole table runs in a few seconds; the pytest suite runs the larger
versions.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import binary_wiretap as bw
from . import gaussian_wiretap as gw
from .info_discrete import (
    FiniteJointPmf,
    conditional_mutual_information as cmi,
    entropy,
    h2,
    h2_inv,
    star,
)
from .info_gaussian import (
    GaussianModelParams,
    HybridGaussCoef,
    conditional_variance,
    lemma_I_V_A,
    lemma_I_X_Z_given_E,
    lemma_var_A_BY,
    lemma_var_V_AY,
    lemma_var_V_BY,
    structural_covariance,
)

CheckFn = Callable[[], tuple[bool, str]]


@dataclass(frozen=True)
class Check:
    name: str
    fn: CheckFn


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


def _worst(label: str, err: float, tol: float) -> tuple[bool, str]:
    return err <= tol, f"{label} max err {err:.3g} (tol {tol:g})"


def _random_pmf(rng: np.random.Generator) -> FiniteJointPmf:
    nvars = int(rng.integers(2, 5))
    shape = tuple(int(k) for k in rng.integers(1, 4, size=nvars))
    mass = rng.random(shape) * (rng.random(shape) > 0.2)
    if mass.sum() == 0:
        mass.flat[0] = 1.0
    return FiniteJointPmf(tuple("XYZW"[:nvars]), mass / mass.sum())


def check_h2_roundtrip():
    xs = np.linspace(0.0, 0.5, 501)
    return _worst("h2_inv(h2(x))", float(np.abs(h2_inv(h2(xs)) - xs).max()), 1e-10)


def check_star_assoc():
    rng = np.random.default_rng(1)
    a, b, c = rng.random((3, 1000))
    err = float(np.abs(star(star(a, b), c) - star(a, star(b, c))).max())
    return _worst("star associativity", err, 1e-14)


def check_chain_rule():
    rng = np.random.default_rng(2)
    worst = 0.0
    for _ in range(50):
        p = _random_pmf(rng)
        if len(p.names) < 3:
            continue
        x, y, z = p.names[:3]
        lhs = cmi(p, x, (y, z))
        rhs = cmi(p, x, z) + cmi(p, x, y, z)
        worst = max(worst, abs(lhs - rhs))
        if cmi(p, x, y, z) < 0 or entropy(p, (x, y)) > entropy(p, x) + entropy(p, y) + 1e-12:
            return False, "negative CMI or subadditivity violated"
    return _worst("chain rule", worst, 1e-10)


def check_gaussian_lemmas():
    rng = np.random.default_rng(3)
    worst = 0.0
    for _ in range(200):
        c = HybridGaussCoef(rng.uniform(-2, 2), rng.uniform(0, 0.99))
        p, py, pz, pb, pe = rng.uniform(0.1, 10, size=5)
        m = GaussianModelParams(p, py, pz, pe, pb)
        g = structural_covariance(c, m)
        pairs = [
            (lemma_I_V_A(c), 0.5 * math.log2(g.var("A") / conditional_variance(g, "A", ["V"]))),
            (lemma_var_V_BY(c, m), conditional_variance(g, "V", ["B", "Y"])),
            (lemma_var_V_AY(c, m), conditional_variance(g, "V", ["A", "Y"])),
            (lemma_var_A_BY(c, m), conditional_variance(g, "A", ["B", "Y"])),
            (
                lemma_I_X_Z_given_E(c, m),
                0.5 * math.log2(conditional_variance(g, "Z", ["E"]) / conditional_variance(g, "Z", ["X", "E"])),
            ),
        ]
        worst = max(worst, max(abs(a - b) for a, b in pairs))
    return _worst("closed form vs Schur", worst, 1e-12)


def check_binary_containment():
    rng = np.random.default_rng(4)
    worst = -math.inf
    for _ in range(10):
        m = bw.BinaryModelParams(rng.uniform(0, 1), rng.uniform(0, 0.5), rng.uniform(0, 0.5))
        o = bw.outer_delta(m)
        worst = max(worst, bw.digital_delta(m) - o, bw.hybrid_delta(m) - o)
    return worst <= 1e-9, f"max inner - outer {worst:.3g}"


def check_binary_separation():
    worst = 0.0
    for beta in np.linspace(0.0, 0.36, 20):
        m = bw.BinaryModelParams(float(beta), 0.1, 0.1)
        worst = max(worst, abs(bw.digital_delta(m) - bw.outer_delta(m)))
    return _worst("|digital - outer| for beta <= 4eps(1-eps)", worst, 1e-6)


def check_binary_hybrid_analog():
    m = bw.BinaryModelParams(1.0, 0.1, 0.1)
    return _worst("hybrid - analog at beta=1", abs(bw.hybrid_delta(m) - bw.analog_delta(m)), 1e-6)


def check_binary_range():
    rng = np.random.default_rng(5)
    for _ in range(10):
        m = bw.BinaryModelParams(rng.uniform(0, 1), rng.uniform(0, 0.5), rng.uniform(0, 0.5))
        top = h2(m.eps) + 1e-12
        for fn in bw.EVALUATORS.values():
            v = fn(m)
            if not -1e-12 <= v <= top:
                return False, f"{fn.__name__}({m}) = {v} outside [0, h2(eps)]"
    return True, "all values in [0, h2(eps)]"


REF_GAUSS = GaussianModelParams(1.0, 0.5, 1.0, 1.0)


def check_gaussian_tightness():
    worst = 0.0
    for d in np.linspace(1 / 3 + 1e-6, 2 / 3 - 1e-6, 20):
        pt = gw.prop10_hybrid_point(gw.alpha_beta_for_target(REF_GAUSS, d), REF_GAUSS)
        if pt is None:
            return False, f"alpha/beta for d={d} violates the rate constraint"
        worst = max(worst, abs(pt.d - d), abs(pt.de - gw.theorem4_de(REF_GAUSS, d)))
    return _worst("hybrid(alpha, beta) vs optimal", worst, 1e-9)


def check_gaussian_endpoints():
    m = REF_GAUSS
    hi = (1 + m.snr_z) / (1 + m.snr_y)
    e1 = max(abs(gw.prop11_digital_de(m, d) - gw.theorem4_de(m, d)) for d in np.linspace(hi, 1, 10))
    dm = gw.d_min(m)
    e2 = abs(gw.prop12_analog_de(m, dm) - gw.theorem4_de(m, dm))
    return _worst("digital (d >= knee) / analog (d = D_min) optimality", max(e1, e2), 1e-9)


def check_gaussian_containment():
    m = REF_GAUSS
    grid = gw.default_d_grid(m, 40)
    worst = -math.inf
    hyb = gw.hybrid_frontier(m, grid, threads=1)
    for d, h in zip(grid, hyb.values):
        opt = gw.theorem4_de(m, d)
        worst = max(worst, h - gw.prop9_outer(m, d), gw.prop11_digital_de(m, d) - opt)
    return worst <= 1e-9, f"max inner - outer {worst:.3g}"


def check_gaussian_monotone():
    m = REF_GAUSS
    grid = gw.default_d_grid(m, 40)
    curves = gw.gaussian_sweep(m, grid, ("optimal", "digital", "analog", "hybrid"), threads=1)
    for name, c in curves.items():
        v = np.asarray(c.values)
        if np.any(np.diff(v) < -1e-12) or v.max() > gw.de_cap(m) + 1e-12:
            return False, f"{name} not nondecreasing or above Var(A|E)"
    return True, "all curves nondecreasing and below Var(A|E)"


def check_de_roundtrip():
    worst = max(abs(gw.delta_from_de(gw.de_from_delta(x)) - x) for x in np.linspace(-3, 3, 61))
    return _worst("D_E <-> Delta", worst, 1e-12)


CHECKS: list[Check] = [
    Check("h2 round-trip", check_h2_roundtrip),
    Check("star associativity", check_star_assoc),
    Check("CMI chain rule / nonnegativity", check_chain_rule),
    Check("Gaussian closed forms vs Schur", check_gaussian_lemmas),
    Check("binary inner within outer", check_binary_containment),
    Check("binary separation regime", check_binary_separation),
    Check("binary hybrid = analog at beta=1", check_binary_hybrid_analog),
    Check("binary values in [0, h2(eps)]", check_binary_range),
    Check("Gaussian hybrid tightness", check_gaussian_tightness),
    Check("Gaussian digital/analog endpoints", check_gaussian_endpoints),
    Check("Gaussian inner within outer", check_gaussian_containment),
    Check("Gaussian monotone curves", check_gaussian_monotone),
    Check("D_E / Delta round-trip", check_de_roundtrip),
]


def run_checks(checks: list[Check] | None = None) -> list[CheckResult]:
    out = []
    for c in CHECKS if checks is None else checks:
        t0 = time.perf_counter()
        try:
            ok, detail = c.fn()
        except Exception as exc:  # a crashing check is a failing check
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        out.append(CheckResult(c.name, bool(ok), detail, time.perf_counter() - t0))
    return out
