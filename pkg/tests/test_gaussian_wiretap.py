import math

import numpy as np
import pytest

from wiretap_rde import gaussian_wiretap as gw
from wiretap_rde.errors import DomainError, InfeasibleError
from wiretap_rde.info_gaussian import GaussianModelParams, HybridGaussCoef

REF_GAUSS = GaussianModelParams(1.0, 0.5, 1.0, 1.0)
TWO_MINUS_SQRT3 = 0.267949192431122706  # mpmath


def test_de_delta_roundtrip():
    for x in np.linspace(-2, 2, 21):
        assert gw.delta_from_de(gw.de_from_delta(x)) == pytest.approx(x, abs=1e-12)
    with pytest.raises(DomainError):
        gw.delta_from_de(0.0)


def test_d_min_and_cap():
    assert gw.d_min(REF_GAUSS) == pytest.approx(1 / 3)
    assert gw.d_min(GaussianModelParams(1, 0.5, 1, 2, p_b=1)) == pytest.approx(1 / 6)
    assert gw.de_cap(REF_GAUSS) == pytest.approx(0.5)


def test_prop7_examples():
    m = GaussianModelParams(1.0, 0.5, 1.0, 2.0, p_b=1.0)
    assert gw.prop7_region(m, 1.0) == pytest.approx(2 / 3)
    assert gw.prop7_region(m, 1 / 6) == pytest.approx(1 / 3)
    flipped = GaussianModelParams(1.0, 1.0, 0.5, 2.0, p_b=1.0)
    d0 = gw.d_min(flipped)
    vals = [gw.prop7_region(flipped, d) for d in (d0, 1.5 * d0)]
    assert vals[1] == pytest.approx(1.5 * vals[0])
    with pytest.raises(InfeasibleError):
        gw.prop7_region(m, 0.1)
    with pytest.raises(DomainError):
        gw.prop7_region(REF_GAUSS, 0.5)


def test_prop8_formula():
    rng = np.random.default_rng(31)
    for _ in range(50):
        pe = rng.uniform(0.1, 5)
        pz = rng.uniform(0.1, 5)
        m = GaussianModelParams(rng.uniform(0.1, 5), pz + rng.uniform(0, 5), pz, pe, pe + rng.uniform(0.01, 5))
        d = rng.uniform(gw.d_min(m), 1.0)
        ref = min(1 / (1 + 1 / m.p_e), 1 / (1 / d + 1 / m.p_e - 1 / m.p_b))
        assert gw.prop8_region(m, d) == pytest.approx(ref, abs=1e-14)
    with pytest.raises(DomainError):
        gw.prop8_region(REF_GAUSS, 0.5)


def test_prop8_absent_pb_is_cap_at_d1():
    m = GaussianModelParams(1.0, 2.0, 1.0, 1.0)
    assert gw.prop8_region(m, 1.0) == pytest.approx(gw.de_cap(m))


def test_prop9_limit_is_theorem4():
    for d in np.linspace(1 / 3, 1, 15):
        big = GaussianModelParams(1.0, 0.5, 1.0, 1.0, p_b=1e13)
        assert gw.prop9_outer(big, d) == pytest.approx(gw.theorem4_de(REF_GAUSS, d), abs=1e-10)
        assert gw.prop9_outer(REF_GAUSS, d) == pytest.approx(gw.theorem4_de(REF_GAUSS, d), abs=1e-15)


def test_prop9_monotone():
    m = GaussianModelParams(2.0, 0.4, 1.5, 1.0, p_b=3.0)
    v = [gw.prop9_outer(m, d) for d in np.linspace(gw.d_min(m), 1, 50)]
    assert np.all(np.diff(v) >= -1e-15)


def test_outer_dispatch():
    assert gw.outer_de(GaussianModelParams(1, 0.5, 1, 2, p_b=1), 0.5) == gw.prop7_region(
        GaussianModelParams(1, 0.5, 1, 2, p_b=1), 0.5
    )
    tie = GaussianModelParams(1, 1.0, 1.0, 1.0)
    assert gw.outer_de(tie, 0.7) == gw.prop8_region(tie, 0.7)


def test_prop10_trivial_code():
    pt = gw.prop10_hybrid_point(HybridGaussCoef(0.0, 0.0), REF_GAUSS)
    assert pt.d == pytest.approx(1.0)
    # gamma = 1: eve = 1/(1 + 1 + 1*(1+1)) = 1/4, bob term = min(1+2, 1+1) -> de = 1/2
    assert pt.de == pytest.approx(0.5)


def test_prop10_three_sevenths():
    pt = gw.prop10_hybrid_point(gw.alpha_beta_for_target(REF_GAUSS, 0.5), REF_GAUSS)
    assert pt.d == pytest.approx(0.5, abs=1e-9)
    assert pt.de == pytest.approx(3 / 7, abs=1e-9)


def test_prop10_rate_violation():
    assert gw.prop10_hybrid_point(HybridGaussCoef(3.0, 0.5), REF_GAUSS) is None


@pytest.mark.parametrize("d", np.linspace(1 / 3 + 1e-6, 2 / 3 - 1e-6, 7))
def test_alpha_beta_identities(d):
    c = gw.alpha_beta_for_target(REF_GAUSS, d)
    s_y, s_z = REF_GAUSS.snr_y, REF_GAUSS.snr_z
    assert 1 + c.gamma**2 * s_z == pytest.approx(d * (1 + s_y), abs=1e-10)
    assert 1 + c.alpha**2 / c.gamma**2 + s_y * (c.alpha + c.beta) ** 2 == pytest.approx(1 / d, abs=1e-10)
    assert -5 <= c.alpha <= 5


def test_alpha_beta_rejects_endpoints():
    with pytest.raises(InfeasibleError):
        gw.alpha_beta_for_target(REF_GAUSS, 1 / 3)
    with pytest.raises(InfeasibleError):
        gw.alpha_beta_for_target(REF_GAUSS, 2 / 3)
    with pytest.raises(DomainError):
        gw.alpha_beta_for_target(GaussianModelParams(1, 0.5, 1, 1, p_b=2), 0.5)


def test_theorem4_values():
    assert gw.theorem4_de(REF_GAUSS, 0.5) == pytest.approx(3 / 7, abs=1e-12)
    assert gw.theorem4_de(REF_GAUSS, 1.0) == pytest.approx(0.5)
    with pytest.raises(InfeasibleError):
        gw.theorem4_de(REF_GAUSS, 0.3)
    with pytest.raises(DomainError):
        gw.theorem4_de(GaussianModelParams(1, 1, 0.5, 1), 0.7)


def test_prop11_one_third():
    r = gw.prop11_digital(REF_GAUSS, 1 / 3)
    assert r.value == pytest.approx(TWO_MINUS_SQRT3, abs=1e-9)
    assert r.argmax == pytest.approx(1 / math.sqrt(3), abs=1e-5)


def test_prop11_optimal_above_knee():
    for d in (2 / 3, 0.8, 1.0):
        assert gw.prop11_digital_de(REF_GAUSS, d) == pytest.approx(gw.theorem4_de(REF_GAUSS, d), abs=1e-9)


def test_prop12_values():
    assert gw.prop12_analog_de(REF_GAUSS, 1 / 3) == pytest.approx(1 / 3, abs=1e-12)
    assert gw.prop12_analog_de(REF_GAUSS, 1.0) == pytest.approx(0.5)
    d = 0.5
    ref = 1 / (1 + 1 + (1 / d - 1) * 0.5)
    assert gw.prop12_analog_de(REF_GAUSS, d) == pytest.approx(ref)


def brute_hybrid(m, d, n=600):
    alpha = np.linspace(-3, 3, n)[:, None]
    beta = np.linspace(0, 0.999, n)[None, :]
    g2 = 1 - beta**2
    load = alpha**2 / g2 + m.snr_y * (alpha + beta) ** 2
    ok = (1 / (1 + m.inv_pb + load) <= d) & (load <= m.snr_y * (1 + g2 * m.inv_pb))
    de = gw._hybrid_de(load, g2, m)
    return float(np.where(ok, de, -np.inf).max())


@pytest.mark.parametrize("m", [REF_GAUSS, GaussianModelParams(2.0, 0.7, 1.5, 0.8, p_b=3.0)])
def test_hybrid_best_vs_grid(m):
    for d in np.linspace(gw.d_min(m) * 1.05, 0.95, 5):
        got = gw.hybrid_best(m, d)
        assert got.d <= d * (1 + 1e-9)
        ref = brute_hybrid(m, d)
        assert got.de >= ref - 1e-9
        assert got.de <= ref + 2e-3


def test_hybrid_frontier_matches_theorem4():
    grid = gw.default_d_grid(REF_GAUSS, 60)
    curve = gw.hybrid_frontier(REF_GAUSS, grid, threads=2)
    err = max(abs(v - gw.theorem4_de(REF_GAUSS, d)) for d, v in zip(grid, curve.values))
    assert err <= 1e-6
    assert curve.values[0] == pytest.approx(gw.prop12_analog_de(REF_GAUSS, grid[0]), abs=1e-6)


def test_finite_pb_frontier_below_outer():
    m = GaussianModelParams(1.0, 0.5, 1.0, 1.0, p_b=4.0)
    grid = gw.default_d_grid(m, 30)
    curve = gw.hybrid_frontier(m, grid, threads=1)
    for d, v in zip(grid, curve.values):
        assert v <= gw.prop9_outer(m, d) + 1e-9


def test_sweep_drops_infeasible_points():
    curves = gw.gaussian_sweep(REF_GAUSS, [0.2, 0.5, 0.9], ("optimal", "analog"), threads=1)
    assert curves["optimal"].xs == (0.5, 0.9)
    with pytest.raises(ValueError):
        gw.gaussian_sweep(REF_GAUSS, [0.5], ("nope",))


def test_sweep_monotone_and_capped():
    grid = gw.default_d_grid(REF_GAUSS, 40)
    curves = gw.gaussian_sweep(REF_GAUSS, grid, ("optimal", "digital", "analog", "hybrid"), threads=2)
    for c in curves.values():
        v = np.asarray(c.values)
        assert np.all(np.diff(v) >= -1e-12)
        assert v.max() <= gw.de_cap(REF_GAUSS) + 1e-12
