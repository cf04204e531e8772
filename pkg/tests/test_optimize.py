import math

import numpy as np
import pytest

from wiretap_rde.errors import InfeasibleError
from wiretap_rde.optimize import SearchSpec, golden_section_max, maximize_1d, maximize_2d


def test_spec_validation():
    with pytest.raises(ValueError):
        SearchSpec(1.0, 0.0)
    with pytest.raises(ValueError):
        SearchSpec(0.0, 1.0, refine_tol=0.0)
    with pytest.raises(ValueError):
        SearchSpec(0.0, 1.0, coarse_points=1)


def test_quadratic_1d():
    res = maximize_1d(lambda x: -(x - 0.3) ** 2, SearchSpec(0.0, 1.0, coarse_points=11))
    assert res.argmax == pytest.approx(0.3, abs=1e-8)
    assert res.value == pytest.approx(0.0, abs=1e-15)


def test_off_grid_optimum_refined():
    spec = SearchSpec(0.0, 1.0, coarse_points=7)
    res = maximize_1d(lambda x: -(x - 1 / math.pi) ** 2, spec)
    assert res.argmax == pytest.approx(1 / math.pi, abs=1e-8)


def test_constant_ties_to_smallest():
    res = maximize_1d(lambda x: 2.5, SearchSpec(-1.0, 1.0))
    assert res == (-1.0, 2.5)


def test_vectorized_matches_scalar():
    f = lambda x: np.sin(3 * np.asarray(x)) - 0.1 * np.asarray(x)  # noqa: E731
    spec = SearchSpec(0.0, 3.0, coarse_points=301)
    a = maximize_1d(f, spec, vectorized=True)
    b = maximize_1d(lambda x: float(f(x)), spec)
    assert a == b


def test_infeasible_regions():
    f = lambda x: None if x < 0.5 else -x  # noqa: E731
    res = maximize_1d(f, SearchSpec(0.0, 1.0, coarse_points=11))
    assert res.argmax == pytest.approx(0.5)
    g = lambda x: np.where(np.asarray(x) > 0.8, np.nan, np.asarray(x))  # noqa: E731
    assert maximize_1d(g, SearchSpec(0.0, 1.0), vectorized=True).value <= 0.8
    with pytest.raises(InfeasibleError):
        maximize_1d(lambda x: None, SearchSpec(0.0, 1.0, coarse_points=5))


def test_refinement_never_loses_incumbent():
    rng = np.random.default_rng(3)
    for _ in range(20):
        c = rng.normal(size=6)
        f = lambda x: float(np.polyval(c, x))  # noqa: E731
        spec = SearchSpec(-1.0, 1.0, coarse_points=51)
        res = maximize_1d(f, spec)
        assert res.value >= max(f(x) for x in spec.grid()) - 1e-12


def test_golden_kinked():
    x, fx = golden_section_max(lambda t: -abs(t - 0.123), 0.0, 1.0, tol=1e-10)
    assert x == pytest.approx(0.123, abs=1e-9)


def test_separable_quadratic_2d():
    f = lambda x, y: -(x - 0.2) ** 2 - 2 * (y + 0.35) ** 2  # noqa: E731
    res = maximize_2d(f, SearchSpec(0, 1, coarse_points=21), SearchSpec(-1, 1, coarse_points=21))
    assert res.argmax[0] == pytest.approx(0.2, abs=1e-8)
    assert res.argmax[1] == pytest.approx(-0.35, abs=1e-8)


def test_plateau_2d_lexicographic():
    f = lambda x, y: np.minimum(0.0, 0.5 - np.asarray(x)) * 0 + 1.0  # noqa: E731
    res = maximize_2d(f, SearchSpec(0, 1, coarse_points=5), SearchSpec(2, 3, coarse_points=5), vectorized=True)
    assert res.argmax == (0.0, 2.0)


def test_deterministic():
    f = lambda x, y: np.cos(5 * x) * np.sin(4 * y)  # noqa: E731
    s = SearchSpec(0, 2, coarse_points=41)
    assert maximize_2d(f, s, s, vectorized=True) == maximize_2d(f, s, s, vectorized=True)


def test_grid_stability():
    f = lambda x: np.sin(7 * np.asarray(x)) * np.exp(-np.asarray(x))  # noqa: E731
    coarse = maximize_1d(f, SearchSpec(0, 4, coarse_points=101, refine_tol=1e-10), vectorized=True)
    fine = maximize_1d(f, SearchSpec(0, 4, coarse_points=202, refine_tol=1e-10), vectorized=True)
    assert fine.value >= coarse.value - 1e-10
