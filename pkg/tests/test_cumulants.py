import math
import random
from fractions import Fraction

import numpy as np
import pytest

from modstar.charfn import LambdaGrid
from modstar.cumulants import (
    BaseLaw,
    cum1_lhs,
    cum1_limit,
    cum1_trace,
    cumulants_to_moments,
    gaussian_moment,
    moments_to_cumulants,
)


def test_gaussian_moments_to_cumulants():
    assert moments_to_cumulants([1, 0, 1, 0, 3]) == [0, 1, 0, 0]


def test_two_point_fourth_cumulant():
    # c4 = mu4 - 3 mu2^2 = 1 - 3
    assert moments_to_cumulants([1, 0, 1, 0, 1]) == [0, 1, 0, -2]


def test_poisson_variance_identity():
    g = Fraction(7, 3)
    assert moments_to_cumulants([1, g, g * g + g]) == [g, g]


def test_moment_sequence_validation():
    with pytest.raises(ValueError):
        moments_to_cumulants([0, 1])
    with pytest.raises(ValueError):
        moments_to_cumulants([])


def test_roundtrip_exact_on_random_rationals():
    rng = random.Random(0)
    for _ in range(300):
        m = [1] + [Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                   for _ in range(rng.randint(1, 7))]
        assert cumulants_to_moments(moments_to_cumulants(m)) == m


@pytest.mark.parametrize("j,value", [(0, 1), (1, 0), (2, 1), (3, 0), (4, 3), (6, 15)])
def test_gaussian_moment_values(j, value):
    assert gaussian_moment(j) == value


def test_base_law_two_point_moments():
    base = BaseLaw.two_point()
    assert base.moments(4) == [1.0, 0.0, 1.0, 0.0, 1.0]
    assert base.cumulant(4) == -2.0
    assert base.cf(0.0) == 1.0
    assert abs(base.cf(1.3) - math.cos(1.3)) < 1e-15


def test_cum1_lhs_at_zero():
    assert cum1_lhs(BaseLaw.two_point(), 3, 12345, 0.0) == 1.0


@pytest.mark.parametrize("lam", [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0])
@pytest.mark.parametrize("n", [10**4, 10**5, 10**6])
def test_cum1_convergence_rate(lam, n):
    # deterministic rate bound: |lhs - limit| <= 3 lam^6/(45 sqrt(n)) + 1e-9
    lhs = cum1_lhs(BaseLaw.two_point(), 3, n, lam)
    lim = cum1_limit(3, -2.0, lam)
    assert abs(lhs - lim) <= 3.0 * lam**6 / (45.0 * math.sqrt(n)) + 1e-9


def test_cum1_limit_values():
    assert abs(cum1_limit(3, -2.0, 1.0) - math.exp(-1.0 / 12.0)) < 1e-15
    assert cum1_limit(4, 0.7, 0.0) == 1.0
    v = cum1_limit(2, 1.0, 1.0)
    assert abs(v - np.exp(-1j / 6.0)) < 1e-15
    assert abs(abs(v) - 1.0) < 1e-15


def test_cum1_limit_conjugate_symmetry():
    for k, c in ((2, 1.0), (3, -2.0), (4, 0.3)):
        for lam in (0.4, 1.1, 2.7):
            assert cum1_limit(k, c, -lam) == cum1_limit(k, c, lam).conjugate()


def test_scaling_covariance():
    # multiplying the base law by a scales c_{k+1} by a^{k+1}, and the limit
    # absorbs the scale: limit(k, c a^{k+1}, lam) = limit(k, c, a lam)
    a = 1.7
    scaled = BaseLaw.two_point().scaled(a)
    assert abs(scaled.cumulant(4) - (-2.0) * a**4) < 1e-10
    for lam in (0.4, 0.9):
        assert abs(cum1_limit(3, -2.0 * a**4, lam)
                   - cum1_limit(3, -2.0, a * lam)) < 1e-15


def test_moment_matching_diagnostic():
    with pytest.raises(ValueError, match="first violated moment is 2"):
        cum1_lhs(BaseLaw.two_point(2.0), 3, 10, 1.0)


def test_vanishing_cf_refused():
    class Flat:
        def check_gaussian_moments(self, k, tol=1e-12):
            return None

        def cf(self, lam):
            return 0j

    with pytest.raises(ValueError, match="principal log undefined"):
        cum1_lhs(Flat(), 3, 10, 1.0)


def test_cum1_parameter_validation():
    with pytest.raises(ValueError):
        cum1_lhs(BaseLaw.two_point(), 1, 10, 0.5)
    with pytest.raises(ValueError):
        cum1_lhs(BaseLaw.two_point(), 3, 0, 0.5)


def test_cum1_trace_matches_pointwise_and_is_hermitian():
    base = BaseLaw.two_point()
    grid = LambdaGrid(np.linspace(-2.0, 2.0, 41))
    tr = cum1_trace(base, 3, 10**6, grid)
    assert tr.hermitian_defect() < 1e-12
    for lam in (-2.0, -0.5, 0.0, 1.0):
        assert tr.value_at(lam) == cum1_lhs(base, 3, 10**6, lam)
