import math

import numpy as np
import pytest

from modstar.dedekind import (
    enumerate_farey,
    figure_trace,
    s_values_for_modulus,
    trace_window,
    vardi_gamma,
    vardi_law_check,
    vardi_phi,
    vardi_phi_quadrature,
)
from modstar.specialfn import dedekind_sum_fast


def totient_sieve(n):
    tot = np.arange(n)
    for p in range(2, n):
        if tot[p] == p:  # p prime
            tot[p::p] -= tot[p::p] // p
    return tot


def test_farey_small_sets():
    assert enumerate_farey(3).pairs == ((2, 1),)
    f5 = enumerate_farey(5)
    assert f5.pairs == ((2, 1), (3, 1), (3, 2), (4, 1), (4, 3))
    assert f5.size == 5


def test_farey_cardinality_against_totient_sieve():
    tot = totient_sieve(100)
    assert enumerate_farey(100).size == int(np.sum(tot[2:100]))


def test_farey_closed_under_mirror():
    pairs = set(enumerate_farey(60).pairs)
    assert all((c, c - d) in pairs for c, d in pairs)


def test_farey_validation():
    with pytest.raises(ValueError):
        enumerate_farey(1)


def test_s_values_match_direct_computation():
    for c in (2, 3, 4, 5, 12, 13, 101):
        expected = np.array([float(dedekind_sum_fast(d, c))
                             for d in range(1, c) if math.gcd(c, d) == 1])
        assert np.array_equal(s_values_for_modulus(c), expected)


def test_vardi_gamma_values():
    assert vardi_gamma(4) == 0.0
    assert abs(vardi_gamma(4.0 * math.e**2) - 1.0 / math.pi) < 1e-15
    t = math.pi
    assert abs(math.exp(-t * vardi_gamma(5000)) - (5000.0 / 4.0) ** (-t / (2 * math.pi))) < 1e-14


def test_figure_trace_single_pair():
    # F_3 = {(2,1)} and s(1,2) = 0, so the trace is the bare renormalizer
    t = 1.2345
    tr = figure_trace(t, 3, 1)
    assert math.isnan(tr.rows[0][1])  # F_2 is empty
    assert tr.rows[1] == (3, math.exp(vardi_gamma(3) * t))


def test_figure_trace_incremental_equals_scratch():
    t = math.pi / 2.0
    tr = figure_trace(t, 300, 7)
    for n, value in tr.rows:
        re, count = 0.0, 0
        for c in range(2, n):
            sv = s_values_for_modulus(c)
            re += float(np.sum(np.cos(t * sv)))
            count += sv.size
        if count == 0:
            assert math.isnan(value)
        else:
            assert value == math.exp(vardi_gamma(n) * t) * re / count


def test_figure_trace_imaginary_part_cancels():
    for t in (math.pi / 2.0, 2.0):
        assert figure_trace(t, 200).imag_max < 1e-12


def test_figure_trace_validation():
    with pytest.raises(ValueError):
        figure_trace(0.0, 100)
    with pytest.raises(ValueError):
        figure_trace(1.0, 1)
    with pytest.raises(ValueError):
        figure_trace(1.0, 100, 0)


def test_trace_windows():
    assert trace_window(1.0) == "convergent"
    assert trace_window(-4.0) == "convergent"
    assert trace_window(4.5) == "theorem-only"
    assert trace_window(7.0) == "exploratory"
    assert figure_trace(4.0 * math.pi, 50).window == "exploratory"


def test_law_check_single_pair():
    # single atom at 0 against the Cauchy law
    assert vardi_law_check(3) == 0.5


def test_law_check_validation():
    with pytest.raises(ValueError):
        vardi_law_check(2)


def test_phi_at_zero_is_exactly_one():
    value, err = vardi_phi(0.0, 1000, 0)
    assert value == 1.0 and err == 0.0


def test_phi_even_bit_for_bit():
    assert vardi_phi(1.0, 20000, 42, 4) == vardi_phi(-1.0, 20000, 42, 4)


def test_phi_deterministic_per_chunk_count():
    a = vardi_phi(1.0, 20000, 42, 4)
    assert vardi_phi(1.0, 20000, 42, 4) == a
    b = vardi_phi(1.0, 20000, 42, 1)
    assert b != a  # chunk count is part of the contract
    assert abs(a[0] - b[0]) < 4.0 * (a[1] + b[1])


def test_phi_two_seeds_consistent():
    p1 = vardi_phi(math.pi / 2.0, 200000, 1, 8)
    p2 = vardi_phi(math.pi / 2.0, 200000, 2, 8)
    assert abs(p1[0] - p2[0]) <= 3.0 * math.hypot(p1[1], p2[1])


def test_phi_matches_quadrature():
    mc, err = vardi_phi(math.pi / 2.0, 200000, 3, 8)
    quad = vardi_phi_quadrature(math.pi / 2.0)
    assert abs(mc - quad) <= 4.0 * err


def test_phi_pole_validation():
    with pytest.raises(ValueError, match="pole"):
        vardi_phi(4.0 * math.pi, 1000, 0)
    with pytest.raises(ValueError, match="pole"):
        vardi_phi_quadrature(-13.0)
