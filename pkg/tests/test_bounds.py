import math

import numpy as np
import pytest

from pyfabgupta.bounds import (
    C_THRESHOLD,
    LOWER_EXPONENT,
    BoundParams,
    F_upper,
    binom_real,
    bounds_overlay,
    bounds_report,
    check_concave_majorant,
    compute_M,
    concave_majorant,
    f_lf,
    f_lf_refactored,
    find_N,
    induction_lhs,
    lambda_fn,
    log_F_second_derivative,
    log_F_upper,
    lower_bound,
    p_poly,
    step_delta,
    w_greater_bound,
    w_less_bound,
)
from pyfabgupta.errors import BoundsError, DomainError
from pyfabgupta.metric_enum import GrowthSeries


def test_params_validation():
    p = BoundParams()
    assert p.dm == 27
    assert p.c == C_THRESHOLD
    assert p.to_dict()["c"] == C_THRESHOLD
    with pytest.raises(DomainError):
        BoundParams(d=1)
    with pytest.raises(DomainError):
        BoundParams(m=0)
    with pytest.raises(DomainError):
        BoundParams(A=-1.0)


def test_lambda():
    n = 1e6
    assert lambda_fn(n) == pytest.approx(n * math.log(math.log(n)) / math.log(n))
    with pytest.raises(DomainError):
        lambda_fn(2.0)


# ---------------------------------------------------------------------------
# f and the search for N
# ---------------------------------------------------------------------------

def test_f_value_at_one_billion():
    assert f_lf(1e9, BoundParams()) == pytest.approx(0.905, abs=5e-3)


def test_f_codings_agree():
    p = BoundParams()
    for n in (1e6, 1e9, 1e12):
        assert f_lf_refactored(n, p) == pytest.approx(f_lf(n, p), rel=1e-12)


def test_f_undefined_for_small_n():
    with pytest.raises(DomainError):
        f_lf(50, BoundParams())
    with pytest.raises(DomainError):
        f_lf_refactored(10, BoundParams(m=1))


def test_find_N():
    p3 = find_N(BoundParams(m=3))
    p1 = find_N(BoundParams(m=1))
    assert p1.N < p3.N
    assert f_lf(p3.N, BoundParams(m=3)) <= 1 < f_lf(p3.N - 1, BoundParams(m=3))
    assert p3.limit == 1e12
    assert "log-spaced" in p3.policy


def test_find_N_rejects_small_limits():
    with pytest.raises(DomainError):
        find_N(BoundParams(), limit=100)


def test_find_N_fails_when_f_is_undefined_up_to_the_limit():
    # d^m = 10^6: f is only defined from n of order 10^6
    with pytest.raises(BoundsError):
        find_N(BoundParams(d=10, m=6), limit=1e5)


# ---------------------------------------------------------------------------
# Concave majorant
# ---------------------------------------------------------------------------

def test_concave_majorant_of_subexponential_samples():
    samples = {float(n): math.sqrt(n) for n in range(1, 201)}
    g = concave_majorant(samples, log_values=True)
    assert g.breakpoints[0] == 1.0
    assert g.deltas[0] == 0.0
    assert all(a > b for a, b in zip(g.eps, g.eps[1:]))
    assert check_concave_majorant(g, samples, tuples=50, seed=3) == []


def test_concave_majorant_of_F_up_to_a_million():
    samples = {
        float(n): n * math.log(math.log(n)) ** 2 / math.log(n)
        for n in np.geomspace(3.0, 1e6, 3000)
    }
    g = concave_majorant(samples, log_values=True)
    assert check_concave_majorant(g, samples) == []


def test_concave_majorant_from_plain_values():
    samples = {float(n): math.exp(n ** 0.5) for n in range(1, 50)}
    g = concave_majorant(samples)
    for n, value in samples.items():
        assert g.value(n) >= value * (1 - 1e-9)


def test_concave_majorant_rejects_exponential_growth():
    with pytest.raises(BoundsError):
        concave_majorant({float(n): 2.0 * n for n in range(1, 20)}, log_values=True)


def test_concave_majorant_bad_samples():
    with pytest.raises(BoundsError):
        concave_majorant({})
    with pytest.raises(BoundsError):
        concave_majorant({0.0: 1.0})
    with pytest.raises(BoundsError):
        concave_majorant({1.0: 0.0, 2.0: 1.0})


# ---------------------------------------------------------------------------
# F and the W bounds
# ---------------------------------------------------------------------------

def test_F_is_constant_below_threshold():
    p = BoundParams(A=1.0)
    assert log_F_upper(0, p) == log_F_upper(C_THRESHOLD, p)
    assert F_upper(10, p) == F_upper(C_THRESHOLD, p)
    with pytest.raises(DomainError):
        log_F_upper(-1, p)


def test_log_F_second_derivative():
    expected = -2 / (C_THRESHOLD * math.e ** 6)
    assert log_F_second_derivative(C_THRESHOLD) == pytest.approx(expected)
    for n in (C_THRESHOLD, 1e4, 1e6, 1e9):
        assert log_F_second_derivative(n) < 0
    with pytest.raises(DomainError):
        log_F_second_derivative(2.0)


def test_w_less_bound():
    assert w_less_bound(20, 10, lambda x: 1.0) == pytest.approx(math.e ** 10 * 2 ** 9)
    assert w_less_bound(20, 10, lambda x: 0.0) == 0.0
    with pytest.raises(DomainError):
        w_less_bound(20, 11, lambda x: 1.0)


def test_binomials_and_p():
    assert binom_real(5, 2) == pytest.approx(10)
    assert binom_real(1, 2) == 0.0
    p = BoundParams(d=2, m=1)
    assert p_poly(30, 2, p) == pytest.approx(3 * 378)


def test_w_greater_bound():
    assert w_greater_bound(10, 2, BoundParams(), 3) == 0.0
    p = BoundParams(d=2, m=1)
    assert w_greater_bound(10, 2, p, 3) == pytest.approx(3 * 28 * 3 ** 8)


def test_compute_M():
    assert compute_M(BoundParams(d=2, m=1), 1, 2) == pytest.approx(3 * math.e ** 2)


def test_induction_lhs_needs_constants():
    with pytest.raises(DomainError):
        induction_lhs(1e9, BoundParams())
    value = induction_lhs(1e9, BoundParams(M=2.0))
    assert value > f_lf(1e9, BoundParams())


def test_lower_bound():
    assert lower_bound(2) == 12
    assert lower_bound(12) == pytest.approx(1728)
    assert LOWER_EXPONENT == pytest.approx(math.log(3) / math.log(6))
    with pytest.raises(DomainError):
        lower_bound(1)


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

def test_step_delta():
    at = step_delta([3, 0, 5])
    assert at(0.2) == 3.0
    assert at(1.5) == 3.0
    assert at(10) == 5.0
    assert step_delta([])(4) == 1.0


def test_bounds_overlay_blanks_small_n():
    series = GrowthSeries(L=6, gamma=[3] * 7, beta=[0] * 7, delta=[3, 6, 6, 6, 6, 6, 6])
    overlay = bounds_overlay(series, BoundParams(d=2, m=1))
    assert sorted(overlay) == list(range(7))
    assert overlay[3]["w_less"] == ""
    assert overlay[4]["w_less"] != ""
    assert overlay[0]["upper_F"] == overlay[6]["upper_F"]


def test_bounds_report():
    report = bounds_report(BoundParams(), limit=1e10, samples=2000)
    assert report["violations"] == []
    assert report["N"] == report["search"]["N"]
    assert len(report["samples"]) == 20
    assert report["params"]["d"] == 3
