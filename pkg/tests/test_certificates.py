import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st
from scipy.special import polygamma

from ufourier.certificates import (beta_sum, case1_beta_bound, case2_identity_residual, case3_sum, case_bound,
                                   certify, certify_phase, empirical_offset, main_sum, q_lambda,
                                   remainder_bound)
from ufourier.phase import CornerData, sawtooth


def exact_sum(lam, ks):
    return sum(Fraction(1) / (lam - k) for k in ks)


def q_oracle(lam):
    # sum over |k - lam| >= 1 of 1/(k - lam)^2, via trigamma on both sides
    lam = float(lam)
    up = math.floor(lam) + 1 if math.floor(lam) + 1 - lam >= 1 else math.floor(lam) + 2
    down = math.ceil(lam) - 1 if lam - (math.ceil(lam) - 1) >= 1 else math.ceil(lam) - 2
    return float(polygamma(1, up - lam) + polygamma(1, lam - down))


def test_main_sum_exact():
    assert main_sum(4, 1.0, 3) == pytest.approx(float(exact_sum(4, range(-3, 4))), rel=1e-15)
    assert float(exact_sum(4, range(-3, 4))) == pytest.approx(363 / 140)
    with pytest.raises(ValueError, match="too large"):
        main_sum(4, 1.0, 4)


def test_case1_example():
    value = abs(beta_sum(10, 2.0, 9))
    assert value == pytest.approx(float(exact_sum(20, range(-9, 10))), rel=1e-14)
    assert value == pytest.approx(1.0326855436188038, rel=1e-12)
    assert value <= case1_beta_bound(1.0, 2.0) == 3.0


def test_case3_example():
    value = case3_sum(6, 1.0, 5)
    assert value == pytest.approx(2.853210678210678, rel=1e-12)
    assert value >= math.log(3) - 1


def test_case2_identity_exact():
    assert case2_identity_residual(7, Fraction(1), 6) == 0
    assert case2_identity_residual(7, Fraction(3, 2), 9) == 0
    assert abs(case2_identity_residual(100, 1.0, 99)) < 1e-12


@pytest.mark.parametrize("lam", [0.0, 0.5, 0.25, 0.999, 3.7, -12.3, 1e5 + 0.4])
def test_q_lambda_trigamma(lam):
    assert q_lambda(lam) == pytest.approx(q_oracle(lam), rel=1e-12, abs=1e-12)


def test_q_special_values():
    assert q_lambda(0.0) == pytest.approx(math.pi ** 2 / 3, abs=1e-13)
    assert q_lambda(0.5) == pytest.approx(1.8696044010893587, abs=1e-12)
    assert q_lambda(0.5) == pytest.approx(math.pi ** 2 - 8, abs=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(0, 1), st.integers(-50, 50))
def test_q_periodic_and_bounded(lam, m):
    q = q_lambda(lam)
    assert q <= 4.0 + 1e-9
    # Q jumps at integers, so only compare shifts that are exact in floating point
    assume((lam + m) - m == lam)
    assert q_lambda(lam + m) == pytest.approx(q, abs=1e-9)


def test_remainder_within_cauchy_schwarz(corner):
    for n in (8, 33, 200):
        N = math.floor(n * corner.left_slope) - 1
        r = remainder_bound(n, corner.left_slope, corner.half_width, N)
        assert r.actual <= r.cauchy_schwarz * (1 + 1e-12)
        assert r.cauchy_schwarz <= r.bound * (1 + 1e-12)


def test_remainder_errors():
    with pytest.raises(ValueError, match="side"):
        remainder_bound(4, 1.0, 1.0, 3, side="up")
    with pytest.raises(ValueError, match=r"k = \[4\]"):
        remainder_bound(4, 1.0, 1.0, 4)


def test_case_bound_formulae():
    n, eps = 1000, 1.0
    base = math.log(n / 2)
    assert case_bound(2, n, 1.0, -1.0, eps) == pytest.approx(base / (2 * math.pi) - 4)
    assert case_bound(1, n, 1.0, 2.0, eps) == pytest.approx((base - 3) / (2 * math.pi) - 4)
    assert case_bound(3, n, 1.0, 0.0, eps) == pytest.approx((base - 1) / (2 * math.pi) - 5)
    with pytest.raises(ValueError):
        case_bound(4, n, 1.0, 0.0, eps)


def test_certify_corpus(corner):
    for n in (2, 17, 256, 5000):
        rep = certify(corner, n)
        assert rep.passed, rep
        assert all(rep.checks.values()), rep.checks
        assert rep.N == math.floor(n * rep.alpha) - 1


def test_certify_partial_sum_direct():
    # S_N(0) equals the plain sum of generic closed-form coefficients
    from ufourier.closed_form import coeff, corner_pexp
    corner = CornerData(0.0, 1.0, 0.0, 1.0)
    rep = certify(corner, 40)
    ks = np.arange(-rep.N, rep.N + 1)
    direct = complex(np.sum(coeff(corner_pexp(corner, 40), ks)))
    assert rep.partial_sum_at_0 == pytest.approx(direct, abs=1e-12)
    assert rep.case_tag == 3 and rep.resonant_k == 1


def test_certify_symmetry_invariance():
    a = certify(CornerData(0.0, 2.0, 1.0, 1.0), 50)
    b = certify(CornerData(0.0, 1.0, 2.0, 1.0), 50)
    assert a.case_tag == b.case_tag == 1
    assert abs(a.partial_sum_at_0) == pytest.approx(abs(b.partial_sum_at_0), rel=1e-12)


def test_certify_negative_n():
    rep = certify(CornerData(0.0, -1.0, 1.0, 1.0), -30)
    assert rep.passed and rep.n == 30


def test_certify_small_n():
    with pytest.raises(ValueError, match="not large enough"):
        certify(CornerData(0.0, 1.0, -1.0, 1.0), 1)


def test_certify_phase_and_offset():
    reps = [certify_phase(sawtooth(), n, epsilon=1.0) for n in (64, 512, 4096)]
    assert all(r.passed for r in reps)
    off = empirical_offset(reps)
    assert off == pytest.approx(min(abs(r.partial_sum_at_0) - math.log(r.n) / (2 * math.pi) for r in reps))
