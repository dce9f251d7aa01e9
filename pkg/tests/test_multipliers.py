import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from ufourier.closed_form import triangle_coeffs, triangle_decay
from ufourier.multipliers import (chain_report, modulation_bound_report, multiplier_bound_report, multiply,
                                  shift_identity_residual, shift_identity_residuals, submultiplicative_gap,
                                  triangle_star_norm, truncated_triangle)
from ufourier.phase import sawtooth
from ufourier.spectral import SpectralVector, evaluate, partial_sum, star_norm


def random_poly(rng, K):
    return SpectralVector(rng.normal(size=2 * K + 1) + 1j * rng.normal(size=2 * K + 1))


def shift_identity_direct(f, n, N, t):
    """Each side of the identity summed term by term at points ``t``."""
    lhs = evaluate(partial_sum(f.shift(n), N), t)
    t1 = np.exp(1j * n * t) * evaluate(partial_sum(f, N + n), t)
    t2 = np.exp(1j * N * t) * f[N - n]
    t3 = np.exp(1j * (N + n) * t) * evaluate(partial_sum(f.shift(-N), n), t)
    return np.abs(lhs - (t1 + t2 - t3)).max()


def test_shift_identity_against_direct(rng):
    t = np.linspace(-math.pi, math.pi, 97)
    for K, n, N in [(5, 1, 0), (5, 3, 4), (12, 2, 20), (20, 7, 9)]:
        f = random_poly(rng, K)
        assert shift_identity_direct(f, n, N, t) < 1e-11
        assert shift_identity_residual(f, n, N) < 1e-11


def test_shift_identity_detects_error(rng):
    # the residual is not trivially small: dropping t2 breaks it when f^(N-n) != 0
    f = random_poly(rng, 6)
    t = np.linspace(-math.pi, math.pi, 97)
    n, N = 2, 3
    lhs = evaluate(partial_sum(f.shift(n), N), t)
    assert np.abs(lhs - np.exp(1j * n * t) * evaluate(partial_sum(f, N + n), t)).max() > 1e-3


def test_shift_identity_vectorized(rng):
    f = random_poly(rng, 10)
    Ns = [0, 5, 17]
    res = shift_identity_residuals(f, 4, Ns)
    assert res.shape == (3,)
    for N, r in zip(Ns, res):
        assert r == pytest.approx(shift_identity_residual(f, 4, N), abs=1e-13)
    with pytest.raises(ValueError):
        shift_identity_residuals(f, 0, Ns)


def test_modulation(rng):
    f = random_poly(rng, 8)
    rep = modulation_bound_report(f, 5)
    assert rep.u_f.lo > 0 and rep.ratio == rep.c1
    neg = modulation_bound_report(f, -5)
    # ||e_{-n} f||_U = ||e_n conj f||_U
    assert neg.u_modulated.lo == pytest.approx(modulation_bound_report(f.conj(), 5).u_modulated.lo, rel=1e-12)


def test_multiply_matches_pointwise(rng):
    m, f = random_poly(rng, 4), random_poly(rng, 6)
    t = np.linspace(-3, 3, 11)
    np.testing.assert_allclose(evaluate(multiply(m, f), t), evaluate(m, t) * evaluate(f, t), atol=1e-11)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 12), st.integers(0, 12), st.integers(0, 2**32 - 1))
def test_a_norm_submultiplicative(Km, Kf, seed):
    rng = np.random.default_rng(seed)
    assert submultiplicative_gap(random_poly(rng, Km), random_poly(rng, Kf)) >= -1e-12


def test_multiplier_report(rng):
    m = truncated_triangle(1.0, 64)
    f = random_poly(rng, 20)
    rep = multiplier_bound_report(m, f)
    assert rep.star_m == pytest.approx(star_norm(m))
    assert rep.c == pytest.approx(rep.u_product.lo / rep.bound_product)


def test_triangle_star_norm():
    partial, tail, K = triangle_star_norm(1.0)
    assert tail < 1e-6
    # independent: a coarser truncation plus its own tail bound brackets the value
    k = np.arange(-20000, 20001)
    coarse = math.fsum(triangle_coeffs(1.0, k) * np.log(np.abs(k) + 2.0))
    assert coarse <= partial + 1e-12
    assert partial <= coarse + 2 * triangle_decay(1.0) * (1 + math.log(40000)) / 20000


def test_chain_report_sawtooth():
    rep = chain_report(sawtooth(), 32, 1.0, window_K=256, slack=64)
    assert rep.u_windowed.lo <= rep.star_window * rep.u_phase.hi
    assert rep.window_tail_l1 == pytest.approx(2 * triangle_decay(1.0) / 256)
