import math
import warnings

import numpy as np
import pytest
from scipy.integrate import IntegrationWarning, quad

from ufourier.phase import CornerData

# slope pairs (alpha, beta) at a corner, covering all three canonical cases
CORNER_SLOPES = [(1.0, -1.0), (1.0, 2.0), (1.0, 0.0), (2.0, -2.0)]


def quad_coeff(f, k):
    """Adaptive Gauss-Kronrod oracle for a PiecewiseExpPoly coefficient."""
    total = 0j
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", IntegrationWarning)
        for pc in f.pieces:
            def g(t, pc=pc):
                return (pc.p + pc.q * t) * np.exp(1j * ((pc.mu - k) * t + pc.c))

            val, _ = quad(g, pc.a, pc.b, complex_func=True, epsabs=1e-14, epsrel=1e-13, limit=500)
            total += val
    return total / (2 * math.pi)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(params=CORNER_SLOPES, ids=lambda ab: f"a{ab[0]:g}_b{ab[1]:g}")
def corner(request):
    a, b = request.param
    return CornerData(0.0, a, b, 1.0)
