"""
Exact Fourier coefficients of piecewise (linear x exponential) functions,
checked against adaptive quadrature.
"""

import math

import numpy as np
from scipy.integrate import quad

from ufourier.closed_form import Piece, PiecewiseExpPoly, coeff

f = PiecewiseExpPoly((Piece(-2.0, 0.5, 1.0, 0.3, 7.25, 0.0),
                      Piece(1.0, 3.0, 0.5j, -1.0, 7.0, 1.0)))  # second piece has an integer frequency

for k in (0, 7, 8, -20):
    exact = coeff(f, k)
    numeric = sum(quad(lambda t, pc=pc: (pc.p + pc.q * t) * np.exp(1j * ((pc.mu - k) * t + pc.c)),
                       pc.a, pc.b, complex_func=True)[0] for pc in f.pieces) / (2 * math.pi)
    print(f"k={k:4d}  closed form {exact:.12f}   |diff| = {abs(exact - numeric):.1e}")
