"""
How the U, A and star norms of e^{in phi} grow for the sawtooth phi(t) = |t|.
"""

import math

import numpy as np

from ufourier.closed_form import phase_coefficients
from ufourier.phase import sawtooth
from ufourier.spectral import u_norm

phi = sawtooth()

## A single n
n = 64
K = n + 256
c = phase_coefficients(phi, n, K)
rep = u_norm(c, K)
print(f"n={n}: U in [{rep.u_norm.lo:.4f}, {rep.u_norm.hi:.4f}], A = {rep.a_norm:.4f}")
print("best partial sum index:", rep.argmax_partial_sum, rep.flags)

## Growth in n, divided by log n
for n in (16, 64, 256, 1024):
    K = n + 256
    rep = u_norm(phase_coefficients(phi, n, K), K)
    print(f"{n:5d}  U/log n = {rep.u_norm.lo / math.log(n):.3f}   A/log n = {rep.a_norm / math.log(n):.3f}")

## Which partial sum is largest?
rep = u_norm(phase_coefficients(phi, 256, 512), 512, keep_trace=True)
print("sup-norm of S_N for N = 0, 128, 256, 384, 512:", np.round(rep.trace[::128], 3))
