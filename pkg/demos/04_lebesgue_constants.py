"""
Lebesgue constants L_N, the norm of the partial-sum operator on C(T).
"""

import math

import numpy as np

from ufourier import lebesgue_constant

print("L_0 =", lebesgue_constant(0))
print("L_1 =", lebesgue_constant(1), " closed form:", 1 / 3 + 2 * math.sqrt(3) / math.pi)

Ns = [2 ** j for j in range(4, 13)]
L = [lebesgue_constant(N) for N in Ns]
slope, intercept = np.polyfit(np.log(Ns), L, 1)
print(f"L_N ~ {slope:.4f} log N + {intercept:.4f}   (4/pi^2 = {4 / math.pi ** 2:.4f})")
