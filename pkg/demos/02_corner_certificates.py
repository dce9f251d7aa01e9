"""
Lower bounds at a corner: the value of S_N(window * e^{in phi}) at the corner
itself, with N just below n * (left slope). Only O(n) work per n.
"""

import math

from ufourier import CornerData, certify

## The four slope pairs used throughout the tests
corners = [CornerData(0.0, a, b, 1.0) for a, b in [(1, -1), (1, 2), (1, 0), (2, -2)]]

for c in corners:
    rep = certify(c, 10_000)
    print(f"slopes ({c.left_slope:g}, {c.right_slope:g}) -> case {rep.case_tag} via {rep.ops or 'identity'}: "
          f"|S_N(0)| = {abs(rep.partial_sum_at_0):.4f} >= {rep.paper_bound:.4f}")

## Grows like log(n) / (2 pi)
c = corners[0]
for n in (100, 10_000, 1_000_000):
    rep = certify(c, n)
    print(f"n={n:>8d}  |S_N(0)| - log(n)/2pi = {abs(rep.partial_sum_at_0) - math.log(n) / (2 * math.pi):.4f}")

## The pieces that make up the bound
rep = certify(corners[2], 1000)
for name, value in rep.components.items():
    print(f"  {name:>20s}: {value:.6f}")
print("  all checks:", all(rep.checks.values()))
