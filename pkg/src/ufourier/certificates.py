"""Lower-bound certificates for ``|S_N(Delta_eps e^{in phi})(0)|`` at ``N = [n alpha] - 1``.

Everything is a point evaluation at ``t = 0``, so a certificate costs
``O(n)`` and runs comfortably at ``n = 10**6``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import NamedTuple, Sequence

import numpy as np

from .closed_form import corner_coeffs, coeff, window_exp_pexp
from .phase import CONJUGATE, CornerData, PiecewiseLinearPhase, canonical_case, first_corner, normalize_at_corner

TWO_PI = 2.0 * math.pi
Q_WINDOW = 1000


def _hurwitz2_tail(x: float) -> float:
    """``sum_{j>=0} 1/(x+j)**2`` for large ``x`` by Euler-Maclaurin."""
    ix = 1.0 / x
    ix2 = ix * ix
    return ix + 0.5 * ix2 + ix2 * ix * (1.0 / 6.0 - ix2 * (1.0 / 30.0 - ix2 * (1.0 / 42.0 - ix2 / 30.0)))


def q_lambda(lam: float, window: int = Q_WINDOW) -> float:
    """``Q(lambda) = sum over |k - lambda| >= 1 of 1/(k - lambda)**2``.

    Terms with ``|k - lambda| <= window`` are summed directly; the two tails
    use an Euler-Maclaurin expansion whose error is below ``window**-9``.
    """
    lam = float(lam)
    lo = math.ceil(lam - window)
    hi = math.floor(lam + window)
    k = np.arange(lo, hi + 1, dtype=float)
    d = k - lam
    d = d[np.abs(d) >= 1.0]
    direct = math.fsum(1.0 / (d * d))
    return direct + _hurwitz2_tail(hi + 1 - lam) + _hurwitz2_tail(lam - (lo - 1))


def q_tail_bound(window: int) -> float:
    """Crude integral bound on the part of Q beyond ``|k - lambda| > window``."""
    return 2.0 / (window - 1)


def _check_range(n: int, alpha: float, N: int) -> None:
    if n * alpha - N <= 0:
        raise ValueError(f"N={N} too large: n*alpha - N = {n * alpha - N} <= 0")


def main_sum(n: int, alpha: float, N: int) -> float:
    """``sum_{|k|<=N} 1/(n alpha - k)``; every term is positive when ``N < n alpha``."""
    _check_range(n, alpha, N)
    k = np.arange(-N, N + 1, dtype=float)
    return math.fsum(1.0 / (n * alpha - k))


def beta_sum(n: int, beta: float, N: int, exclude_zero: bool = False) -> float:
    """``sum_{|k|<=N} 1/(n beta - k)`` (optionally skipping ``k = 0``)."""
    k = np.arange(-N, N + 1, dtype=float)
    if exclude_zero:
        k = k[k != 0]
    d = n * beta - k
    if np.any(d == 0):
        raise ValueError(f"zero denominator at k = {k[d == 0].tolist()}")
    return math.fsum(1.0 / d)


def case1_beta_bound(alpha: float, beta: float) -> float:
    """``3 alpha / (|beta| - alpha)``, the bound on ``|beta_sum|`` in case 1."""
    if not abs(beta) > alpha > 0:
        raise ValueError("case 1 needs |beta| > alpha > 0")
    return 3.0 * alpha / (abs(beta) - alpha)


def case2_identity_residual(n: int, alpha, N: int):
    """``sum (1/(n a - k) + 1/(n a + k)) - 2 sum 1/(n a - k)`` over ``|k| <= N``.

    Exact (a Fraction) when ``alpha`` is rational.
    """
    _check_range(n, alpha, N)
    if isinstance(alpha, Rational):
        lam = Fraction(n) * Fraction(alpha)
        lhs = sum(Fraction(1) / (lam - k) + Fraction(1) / (lam + k) for k in range(-N, N + 1))
        rhs = 2 * sum(Fraction(1) / (lam - k) for k in range(-N, N + 1))
        return lhs - rhs
    k = np.arange(-N, N + 1, dtype=float)
    lam = n * alpha
    return math.fsum(1.0 / (lam - k) + 1.0 / (lam + k)) - 2.0 * math.fsum(1.0 / (lam - k))


def case3_sum(n: int, alpha: float, N: int) -> float:
    """``sum_{1<=|k|<=N} 1/(n alpha - k)``."""
    _check_range(n, alpha, N)
    k = np.arange(1, N + 1, dtype=float)
    return math.fsum(np.concatenate([1.0 / (n * alpha - k), 1.0 / (n * alpha + k)]))


class Remainder(NamedTuple):
    actual: float
    bound: float
    cauchy_schwarz: float
    q_value: float
    l2_partial: float


def remainder_bound(n: int, slope: float, eps: float, N: int, side: str = "left",
                    exclude_zero: bool = False) -> Remainder:
    """``|sum_{|k|<=N} h^(k) / (n slope - k)|`` against ``2 sqrt(eps)``.

    ``h = e_{n slope} 1_{(-eps, 0)}`` for ``side="left"`` and
    ``e_{n slope} 1_{(0, eps)}`` for ``side="right"``. Raises ValueError
    naming the offending ``k`` when some ``|n slope - k| < 1``.
    """
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    k = np.arange(-N, N + 1)
    if exclude_zero:
        k = k[k != 0]
    lam = n * slope
    d = lam - k
    gap = np.abs(d) < 1.0
    if np.any(gap):
        raise ValueError(f"|n*slope - k| < 1 at k = {k[gap].tolist()}")
    a, b = (-eps, 0.0) if side == "left" else (0.0, eps)
    h = coeff(window_exp_pexp(lam, a, b), k)
    actual = float(abs(np.sum(h / d)))
    q = q_lambda(lam)
    l2 = math.sqrt(math.fsum(np.abs(h) ** 2))
    return Remainder(actual, 2.0 * math.sqrt(eps), math.sqrt(q) * l2, q, l2)


def case_bound(case: int, n: int, alpha: float, beta: float, eps: float) -> float:
    """Lower bound on ``|S_N(Delta_eps e^{in phi})(0)|`` for a canonical corner."""
    base = math.log(n * alpha / 2.0)
    rem = 4.0 / math.sqrt(eps)
    if case == 1:
        return (base - case1_beta_bound(alpha, beta)) / TWO_PI - rem
    if case == 2:
        return base / TWO_PI - rem
    if case == 3:
        return (base - 1.0) / TWO_PI - rem - 1.0
    raise ValueError(f"unknown case {case}")


@dataclass
class CertificateReport:
    n: int
    case_tag: int
    N: int
    partial_sum_at_0: complex
    paper_bound: float
    slack: float
    passed: bool
    alpha: float
    beta: float
    eps: float
    ops: tuple[str, ...] = ()
    resonant_k: int = 0
    components: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)

    CSV_HEADER = ("n", "case", "N", "abs_S_N0", "bound", "slack", "pass")

    def csv_row(self) -> list[str]:
        return [str(self.n), str(self.case_tag), str(self.N), repr(abs(self.partial_sum_at_0)),
                repr(self.paper_bound), repr(self.slack), "1" if self.passed else "0"]


def certify(corner: CornerData, n: int, tol: float = 1e-9) -> CertificateReport:
    """Evaluate ``S_N(Delta_eps e^{in phi})(0)`` and compare with the case bound.

    The corner is first reduced to a canonical case; both reductions keep
    ``|S_N(.)(0)|`` unchanged. Negative ``n`` is handled by conjugation.
    """
    if n == 0:
        raise ValueError("n must be nonzero")
    alpha, beta, eps = corner.left_slope, corner.right_slope, corner.half_width
    pre_ops: tuple[str, ...] = ()
    if n < 0:
        n, alpha, beta, pre_ops = -n, -alpha, -beta, (CONJUGATE,)
    canon = canonical_case(alpha, beta)
    a, b = float(canon.alpha), float(canon.beta)
    if n * a < 2:
        raise ValueError(f"n not large enough: n*alpha = {n * a} < 2")
    N = math.floor(n * a) - 1

    ks = np.arange(-N, N + 1)
    c, n_res = corner_coeffs(CornerData(0.0, a, b, eps), n, ks)
    s0 = complex(np.sum(c))

    bound = case_bound(canon.case, n, a, b, eps)
    slack = abs(s0) - bound

    main = main_sum(n, a, N)
    rem_a = remainder_bound(n, a, eps, N, "left")
    rem_b = remainder_bound(n, b, eps, N, "right", exclude_zero=canon.case == 3)
    components = {"main_sum": main, "remainder_alpha": rem_a.actual, "remainder_beta": rem_b.actual,
                  "remainder_bound": rem_a.bound}
    checks = {
        "main_sum_ge_log": main >= math.log(n * a / 2.0) - tol,
        "remainder_alpha_le_bound": bool(rem_a.actual <= rem_a.bound + tol),
        "remainder_beta_le_bound": bool(rem_b.actual <= rem_b.bound + tol),
    }
    if canon.case == 1:
        bs = abs(beta_sum(n, b, N))
        components["beta_sum"] = bs
        checks["beta_sum_le_bound"] = bs <= case1_beta_bound(a, b) + tol
    elif canon.case == 2:
        components["symmetric_identity_residual"] = float(case2_identity_residual(n, a, N))
    else:
        c3 = case3_sum(n, a, N)
        components["case3_sum"] = c3
        checks["case3_sum_ge_log"] = abs(c3) >= math.log(n * a / 2.0) - 1.0 - tol
        components["coefficient_at_0"] = abs(c[N])
        checks["coefficient_at_0_le_1"] = bool(abs(c[N]) <= 1.0 + tol)

    return CertificateReport(
        n=n, case_tag=canon.case, N=N, partial_sum_at_0=s0, paper_bound=bound, slack=slack,
        passed=slack >= -tol, alpha=a, beta=b, eps=eps, ops=pre_ops + canon.ops,
        resonant_k=n_res, components=components, checks=checks,
    )


def certify_phase(phi: PiecewiseLinearPhase, n: int, corner_index: int | None = None,
                  epsilon: float | None = None, tol: float = 1e-9) -> CertificateReport:
    """Normalize ``phi`` at a corner (default: the first one) and certify."""
    j = first_corner(phi) if corner_index is None else corner_index
    _, corner = normalize_at_corner(phi, j, epsilon)
    return certify(corner, n, tol)


def certify_many(corner: CornerData, ns: Sequence[int], tol: float = 1e-9) -> list[CertificateReport]:
    return [certify(corner, n, tol) for n in sorted(ns)]


def empirical_offset(reports: Sequence[CertificateReport]) -> float:
    """Infimum over the reports of ``|S_N(0)| - log(n) / (2 pi)``."""
    return min(abs(r.partial_sum_at_0) - math.log(r.n) / TWO_PI for r in reports)
