"""Exact Fourier coefficients of piecewise (linear weight) x exponential functions.

Every function here is a finite sum of pieces ``(p + q t) e^{i(mu t + c)}``
on half-open intervals ``[a, b)`` inside ``[-pi, pi)``. Writing the integral
around the piece midpoint ``m`` with half-length ``h`` and ``w = mu - k``:

    int_a^b (p + q t) e^{i(w t + c)} dt
        = 2h e^{i(c + w m)} [ (p + q m) j0(w h) + i q h j1(w h) ]

with ``j0(x) = sin x / x`` and ``j1(x) = (sin x - x cos x) / x**2``. Near
resonance (small ``w h``) ``j1`` switches to its Taylor series.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .phase import CornerData, PhaseError, PiecewiseLinearPhase, TWO_PI, eval_phase
from .spectral import SpectralVector

# |w h| below which j1 uses its Taylor series
RESONANCE_SWITCH = 0.5
_J1_TERMS = 10


class ResonanceError(ValueError):
    """Raised when a closed formula is evaluated exactly at a resonance ``k = n*slope``."""


class Piece(NamedTuple):
    a: float
    b: float
    p: complex
    q: complex
    mu: float
    c: float


@dataclass(frozen=True)
class PiecewiseExpPoly:
    pieces: tuple[Piece, ...]

    def __post_init__(self):
        pieces = tuple(Piece(*pc) for pc in self.pieces)
        for pc in pieces:
            if not pc.a < pc.b:
                raise ValueError(f"empty or reversed piece [{pc.a}, {pc.b})")
            if pc.a < -math.pi - 1e-12 or pc.b > math.pi + 1e-12:
                raise ValueError(f"piece [{pc.a}, {pc.b}) leaves [-pi, pi)")
        ordered = sorted(pieces, key=lambda pc: pc.a)
        for left, right in zip(ordered, ordered[1:]):
            if right.a < left.b:
                raise ValueError("pieces overlap")
        object.__setattr__(self, "pieces", pieces)

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for pc in self.pieces:
            on = (t >= pc.a) & (t < pc.b)
            out = np.where(on, (pc.p + pc.q * t) * np.exp(1j * (pc.mu * t + pc.c)), out)
        return out


def _j0(x: np.ndarray) -> np.ndarray:
    return np.sinc(x / np.pi)


def _j1(x: np.ndarray) -> np.ndarray:
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    small = np.abs(x) < RESONANCE_SWITCH
    xs = x[small]
    x2 = xs * xs
    # sum_{j>=1} (-1)^{j+1} 2j x^{2j-1} / (2j+1)!
    acc = np.zeros_like(xs)
    term = xs / 3.0
    for j in range(1, _J1_TERMS + 1):
        acc += term
        term = -term * x2 * (j + 1) / (j * (2 * j + 2) * (2 * j + 3))
    out[small] = acc
    xl = x[~small]
    out[~small] = (np.sin(xl) - xl * np.cos(xl)) / (xl * xl)
    return out


def piece_coeff(piece: Piece, k) -> np.ndarray:
    a, b, p, q, mu, c = piece
    k = np.asarray(k, dtype=float)
    h = 0.5 * (b - a)
    m = 0.5 * (a + b)
    w = mu - k
    x = w * h
    rot = np.exp(1j * (c + w * m))
    return rot * (2.0 * h) * ((p + q * m) * _j0(x) + 1j * q * h * _j1(x)) / TWO_PI


def coeff(f: PiecewiseExpPoly, k):
    """``f^(k) = (1/2pi) int f(t) e^{-ikt} dt`` for integer ``k`` (scalar or array)."""
    k_arr = np.asarray(k)
    out = np.zeros(k_arr.shape, dtype=complex)
    for pc in f.pieces:
        out += piece_coeff(pc, k_arr)
    return complex(out) if out.ndim == 0 else out


def coefficients(f: PiecewiseExpPoly, K: int) -> SpectralVector:
    return SpectralVector(coeff(f, np.arange(-K, K + 1)))


# -- windows ----------------------------------------------------------------

@dataclass(frozen=True)
class Triangle:
    """``max(0, 1 - |t - center| / eps)``."""

    eps: float
    center: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.eps < math.pi:
            raise ValueError(f"triangle half-width must lie in (0, pi), got {self.eps}")

    @property
    def edges(self) -> tuple[float, float, float]:
        return self.center - self.eps, self.center, self.center + self.eps

    def weight(self, a: float, b: float) -> tuple[float, float] | None:
        """Linear weight ``(p, q)`` on ``[a, b)``, or None outside the support."""
        lo, mid, hi = self.edges
        if b <= lo or a >= hi:
            return None
        if b <= mid:
            return 1.0 - self.center / self.eps, 1.0 / self.eps
        return 1.0 + self.center / self.eps, -1.0 / self.eps


@dataclass(frozen=True)
class Indicator:
    """Characteristic function of ``[a, b)``."""

    a: float
    b: float

    @property
    def edges(self) -> tuple[float, float]:
        return self.a, self.b

    def weight(self, a: float, b: float) -> tuple[float, float] | None:
        if b <= self.a or a >= self.b:
            return None
        return 1.0, 0.0


def _reduce(t: float) -> float:
    return ((t + math.pi) % TWO_PI) - math.pi


def phase_to_pexp(phi: PiecewiseLinearPhase, n: int, window: Triangle | Indicator | None = None) -> PiecewiseExpPoly:
    """``window(t) * e^{i n phi(t)}`` as pieces on ``[-pi, pi)``.

    One piece per linear segment of ``phi``, further split at the window
    edges. A triangle window must not straddle a breakpoint of ``phi`` other
    than its own center.
    """
    knots = {_reduce(t) for t in phi.breakpoints[:-1]}
    if isinstance(window, Triangle):
        lo, mid, hi = window.edges
        inside = [t for t in knots if lo < t < hi and abs(t - mid) > 1e-12]
        if inside:
            raise PhaseError(f"triangle window of half-width {window.eps} is wider than the segments next to its center")
    cuts = set(knots) | {-math.pi, math.pi}
    if window is not None:
        cuts |= {e for e in window.edges if -math.pi < e < math.pi}
    cuts = sorted(cuts)

    bp = np.asarray(phi.breakpoints)
    pieces = []
    for a, b in zip(cuts, cuts[1:]):
        if b - a <= 1e-15:
            continue
        if window is None:
            p, q = 1.0, 0.0
        else:
            wt = window.weight(a, b)
            if wt is None:
                continue
            p, q = wt
        mid = 0.5 * (a + b)
        local = (mid - phi.start) % TWO_PI + phi.start
        j = min(int(np.searchsorted(bp, local, side="right")) - 1, phi.n_pieces - 1)
        slope = phi.slopes[j]
        start_val = eval_phase(phi, a)
        pieces.append(Piece(a, b, p, q, n * slope, n * (start_val - slope * a)))
    return PiecewiseExpPoly(tuple(pieces))


def phase_coefficients(phi: PiecewiseLinearPhase, n: int, K: int, window=None) -> SpectralVector:
    """Coefficients of ``window * e^{i n phi}`` for ``|k| <= K``."""
    return coefficients(phase_to_pexp(phi, n, window), K)


def phase_l1_tail_bound(phi: PiecewiseLinearPhase, n: int, K: int) -> float:
    """Bound on ``sum_{|k|>K} |(e^{i n phi})^(k)|``, valid for ``K > |n| * max|slope|``.

    Two integrations by parts leave only corner terms, each at most
    ``|n| |jump| / (2 pi (|k| - |n| A)^2)`` with ``A = max|slope|``.
    """
    reach = abs(n) * phi.max_abs_slope
    if K <= reach:
        raise ValueError(f"tail bound needs K > |n|*max|slope| = {reach}")
    jumps = sum(abs(phi.slopes[j] - phi.slopes[j - 1]) for j in range(phi.n_pieces))
    decay = abs(n) * jumps / TWO_PI
    return 2.0 * decay / (K - reach)


# -- the triangle function and the corner formula ----------------------------

def triangle_coeffs(eps: float, k):
    """``Delta_eps^(k) = (eps / 2pi) (sin(k eps/2) / (k eps/2))**2`` (real, nonnegative)."""
    if not 0.0 < eps < math.pi:
        raise ValueError(f"eps must lie in (0, pi), got {eps}")
    k = np.asarray(k, dtype=float)
    out = eps / TWO_PI * np.sinc(k * eps / TWO_PI) ** 2
    return float(out) if out.ndim == 0 else out


def triangle_decay(eps: float) -> float:
    """``C`` with ``Delta_eps^(k) <= C / k**2`` for ``k != 0``."""
    return 2.0 / (math.pi * eps)


def triangle_pexp(eps: float) -> PiecewiseExpPoly:
    return PiecewiseExpPoly((Piece(-eps, 0.0, 1.0, 1.0 / eps, 0.0, 0.0),
                             Piece(0.0, eps, 1.0, -1.0 / eps, 0.0, 0.0)))


def corner_pexp(corner: CornerData, n: int) -> PiecewiseExpPoly:
    """``Delta_eps(t) e^{i n phi(t)}`` where ``phi`` has slopes (alpha, beta) around 0 and ``phi(0) = 0``."""
    eps = corner.half_width
    return PiecewiseExpPoly((
        Piece(-eps, 0.0, 1.0, 1.0 / eps, n * corner.left_slope, 0.0),
        Piece(0.0, eps, 1.0, -1.0 / eps, n * corner.right_slope, 0.0),
    ))


def window_exp_pexp(v: float, a: float, b: float) -> PiecewiseExpPoly:
    """``e_v 1_{(a, b)}``."""
    return PiecewiseExpPoly((Piece(a, b, 1.0, 0.0, v, 0.0),))


def resonant(n: int, slope: float, k) -> np.ndarray:
    k = np.asarray(k, dtype=float)
    lam = n * slope
    return np.abs(lam - k) <= 4 * np.finfo(float).eps * np.maximum(1.0, np.maximum(abs(lam), np.abs(k)))


def eq2_coeff(corner: CornerData, n: int, k):
    """Coefficient of ``Delta_eps e^{i n phi}`` from the corner formula.

    With ``A = n alpha - k``, ``B = n beta - k`` and windowed exponentials
    ``h_a = e_{n alpha} 1_{(-eps, 0)}``, ``h_b = e_{n beta} 1_{(0, eps)}``::

        (1/(2 pi i)) (1/A - 1/B) - (1/(i eps)) (h_a^(k)/A - h_b^(k)/B)

    Valid only away from resonance; raises ResonanceError otherwise.
    """
    alpha, beta, eps = corner.left_slope, corner.right_slope, corner.half_width
    k_arr = np.asarray(k)
    bad = resonant(n, alpha, k_arr) | resonant(n, beta, k_arr)
    if np.any(bad):
        raise ResonanceError(f"resonant k = {np.atleast_1d(k_arr)[np.atleast_1d(bad)].tolist()} for n={n}")
    kf = k_arr.astype(float)
    A = n * alpha - kf
    B = n * beta - kf
    h_a = coeff(window_exp_pexp(n * alpha, -eps, 0.0), k_arr)
    h_b = coeff(window_exp_pexp(n * beta, 0.0, eps), k_arr)
    out = (1.0 / A - 1.0 / B) / (2j * math.pi) - (h_a / A - h_b / B) / (1j * eps)
    return complex(out) if np.ndim(out) == 0 else out


def corner_coeffs(corner: CornerData, n: int, k) -> tuple[np.ndarray, int]:
    """Corner formula where valid, generic closed form at resonant ``k``.

    Returns the coefficients and the number of resonant ``k`` encountered.
    """
    k_arr = np.atleast_1d(np.asarray(k))
    bad = resonant(n, corner.left_slope, k_arr) | resonant(n, corner.right_slope, k_arr)
    out = np.empty(k_arr.shape, dtype=complex)
    if np.any(~bad):
        out[~bad] = eq2_coeff(corner, n, k_arr[~bad])
    if np.any(bad):
        out[bad] = coeff(corner_pexp(corner, n), k_arr[bad])
    return out, int(bad.sum())


def random_pexp(rng: np.random.Generator, max_pieces: int = 4, mu_scale: float = 30.0) -> PiecewiseExpPoly:
    """Random instance with disjoint pieces; about a quarter of the frequencies are integers."""
    m = int(rng.integers(1, max_pieces + 1))
    cuts = np.sort(rng.uniform(-math.pi, math.pi, 2 * m))
    pieces: list[Piece] = []
    for i in range(m):
        a, b = float(cuts[2 * i]), float(cuts[2 * i + 1])
        if b - a < 1e-3:
            continue
        mu = float(rng.uniform(-mu_scale, mu_scale))
        if rng.random() < 0.25:
            mu = float(round(mu))
        pieces.append(Piece(a, b, complex(*rng.normal(size=2)), complex(*rng.normal(size=2)), mu,
                            float(rng.uniform(-math.pi, math.pi))))
    if not pieces:
        pieces.append(Piece(-1.0, 1.0, 1.0, 0.5, 2.5, 0.0))
    return PiecewiseExpPoly(tuple(pieces))


def sample_points(pieces: Sequence[Piece]) -> list[float]:
    """Piece endpoints, useful as quadrature break points."""
    return sorted({pc.a for pc in pieces} | {pc.b for pc in pieces})
