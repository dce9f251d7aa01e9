"""Trigonometric polynomials, partial sums and the C / U / A / star norms.

Coefficients are held in a two-sided array ``c[-K..K]``. Sup-norms are
certified from grid samples with Bernstein's inequality: if ``p`` has degree
``K`` and is sampled on ``M`` equispaced points then

    max_grid |p| <= ||p||_C <= max_grid |p| / (1 - pi*K/M).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, NamedTuple, Union

import numpy as np

DEFAULT_OVERSAMPLE = 16.0
MIN_GRID = 64
_EPS = np.finfo(float).eps


class Enclosure(NamedTuple):
    lo: float
    hi: float

    def __contains__(self, x) -> bool:
        return self.lo <= x <= self.hi

    @property
    def ratio(self) -> float:
        return self.hi / self.lo if self.lo > 0 else math.inf


@dataclass(frozen=True, eq=False)
class SpectralVector:
    """Fourier coefficients ``c_k`` for ``|k| <= K``, stored at index ``k + K``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex).ravel()
        if c.size % 2 != 1:
            raise ValueError(f"coefficient array must have odd length 2K+1, got {c.size}")
        object.__setattr__(self, "coeffs", c)

    @property
    def half_degree(self) -> int:
        return (self.coeffs.size - 1) // 2

    K = half_degree

    @property
    def ks(self) -> np.ndarray:
        K = self.half_degree
        return np.arange(-K, K + 1)

    @property
    def degree(self) -> int:
        """Largest ``|k|`` with a nonzero coefficient (0 for the zero vector)."""
        nz = np.flatnonzero(self.coeffs)
        if nz.size == 0:
            return 0
        return int(np.abs(nz - self.half_degree).max())

    def __getitem__(self, k):
        K = self.half_degree
        k_arr = np.asarray(k)
        inside = np.abs(k_arr) <= K
        out = np.where(inside, self.coeffs[np.clip(k_arr + K, 0, 2 * K)], 0.0)
        return complex(out) if out.ndim == 0 else out

    def __len__(self):
        return self.coeffs.size

    def __add__(self, other: "SpectralVector") -> "SpectralVector":
        K = max(self.half_degree, other.half_degree)
        return SpectralVector(self.padded(K).coeffs + other.padded(K).coeffs)

    def __sub__(self, other: "SpectralVector") -> "SpectralVector":
        return self + other.scale(-1.0)

    def scale(self, a: complex) -> "SpectralVector":
        return SpectralVector(a * self.coeffs)

    def padded(self, K: int) -> "SpectralVector":
        """Same polynomial re-indexed to half-degree ``K`` (must not drop terms)."""
        pad = K - self.half_degree
        if pad < 0:
            if np.any(self.coeffs[:-pad]) or np.any(self.coeffs[self.coeffs.size + pad:]):
                raise ValueError("padding would drop nonzero coefficients")
            return SpectralVector(self.coeffs[-pad:self.coeffs.size + pad])
        return SpectralVector(np.pad(self.coeffs, pad))

    def shift(self, n: int) -> "SpectralVector":
        """Coefficients of ``e_n * f``."""
        K = self.half_degree + abs(n)
        out = np.zeros(2 * K + 1, dtype=complex)
        start = K - self.half_degree + n
        out[start:start + self.coeffs.size] = self.coeffs
        return SpectralVector(out)

    def conj(self) -> "SpectralVector":
        """Coefficients of the complex conjugate function."""
        return SpectralVector(np.conj(self.coeffs[::-1]))

    def reflect(self) -> "SpectralVector":
        """Coefficients of ``f(-t)``."""
        return SpectralVector(self.coeffs[::-1].copy())

    @classmethod
    def from_function(cls, fn: Callable[[np.ndarray], np.ndarray], K: int) -> "SpectralVector":
        ks = np.arange(-K, K + 1)
        return cls(np.asarray(fn(ks), dtype=complex))

    @classmethod
    def zeros(cls, K: int) -> "SpectralVector":
        return cls(np.zeros(2 * K + 1, dtype=complex))

    @classmethod
    def unit(cls, m: int, K: int | None = None) -> "SpectralVector":
        """``e_m``, stored with half-degree ``K`` (default ``|m|``)."""
        K = abs(m) if K is None else K
        c = np.zeros(2 * K + 1, dtype=complex)
        if abs(m) <= K:
            c[m + K] = 1.0
        return cls(c)

    @classmethod
    def dirichlet(cls, K: int) -> "SpectralVector":
        return cls(np.ones(2 * K + 1, dtype=complex))


CoefficientSource = Union[SpectralVector, Callable[[np.ndarray], np.ndarray]]


def as_vector(c: CoefficientSource, K: int | None = None) -> SpectralVector:
    """Materialize ``c`` (a vector or a ``ks -> coefficients`` callable) up to ``|k| <= K``."""
    if isinstance(c, SpectralVector):
        if K is None or K == c.half_degree:
            return c
        if K > c.half_degree:
            return c.padded(K)
        return SpectralVector(c.coeffs[c.half_degree - K:c.half_degree + K + 1])
    if K is None:
        raise ValueError("a coefficient generator needs an explicit K")
    return SpectralVector.from_function(c, K)


def partial_sum(c: CoefficientSource, N: int) -> SpectralVector:
    """``S_N``: keep only ``|k| <= N``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if isinstance(c, SpectralVector):
        return as_vector(c, min(N, c.half_degree))
    return as_vector(c, N)


def _fft_error(c: np.ndarray, M: int) -> float:
    # per-entry bound on the FFT rounding error (conservative)
    return 8.0 * _EPS * (math.log2(M) + 1.0) * float(np.abs(c).sum())


def eval_grid(p: SpectralVector, M: int, method: str = "fft") -> np.ndarray:
    """Values of ``p`` at ``t_i = 2*pi*i/M``, ``i = 0..M-1``."""
    K = p.half_degree
    if M < 2 * K + 2:
        raise ValueError(f"grid of {M} points is too small for degree {K} (need >= {2 * K + 2})")
    if method == "fft":
        buf = np.zeros(M, dtype=complex)
        buf[p.ks % M] = p.coeffs
        return np.fft.ifft(buf) * M
    if method == "direct":
        t = 2.0 * np.pi * np.arange(M) / M
        return evaluate(p, t)
    raise ValueError(f"unknown method {method!r}")


def evaluate(p: SpectralVector, t) -> np.ndarray:
    """Direct summation of ``sum_k c_k e^{ikt}`` at arbitrary points."""
    t = np.atleast_1d(np.asarray(t, dtype=float))
    out = np.zeros(t.shape, dtype=complex)
    for k, ck in zip(p.ks, p.coeffs):
        if ck != 0:
            out += ck * np.exp(1j * k * t)
    return out


def grid_size(K: int, oversample: float = DEFAULT_OVERSAMPLE) -> int:
    return max(MIN_GRID, int(math.ceil(oversample * K)), 2 * K + 2)


def sup_norm_certified(p: SpectralVector, oversample: float = DEFAULT_OVERSAMPLE) -> Enclosure:
    """Enclosure of ``||p||_C`` from an oversampled grid.

    The grid has ``M = max(64, ceil(oversample*K))`` points, where ``K`` is
    the true degree of ``p``. ``oversample`` must exceed pi.
    """
    if oversample <= math.pi:
        raise ValueError("oversample must exceed pi for the Bernstein enclosure")
    K = p.degree
    M = grid_size(K, oversample)
    vals = eval_grid(as_vector(p, K), M)
    err = _fft_error(p.coeffs, M)
    top = float(np.abs(vals).max())
    lo = max(top - err, 0.0)
    hi = (top + err) / (1.0 - math.pi * K / M) * (1.0 + 4 * _EPS)
    return Enclosure(float(lo), float(hi))


@dataclass
class NormReport:
    u_norm: Enclosure
    a_norm: float
    star_norm: float
    sup_norm: Enclosure
    argmax_partial_sum: int
    n_max_used: int
    grid_size: int
    trace: np.ndarray | None = field(default=None, repr=False)

    @property
    def at_boundary(self) -> bool:
        """The best partial sum was the last one examined; the sup may lie beyond."""
        return self.argmax_partial_sum == self.n_max_used

    @property
    def flags(self) -> str:
        return "argmax_at_boundary" if self.at_boundary else ""

    def csv_row(self, n: int) -> list[str]:
        return [str(n), repr(self.u_norm.lo), repr(self.u_norm.hi), repr(self.a_norm),
                repr(self.star_norm), str(self.argmax_partial_sum), self.flags]

    CSV_HEADER = ("n", "u_lo", "u_hi", "a_norm", "star_norm", "argmaxN", "flags")


def u_norm(c: CoefficientSource, N_max: int, oversample: float = DEFAULT_OVERSAMPLE,
           keep_trace: bool = False) -> NormReport:
    """``max_{N <= N_max} ||S_N(f)||_C`` with a certified enclosure.

    Rings ``k = +-N`` are added one at a time on a fixed grid sized for
    ``N_max``, so the sweep costs ``O(N_max * M)``.
    """
    if oversample <= math.pi:
        raise ValueError("oversample must exceed pi for the Bernstein enclosure")
    vec = as_vector(c, N_max)
    coeffs = vec.coeffs
    K = N_max
    M = grid_size(K, oversample)
    i = np.arange(M)
    step = np.exp(2j * np.pi * i / M)

    vals = np.full(M, coeffs[K], dtype=complex)
    z = np.ones(M, dtype=complex)
    l1 = abs(coeffs[K])
    err = _fft_error(coeffs[K:K + 1], M)
    best_lo = best_hi = -1.0
    arg = 0
    los = np.empty(K + 1) if keep_trace else None
    for N in range(K + 1):
        if N > 0:
            if N % 64 == 0:
                # resync the running power against the exact roots table
                z = np.exp(2j * np.pi * ((N * i) % M) / M)
            else:
                z *= step
            a, b = coeffs[K + N], coeffs[K - N]
            vals += a * z + b * np.conj(z)
            l1 += abs(a) + abs(b)
            err = 16.0 * _EPS * (math.log2(M) + N / 64.0 + 1.0) * l1
        top = float(np.abs(vals).max())
        lo = max(top - err, 0.0)
        hi = (top + err) / (1.0 - math.pi * N / M) * (1.0 + 4 * _EPS)
        if keep_trace:
            los[N] = lo
        if lo > best_lo:
            best_lo, arg = lo, N
        best_hi = max(best_hi, hi)

    return NormReport(
        u_norm=Enclosure(float(best_lo), float(best_hi)),
        a_norm=a_norm(vec),
        star_norm=star_norm(vec),
        sup_norm=Enclosure(float(lo), float(hi)),
        argmax_partial_sum=arg,
        n_max_used=N_max,
        grid_size=M,
        trace=los,
    )


def a_norm(c: CoefficientSource, K: int | None = None) -> float:
    """``sum_{|k|<=K} |c_k|`` (the Wiener-algebra norm of the truncation)."""
    vec = as_vector(c, K)
    return math.fsum(np.abs(vec.coeffs))


def star_norm(c: CoefficientSource, K: int | None = None) -> float:
    """``sum_{|k|<=K} |c_k| log(|k|+2)``."""
    vec = as_vector(c, K)
    return math.fsum(np.abs(vec.coeffs) * np.log(np.abs(vec.ks) + 2.0))


def l1_tail_bound(decay: float, K: int) -> float:
    """Bound on ``sum_{|k|>K} |c_k|`` given ``|c_k| <= decay / k**2``."""
    return 2.0 * decay / K


def star_tail_bound(decay: float, K: int) -> float:
    """Bound on ``sum_{|k|>K} |c_k| log(|k|+2)`` given ``|c_k| <= decay / k**2`` (K >= 2)."""
    if K < 2:
        raise ValueError("K must be at least 2")
    # log(x+2)/x^2 is decreasing and <= log(2x)/x^2 for x >= 2
    return 2.0 * decay * (1.0 + math.log(2.0 * K)) / K


def lebesgue_constant(N: int, nodes: int = 24) -> float:
    """``L_N = (1/2pi) int |D_N|`` by Gauss-Legendre quadrature between zeros of ``D_N``."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    if N == 0:
        return 1.0
    x, w = np.polynomial.legendre.leggauss(nodes)
    edges = np.append(2.0 * np.pi * np.arange(N + 1) / (2 * N + 1), np.pi)
    a, b = edges[:-1, None], edges[1:, None]
    t = 0.5 * (b - a) * x + 0.5 * (a + b)
    d = np.sin((N + 0.5) * t) / np.sin(0.5 * t)
    lobes = 0.5 * (b - a)[:, 0] * np.abs(d @ w)
    return math.fsum(lobes) / np.pi


def lebesgue_fit(N_values) -> tuple[float, float]:
    """Least-squares ``L_N ~ slope * log N + intercept``."""
    N_values = np.asarray(N_values)
    L = np.array([lebesgue_constant(int(n)) for n in N_values])
    slope, intercept = np.polyfit(np.log(N_values), L, 1)
    return float(slope), float(intercept)
