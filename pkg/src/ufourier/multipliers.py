"""Pointwise multipliers of U(T): the shift identity, modulation and the star-norm bound."""

from __future__ import annotations

import math
from functools import lru_cache
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy import fft as sp_fft

from .closed_form import phase_coefficients, triangle_coeffs, triangle_decay
from .phase import PiecewiseLinearPhase, first_corner, normalize_at_corner
from .spectral import (DEFAULT_OVERSAMPLE, Enclosure, SpectralVector, a_norm, star_norm,
                       star_tail_bound, u_norm)


def shift_identity_residuals(f: SpectralVector, n: int, Ns: Sequence[int]) -> np.ndarray:
    """Grid residuals of ``S_N(e_n f) = e_n S_{N+n}(f) + e_N f^(N-n) - e_{N+n} S_n(e_{-N} f)``.

    Each of the four terms is assembled from its own index set and
    evaluated separately on a grid fine enough for all of them; returns
    ``max_t |LHS - RHS|`` per ``N``.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    Ns = np.asarray(Ns, dtype=int)[:, None]
    K = f.half_degree
    top = int(Ns.max()) + 2 * n + K
    M = max(64, sp_fft.next_fast_len(2 * top + 2))
    k = np.arange(-top, top + 1)[None, :]
    cols = k[0] % M
    fk = f[np.clip(k - n, -K, K)] * (np.abs(k - n) <= K)          # f^(k - n) on the k-grid

    def spread(keep):
        out = np.zeros((Ns.shape[0], M), dtype=complex)
        out[:, cols] = np.where(keep, fk, 0.0)
        return sp_fft.ifft(out, axis=1) * M

    lhs = spread(np.abs(k) <= Ns)                                  # S_N(e_n f)
    t1 = spread(np.abs(k - n) <= Ns + n)                           # e_n S_{N+n}(f)
    t3 = spread(np.abs(k - Ns - n) <= n)                           # e_{N+n} S_n(e_{-N} f)
    roots = np.exp(2j * np.pi * np.arange(M) / M)
    t2 = f[Ns - n] * roots[(Ns * np.arange(M)) % M]                # e_N f^(N-n)
    return np.abs(lhs - (t1 + t2 - t3)).max(axis=1)


def shift_identity_residual(f: SpectralVector, n: int, N: int) -> float:
    return float(shift_identity_residuals(f, n, [N])[0])


@dataclass
class ModulationReport:
    n: int
    u_modulated: Enclosure
    u_f: Enclosure
    ratio: float

    @property
    def c1(self) -> float:
        return self.ratio


def modulation_bound_report(f: SpectralVector, n: int, N_max: int | None = None,
                            oversample: float = DEFAULT_OVERSAMPLE) -> ModulationReport:
    """``||e_n f||_U`` against ``||f||_U log(|n| + 2)``.

    Negative ``n`` goes through conjugation: ``||e_n f||_U = ||e_{-n} conj(f)||_U``.
    """
    base = f if n >= 0 else f.conj()
    g = base.shift(abs(n))
    N_max = g.half_degree if N_max is None else N_max
    ug = u_norm(g, N_max, oversample).u_norm
    uf = u_norm(f, max(f.half_degree, 0), oversample).u_norm
    return ModulationReport(n, ug, uf, float(ug.lo / (uf.lo * math.log(abs(n) + 2))))


def multiply(m: SpectralVector, f: SpectralVector) -> SpectralVector:
    """Coefficients of the pointwise product (full linear convolution)."""
    return SpectralVector(np.convolve(m.coeffs, f.coeffs))


@dataclass
class MultiplierReport:
    u_product: Enclosure
    star_m: float
    u_f: Enclosure
    c: float

    @property
    def bound_product(self) -> float:
        return self.star_m * self.u_f.lo


def multiplier_bound_report(m: SpectralVector, f: SpectralVector, N_max: int | None = None,
                            star_m: float | None = None,
                            oversample: float = DEFAULT_OVERSAMPLE) -> MultiplierReport:
    """``||m f||_U``, ``||m||_* ||f||_U`` and their ratio (the empirical constant).

    ``star_m`` overrides the star norm of ``m``, e.g. with the untruncated
    value when ``m`` is a truncation.
    """
    mf = multiply(m, f)
    N_max = mf.half_degree if N_max is None else N_max
    u_mf = u_norm(mf, N_max, oversample).u_norm
    u_f = u_norm(f, f.half_degree, oversample).u_norm
    s = star_norm(m) if star_m is None else star_m
    return MultiplierReport(u_mf, float(s), u_f, float(u_mf.lo / (s * u_f.lo)))


def truncated_triangle(eps: float, K: int) -> SpectralVector:
    return SpectralVector(triangle_coeffs(eps, np.arange(-K, K + 1)).astype(complex))


@lru_cache(maxsize=32)
def triangle_star_norm(eps: float, tol: float = 1e-6, chunk: int = 1 << 20) -> tuple[float, float, int]:
    """``||Delta_eps||_*`` to within ``tol``.

    Returns ``(partial, tail_bound, K)``: the partial sum over ``|k| <= K``
    and a bound on the remainder, with ``K`` the first power of two making
    the bound smaller than ``tol``.
    """
    C = triangle_decay(eps)
    K = 2
    while star_tail_bound(C, K) >= tol:
        K *= 2
    total = [triangle_coeffs(eps, 0.0) * math.log(2.0)]
    for start in range(1, K + 1, chunk):
        k = np.arange(start, min(start + chunk, K + 1), dtype=float)
        total.append(2.0 * math.fsum(triangle_coeffs(eps, k) * np.log(k + 2.0)))
    return math.fsum(total), star_tail_bound(C, K), K


@dataclass
class ChainReport:
    n: int
    u_windowed: Enclosure
    u_phase: Enclosure
    star_window: float
    window_tail_l1: float
    c: float


def chain_report(phi: PiecewiseLinearPhase, n: int, eps: float, window_K: int = 512,
                 slack: int = 256, oversample: float = DEFAULT_OVERSAMPLE,
                 corner_index: int | None = None) -> ChainReport:
    """``||Delta_eps e^{in phi}||_U`` against ``||Delta_eps||_* ||e^{in phi}||_U``.

    ``phi`` is first moved so the chosen corner sits at the origin, where
    the window is centred. ``e^{in phi}`` enters as its truncation at
    ``ceil(|n| max|slope|) + slack`` and the window as its truncation at
    ``window_K``; the window's l1 truncation error is reported.
    """
    j = first_corner(phi) if corner_index is None else corner_index
    psi, _ = normalize_at_corner(phi, j, eps)
    Kf = int(math.ceil(abs(n) * psi.max_abs_slope)) + slack
    f = phase_coefficients(psi, n, Kf)
    m = truncated_triangle(eps, window_K)
    star_full, star_tail, _ = triangle_star_norm(eps)
    rep = multiplier_bound_report(m, f, star_m=star_full + star_tail, oversample=oversample)
    return ChainReport(n, rep.u_product, rep.u_f, star_full + star_tail,
                       2.0 * triangle_decay(eps) / window_K, rep.c)


def submultiplicative_gap(m: SpectralVector, f: SpectralVector) -> float:
    """``||m||_A ||f||_A - ||m f||_A`` (nonnegative up to rounding)."""
    return a_norm(m) * a_norm(f) - a_norm(multiply(m, f))
