"""Continuous piecewise-linear circle maps.

A phase is stored over exactly one period ``[t_0, t_0 + 2*pi]`` by its
breakpoints and the values at those breakpoints. Off-period arguments are
handled through the winding relation ``phi(t + 2*pi) = phi(t) + 2*pi*d``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

TWO_PI = 2.0 * math.pi

# relative tolerance for slope comparisons and for the period / degree checks
REL_TOL = 1e-12
# Delta_eps needs eps < pi strictly
EPS_CAP = math.pi - 1e-6


class PhaseError(ValueError):
    """Raised for malformed phases or invalid corner requests."""


def _close(a: float, b: float) -> bool:
    return math.isclose(a, b, rel_tol=REL_TOL, abs_tol=REL_TOL)


@dataclass(frozen=True)
class PiecewiseLinearPhase:
    breakpoints: tuple[float, ...]
    values: tuple[float, ...]
    degree: int
    slopes: tuple[float, ...]

    @property
    def start(self) -> float:
        return self.breakpoints[0]

    @property
    def n_pieces(self) -> int:
        return len(self.slopes)

    @property
    def max_abs_slope(self) -> float:
        return max(abs(s) for s in self.slopes)

    def corners(self) -> list[int]:
        """Indices ``j`` (into the breakpoints, cyclic) where the slope changes."""
        m = self.n_pieces
        return [j for j in range(m) if not _close(self.slopes[j - 1], self.slopes[j])]

    @property
    def is_linear(self) -> bool:
        return not self.corners()

    def __call__(self, t):
        return eval_phase(self, t)

    def to_dict(self) -> dict:
        return {"breakpoints": list(self.breakpoints), "values": list(self.values)}


@dataclass(frozen=True)
class CornerData:
    """A corner of a phase: slope ``left_slope`` just before ``location``,
    ``right_slope`` just after, both valid on a half-window ``half_width``."""

    location: float
    left_slope: float
    right_slope: float
    half_width: float

    def __post_init__(self):
        if _close(self.left_slope, self.right_slope):
            raise PhaseError("corner slopes must differ")
        if not 0.0 < self.half_width < math.pi:
            raise PhaseError(f"half_width must lie in (0, pi), got {self.half_width}")


def validate(breakpoints: Sequence[float], values: Sequence[float]) -> PiecewiseLinearPhase:
    """Check raw breakpoint/value data and build a phase.

    Raises PhaseError for non-monotone breakpoints, a stored span other than
    2*pi, or an endpoint mismatch that is not a multiple of 2*pi.
    """
    bp = [float(t) for t in breakpoints]
    vals = [float(v) for v in values]
    if len(bp) < 2:
        raise PhaseError("at least 2 breakpoints are required")
    if len(bp) != len(vals):
        raise PhaseError(f"{len(bp)} breakpoints but {len(vals)} values")
    if not all(math.isfinite(x) for x in bp + vals):
        raise PhaseError("breakpoints and values must be finite")
    if any(b <= a for a, b in zip(bp, bp[1:])):
        raise PhaseError("breakpoints must be strictly increasing")
    span = bp[-1] - bp[0]
    if abs(span - TWO_PI) > REL_TOL * max(1.0, abs(bp[0]), abs(bp[-1])):
        raise PhaseError(f"period must be 2*pi, got span {span!r}")
    winding = (vals[-1] - vals[0]) / TWO_PI
    degree = round(winding)
    if abs(vals[-1] - vals[0] - TWO_PI * degree) > REL_TOL * max(1.0, abs(vals[0]), abs(vals[-1])):
        raise PhaseError(f"non-integer degree: endpoint mismatch {vals[-1] - vals[0]!r} is not a multiple of 2*pi")
    slopes = tuple((vals[i + 1] - vals[i]) / (bp[i + 1] - bp[i]) for i in range(len(bp) - 1))
    return PiecewiseLinearPhase(tuple(bp), tuple(vals), int(degree), slopes)


def eval_phase(phi: PiecewiseLinearPhase, t):
    """Evaluate ``phi`` at any real ``t`` (scalar or array)."""
    t_arr = np.asarray(t, dtype=float)
    wraps = np.floor((t_arr - phi.start) / TWO_PI)
    local = t_arr - TWO_PI * wraps
    out = np.interp(local, phi.breakpoints, phi.values) + TWO_PI * phi.degree * wraps
    if out.ndim == 0:
        return float(out)
    return out


def load_phase(source) -> PiecewiseLinearPhase:
    """Build a phase from a JSON path, JSON text, or an already-parsed dict."""
    if isinstance(source, dict):
        doc = source
    elif isinstance(source, Path) or (isinstance(source, str) and not source.lstrip().startswith("{")):
        doc = json.loads(Path(source).read_text())
    else:
        doc = json.loads(source)
    try:
        return validate(doc["breakpoints"], doc["values"])
    except KeyError as exc:
        raise PhaseError(f"phase document is missing {exc}") from None


def sawtooth() -> PiecewiseLinearPhase:
    """``phi(t) = |t|`` on ``[-pi, pi]``; corners at 0 and at pi."""
    return validate([-math.pi, 0.0, math.pi], [math.pi, 0.0, math.pi])


def two_slope_phase(alpha: float, beta: float, half_width: float = 1.5, degree: int | None = None) -> PiecewiseLinearPhase:
    """A circle map with slope ``alpha`` on ``[-w, 0]`` and ``beta`` on ``[0, w]``.

    A single closing segment over the rest of the period restores the winding
    relation; ``degree`` defaults to the integer nearest ``(alpha + beta) / 2``.
    """
    w = float(half_width)
    if not 0.0 < w < math.pi:
        raise PhaseError("half_width must lie in (0, pi)")
    d = round((alpha + beta) / 2) if degree is None else int(degree)
    bp = [-w, 0.0, w, TWO_PI - w]
    vals = [-alpha * w, 0.0, beta * w, -alpha * w + TWO_PI * d]
    return validate(bp, vals)


def corner_at(phi: PiecewiseLinearPhase, j: int, epsilon: float | None = None) -> CornerData:
    """CornerData for breakpoint ``j`` without moving the phase."""
    m = phi.n_pieces
    if not phi.corners():
        raise PhaseError("no corner: phase is linear")
    j = j % m
    left, right = phi.slopes[j - 1], phi.slopes[j]
    if _close(left, right):
        raise PhaseError(f"breakpoint {j} is not a corner (slopes {left!r}, {right!r})")
    bp = phi.breakpoints
    left_len = bp[j] - bp[j - 1] if j > 0 else bp[m] - bp[m - 1]
    right_len = bp[j + 1] - bp[j]
    eps_max = min(left_len, right_len, EPS_CAP)
    if epsilon is None:
        eps = eps_max
    else:
        eps = float(epsilon)
        if not 0.0 < eps <= eps_max:
            raise PhaseError(f"epsilon={eps} exceeds the linear half-window {eps_max} at corner {j}")
    return CornerData(bp[j], left, right, eps)


def normalize_at_corner(phi: PiecewiseLinearPhase, j: int, epsilon: float | None = None):
    """Move corner ``j`` to the origin: ``psi(t) = phi(t + t_j) - phi(t_j)``.

    The returned phase is stored on ``[-pi, pi]``. Returns ``(psi, corner)``
    where ``corner.location == 0``.
    """
    c = corner_at(phi, j, epsilon)
    tc = c.location
    shifted = [((t - tc + math.pi) % TWO_PI) - math.pi for t in phi.breakpoints[:-1]]
    knots = sorted({s for s in shifted if abs(s) > REL_TOL and abs(abs(s) - math.pi) > REL_TOL} | {0.0})
    grid = [-math.pi] + knots + [math.pi]
    base = eval_phase(phi, tc)
    vals = [0.0 if s == 0.0 else eval_phase(phi, s + tc) - base for s in grid]
    psi = validate(grid, vals)
    return psi, CornerData(0.0, c.left_slope, c.right_slope, c.half_width)


def first_corner(phi: PiecewiseLinearPhase) -> int:
    corners = phi.corners()
    if not corners:
        raise PhaseError("no corner: phase is linear")
    return corners[0]


# -- case reduction ---------------------------------------------------------

REFLECT = "reflect"  # t -> -t maps slopes (a, b) to (-b, -a)
CONJUGATE = "conjugate"  # complex conjugation maps (a, b) to (-a, -b)


class CanonicalCase(NamedTuple):
    case: int
    alpha: float
    beta: float
    ops: tuple[str, ...]


def apply_symmetries(alpha: float, beta: float, ops: Sequence[str]) -> tuple[float, float]:
    for op in ops:
        if op == REFLECT:
            alpha, beta = -beta, -alpha
        elif op == CONJUGATE:
            alpha, beta = -alpha, -beta
        else:
            raise ValueError(f"unknown symmetry {op!r}")
    return alpha, beta


def _case_of(alpha: float, beta: float) -> int | None:
    if alpha <= 0.0 or _close(alpha, 0.0):
        return None
    if _close(beta, 0.0):
        return 3
    if _close(beta, -alpha):
        return 2
    if abs(beta) > alpha:
        return 1
    return None


def canonical_case(alpha: float, beta: float) -> CanonicalCase:
    """Reduce a slope pair to one of the three canonical cases.

    Searches the four-element orbit under reflection and conjugation for a
    pair with ``alpha > 0`` and either ``|beta| > alpha`` (case 1),
    ``beta == -alpha`` (case 2) or ``beta == 0`` (case 3).
    """
    if _close(alpha, beta):
        raise PhaseError("alpha == beta: not a corner")
    for ops in ((), (REFLECT,), (CONJUGATE,), (REFLECT, CONJUGATE)):
        a, b = apply_symmetries(alpha, beta, ops)
        case = _case_of(a, b)
        if case is not None:
            if case == 3:
                b = 0.0
            elif case == 2:
                b = -a
            return CanonicalCase(case, a, b, ops)
    raise AssertionError(f"no canonical form for ({alpha!r}, {beta!r})")  # unreachable for alpha != beta
