"""n-sweeps of ``||e^{in phi}||_U`` and ``||e^{in phi}||_A``, log-growth fits and CSV output."""

from __future__ import annotations

import csv
import io
import json
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Sequence

import numpy as np
from scipy import stats

from .certificates import CertificateReport, certify, empirical_offset
from .closed_form import phase_coefficients, phase_l1_tail_bound
from .phase import (CornerData, PhaseError, PiecewiseLinearPhase, corner_at, first_corner, load_phase,
                    normalize_at_corner, sawtooth)
from .spectral import DEFAULT_OVERSAMPLE, a_norm, u_norm

DEFAULT_EPSILON = 1.0
DEFAULT_SLACK = 256


def geometric_ns(start: int = 16, stop: int = 4096, per_octave: int = 2) -> list[int]:
    """``round(start * 2**(j/per_octave))`` up to ``stop``: 16, 23, 32, 45, ..."""
    out = []
    j = 0
    while True:
        n = int(round(start * 2.0 ** (j / per_octave)))
        if n > stop:
            return out
        out.append(n)
        j += 1


DEFAULT_N_VALUES = geometric_ns()
DEFAULT_CERT_N_VALUES = geometric_ns(16, 300_000, per_octave=1)[::2] + [10 ** 6]


class ConfigError(ValueError):
    pass


@dataclass
class SweepConfig:
    phase: PiecewiseLinearPhase
    epsilon: float | None = None
    n_values: list[int] = field(default_factory=lambda: list(DEFAULT_N_VALUES))
    n_max_slack: int = DEFAULT_SLACK
    oversample: float = DEFAULT_OVERSAMPLE
    cert_n_values: list[int] = field(default_factory=lambda: list(DEFAULT_CERT_N_VALUES))
    corner: int | None = None

    @classmethod
    def from_dict(cls, doc: dict) -> "SweepConfig":
        if "phase" not in doc:
            raise ConfigError("config needs a 'phase' entry")
        try:
            phase = load_phase(doc["phase"])
        except PhaseError as exc:
            raise ConfigError(f"invalid phase: {exc}") from None
        policy = doc.get("n_max_policy", {})
        cfg = cls(
            phase=phase,
            epsilon=doc.get("epsilon"),
            n_values=[int(n) for n in doc.get("n_values", DEFAULT_N_VALUES)],
            n_max_slack=int(policy.get("slack", DEFAULT_SLACK)),
            oversample=float(doc.get("oversample", DEFAULT_OVERSAMPLE)),
            cert_n_values=[int(n) for n in doc.get("cert_n_values", DEFAULT_CERT_N_VALUES)],
            corner=doc.get("corner"),
        )
        cfg.check()
        return cfg

    @classmethod
    def load(cls, path) -> "SweepConfig":
        try:
            doc = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        return cls.from_dict(doc)

    def check(self) -> None:
        if self.phase.is_linear:
            raise ConfigError("phase is linear; theorem hypothesis violated (needs piecewise linear but not linear)")
        if any(n <= 0 for n in self.n_values + self.cert_n_values):
            raise ConfigError("n values must be positive")
        if self.oversample <= math.pi:
            raise ConfigError("oversample must exceed pi")
        if self.n_max_slack < 1:
            raise ConfigError("n_max_policy.slack must be positive")
        self.corner_data()

    def corner_index(self) -> int:
        return first_corner(self.phase) if self.corner is None else int(self.corner)

    def corner_data(self) -> CornerData:
        """The certified corner, moved to the origin; epsilon defaults to min(1, max admissible)."""
        j = self.corner_index()
        eps = self.epsilon
        if eps is None:
            eps = min(DEFAULT_EPSILON, corner_at(self.phase, j).half_width)
        try:
            return normalize_at_corner(self.phase, j, eps)[1]
        except PhaseError as exc:
            raise ConfigError(str(exc)) from None

    def n_max(self, n: int) -> int:
        return int(math.ceil(abs(n) * self.phase.max_abs_slope)) + self.n_max_slack


@dataclass
class SweepRow:
    n: int
    u_lo: float
    u_hi: float
    a_norm: float
    a_tail: float
    cert_bound: float
    cert_actual: float
    argmaxN: int
    wall_time_ms: int = field(default=0, compare=False)

    # wall time is kept out of the main CSV so identical configs give identical bytes
    CSV_COLUMNS = ("n", "u_lo", "u_hi", "a_norm", "a_tail", "cert_bound", "cert_actual", "argmaxN")


def sweep_row(cfg: SweepConfig, n: int, corner: CornerData | None = None) -> SweepRow:
    t0 = time.perf_counter()
    corner = cfg.corner_data() if corner is None else corner
    N_max = cfg.n_max(n)
    coeffs = phase_coefficients(cfg.phase, n, N_max)
    rep = u_norm(coeffs, N_max, cfg.oversample)
    try:
        cert = certify(corner, n)
        bound, actual = cert.paper_bound, abs(cert.partial_sum_at_0)
    except ValueError:
        bound = actual = math.nan  # n*alpha < 2: no certificate at this n
    return SweepRow(
        n=n, u_lo=rep.u_norm.lo, u_hi=rep.u_norm.hi, a_norm=a_norm(coeffs),
        a_tail=phase_l1_tail_bound(cfg.phase, n, N_max), cert_bound=bound, cert_actual=actual,
        argmaxN=rep.argmax_partial_sum, wall_time_ms=int(round(1000 * (time.perf_counter() - t0))),
    )


def run_sweep(cfg: SweepConfig, threads: int = 1) -> list[SweepRow]:
    """One row per n in ``cfg.n_values``, ascending."""
    corner = cfg.corner_data()
    ns = sorted(set(cfg.n_values))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(pool.map(lambda n: sweep_row(cfg, n, corner), ns))
    else:
        rows = [sweep_row(cfg, n, corner) for n in ns]
    return sorted(rows, key=lambda r: r.n)


def run_certificates(cfg: SweepConfig, threads: int = 1) -> list[CertificateReport]:
    corner = cfg.corner_data()
    ns = sorted(set(cfg.cert_n_values))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reps = list(pool.map(lambda n: certify(corner, n), ns))
    else:
        reps = [certify(corner, n) for n in ns]
    return sorted(reps, key=lambda r: r.n)


@dataclass
class FitResult:
    column: str
    slope: float
    intercept: float
    r2: float
    ratio_min: float
    ratio_max: float
    n_points: int

    @property
    def ratio_spread(self) -> float:
        return self.ratio_max / self.ratio_min


def fit_log_growth(rows: Sequence, column: str, n_min: int = 4) -> FitResult:
    """Least squares ``value ~ slope * log(n) + intercept`` and the range of ``value / log(n)``."""
    pts = [(r.n, getattr(r, column)) for r in rows if r.n >= n_min]
    pts = [(n, v) for n, v in pts if math.isfinite(v)]
    if len(pts) < 4:
        raise ValueError(f"need at least 4 rows with n >= {n_min}, got {len(pts)}")
    n = np.array([p[0] for p in pts], dtype=float)
    v = np.array([p[1] for p in pts], dtype=float)
    if np.all(n == n[0]):
        raise ValueError("degenerate fit: all n are equal")
    x = np.log(n)
    res = stats.linregress(x, v)
    ratio = v / x
    return FitResult(column, float(res.slope), float(res.intercept), float(res.rvalue ** 2),
                     float(ratio.min()), float(ratio.max()), len(pts))


def check_rows(rows: Sequence[SweepRow], certs: Sequence[CertificateReport] = (), tol: float = 1e-9) -> list[str]:
    """Human-readable failures of the inequalities every row must satisfy."""
    bad = []
    for r in rows:
        if not r.u_lo <= r.u_hi:
            bad.append(f"n={r.n}: u_lo > u_hi")
        if not r.u_hi <= r.a_norm + r.a_tail + tol:
            bad.append(f"n={r.n}: u_hi {r.u_hi} exceeds a_norm + tail {r.a_norm + r.a_tail}")
        if math.isfinite(r.cert_bound) and not r.cert_actual >= r.cert_bound - tol:
            bad.append(f"n={r.n}: certificate {r.cert_actual} below bound {r.cert_bound}")
    for c in certs:
        if not c.passed:
            bad.append(f"certificate n={c.n}: slack {c.slack}")
    return bad


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "1" if x else "0"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def sweep_csv(rows: Sequence[SweepRow]) -> str:
    return _csv_text(SweepRow.CSV_COLUMNS, [[_fmt(getattr(r, c)) for c in SweepRow.CSV_COLUMNS] for r in rows])


def plot_csv(rows: Sequence[SweepRow]) -> str:
    header = ("n", "log_n", "u_lo", "u_hi", "a_norm", "cert_bound")
    return _csv_text(header, [[_fmt(r.n), _fmt(math.log(r.n)), _fmt(r.u_lo), _fmt(r.u_hi), _fmt(r.a_norm),
                               _fmt(r.cert_bound)] for r in rows])


def certificates_csv(certs: Sequence[CertificateReport]) -> str:
    return _csv_text(CertificateReport.CSV_HEADER, [c.csv_row() for c in certs])


def timings_csv(rows: Sequence[SweepRow]) -> str:
    return _csv_text(("n", "wall_time_ms"), [[str(r.n), str(r.wall_time_ms)] for r in rows])


def read_sweep_csv(path) -> list[SweepRow]:
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        out = []
        for rec in reader:
            kw = {f.name: (int(rec[f.name]) if f.type in ("int", int) else float(rec[f.name]))
                  for f in fields(SweepRow) if f.name in rec}
            out.append(SweepRow(**kw))
    return out


def summary_text(rows: Sequence[SweepRow], fits: Sequence[FitResult],
                 certs: Sequence[CertificateReport] = (), failures: Sequence[str] = ()) -> str:
    lines = [f"rows: {len(rows)}" + (f" (n = {rows[0].n} .. {rows[-1].n})" if rows else "")]
    for fit in fits:
        lines.append(f"fit {fit.column}: slope={fit.slope:.6f} intercept={fit.intercept:.6f} r2={fit.r2:.6f} "
                     f"ratio/log n in [{fit.ratio_min:.6f}, {fit.ratio_max:.6f}]")
    lines.append(f"reference slope 1/(2 pi) = {1 / (2 * math.pi):.6f}")
    if certs:
        lines.append(f"certificates: {sum(c.passed for c in certs)}/{len(certs)} pass, "
                     f"n up to {max(c.n for c in certs)}")
        lines.append(f"empirical c(phi) = inf(|S_N(0)| - log(n)/(2 pi)) = {empirical_offset(certs):.6f}")
    lines.append("status: " + ("ok" if not failures else f"{len(failures)} failed checks"))
    lines.extend("  " + f for f in failures)
    return "\n".join(lines) + "\n"


def emit(rows: Sequence[SweepRow], fits: Sequence[FitResult] = (), out_dir=None,
         certs: Sequence[CertificateReport] = (), failures: Sequence[str] = ()) -> str:
    """Write sweep.csv, plot.csv, certificates.csv, timings.csv and summary.txt; return the summary."""
    summary = summary_text(rows, fits, certs, failures)
    if out_dir is not None:
        out = Path(out_dir)
        try:
            out.mkdir(parents=True, exist_ok=True)
            (out / "sweep.csv").write_text(sweep_csv(rows))
            (out / "plot.csv").write_text(plot_csv(rows))
            (out / "timings.csv").write_text(timings_csv(rows))
            if certs:
                (out / "certificates.csv").write_text(certificates_csv(certs))
            (out / "summary.txt").write_text(summary)
        except OSError as exc:
            raise OSError(f"cannot write results to {out}: {exc}") from exc
    return summary


def experiment(cfg: SweepConfig, out_dir=None, threads: int = 1, with_certificates: bool = True):
    """Sweep, certify, fit and emit in one go. Returns ``(rows, fits, certs, failures)``."""
    rows = run_sweep(cfg, threads)
    certs = run_certificates(cfg, threads) if with_certificates else []
    fits = []
    for column in ("u_lo", "a_norm"):
        try:
            fits.append(fit_log_growth(rows, column))
        except ValueError:
            pass
    failures = check_rows(rows, certs)
    emit(rows, fits, out_dir, certs, failures)
    return rows, fits, certs, failures


def sawtooth_config(**overrides) -> SweepConfig:
    cfg = SweepConfig(phase=sawtooth(), **overrides)
    cfg.check()
    return cfg


def config_dict(cfg: SweepConfig) -> dict:
    return {
        "phase": cfg.phase.to_dict(),
        "epsilon": cfg.epsilon,
        "n_values": list(cfg.n_values),
        "n_max_policy": {"slack": cfg.n_max_slack},
        "oversample": cfg.oversample,
        "cert_n_values": list(cfg.cert_n_values),
        "corner": cfg.corner,
    }

