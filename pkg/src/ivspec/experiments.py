"""Experiment harness: random generators, the binary-vs-spectral power
comparison pipeline, summary statistics, and CSV emission.

Each trial draws one interval matrix, computes one spectral decomposition,
and compares the spectral k-th power against binary exponentiation for
every exponent via the radii-sum ratio rho = R(spectral) / R(binary).
Spectral failures discard the pair and are tallied by cause.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .decomposition import (AssumptionViolatedError, InversionFailedError,
                            circulant_from_vector, decompose_circulant,
                            decompose_general, decompose_symmetric)
from .eigenvalues import MidpointEigError, symmetric_eigen_bounds
from .eigenvectors import EigvecFailedError
from .interval import Interval
from .matrices import (IntervalMatrix, SymIntervalMatrix, spectral_norm_ub,
                       sum_radii)
from .powers import (power_binary, power_circulant, power_spectral,
                     power_symmetric_spectral, power_widebox)

__all__ = [
    "ConfigError",
    "ExperimentConfig",
    "RunRecord",
    "SummaryRow",
    "MATRIX_CLASSES",
    "gen_general",
    "gen_symmetric",
    "gen_circulant",
    "run_comparison",
    "summarize",
    "write_records_csv",
    "write_summary_csv",
]

MATRIX_CLASSES = ("general", "symmetric", "symmetric-widebox", "circulant")
DEFAULT_EXPONENTS = (15, 20, 30, 50, 80, 120, 200)

RECORD_FIELDS = ["class", "n", "c", "r", "seed", "trial", "k",
                 "status", "cause", "R_binary", "R_spectral", "rho"]
SUMMARY_FIELDS = ["class", "n", "c", "r", "k", "successes",
                  "median_rho", "mean_rho",
                  "fail_discs", "fail_eigvec", "fail_inv", "fail_solver"]

_CAUSE_COLUMNS = {
    "discs-intersect": "fail_discs",
    "eigvec-failed": "fail_eigvec",
    "inversion-failed": "fail_inv",
    "solver-failed": "fail_solver",
}


class ConfigError(Exception):
    pass


@dataclass(frozen=True)
class ExperimentConfig:
    matrix_class: str
    n: int = 5
    c: float = 10.0
    r: float = 0.001
    trials: int = 100
    exponents: tuple = DEFAULT_EXPONENTS
    seed: int = 0
    out: str | None = None
    summary_out: str | None = None
    force_fallback: bool = False
    threads: int = 1
    timings: bool = False

    def __post_init__(self):
        if self.matrix_class not in MATRIX_CLASSES:
            raise ConfigError(f"unknown matrix class {self.matrix_class!r}")
        if self.n < 1:
            raise ConfigError("n must be >= 1")
        if self.r < 0:
            raise ConfigError("radius must be >= 0")
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        exps = tuple(self.exponents)
        if not exps or any(e < 1 for e in exps) or list(exps) != sorted(set(exps)):
            raise ConfigError("exponents must be a nonempty ascending list")
        object.__setattr__(self, "exponents", exps)
        if self.threads < 1:
            raise ConfigError("threads must be >= 1")


@dataclass
class RunRecord:
    trial: int
    k: int
    status: str  # "success" | "fail" | "anomaly"
    cause: str | None
    r_binary: float | None
    r_spectral: float | None
    rho: float | None
    t_binary: float | None = None
    t_spectral: float | None = None


@dataclass
class SummaryRow:
    k: int
    successes: int
    median_rho: float | None
    mean_rho: float | None
    fail_discs: int = 0
    fail_eigvec: int = 0
    fail_inv: int = 0
    fail_solver: int = 0
    anomalies: int = 0


# random generators ---------------------------------------------------------

def _normalize(A: IntervalMatrix) -> tuple[IntervalMatrix, float]:
    u = spectral_norm_ub(A)
    if u == 0.0:
        return A, 1.0
    return A.div_scalar(Interval.point(u)), u


def gen_general(n: int, c: float, r: float,
                rng: np.random.Generator) -> IntervalMatrix:
    """Midpoint c*G, radius r*G' with G uniform on (-1,1) and G' on (0,1),
    normalized by the spectral norm upper bound."""
    G = rng.uniform(-1.0, 1.0, (n, n))
    Gp = rng.random((n, n))
    mid = c * G
    rad = r * Gp
    A = IntervalMatrix(mid - rad, mid + rad)
    return _normalize(A)[0]


def gen_symmetric(n: int, c: float, r: float,
                  rng: np.random.Generator) -> SymIntervalMatrix:
    """As gen_general with the diagonal and above-diagonal entries mirrored."""
    G = rng.uniform(-1.0, 1.0, (n, n))
    Gp = rng.random((n, n))
    G = np.triu(G) + np.triu(G, 1).T
    Gp = np.triu(Gp) + np.triu(Gp, 1).T
    mid = c * G
    rad = r * Gp
    A = SymIntervalMatrix(mid - rad, mid + rad)
    norm, _ = _normalize(A)
    return SymIntervalMatrix(norm.lo, norm.hi)


def gen_circulant(n: int, c: float, r: float,
                  rng: np.random.Generator) -> tuple[IntervalMatrix, IntervalMatrix]:
    """Interval generating vector plus the circulant matrix it induces,
    both normalized by the matrix norm bound."""
    g = rng.uniform(-1.0, 1.0, n)
    gp = rng.random(n)
    mid = c * g
    rad = r * gp
    vec = IntervalMatrix((mid - rad)[:, None], (mid + rad)[:, None])
    u = spectral_norm_ub(circulant_from_vector(vec))
    if u > 0.0:
        vec = vec.div_scalar(Interval.point(u))
    return vec, circulant_from_vector(vec)


# pipeline -------------------------------------------------------------------

def _trial_rng(seed: int, trial: int) -> np.random.Generator:
    # one independent, reproducible substream per trial
    return np.random.default_rng([seed, trial])


def _decompose_for_class(cfg: ExperimentConfig, rng):
    """Generate one matrix and its spectral data; returns
    (matrix, spectral_power_fn, fail_cause)."""
    if cfg.matrix_class == "general":
        A = gen_general(cfg.n, cfg.c, cfg.r, rng)
        try:
            d = decompose_general(A)
        except AssumptionViolatedError:
            return A, None, "discs-intersect"
        except EigvecFailedError:
            return A, None, "eigvec-failed"
        except InversionFailedError:
            return A, None, "inversion-failed"
        except MidpointEigError:
            return A, None, "solver-failed"
        return A, (lambda k: power_spectral(A, k, d)), None
    if cfg.matrix_class == "symmetric":
        A = gen_symmetric(cfg.n, cfg.c, cfg.r, rng)
        try:
            d = decompose_symmetric(A, force_fallback=cfg.force_fallback)
        except MidpointEigError:
            return A, None, "solver-failed"
        return A, (lambda k: power_symmetric_spectral(A, k, d)), None
    if cfg.matrix_class == "symmetric-widebox":
        A = gen_symmetric(cfg.n, cfg.c, cfg.r, rng)
        try:
            bounds = symmetric_eigen_bounds(A)
        except MidpointEigError:
            return A, None, "solver-failed"
        return A, (lambda k: power_widebox(A, k, bounds)), None
    if cfg.matrix_class == "circulant":
        vec, A = gen_circulant(cfg.n, cfg.c, cfg.r, rng)
        d = decompose_circulant(vec)
        return A, (lambda k: power_circulant(vec, k, d)), None
    raise ConfigError(f"unknown matrix class {cfg.matrix_class!r}")


def _run_trial(cfg: ExperimentConfig, trial: int) -> list[RunRecord]:
    rng = _trial_rng(cfg.seed, trial)
    A, spectral_fn, cause = _decompose_for_class(cfg, rng)
    records = []
    for k in cfg.exponents:
        t0 = time.perf_counter()
        binary = power_binary(A, k)
        t_bin = time.perf_counter() - t0
        r_bin = sum_radii(binary.enclosure) if binary.ok else None
        if cause is not None:
            records.append(RunRecord(trial, k, "fail", cause, r_bin, None, None,
                                     t_binary=t_bin))
            continue
        if not binary.ok:
            records.append(RunRecord(trial, k, "anomaly", "binary-overflow",
                                     None, None, None, t_binary=t_bin))
            continue
        t0 = time.perf_counter()
        spectral = spectral_fn(k)
        t_spec = time.perf_counter() - t0
        r_spec = sum_radii(spectral.enclosure)
        if r_bin == 0.0:
            records.append(RunRecord(trial, k, "anomaly", "zero-binary-radius",
                                     r_bin, r_spec, None,
                                     t_binary=t_bin, t_spectral=t_spec))
            continue
        records.append(RunRecord(trial, k, "success", None, r_bin, r_spec,
                                 r_spec / r_bin, t_binary=t_bin,
                                 t_spectral=t_spec))
    return records


def run_comparison(cfg: ExperimentConfig) -> list[RunRecord]:
    """All trial records, ordered by (trial, k) regardless of scheduling."""
    if cfg.threads == 1:
        batches = [_run_trial(cfg, t) for t in range(cfg.trials)]
    else:
        with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
            batches = list(pool.map(lambda t: _run_trial(cfg, t),
                                    range(cfg.trials)))
    return [rec for batch in batches for rec in batch]


def summarize(records: list[RunRecord]) -> list[SummaryRow]:
    """Per-exponent statistics over the successful trials only; the median
    is the lower-middle element for even counts."""
    by_k: dict[int, list[RunRecord]] = {}
    for rec in records:
        by_k.setdefault(rec.k, []).append(rec)
    rows = []
    for k in sorted(by_k):
        recs = by_k[k]
        rhos = sorted(r.rho for r in recs if r.status == "success")
        row = SummaryRow(
            k=k,
            successes=len(rhos),
            median_rho=rhos[(len(rhos) - 1) // 2] if rhos else None,
            mean_rho=sum(rhos) / len(rhos) if rhos else None,
        )
        for rec in recs:
            if rec.status == "fail":
                col = _CAUSE_COLUMNS[rec.cause]
                setattr(row, col, getattr(row, col) + 1)
            elif rec.status == "anomaly":
                row.anomalies += 1
        rows.append(row)
    return rows


# CSV emission ---------------------------------------------------------------

def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_records_csv(cfg: ExperimentConfig, records: list[RunRecord], f) -> None:
    if isinstance(f, str):
        with open(f, "w", newline="") as fh:
            write_records_csv(cfg, records, fh)
            return
    fields = list(RECORD_FIELDS)
    if cfg.timings:
        fields += ["t_binary", "t_spectral"]
    f.write(",".join(fields) + "\n")
    for rec in records:
        row = [cfg.matrix_class, cfg.n, _fmt(cfg.c), _fmt(cfg.r), cfg.seed,
               rec.trial, rec.k, rec.status, _fmt(rec.cause),
               _fmt(rec.r_binary), _fmt(rec.r_spectral), _fmt(rec.rho)]
        if cfg.timings:
            row += [_fmt(rec.t_binary), _fmt(rec.t_spectral)]
        f.write(",".join(_fmt(v) if not isinstance(v, str) else v
                         for v in row) + "\n")


def write_summary_csv(cfg: ExperimentConfig, rows: list[SummaryRow], f) -> None:
    if isinstance(f, str):
        with open(f, "w", newline="") as fh:
            write_summary_csv(cfg, rows, fh)
            return
    f.write(",".join(SUMMARY_FIELDS) + "\n")
    for row in rows:
        cells = [cfg.matrix_class, cfg.n, _fmt(cfg.c), _fmt(cfg.r), row.k,
                 row.successes, _fmt(row.median_rho), _fmt(row.mean_rho),
                 row.fail_discs, row.fail_eigvec, row.fail_inv, row.fail_solver]
        f.write(",".join(_fmt(v) if not isinstance(v, str) else v
                         for v in cells) + "\n")
