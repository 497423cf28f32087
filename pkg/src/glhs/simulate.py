"""Monte Carlo of right-invariant Brownian motion on GL(d, C).

Each replica starts at Z = I and applies ``steps`` left multiplications
``Z <- exp(M) Z`` (or the Ito-Euler step ``Z <- (I + M) Z``) with
``M = sqrt(ds/2) G`` and G a complex Ginibre matrix whose entries have unit
variance. Over total time ``s = -t/d`` this gives
``E[(1/d) tr(Z*Z)] = e^{ds/2} = e^{-t/2} = m_1(t)``, so the empirical moments
of Z*Z are estimators of m_n(t) up to finite-d and step-size bias.

Replica ``r`` draws from a Philox stream keyed by ``(seed, r)``; results do
not depend on how replicas are scheduled over worker threads.
"""

from __future__ import annotations

import math
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np
import scipy.linalg
from threadpoolctl import threadpool_limits

from . import _io
from .errors import DomainError, NumericalBlowup, ResourceExceeded

INTEGRATORS = ("expm", "euler")
BLOWUP = 1e150
MEMORY_BUDGET = 4 << 30  # bytes of dim^2 * reps complex128 storage
THREADS_ENV = "GLHS_THREADS"


def default_steps(t: float, dim: int) -> int:
    """max(16, ceil(64 d s)) so that d * ds <= 1/64."""
    # d * s = -t exactly; round first so that 64.000...01 does not become 65
    return max(16, math.ceil(round(-64.0 * t, 9)))


@dataclass(frozen=True)
class SimConfig:
    t: float
    dim: int
    steps: Optional[int] = None
    reps: int = 50
    seed: int = 0
    n_max: int = 3
    integrator: str = "expm"
    bins: int = 40
    memory_budget: int = MEMORY_BUDGET

    def __post_init__(self):
        if not self.t <= 0:
            raise DomainError(f"t must be negative (or 0 for no evolution), got {self.t!r}")
        if self.dim < 2:
            raise DomainError("dim must be >= 2")
        if self.reps < 1:
            raise DomainError("reps must be >= 1")
        if self.n_max < 1:
            raise DomainError("n_max must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise DomainError("seed must be a 64-bit unsigned integer")
        if self.integrator not in INTEGRATORS:
            raise DomainError(f"integrator must be one of {INTEGRATORS}")
        if self.steps is None:
            object.__setattr__(self, "steps", default_steps(self.t, self.dim))
        if self.steps < 1:
            raise DomainError("steps must be >= 1")

    @property
    def total_time(self) -> float:
        """s = -t/d."""
        return -self.t / self.dim

    @property
    def step_size(self) -> float:
        return self.total_time / self.steps


def replica_rng(seed: int, replica: int) -> np.random.Generator:
    """Counter-based stream for one replica, keyed by (seed, replica index)."""
    return np.random.Generator(np.random.Philox(key=(int(seed) << 64) | int(replica)))


def ginibre(rng: np.random.Generator, dim: int) -> np.ndarray:
    """Complex Gaussian matrix, E|G_ij|^2 = 1 (real and imaginary variance 1/2 each)."""
    g = rng.standard_normal((2, dim, dim))
    return (g[0] + 1j * g[1]) * math.sqrt(0.5)


def _run_replica(cfg: SimConfig, replica: int):
    d = cfg.dim
    z = np.eye(d, dtype=complex)
    if cfg.total_time > 0:
        rng = replica_rng(cfg.seed, replica)
        scale = math.sqrt(cfg.step_size / 2.0)
        for _ in range(cfg.steps):
            m = scale * ginibre(rng, d)
            if cfg.integrator == "expm":
                z = scipy.linalg.expm(m) @ z
            else:
                z = z + m @ z
            if np.abs(z).max() > BLOWUP:
                raise NumericalBlowup(
                    f"|Z| exceeded {BLOWUP:g} in replica {replica}; reduce the step size"
                )
    # eigenvalues of Z*Z as squared singular values of Z
    ev = scipy.linalg.svdvals(z) ** 2
    n_neg = int(np.count_nonzero(ev < 0))
    ev = np.maximum(ev, 0.0)
    powers = np.array([math.fsum(ev**n) / d for n in range(1, cfg.n_max + 1)])
    return powers, np.sort(ev), n_neg


def worker_count(workers: Optional[int] = None) -> int:
    if workers is None:
        env = os.environ.get(THREADS_ENV)
        workers = int(env) if env else (os.cpu_count() or 1)
    return max(1, int(workers))


@dataclass
class SimResult:
    config: SimConfig
    orders: np.ndarray
    mean: np.ndarray
    stderr: np.ndarray
    hist_edges: np.ndarray
    hist_counts: np.ndarray
    eigenvalues: np.ndarray = field(repr=False)
    n_clamped: int = 0
    wall_time: float = 0.0

    @property
    def empirical(self) -> list[tuple[int, float, float]]:
        return [
            (int(n), float(m), float(s)) for n, m, s in zip(self.orders, self.mean, self.stderr)
        ]

    def to_dict(self, include_timing: bool = False) -> dict:
        out = {
            "config": asdict(self.config),
            "empirical": [{"n": n, "mean": m, "stderr": s} for n, m, s in self.empirical],
            "histogram": {"edges": self.hist_edges, "counts": self.hist_counts},
            "eigenvalue_range": [float(self.eigenvalues[0]), float(self.eigenvalues[-1])],
            "n_clamped": self.n_clamped,
        }
        if include_timing:
            out["wall_time"] = self.wall_time
        return out

    def to_json(self, dest=None, include_timing: bool = False) -> None:
        _io.write_json(dest, self.to_dict(include_timing))

    def to_csv(self, dest=None) -> None:
        _io.write_csv(dest, ("n", "mean", "stderr"), self.empirical)

    def histogram_to_csv(self, dest=None) -> None:
        rows = zip(self.hist_edges[:-1], self.hist_edges[1:], self.hist_counts)
        _io.write_csv(dest, ("lo", "hi", "count"), rows)


def simulate(config: SimConfig, workers: Optional[int] = None) -> SimResult:
    """Run ``config.reps`` independent replicas and aggregate their statistics.

    ``workers`` defaults to the ``GLHS_THREADS`` environment variable, then to
    the machine's CPU count. BLAS is pinned to one thread per call so that
    every replica is computed bit-identically whatever the worker count.
    """
    need = config.dim**2 * config.reps * 16
    if need > config.memory_budget:
        raise ResourceExceeded(
            f"dim^2 * reps storage of {need} bytes exceeds the budget of {config.memory_budget}"
        )
    n_workers = min(worker_count(workers), config.reps)
    start = time.perf_counter()
    with threadpool_limits(limits=1, user_api="blas"):
        if n_workers == 1:
            per_rep = [_run_replica(config, r) for r in range(config.reps)]
        else:
            with ThreadPoolExecutor(max_workers=n_workers) as pool:
                per_rep = list(pool.map(lambda r: _run_replica(config, r), range(config.reps)))
    elapsed = time.perf_counter() - start

    powers = np.array([p for p, _, _ in per_rep])
    mean = np.array([math.fsum(col) / config.reps for col in powers.T])
    if config.reps > 1:
        var = np.array(
            [math.fsum((col - m) ** 2) / (config.reps - 1) for col, m in zip(powers.T, mean)]
        )
        stderr = np.sqrt(var / config.reps)
    else:
        stderr = np.full_like(mean, np.nan)

    pooled = np.sort(np.concatenate([ev for _, ev, _ in per_rep]))
    counts, edges = np.histogram(pooled, bins=config.bins)
    return SimResult(
        config=config,
        orders=np.arange(1, config.n_max + 1),
        mean=mean,
        stderr=stderr,
        hist_edges=edges,
        hist_counts=counts,
        eigenvalues=pooled,
        n_clamped=sum(k for _, _, k in per_rep),
        wall_time=elapsed,
    )


@dataclass
class LimitReport:
    t: float
    dim: int
    rows: list[dict]
    cdf_sup_distance: float

    @property
    def all_within(self) -> bool:
        return all(r["within_allowance"] for r in self.rows)

    def to_dict(self) -> dict:
        return asdict(self)

    def to_csv(self, dest=None) -> None:
        keys = ("n", "mean", "stderr", "limit", "z", "within_allowance")
        _io.write_csv(dest, keys, ([r[k] for k in keys] for r in self.rows))


def _model_cdf(t: float, xs: np.ndarray) -> np.ndarray:
    if t == 0:
        return (xs >= 1.0).astype(float)
    from .density import cdf_grid

    return cdf_grid(t, xs)


def empirical_vs_limit(result: SimResult) -> LimitReport:
    """Compare empirical moments with m_n(t) and the eigenvalue CDF with nu_t.

    A row is within allowance when ``|mean - m_n| <= 3 stderr + 2/d``. The
    distribution check is the largest gap between the empirical CDF and the
    model CDF over the histogram edges.
    """
    from .moments import moment_closed_form

    cfg = result.config
    rows = []
    for n, mean, se in result.empirical:
        limit = moment_closed_form(n, cfg.t)
        diff = mean - limit
        if se > 0:
            z = diff / se
        elif diff == 0:
            z = 0.0
        else:
            z = math.copysign(math.inf, diff) if se == 0 else math.nan
        allowance = (3 * se if se == se else 0.0) + 2.0 / cfg.dim
        rows.append(
            {
                "n": n,
                "mean": mean,
                "stderr": se,
                "limit": limit,
                "z": z,
                "within_allowance": bool(abs(diff) <= allowance),
            }
        )
    edges = result.hist_edges
    emp = np.searchsorted(result.eigenvalues, edges, side="right") / result.eigenvalues.size
    model = _model_cdf(cfg.t, edges)
    return LimitReport(cfg.t, cfg.dim, rows, float(np.max(np.abs(emp - model))))
