"""Timing harness contrasting the quadratic exact path with random features.

For each size ``n`` two uniform point sets in ``[0, 1]^d`` of ``n // 2`` and
``n - n // 2`` points (total size ``n``) are drawn from a generator seeded
with ``(seed, n)``. Both methods run on the same inputs; each record is the
median of ``repeats`` monotonic-clock timings of the computation alone,
taken after one warm-up call.
"""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import asdict, dataclass

import numpy as np

from kdist.exact import kernel_distance_sq
from kdist.features import approx_distance_sq, embed_measure, sample_feature_map
from kdist.kernels import KernelSpec
from kdist.shapes import DiscreteMeasure

FIELDS = ("n", "method", "rho", "wall_time_ms", "d_squared")


@dataclass(frozen=True)
class BenchRecord:
    n: int
    method: str
    rho: int | None
    wall_time_ms: float
    d_squared: float


def synthetic_pair(n: int, d: int, seed: int) -> tuple[DiscreteMeasure, DiscreteMeasure]:
    rng = np.random.default_rng([seed, n])
    half = n // 2
    return DiscreteMeasure(rng.random((half, d))), DiscreteMeasure(rng.random((n - half, d)))


def features_distance_sq(P, Q, sigma: float, rho: int, seed: int) -> float:
    """Approximate D^2 via a freshly sampled feature map (same path as the CLI)."""
    f = sample_feature_map(sigma, P.dimension, rho, seed)
    return approx_distance_sq(embed_measure(f, P), embed_measure(f, Q))


def bench(
    sizes,
    rho: int = 256,
    seed: int = 0,
    sigma: float = 1.0,
    d: int = 3,
    repeats: int = 5,
    methods=("exact", "features"),
) -> list[BenchRecord]:
    k = KernelSpec.gaussian(sigma)
    jobs = []
    for n in sizes:
        P, Q = synthetic_pair(n, d, seed)
        for method in methods:
            if method == "exact":
                fn = lambda P=P, Q=Q: kernel_distance_sq(k, P, Q)
            elif method == "features":
                fn = lambda P=P, Q=Q: features_distance_sq(P, Q, sigma, rho, seed)
            else:
                raise ValueError(f"unknown method {method!r}")
            jobs.append((n, method, fn))

    values = [fn() for _, _, fn in jobs]  # warm-up, also the reported values
    times = [[] for _ in jobs]
    # round-robin so a slow stretch on a shared machine hits every record alike
    for _ in range(repeats):
        for i, (_, _, fn) in enumerate(jobs):
            t0 = time.perf_counter()
            fn()
            times[i].append((time.perf_counter() - t0) * 1e3)
    return [
        BenchRecord(n, method, rho if method == "features" else None, statistics.median(t), v)
        for (n, method, _), t, v in zip(jobs, times, values)
    ]


def records_to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=FIELDS, lineterminator="\n")
    w.writeheader()
    for r in records:
        row = asdict(r)
        row["rho"] = "" if r.rho is None else r.rho
        row["d_squared"] = repr(r.d_squared)
        w.writerow(row)
    return buf.getvalue()


def doubling_ratios(records, method: str) -> dict[int, float]:
    """``t(2n) / t(n)`` for every n whose double is also present."""
    t = {r.n: r.wall_time_ms for r in records if r.method == method}
    return {n: t[2 * n] / t[n] for n in sorted(t) if 2 * n in t}
