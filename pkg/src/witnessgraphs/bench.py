"""Benchmark harness: timed runs with arithmetic-operation counts.

Algorithms bump global counters at their dominant comparison sites; a run
snapshots those counters around one call and reports the delta next to the
wall time, so asymptotic trends can be asserted without trusting the clock.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from typing import Callable, Sequence

from . import counters, kernel
from .errors import WitnessGraphError
from .geometry import PointConfig, PositionClass, point
from .square_graph import sg_pos_naive, sg_pos_sensitive
from .witness_delaunay import wdg_naive, wdg_sweep

CSV_HEADER = "algorithm,n,k,wall_ms,ops"


@dataclass(frozen=True)
class BenchRecord:
    algorithm: str
    n: int
    k: int
    wall_ms: float
    ops: int

    def csv_row(self) -> str:
        return f"{self.algorithm},{self.n},{self.k},{self.wall_ms:.3f},{self.ops}"


def to_csv(records: Sequence[BenchRecord]) -> str:
    return "\n".join([CSV_HEADER] + [r.csv_row() for r in records]) + "\n"


def run_case(algorithm: str, fn: Callable, config: PointConfig) -> BenchRecord:
    counters.reset()
    t0 = time.perf_counter()
    g = fn(config)
    wall_ms = (time.perf_counter() - t0) * 1000.0
    ops = sum(counters.snapshot().values())
    return BenchRecord(algorithm, len(config.vertices), len(g.edges), wall_ms, ops)


def stabbed_axis_family(n: int, seed: int) -> tuple[PointConfig, int]:
    """GENERAL_AXIS instance with one witness and about n/4 edges.

    Built from the distinctness gadget: each value v becomes the point
    (S*v - i, S*v + i) and the witness sits left and below everything, so
    the edges are exactly the pairs with equal v.  About a quarter of the
    values are duplicated, giving edge count n//4 exactly.
    """
    if n < 8:
        raise WitnessGraphError("family needs n >= 8")
    rng = random.Random(seed)
    dups = n // 4
    distinct = rng.sample(range(1, 50 * n), n - dups)
    values = distinct + distinct[:dups]
    rng.shuffle(values)
    s = 10 * n
    pts = [point(s * v - i, s * v + i) for i, v in enumerate(values, start=1)]
    cfg = PointConfig(tuple(pts), (point(0, 0),), PositionClass.GENERAL_AXIS)
    return cfg, dups


def witnessed_delaunay_family(n: int, seed: int) -> PointConfig:
    """Vertices witnessed by themselves: the graph is DT(P), so k = O(n)."""
    from .instances import gen_random

    inst = gen_random(n, 0, seed)
    pts = inst.config.vertices
    return PointConfig(pts, pts, PositionClass.GENERAL_DELAUNAY)


def bench_sgpos(sizes: Sequence[int], seeds: Sequence[int], verify: bool = False) -> list[BenchRecord]:
    records = []
    for n in sizes:
        for seed in seeds:
            cfg, expect_k = stabbed_axis_family(n, seed)
            rec_naive = run_case("sg_pos_naive", sg_pos_naive, cfg)
            rec_sens = run_case("sg_pos_sensitive", sg_pos_sensitive, cfg)
            if verify and not (rec_naive.k == rec_sens.k == expect_k):
                raise WitnessGraphError(
                    f"edge counts disagree at n={n} seed={seed}: "
                    f"{rec_naive.k} vs {rec_sens.k} vs {expect_k}"
                )
            records += [rec_naive, rec_sens]
    return sorted(records, key=lambda r: (r.algorithm, r.n))


def bench_wdg(sizes: Sequence[int], seeds: Sequence[int], verify: bool = False) -> list[BenchRecord]:
    records = []
    for n in sizes:
        for seed in seeds:
            cfg = witnessed_delaunay_family(n, seed)
            rec_naive = run_case("wdg_naive", wdg_naive, cfg)
            rec_sweep = run_case("wdg_sweep", wdg_sweep, cfg)
            if verify and rec_naive.k != rec_sweep.k:
                raise WitnessGraphError(
                    f"edge counts disagree at n={n} seed={seed}: "
                    f"{rec_naive.k} vs {rec_sweep.k}"
                )
            records += [rec_naive, rec_sweep]
    return sorted(records, key=lambda r: (r.algorithm, r.n))


def bench_kernels(sizes: Sequence[int], seeds: Sequence[int]) -> list[BenchRecord]:
    """Delaunay construction, compiled kernel against the pure one."""
    records = []
    for n in sizes:
        for seed in seeds:
            rng = random.Random(seed)
            seen = set()
            while len(seen) < n:
                seen.add((rng.randint(-(10**6), 10**6), rng.randint(-(10**6), 10**6)))
            pts = sorted(seen)
            px = [x for x, _ in pts]
            py = [y for _, y in pts]
            edge_counts = {}
            for kind in kernel.available_kernels():
                counters.reset()
                t0 = time.perf_counter()
                tri = getattr(kernel, "_" + kind).build_delaunay(px, py)
                wall_ms = (time.perf_counter() - t0) * 1000.0
                k = len({
                    (min(a, b), max(a, b))
                    for t in tri.triangles()
                    for a, b in ((t[0], t[1]), (t[1], t[2]), (t[2], t[0]))
                })
                edge_counts[kind] = k
                records.append(BenchRecord(f"delaunay[{kind}]", n, k, wall_ms, 0))
            if len(set(edge_counts.values())) > 1:
                raise WitnessGraphError(f"kernels disagree at n={n}: {edge_counts}")
    return sorted(records, key=lambda r: (r.algorithm, r.n))


SUITES = {
    "sgpos": bench_sgpos,
    "wdg": bench_wdg,
    "kernels": lambda sizes, seeds, verify=False: bench_kernels(sizes, seeds),
}


def run_suite(suite: str, sizes: Sequence[int], seeds: Sequence[int], verify: bool = False) -> list[BenchRecord]:
    if suite not in SUITES:
        raise WitnessGraphError(f"unknown suite {suite!r}; pick from {sorted(SUITES)}")
    if not sizes or not seeds:
        return []
    return SUITES[suite](sizes, seeds, verify=verify)


def ratio_series(records: Sequence[BenchRecord], num_alg: str, den_alg: str) -> list[tuple[int, float]]:
    """Per-size ratio of summed op counts, ascending in n."""
    sums: dict[tuple[str, int], int] = {}
    for r in records:
        key = (r.algorithm, r.n)
        sums[key] = sums.get(key, 0) + r.ops
    ns = sorted({n for a, n in sums if a == num_alg})
    out = []
    for n in ns:
        den = sums.get((den_alg, n))
        if den:
            out.append((n, sums[(num_alg, n)] / den))
    return out
