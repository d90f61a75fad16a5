"""Build runners and operation-count benchmarks."""
from __future__ import annotations

import csv
import math
import statistics
import time
from dataclasses import asdict, dataclass, fields
from typing import Iterable, Optional

import numpy as np

from .arith import Prim, get_backend
from .core import Presorting, make_presorting
from .instances import random_points
from .kdtree import build_kd_baseline, build_kd_presorted, kd_trees_equal
from .quadtree import build_baseline, build_presorted, verify
from .triangulate import triangulate_xsorted, verify_triangulation

CSV_VERSION = "presort-geom bench v1"
STRUCTURES = ("quadtree", "kdtree", "triangulation")


@dataclass
class BenchRecord:
    structure: str
    n: int
    seed: int
    backend: str
    mode: str
    wall_time: float
    type1: int = 0
    type2: int = 0
    skiplist_steps: int = 0
    range_queries: int = 0
    primitive_ops: int = 0
    verified: Optional[bool] = None

    @classmethod
    def columns(cls):
        return [f.name for f in fields(cls)]


def run_build(structure: str, pre: Presorting, mode: str = "presorted", backend: str = "native",
              seed: int = 0, check: bool = False, index: str = "wavelet"):
    """Build one structure and return (result, BenchRecord).

    ``backend`` picks the arithmetic (native or restricted), ``index`` the
    range index (wavelet or naive).
    """
    arith = get_backend(backend, pre.n)
    t0 = time.perf_counter()
    rec = BenchRecord(structure, pre.n, seed, backend, mode, 0.0)
    if structure == "quadtree":
        if mode == "presorted":
            tree, st = build_presorted(pre, seed, arith, index)
        else:
            tree, st = build_baseline(pre.a_x)
        rec.type1, rec.type2 = st.type1_splits, st.type2_splits
        rec.skiplist_steps, rec.range_queries = st.total_skiplist_steps, st.total_range_queries
        result = tree
        if check:
            rec.verified = not verify(tree, pre.a_x)
    elif structure == "kdtree":
        if mode == "presorted":
            tree, st = build_kd_presorted(pre, seed, arith, index)
            rec.skiplist_steps, rec.range_queries = st.total_skiplist_steps, st.total_range_queries
        else:
            tree = build_kd_baseline(pre.a_x)
        result = tree
        if check:
            rec.verified = kd_trees_equal(tree, build_kd_baseline(pre.a_x))
    elif structure == "triangulation":
        result = triangulate_xsorted(pre.a_x)
        rec.primitive_ops = result.stats.total
        if check:
            rec.verified = not verify_triangulation(pre.a_x, result)
    else:
        raise ValueError(f"unknown structure {structure!r}")
    rec.wall_time = time.perf_counter() - t0
    return result, rec


def arith_report(bits, seed: int = 0, samples: int = 64) -> list:
    """Op counts of the restricted backend for each word size 2**L, L in bits."""
    from .restricted import RestrictedArith, build_shift_table

    rng = np.random.default_rng(seed)
    rows = []
    for L in bits:
        ar = RestrictedArith(L)
        per_call = set()
        for _ in range(samples):
            a = int(rng.integers(0, ar.N))
            b = int(rng.integers(1, ar.N))
            ar.counter.reset()
            ar.divmod(a, b)
            per_call.add(ar.counter.total)
        _, ops = build_shift_table(ar.N, ar.k, Prim())
        rows.append({
            "L": L,
            "N": ar.N,
            "k": ar.k,
            "divmod_ops": per_call.pop() if len(per_call) == 1 else -1,
            "shift_table_ops": ops.counter.total,
            "shift_table_ops_per_N": ops.counter.total / ar.N,
            "table_build_ops": ar.build_ops.counter.total,
        })
    return rows


def write_arith_csv(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        fh.write(f"# {CSV_VERSION}; structure=divmod; columns fixed\n")
        w = csv.DictWriter(fh, fieldnames=list(rows[0]))
        w.writeheader()
        w.writerows(rows)


def fit_trend(ns, per_n):
    """Least-squares slope of per-element cost against log2 n, and the
    ratio of the last mean to the first."""
    xs = [math.log2(n) for n in ns]
    slope = float(np.polyfit(xs, per_n, 1)[0]) if len(ns) > 1 else 0.0
    ratio = per_n[-1] / per_n[0] if per_n and per_n[0] else float("nan")
    return slope, ratio


def bench(structure: str, ns: Iterable[int], reps: int = 5, seed: int = 0, backend: str = "native",
          mode: str = "presorted"):
    """Runs seeds seed..seed+reps-1 at each n.  Returns (records, summary)."""
    records = []
    for n in ns:
        for r in range(reps):
            s = seed + r
            pre = make_presorting(random_points(n, s))
            _, rec = run_build(structure, pre, mode, backend, s)
            records.append(rec)
    records.sort(key=lambda r: (r.n, r.seed))
    return records, summarize(records)


def _cost(rec: BenchRecord) -> int:
    return rec.skiplist_steps if rec.skiplist_steps else rec.primitive_ops


def summarize(records) -> dict:
    by_n = {}
    for rec in records:
        by_n.setdefault(rec.n, []).append(rec)
    ns = sorted(by_n)
    rows = []
    for n in ns:
        rs = by_n[n]
        cost = [_cost(r) / n for r in rs]
        queries = [r.range_queries / n for r in rs]
        rows.append({
            "n": n,
            "reps": len(rs),
            "steps_per_n_mean": statistics.fmean(cost),
            "steps_per_n_std": statistics.pstdev(cost),
            "queries_per_n_mean": statistics.fmean(queries),
            "queries_per_n_std": statistics.pstdev(queries),
            "wall_time_mean": statistics.fmean(r.wall_time for r in rs),
            "wall_time_std": statistics.pstdev(r.wall_time for r in rs),
        })
    slope, ratio = fit_trend(ns, [r["steps_per_n_mean"] for r in rows])
    return {"rows": rows, "slope_per_log2n": slope, "final_over_first": ratio}


SUMMARY_COLUMNS = ["n", "reps", "steps_per_n_mean", "steps_per_n_std", "queries_per_n_mean",
                   "queries_per_n_std", "wall_time_mean", "wall_time_std"]
RUN_COLUMNS = ["skiplist_steps", "range_queries", "primitive_ops", "wall_time"]
TREND_COLUMNS = ["slope_per_log2n", "final_over_first"]
CSV_COLUMNS = (["kind", "structure", "backend", "mode", "seed"] + SUMMARY_COLUMNS + RUN_COLUMNS
               + TREND_COLUMNS)


def write_csv(path, structure: str, summary: dict, records=(), backend: str = "native",
              mode: str = "presorted", seed: int = 0) -> None:
    """Fixed-column CSV: one ``run`` row per (n, seed), one ``n`` row per
    size and a final ``trend`` row.  ``seed`` on n/trend rows is the first
    seed of the schedule."""
    with open(path, "w", newline="") as fh:
        fh.write(f"# {CSV_VERSION}; structure={structure}; columns fixed\n")
        w = csv.DictWriter(fh, fieldnames=CSV_COLUMNS, restval="")
        w.writeheader()
        head = {"structure": structure, "backend": backend, "mode": mode}
        for rec in sorted(records, key=lambda r: (r.n, r.seed)):
            row = {"kind": "run", **head, "seed": rec.seed, "n": rec.n, "reps": 1}
            row.update({c: getattr(rec, c) for c in RUN_COLUMNS})
            w.writerow(row)
        for row in summary["rows"]:
            w.writerow({"kind": "n", **head, "seed": seed, **row})
        w.writerow({"kind": "trend", **head, "seed": seed,
                    **{c: summary[c] for c in TREND_COLUMNS}})


def read_csv(path) -> dict:
    """Summary and trend rows of a file written by write_csv."""
    rows, runs, trend = [], [], {}
    with open(path) as fh:
        header = fh.readline()
        if CSV_VERSION not in header:
            raise ValueError("unexpected bench CSV version")
        for rec in csv.DictReader(fh):
            if rec["kind"] == "n":
                rows.append({c: float(rec[c]) for c in SUMMARY_COLUMNS})
            elif rec["kind"] == "run":
                runs.append({c: float(rec[c]) for c in ["n", "seed"] + RUN_COLUMNS})
            else:
                trend = {c: float(rec[c]) for c in TREND_COLUMNS}
    return {"rows": rows, "runs": runs, **trend}


def record_dict(rec: BenchRecord) -> dict:
    return asdict(rec)
