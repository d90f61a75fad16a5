"""Command-line entry point: ``presort-geom <command> ...``."""
from __future__ import annotations

import argparse
import json
import math
import sys
from itertools import islice, permutations
from pathlib import Path

import numpy as np

from . import bench as B
from . import io
from .arith import get_backend
from .core import RankRect
from .hardness import (count_distinct_onion, gen_gap_family, gen_kpair_family, gen_onion_family,
                       largest_gap, max_empty_circle_brute, ordered_k_closest, separated_values)
from .instances import clustered_points, grid_segments, random_points
from .kdtree import build_kd_baseline, build_kd_presorted, kd_trees_equal
from .quadtree import build_baseline, build_presorted, trees_equal, verify
from .samplesearch import preprocess
from .segisect import brute_force_pairs, detect_intersection, make_endpoint_presorting
from .triangulate import Triangulation, triangulate_xsorted, verify_triangulation

FAMILIES = ("uniform", "clustered", "onion", "kpair", "gap", "segments")


def _ints(text: str):
    return [int(v) for v in text.split(",") if v.strip()]


def _nth_permutation(m: int, index: int):
    """The index-th permutation of 1..m in lexicographic order."""
    if not 0 <= index < math.factorial(m):
        raise ValueError(f"sigma index must be in [0, {math.factorial(m)})")
    return next(islice(permutations(range(1, m + 1)), index, None))


def cmd_gen(a) -> int:
    rng = np.random.default_rng(a.seed)
    meta = {"family": a.family, "n": a.n, "seed": a.seed}
    if a.family == "segments":
        segs, kind = grid_segments(a.n, a.seed)
        io.write_segments(a.out, segs)
        meta["injected"] = kind
        io.write_sidecar(a.out, meta)
        return 0
    if a.family == "uniform":
        pts = random_points(a.n, a.seed)
    elif a.family == "clustered":
        pts = clustered_points(a.n, a.seed)
    elif a.family == "onion":
        m = a.n // 4
        if a.sigma_index is not None:
            sigma = list(_nth_permutation(m, a.sigma_index))
        else:
            sigma = (rng.permutation(m) + 1).tolist()
        meta["sigma"] = sigma
        pts = gen_onion_family(a.n, sigma)
    elif a.family == "kpair":
        vals = rng.random(a.n).tolist()
        meta["values"] = vals
        pts = gen_kpair_family(vals)
    else:
        vals = separated_values(a.n, rng)
        meta["values"] = vals
        pts = gen_gap_family(vals)
    io.write_points(a.out, pts)
    io.write_sidecar(a.out, meta)
    return 0


def cmd_build(a) -> int:
    if a.structure == "isect":
        segs = io.read_segments(a.input)
        ep = make_endpoint_presorting(segs)
        stats = {}
        hit = detect_intersection(ep, stats)
        text = "none\n" if hit is None else f"{hit[0]} {hit[1]}\n"
        _emit(a.out, text)
        print(json.dumps({"structure": "isect", "n": len(segs), "pair": hit, **stats}))
        return 0
    pre = io.load_presorting(a.input)
    result, rec = B.run_build(a.structure, pre, a.mode, a.backend, a.seed, a.check, a.index)
    if a.structure == "quadtree":
        text = io.serialize_quadtree(result)
    elif a.structure == "kdtree":
        text = io.serialize_kdtree(result)
    else:
        text = "".join(f"{i} {j} {k}\n" for i, j, k in result.triangles)
    _emit(a.out, text)
    print(json.dumps(B.record_dict(rec)))
    return 0 if rec.verified in (None, True) else 1


def _emit(out, text):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_bench(a) -> int:
    if a.structure == "divmod":
        rows = B.arith_report(_ints(a.n), a.seed)
        if a.out:
            B.write_arith_csv(a.out, rows)
        for r in rows:
            print(json.dumps(r))
        return 0
    records, summary = B.bench(a.structure, _ints(a.n), a.reps, a.seed, a.backend, a.mode)
    if a.out:
        B.write_csv(a.out, a.structure, summary, records, a.backend, a.mode, a.seed)
    for r in summary["rows"]:
        print(json.dumps(r))
    print(json.dumps({"slope_per_log2n": summary["slope_per_log2n"],
                      "final_over_first": summary["final_over_first"]}))
    return 0


def cmd_verify(a) -> int:
    problems = []
    if a.structure == "isect":
        segs = io.read_segments(a.input)
        hit = detect_intersection(make_endpoint_presorting(segs))
        truth = brute_force_pairs(segs)
        if (hit is None) != (not truth):
            problems.append(f"detector says {hit}, brute force finds {len(truth)} pairs")
    else:
        pre = io.load_presorting(a.input)
        if a.structure == "quadtree":
            if a.tree:
                tree = io.parse_quadtree(Path(a.tree).read_text())
            else:
                tree, _ = build_presorted(pre, a.seed, get_backend(a.backend, pre.n))
            problems += [f"{v.kind} at node {v.node}: {v.detail}" for v in verify(tree, pre.a_x)]
            if a.cross_check and not trees_equal(tree, build_baseline(pre.a_x)[0]):
                problems.append("tree differs from the baseline build")
        elif a.structure == "kdtree":
            if a.tree:
                tree = io.parse_kdtree(Path(a.tree).read_text())
            else:
                tree, _ = build_kd_presorted(pre, a.seed, get_backend(a.backend, pre.n))
            if not kd_trees_equal(tree, build_kd_baseline(pre.a_x)):
                problems.append("kd-tree differs from the baseline build")
        else:
            if a.tree:
                tris = io.read_triangles(a.tree)
                t = Triangulation(pre.n, tris, [])
            else:
                t = triangulate_xsorted(pre.a_x)
            problems += verify_triangulation(pre.a_x, t)
    for p in problems:
        print(p)
    print("ok" if not problems else f"{len(problems)} problem(s)")
    return 0 if not problems else 1


def cmd_query(a) -> int:
    pre = io.load_presorting(a.input)
    ls = preprocess(pre, a.seed, get_backend(a.backend, pre.n))
    r = RankRect(*a.rect)
    base = ls.base
    if a.op == "count":
        print(base.range_count(r))
        return 0
    res = base.x_next(r) if a.op == "x_next" else base.y_next(r)
    if res is None:
        print("empty")
    else:
        for xr, yr in res:
            p = pre.a_x[xr - 1]
            print(f"{xr} {yr} {p.x!r} {p.y!r}")
    return 0


def cmd_hardness(a) -> int:
    rng = np.random.default_rng(a.seed)
    if a.family == "onion":
        print(json.dumps({"n": a.n, "distinct_onion_decompositions": count_distinct_onion(a.n)}))
    elif a.family == "kpair":
        vals = rng.random(a.n).tolist()
        res = ordered_k_closest(gen_kpair_family(vals), a.n)
        got = [vals[i // 2] for _, i, _ in res]
        print(json.dumps({"n": a.n, "recovers_sorted_order": got == sorted(vals)}))
    else:
        vals = separated_values(a.n, rng)
        r, c = max_empty_circle_brute(gen_gap_family(vals))
        print(json.dumps({"n": a.n, "diameter": 2 * r, "largest_gap": largest_gap(vals), "centre": c}))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="presort-geom", description="Geometric structures from presorted input.")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write a random or structured instance")
    g.add_argument("--family", choices=FAMILIES, default="uniform")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--sigma-index", type=int, help="onion family: lexicographic index of sigma")
    g.add_argument("--out", required=True)
    g.set_defaults(func=cmd_gen)

    b = sub.add_parser("build", help="build a structure from a point or segment file")
    b.add_argument("--structure", choices=("quadtree", "kdtree", "triangulation", "isect"), default="quadtree")
    b.add_argument("--input", required=True)
    b.add_argument("--mode", choices=("presorted", "baseline"), default="presorted")
    b.add_argument("--backend", choices=("native", "restricted"), default="native")
    b.add_argument("--index", choices=("wavelet", "naive"), default="wavelet")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--check", action="store_true", help="verify the result")
    b.add_argument("--out")
    b.set_defaults(func=cmd_build)

    be = sub.add_parser("bench", help="operation counts over several sizes")
    be.add_argument("--structure", choices=("quadtree", "kdtree", "triangulation", "divmod"), default="quadtree")
    be.add_argument("--n", default="1024,4096,16384",
                    help="comma-separated sizes (word bits L for divmod)")
    be.add_argument("--reps", type=int, default=5)
    be.add_argument("--seed", type=int, default=0)
    be.add_argument("--backend", choices=("native", "restricted"), default="native")
    be.add_argument("--mode", choices=("presorted", "baseline"), default="presorted")
    be.add_argument("--out")
    be.set_defaults(func=cmd_bench)

    v = sub.add_parser("verify", help="check a structure; exit status 0 when clean")
    v.add_argument("--structure", choices=("quadtree", "kdtree", "triangulation", "isect"), default="quadtree")
    v.add_argument("--input", required=True)
    v.add_argument("--tree", help="serialized structure to check (built fresh if omitted)")
    v.add_argument("--cross-check", action="store_true", help="also compare with the baseline build")
    v.add_argument("--backend", choices=("native", "restricted"), default="native")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify)

    q = sub.add_parser("query", help="range query on the rank index")
    q.add_argument("--input", required=True)
    q.add_argument("--rect", type=int, nargs=4, metavar=("XLO", "XHI", "YLO", "YHI"), required=True)
    q.add_argument("--op", choices=("x_next", "y_next", "count"), default="x_next")
    q.add_argument("--backend", choices=("native", "restricted"), default="native")
    q.add_argument("--seed", type=int, default=0)
    q.set_defaults(func=cmd_query)

    h = sub.add_parser("hardness", help="run a lower-bound family check")
    h.add_argument("--family", choices=("onion", "kpair", "gap"), default="onion")
    h.add_argument("--n", type=int, default=12)
    h.add_argument("--seed", type=int, default=0)
    h.set_defaults(func=cmd_hardness)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "n", None) is not None and isinstance(args.n, int) and args.n < 1:
        parser.error("--n must be positive")
    try:
        return args.func(args)
    except (OSError, ValueError, ArithmeticError, MemoryError) as exc:
        where = getattr(args, "input", None)
        prefix = f"{where}: " if where and str(where) not in str(exc) else ""
        print(f"presort-geom: error: {prefix}{exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
