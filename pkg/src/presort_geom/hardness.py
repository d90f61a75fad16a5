"""Instance families whose presorting is fixed while the answer varies, and
brute-force solvers to check them.

* ``gen_onion_family``: the x- and y-order of the point list never changes,
  yet the onion layer holding each of the last n/4 points follows an
  arbitrary permutation.
* ``gen_kpair_family``: pairs strung along the diagonal whose distances are
  the input values, so the k closest pairs list the values in sorted order.
* ``gen_gap_family``: values placed on a thin vertical strip; the largest
  empty circle spans the widest gap between consecutive values.
"""
from __future__ import annotations

import hashlib
import math
import struct
from itertools import combinations, permutations
from typing import Sequence

import numpy as np

from .errors import DegenerateHull, EpsTooLarge, InfeasiblePlacement, ValueSeparationViolated
from .triangulate import hull_indices, orient2d


def x_order(points) -> tuple:
    """Positions of the points listed by increasing x (ties by position)."""
    return tuple(sorted(range(len(points)), key=lambda i: (points[i][0], i)))


def y_order(points) -> tuple:
    return tuple(sorted(range(len(points)), key=lambda i: (points[i][1], i)))


def _spaced(p, q, count):
    """``count`` points equally spaced strictly inside segment pq."""
    return [(p[0] + (q[0] - p[0]) * j / (count + 1), p[1] + (q[1] - p[1]) * j / (count + 1))
            for j in range(1, count + 1)]


def _clip(poly, p, q):
    """Parameter interval of segment p + t (q - p), t in [0, 1], inside the
    convex polygon ``poly`` (counter-clockwise)."""
    t0, t1 = 0.0, 1.0
    dx, dy = q[0] - p[0], q[1] - p[1]
    k = len(poly)
    for i in range(k):
        a, b = poly[i], poly[(i + 1) % k]
        ex, ey = b[0] - a[0], b[1] - a[1]
        # inside means cross(e, point - a) >= 0
        num = ex * (p[1] - a[1]) - ey * (p[0] - a[0])
        den = ex * dy - ey * dx
        if den == 0:
            if num < 0:
                return None
            continue
        t = -num / den
        if den > 0:
            t0 = max(t0, t)
        else:
            t1 = min(t1, t)
    return (t0, t1) if t0 < t1 else None


def gen_onion_family(n: int, sigma: Sequence[int]) -> list:
    """Points (P1, P2, P3, Q) for n divisible by 4 and a permutation sigma of
    1..n/4.  Counting layers from the innermost, q_j sits on layer sigma(j).
    """
    if n % 4 or n < 8:
        raise ValueError("n must be a multiple of 4, at least 8")
    m = n // 4
    sigma = [int(s) for s in sigma]
    if sorted(sigma) != list(range(1, m + 1)):
        raise ValueError(f"sigma must be a permutation of 1..{m}")
    p1 = _spaced((-2.0, -2.0 * n - 6), (0.0, -2.0 * n - 4), m)
    p2 = _spaced((0.0, 0.0), (2.0, -2.0), m)
    p3 = _spaced((2.0 * n + 2, -2.0 * n - 2), (2.0 * n + 4, -2.0 * n - 4), m)
    seg = {i: ((2.0 * i + 1, -2.0 * i - 1), (2.0 * i + 2, -2.0 * i)) for i in range(1, m + 1)}
    inv = {s: j for j, s in enumerate(sigma, start=1)}
    q = {}
    cur = list(p1) + list(p2) + list(p3)
    for step in range(m):
        j = inv[m - step]
        a, b = seg[j]
        if step == 0:
            q[j] = b
        else:
            hv = hull_indices(cur)
            span = _clip([cur[i - 1] for i in hv], a, b)
            if span is None:
                raise InfeasiblePlacement(f"segment {j} misses the current hull")
            t = (span[0] + span[1]) / 2
            q[j] = (a[0] + (b[0] - a[0]) * t, a[1] + (b[1] - a[1]) * t)
            layer = set(hv)
            cur = [p for i, p in enumerate(cur, start=1) if i not in layer]
        cur.append(q[j])
    return p1 + p2 + p3 + [q[j] for j in range(1, m + 1)]


def onion_decompose(points) -> list:
    """Convex layers, outermost first, as lists of point indices (0-based).
    Only strict hull vertices belong to a layer."""
    idx = list(range(len(points)))
    layers = []
    while idx:
        if len(idx) <= 2:
            layers.append(sorted(idx))
            break
        hv = hull_indices([points[i] for i in idx])
        layer = [idx[h - 1] for h in hv]
        layers.append(sorted(layer))
        keep = set(layer)
        idx = [i for i in idx if i not in keep]
    return layers


def count_distinct_onion(n: int) -> int:
    """Number of distinct onion decompositions over every sigma."""
    m = n // 4
    seen = set()
    for sigma in permutations(range(1, m + 1)):
        pts = gen_onion_family(n, sigma)
        seen.add(tuple(tuple(l) for l in onion_decompose(pts)))
    return len(seen)


def gen_kpair_family(values: Sequence[float], eps: float = 0.25) -> list:
    """Pairs p_i, p_i' at distance eps * values[i] around the marks (i, i).

    Returned as [p_1, p_1', p_2, p_2', ...].  Values must lie in [0, 1].
    """
    if not 0 < eps <= 0.25:
        raise EpsTooLarge("eps must be in (0, 0.25]")
    out = []
    r = math.sqrt(0.5)
    for i, v in enumerate(values, start=1):
        v = float(v)
        if not 0 <= v <= 1:
            raise ValueError("values must lie in [0, 1]")
        h = eps * v / 2 * r
        out.append((i - h, i - h))
        out.append((i + h, i + h))
    return out


def ordered_k_closest(points, k: int) -> list:
    """The k closest pairs as (distance, i, j), sorted by distance, brute force."""
    P = np.asarray(points, dtype=float)
    n = len(P)
    iu, ju = np.triu_indices(n, 1)
    d = np.hypot(P[iu, 0] - P[ju, 0], P[iu, 1] - P[ju, 1])
    order = np.lexsort((ju, iu, d))[:k]
    return [(float(d[t]), int(iu[t]), int(ju[t])) for t in order]


def decremental_closest_pairs(points) -> list:
    """Repeatedly report the closest pair and delete both points."""
    alive = list(range(len(points)))
    out = []
    while len(alive) >= 2:
        sub = [points[i] for i in alive]
        d, i, j = ordered_k_closest(sub, 1)[0]
        out.append((d, alive[i], alive[j]))
        alive = [a for t, a in enumerate(alive) if t not in (i, j)]
    return out


def _eps_for(v: float) -> float:
    h = hashlib.blake2b(struct.pack("<d", float(v)), digest_size=8).digest()
    frac = int.from_bytes(h, "little") / 2.0 ** 64
    return 0.001 * (0.05 + 0.9 * frac)


def gen_gap_family(values: Sequence[float]) -> list:
    """Points (-e_v, v) and (e_v, v) for each value, e_v < 0.001 drawn from a
    hash of v, listed by increasing x.  Values must be at least 1 apart."""
    vals = sorted(float(v) for v in values)
    for a, b in zip(vals, vals[1:]):
        if b - a < 1:
            raise ValueSeparationViolated(f"values {a} and {b} are closer than 1")
    pts = [(-_eps_for(v), v) for v in vals] + [(_eps_for(v), v) for v in vals]
    return sorted(pts)


def separated_values(n: int, rng, spread: float = 3.0) -> list:
    """n values in random order whose consecutive gaps are 1 + Exp(spread)."""
    vals = np.cumsum(1.0 + rng.exponential(spread, n))
    return rng.permutation(vals).tolist()


def largest_gap(values: Sequence[float]) -> float:
    vals = sorted(set(float(v) for v in values))
    return max((b - a for a, b in zip(vals, vals[1:])), default=0.0)


def _in_hull(hull, C, slack=1e-12):
    """Mask of the rows of C inside the counter-clockwise polygon ``hull``."""
    ok = np.ones(len(C), dtype=bool)
    k = len(hull)
    for i in range(k):
        a, b = hull[i], hull[(i + 1) % k]
        ok &= (b[0] - a[0]) * (C[:, 1] - a[1]) - (b[1] - a[1]) * (C[:, 0] - a[0]) >= -slack
    return ok


def max_empty_circle_brute(points) -> tuple:
    """Largest circle centred in the convex hull with no point inside.

    Tries every circumcentre of three points, every crossing of a
    perpendicular bisector with a hull edge and every hull vertex.  Returns
    (radius, (cx, cy)).
    """
    P = np.asarray(points, dtype=float)
    n = len(P)
    hv = hull_indices(points)
    if len(hv) < 3:
        raise DegenerateHull("points are collinear")
    hull = [tuple(P[v - 1]) for v in hv]
    cands = [np.array(hull)]
    if n >= 3:
        i, j, k = np.array(list(combinations(range(n), 3))).T
        ax, ay, bx, by, cx, cy = P[i, 0], P[i, 1], P[j, 0], P[j, 1], P[k, 0], P[k, 1]
        d = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        ok = d != 0
        a2, b2, c2 = ax * ax + ay * ay, bx * bx + by * by, cx * cx + cy * cy
        ux = (a2 * (by - cy) + b2 * (cy - ay) + c2 * (ay - by))[ok] / d[ok]
        uy = (a2 * (cx - bx) + b2 * (ax - cx) + c2 * (bx - ax))[ok] / d[ok]
        cands.append(np.column_stack((ux, uy)))
    iu, ju = np.triu_indices(n, 1)
    mx = (P[iu] + P[ju]) / 2
    dirv = np.column_stack((-(P[ju, 1] - P[iu, 1]), P[ju, 0] - P[iu, 0]))
    for e in range(len(hull)):
        a = np.array(hull[e])
        b = np.array(hull[(e + 1) % len(hull)])
        ev = b - a
        den = dirv[:, 0] * (-ev[1]) - dirv[:, 1] * (-ev[0])
        ok = den != 0
        rx = a[0] - mx[ok, 0]
        ry = a[1] - mx[ok, 1]
        s = (rx * (-ev[1]) - ry * (-ev[0])) / den[ok]
        tt = (dirv[ok, 0] * ry - dirv[ok, 1] * rx) / den[ok]
        keep = (tt >= 0) & (tt <= 1)
        pts = mx[ok][keep] + s[keep, None] * dirv[ok][keep]
        cands.append(pts)
    C = np.vstack(cands)
    C = C[_in_hull(hull, C)]
    best_r, best_c = -1.0, None
    for s in range(0, len(C), 4096):
        blk = C[s:s + 4096]
        dist = np.sqrt(((blk[:, None, :] - P[None, :, :]) ** 2).sum(-1)).min(1)
        t = int(np.argmax(dist))
        if dist[t] > best_r:
            best_r, best_c = float(dist[t]), (float(blk[t, 0]), float(blk[t, 1]))
    return best_r, best_c


def clearance(points, c) -> float:
    P = np.asarray(points, dtype=float)
    return float(np.sqrt(((P - np.asarray(c)) ** 2).sum(1)).min())


def onion_layer_of(points, layers) -> list:
    where = [0] * len(points)
    for li, layer in enumerate(layers, start=1):
        for i in layer:
            where[i] = li
    return where


__all__ = [
    "gen_onion_family", "onion_decompose", "count_distinct_onion", "gen_kpair_family",
    "ordered_k_closest", "decremental_closest_pairs", "gen_gap_family", "separated_values", "largest_gap",
    "max_empty_circle_brute", "x_order", "y_order", "clearance", "onion_layer_of", "orient2d",
]
