"""Linear-time triangulation of a point set given in x order.

The x-monotone polyline through the sorted points together with the convex
hull cuts the hull into pockets.  Each pocket is an x-monotone polygon whose
one chain is a single hull edge, and the usual stack algorithm for monotone
polygons triangulates it in time proportional to its size.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .core import Point
from .errors import Collinear, NotSorted, TooFew

_ERRBOUND = (3.0 + 16.0 * 2.0 ** -53) * 2.0 ** -53


def orient2d(a, b, c) -> int:
    """Sign of the turn a -> b -> c: 1 left, -1 right, 0 collinear (exact)."""
    detleft = (a[0] - c[0]) * (b[1] - c[1])
    detright = (a[1] - c[1]) * (b[0] - c[0])
    det = detleft - detright
    bound = _ERRBOUND * (abs(detleft) + abs(detright))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    ax, ay, bx, by, cx, cy = (Fraction(v) for v in (a[0], a[1], b[0], b[1], c[0], c[1]))
    d = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return (d > 0) - (d < 0)


@dataclass
class TriStats:
    orientation_tests: int = 0
    stack_ops: int = 0

    @property
    def total(self) -> int:
        return self.orientation_tests + self.stack_ops


@dataclass
class Triangulation:
    n: int
    triangles: list
    hull: list
    stats: TriStats = field(default_factory=TriStats)


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        p = self.parent
        while p[a] != a:
            p[a] = p[p[a]]
            a = p[a]
        return a

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb


def _chain(pts, sign, stats):
    """Indices of the upper (sign=-1) or lower (sign=1) hull, left to right."""
    st = []
    for i in range(len(pts)):
        while len(st) >= 2:
            stats.orientation_tests += 1
            o = orient2d(pts[st[-2]], pts[st[-1]], pts[i])
            if o == 0:
                raise Collinear(f"points {st[-2] + 1}, {st[-1] + 1}, {i + 1} are collinear")
            if o == sign:
                break
            st.pop()
            stats.stack_ops += 1
        st.append(i)
        stats.stack_ops += 1
    return st


def _pocket(pts, a, b, above, tris, stats):
    """Triangulate the polygon a, a+1, ..., b closed by the hull edge (a, b).

    The chain lies below the edge for an upper pocket (above=False marks the
    chain as the bottom chain) and above it for a lower pocket.
    """
    want = -1 if not above else 1
    st = [a, a + 1]
    stats.stack_ops += 2
    for j in range(a + 2, b + 1):
        last = st.pop()
        stats.stack_ops += 1
        while st:
            stats.orientation_tests += 1
            o = orient2d(pts[st[-1]], pts[last], pts[j])
            if o == 0:
                raise Collinear(f"points {st[-1] + 1}, {last + 1}, {j + 1} are collinear")
            if o == want:
                break
            u = st[-1]
            if above:
                tris.append((u, j, last))
            else:
                tris.append((u, last, j))
            last = st.pop()
            stats.stack_ops += 1
        st.append(last)
        st.append(j)
        stats.stack_ops += 2
    if len(st) != 2:
        raise Collinear("pocket did not close; input not in general position")


def triangulate_xsorted(a_x: Sequence) -> Triangulation:
    """Triangulate points sorted by strictly increasing x.

    Returns triangles as counter-clockwise 1-based index triples.
    """
    pts = [(float(p[0]), float(p[1])) for p in a_x]
    n = len(pts)
    for i in range(1, n):
        if not pts[i - 1][0] < pts[i][0]:
            raise NotSorted(f"x not strictly increasing at position {i + 1}")
    stats = TriStats()
    if n < 3:
        raise TooFew("need at least three points")
    upper = _chain(pts, -1, stats)
    lower = _chain(pts, 1, stats)
    # the hull and the monotone chain together form a connected plane graph
    dsu = _DSU(n)
    for i in range(n - 1):
        dsu.union(i, i + 1)
    for ch in (upper, lower):
        for u, v in zip(ch, ch[1:]):
            dsu.union(u, v)
    if len({dsu.find(i) for i in (0, n - 1)}) != 1:
        raise AssertionError("hull and chain do not form a connected graph")
    tris = []
    for u, v in zip(upper, upper[1:]):
        if v > u + 1:
            _pocket(pts, u, v, False, tris, stats)
    for u, v in zip(lower, lower[1:]):
        if v > u + 1:
            _pocket(pts, u, v, True, tris, stats)
    hull = lower + upper[-2:0:-1]
    return Triangulation(
        n,
        [(a + 1, b + 1, c + 1) for a, b, c in tris],
        [h + 1 for h in hull],
        stats,
    )


def hull_indices(points: Sequence) -> list:
    """Convex hull vertices (1-based, counter-clockwise) by sorting; strictly
    convex, so collinear boundary points are left out."""
    pts = [(float(p[0]), float(p[1])) for p in points]
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    if len(order) < 3:
        return [i + 1 for i in order]

    def half(seq):
        st = []
        for i in seq:
            while len(st) >= 2 and orient2d(pts[st[-2]], pts[st[-1]], pts[i]) <= 0:
                st.pop()
            st.append(i)
        return st

    lo = half(order)
    up = half(reversed(order))
    return [i + 1 for i in lo[:-1] + up[:-1]]


def _segments_cross(P, Q):
    """Proper crossings between rows of two edge arrays, shape (k, 4)."""
    def orient(ax, ay, bx, by, cx, cy):
        return np.sign((bx - ax) * (cy - ay) - (by - ay) * (cx - ax))

    p1x, p1y, p2x, p2y = (P[:, None, i] for i in range(4))
    q1x, q1y, q2x, q2y = (Q[None, :, i] for i in range(4))
    d1 = orient(p1x, p1y, p2x, p2y, q1x, q1y)
    d2 = orient(p1x, p1y, p2x, p2y, q2x, q2y)
    d3 = orient(q1x, q1y, q2x, q2y, p1x, p1y)
    d4 = orient(q1x, q1y, q2x, q2y, p2x, p2y)
    return (d1 * d2 < 0) & (d3 * d4 < 0)


def verify_triangulation(points: Sequence, t: Triangulation, exhaustive_limit: int = 2500) -> list:
    """Violations of a triangulation of ``points`` (1-based ids in list order).

    Checks the triangle count against 2n - 2 - h, counter-clockwise
    orientation, that every edge borders one or two triangles with opposite
    directions and the border is exactly the hull, and that the areas add up
    to the hull area.  Together these rule out overlaps.  Up to
    ``exhaustive_limit`` points every pair of edges is also tested for a
    proper crossing.
    """
    pts = [(float(p[0]), float(p[1])) for p in points]
    n = len(pts)
    out = []
    hull = hull_indices(pts)
    h = len(hull)
    if len(t.triangles) != 2 * n - 2 - h:
        out.append(f"triangle count {len(t.triangles)} != 2n - 2 - h = {2 * n - 2 - h}")
    used = set()
    directed = {}
    for tri in t.triangles:
        if len(set(tri)) != 3 or not all(1 <= v <= n for v in tri):
            out.append(f"malformed triangle {tri}")
            continue
        a, b, c = (pts[v - 1] for v in tri)
        if orient2d(a, b, c) <= 0:
            out.append(f"triangle {tri} is not counter-clockwise")
        used.update(tri)
        for u, v in ((tri[0], tri[1]), (tri[1], tri[2]), (tri[2], tri[0])):
            directed[(u, v)] = directed.get((u, v), 0) + 1
    if len(used) != n:
        out.append(f"{n - len(used)} points are in no triangle")
    if any(c > 1 for c in directed.values()):
        out.append("some directed edge borders two triangles")
    border = {e for e in directed if (e[1], e[0]) not in directed}
    hull_edges = {(hull[i], hull[(i + 1) % h]) for i in range(h)}
    if border != hull_edges:
        out.append("boundary edges differ from the convex hull")
    tri_area = sum(_area2((pts[a - 1], pts[b - 1], pts[c - 1])) for a, b, c in t.triangles)
    hull_area = _area2([pts[v - 1] for v in hull])
    if tri_area != hull_area:
        out.append("triangle areas do not add up to the hull area")
    if n <= exhaustive_limit:
        edges = sorted({tuple(sorted(e)) for e in directed})
        E = np.array([[*pts[u - 1], *pts[v - 1]] for u, v in edges], dtype=float)
        for s in range(0, len(E), 512):
            if np.any(_segments_cross(E[s:s + 512], E)):
                out.append("two edges cross")
                break
    return out


def _area2(poly) -> Fraction:
    """Twice the signed area, exactly."""
    total = Fraction(0)
    k = len(poly)
    for i in range(k):
        x1, y1 = poly[i]
        x2, y2 = poly[(i + 1) % k]
        total += Fraction(x1) * Fraction(y2) - Fraction(x2) * Fraction(y1)
    return total
