"""Orthogonal range-successor and range-counting index over rank pairs.

Points are (x-rank, y-rank) pairs with distinct ranks.  Internally they are
relabelled to local ranks 0..m-1 on both axes and stored in two wavelet
matrices: one lists local y by local x, the other local x by local y.
Queries descend one bit level per step, so they cost O(log m) each.
"""
from __future__ import annotations

from bisect import bisect_left, bisect_right
from typing import Iterable, Optional

import numpy as np

from . import _kernels as _k
from .arith import NATIVE
from .core import RankRect
from .errors import DuplicateRank


class BitVec:
    """Bit array with a prefix count of zeros."""

    __slots__ = ("bits", "r0", "zeros", "_ones")

    def __init__(self, bits):
        b = np.asarray(bits, dtype=np.int64)
        self.bits = b.tolist()
        r0 = np.zeros(b.size + 1, dtype=np.int64)
        np.cumsum(1 - b, out=r0[1:])
        self.r0 = r0.tolist()
        self.zeros = self.r0[-1]
        self._ones = np.flatnonzero(b).tolist()

    def __len__(self):
        return len(self.bits)

    def rank0(self, i: int) -> int:
        return self.r0[i]

    def rank1(self, i: int) -> int:
        return i - self.r0[i]

    def select1(self, j: int) -> int:
        """Smallest i with rank1(i) == j."""
        if j == 0:
            return 0
        return self._ones[j - 1] + 1


def level_count(sigma: int) -> int:
    """Bits needed for values in [0, sigma)."""
    lv = 0
    p = 1
    while p < sigma:
        p *= 2
        lv += 1
    return lv


class WaveletMatrix:
    """Static sequence of integers in [0, sigma) with range-next-value queries."""

    def __init__(self, values, sigma: int, arith=NATIVE):
        self.arith = arith
        self.n = len(values)
        self.sigma = sigma
        self.nlevels = level_count(sigma)
        L = self.nlevels
        self.levels = []
        self._pow = []
        p = 1
        for _ in range(L):
            self._pow.append(p)
            p *= 2
        self._pow.reverse()
        cur = np.asarray(values, dtype=np.int64)
        for l in range(L):
            bits = np.asarray(arith.bits_at(cur, L - 1 - l), dtype=np.int64)
            self.levels.append(BitVec(bits))
            cur = np.concatenate((cur[bits == 0], cur[bits == 1]))
        self._r0 = [bv.r0 for bv in self.levels]
        self._z = [bv.zeros for bv in self.levels]

    def access(self, i: int) -> int:
        val = 0
        for l, bv in enumerate(self.levels):
            if bv.bits[i]:
                i = bv.zeros + bv.rank1(i)
                val += self._pow[l]
            else:
                i = bv.r0[i]
        return val

    def packed(self):
        """(level-by-position zero counts, zeros per level, level count)
        as arrays for the compiled kernels."""
        if self.nlevels:
            R0 = np.array(self._r0, dtype=np.int64)
        else:
            R0 = np.zeros((0, self.n + 1), dtype=np.int64)
        return R0, np.array(self._z, dtype=np.int64), self.nlevels

    def _bits(self, v: int):
        return self.arith.bits_msb(v, self.nlevels)

    def next_geq(self, s: int, e: int, lo: int, trace: Optional[list] = None) -> int:
        """Smallest value >= lo among positions [s, e), or -1."""
        L = self.nlevels
        if s >= e or lo >= self.sigma:
            return -1
        if lo <= 0:
            lo = 0
        if L == 0:
            return 0
        bits = self._bits(lo)
        r0s, zs, pw = self._r0, self._z, self._pow
        cand = None
        val = 0
        depth = 0
        for l in range(L):
            r0 = r0s[l]
            s0 = r0[s]
            e0 = r0[e]
            depth += 1
            if bits[l]:
                s = zs[l] + s - s0
                e = zs[l] + e - e0
                val += pw[l]
            else:
                s1 = zs[l] + s - s0
                e1 = zs[l] + e - e0
                if s1 < e1:
                    cand = (l, s1, e1, val + pw[l])
                s = s0
                e = e0
            if s >= e:
                break
        else:
            if trace is not None:
                trace.append(depth)
            return val
        if cand is None:
            if trace is not None:
                trace.append(depth)
            return -1
        l0, s, e, val = cand
        depth = l0 + 1
        for l in range(l0 + 1, L):
            r0 = r0s[l]
            s0 = r0[s]
            e0 = r0[e]
            depth += 1
            if s0 < e0:
                s = s0
                e = e0
            else:
                s = zs[l] + s - s0
                e = zs[l] + e - e0
                val += pw[l]
        if trace is not None:
            trace.append(depth)
        return val

    def prev_leq(self, s: int, e: int, hi: int, trace: Optional[list] = None) -> int:
        """Largest value <= hi among positions [s, e), or -1."""
        L = self.nlevels
        if s >= e or hi < 0:
            return -1
        if hi >= self.sigma:
            hi = self.sigma - 1
        if L == 0:
            return 0
        bits = self._bits(hi)
        r0s, zs, pw = self._r0, self._z, self._pow
        cand = None
        val = 0
        depth = 0
        for l in range(L):
            r0 = r0s[l]
            s0 = r0[s]
            e0 = r0[e]
            depth += 1
            if bits[l]:
                if s0 < e0:
                    cand = (l, s0, e0, val)
                s = zs[l] + s - s0
                e = zs[l] + e - e0
                val += pw[l]
            else:
                s = s0
                e = e0
            if s >= e:
                break
        else:
            if trace is not None:
                trace.append(depth)
            return val
        if cand is None:
            if trace is not None:
                trace.append(depth)
            return -1
        l0, s, e, val = cand
        depth = l0 + 1
        for l in range(l0 + 1, L):
            r0 = r0s[l]
            s0 = r0[s]
            e0 = r0[e]
            depth += 1
            s1 = zs[l] + s - s0
            e1 = zs[l] + e - e0
            if s1 < e1:
                s = s1
                e = e1
                val += pw[l]
            else:
                s = s0
                e = e0
        if trace is not None:
            trace.append(depth)
        return val

    def count_less(self, s: int, e: int, v: int) -> int:
        """Number of values < v among positions [s, e)."""
        if s >= e or v <= 0:
            return 0
        if v >= self.sigma:
            return e - s
        bits = self._bits(v)
        r0s, zs = self._r0, self._z
        cnt = 0
        for l in range(self.nlevels):
            r0 = r0s[l]
            s0 = r0[s]
            e0 = r0[e]
            if bits[l]:
                cnt += e0 - s0
                s = zs[l] + s - s0
                e = zs[l] + e - e0
            else:
                s = s0
                e = e0
            if s >= e:
                break
        return cnt


class RankIndex:
    """Range index over a set of rank pairs.

    ``x_next(r)`` returns the leftmost and rightmost points in r,
    ``y_next(r)`` the bottommost and topmost, each as (x-rank, y-rank)
    pairs, or None when r holds no point.
    """

    def __init__(self, points: Iterable, arith=NATIVE):
        pts = sorted((int(x), int(y)) for x, y in points)
        m = len(pts)
        self.m = m
        self.arith = arith
        xs = [p[0] for p in pts]
        for i in range(1, m):
            if xs[i] == xs[i - 1]:
                raise DuplicateRank(f"x-rank {xs[i]} repeats")
        yv = np.fromiter((p[1] for p in pts), dtype=np.int64, count=m)
        order = np.argsort(yv, kind="stable")
        ys_sorted = yv[order]
        if m > 1 and np.any(ys_sorted[1:] == ys_sorted[:-1]):
            raise DuplicateRank("y-ranks repeat")
        local_y = np.empty(m, dtype=np.int64)
        local_y[order] = np.arange(m, dtype=np.int64)
        self.xs = xs
        self.ys = ys_sorted.tolist()
        # local y by local x, and local x by local y
        self._ly = local_y.tolist()
        self._lx = order.tolist()
        self.by_x = WaveletMatrix(local_y, m, arith)
        self.by_y = WaveletMatrix(order, m, arith)
        self.compiled = arith is NATIVE
        if self.compiled:
            self._xs_a = np.asarray(xs, dtype=np.int64)
            self._ys_a = ys_sorted
            self._wx = self.by_x.packed()
            self._wy = self.by_y.packed()

    def __len__(self):
        return self.m

    def points(self):
        """All stored pairs in x order, decoded from the index."""
        return [(self.xs[i], self.ys[self.by_x.access(i)]) for i in range(self.m)]

    def x_next(self, r: RankRect, trace=None):
        xs, ys = self.xs, self.ys
        if self.compiled and trace is None:
            a, b = _k.range_next(self._ys_a, self._xs_a, *self._wy, r[2], r[3], r[0], r[1])
            if a < 0:
                return None
            ly = self._ly
            return (xs[a], ys[ly[a]]), (xs[b], ys[ly[b]])
        s = bisect_left(ys, r[2])
        e = bisect_right(ys, r[3])
        lo = bisect_left(xs, r[0])
        hi = bisect_right(xs, r[1]) - 1
        if s >= e or lo > hi:
            return None
        a = self.by_y.next_geq(s, e, lo, trace)
        if a < 0 or a > hi:
            return None
        b = self.by_y.prev_leq(s, e, hi, trace)
        ly = self._ly
        return (xs[a], ys[ly[a]]), (xs[b], ys[ly[b]])

    def y_next(self, r: RankRect, trace=None):
        xs, ys = self.xs, self.ys
        if self.compiled and trace is None:
            a, b = _k.range_next(self._xs_a, self._ys_a, *self._wx, r[0], r[1], r[2], r[3])
            if a < 0:
                return None
            lx = self._lx
            return (xs[lx[a]], ys[a]), (xs[lx[b]], ys[b])
        s = bisect_left(xs, r[0])
        e = bisect_right(xs, r[1])
        lo = bisect_left(ys, r[2])
        hi = bisect_right(ys, r[3]) - 1
        if s >= e or lo > hi:
            return None
        a = self.by_x.next_geq(s, e, lo, trace)
        if a < 0 or a > hi:
            return None
        b = self.by_x.prev_leq(s, e, hi, trace)
        lx = self._lx
        return (xs[lx[a]], ys[a]), (xs[lx[b]], ys[b])

    def range_count(self, r: RankRect) -> int:
        if self.compiled:
            return _k.range_count(self._xs_a, self._ys_a, *self._wx, r[0], r[1], r[2], r[3])
        xs, ys = self.xs, self.ys
        s = bisect_left(xs, r[0])
        e = bisect_right(xs, r[1])
        lo = bisect_left(ys, r[2])
        hi = bisect_right(ys, r[3])
        if s >= e or lo >= hi:
            return 0
        return self.by_x.count_less(s, e, hi) - self.by_x.count_less(s, e, lo)


class NaiveIndex:
    """Linear-scan reference with the same interface as RankIndex."""

    def __init__(self, points: Iterable):
        self.pts = sorted((int(x), int(y)) for x, y in points)
        self.m = len(self.pts)

    def __len__(self):
        return self.m

    def _inside(self, r):
        return [p for p in self.pts if r[0] <= p[0] <= r[1] and r[2] <= p[1] <= r[3]]

    def x_next(self, r, trace=None):
        inside = self._inside(r)
        if not inside:
            return None
        return min(inside), max(inside)

    def y_next(self, r, trace=None):
        inside = self._inside(r)
        if not inside:
            return None
        key = lambda p: p[1]
        return min(inside, key=key), max(inside, key=key)

    def range_count(self, r) -> int:
        return len(self._inside(r))
