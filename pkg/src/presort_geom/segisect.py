"""Intersection detection for axis-parallel segments from presorted endpoints.

Segments are closed, so touching counts.  Detection runs in three passes
over the sorted endpoint arrays:

1. horizontal against horizontal: bucket by y, sweep each bucket by x;
2. vertical against vertical: the same with the axes swapped;
3. horizontal against vertical: sweep x, keeping the y-ranks of active
   horizontal segments in a van Emde Boas set; at each x, starts are
   inserted before vertical segments query and ends are removed after.

With y-ranks in [0, 2n) every set operation costs O(log log n).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple, Optional, Sequence


class OrthoSegment(NamedTuple):
    """Horizontal (``orient='H'``: y = fixed, x in [lo, hi]) or vertical
    (``orient='V'``: x = fixed, y in [lo, hi]) segment."""
    id: int
    orient: str
    fixed: float
    lo: float
    hi: float

    @property
    def endpoints(self):
        if self.orient == "H":
            return (self.lo, self.fixed), (self.hi, self.fixed)
        return (self.fixed, self.lo), (self.fixed, self.hi)


class Endpoint(NamedTuple):
    x: float
    y: float
    seg: int
    role: int  # 0 for the lower / left end, 1 for the other


@dataclass(frozen=True)
class EndpointPresorting:
    segments: tuple
    a_x: tuple
    a_y: tuple
    pi: tuple


def make_segments(rows) -> list:
    """Segments from (orient, fixed, lo, hi) rows, ids 1..n."""
    out = []
    for i, (o, f, lo, hi) in enumerate(rows):
        o = o.upper()
        if o not in ("H", "V"):
            raise ValueError(f"orientation must be H or V, got {o!r}")
        lo, hi = float(lo), float(hi)
        if lo > hi:
            lo, hi = hi, lo
        if lo == hi:
            raise ValueError(f"segment {i + 1} has zero length")
        out.append(OrthoSegment(i + 1, o, float(f), lo, hi))
    return out


def make_endpoint_presorting(segments: Sequence[OrthoSegment]) -> EndpointPresorting:
    """Sort the 2n endpoints by x and by y (ties by segment id and role)."""
    import numpy as np

    eps = []
    for s in segments:
        a, b = s.endpoints
        eps.append(Endpoint(a[0], a[1], s.id, 0))
        eps.append(Endpoint(b[0], b[1], s.id, 1))
    if not eps:
        return EndpointPresorting(tuple(segments), (), (), ())
    E = np.array([(e.x, e.y, e.seg, e.role) for e in eps], dtype=float)
    ox = np.lexsort((E[:, 3], E[:, 2], E[:, 0]))
    oy = np.lexsort((E[:, 3], E[:, 2], E[:, 1]))
    rank_y = np.empty(len(eps), dtype=np.int64)
    rank_y[oy] = np.arange(1, len(eps) + 1)
    a_x = tuple(eps[i] for i in ox.tolist())
    a_y = tuple(eps[i] for i in oy.tolist())
    pi = tuple(rank_y[ox].tolist())
    return EndpointPresorting(tuple(segments), a_x, a_y, pi)


class VebSet:
    """van Emde Boas set over [0, U), U rounded up to a power of two.

    Clusters are created lazily.  ``last_depth`` is the recursion depth of
    the latest operation and ``max_depth`` the largest seen so far.
    """

    class _Node:
        __slots__ = ("bits", "lo_bits", "min", "max", "summary", "clusters")

        def __init__(self, bits):
            self.bits = bits
            self.lo_bits = bits // 2
            self.min = None
            self.max = None
            self.summary = None
            self.clusters = {}

    def __init__(self, universe: int):
        bits = 1
        while (1 << bits) < universe:
            bits += 1
        self.bits = bits
        self.universe = 1 << bits
        self._root = self._Node(bits)
        self._size = 0
        self._depth = 0
        self.last_depth = 0
        self.max_depth = 0

    def __len__(self):
        return self._size

    @property
    def depth_bound(self) -> int:
        """ceil(log2 log2 U) + 2."""
        lg = 0
        while (1 << lg) < self.bits:
            lg += 1
        return lg + 2

    def _enter(self, d):
        if d > self._depth:
            self._depth = d

    def _begin(self):
        self._depth = 0

    def _end(self):
        self.last_depth = self._depth
        if self._depth > self.max_depth:
            self.max_depth = self._depth

    def _check(self, x):
        if not 0 <= x < self.universe:
            raise ValueError(f"key {x} outside [0, {self.universe})")

    def min(self):
        return self._root.min

    def max(self):
        return self._root.max

    def __contains__(self, x) -> bool:
        self._check(x)
        self._begin()
        v = self._root
        d = 1
        while True:
            self._enter(d)
            if x == v.min or x == v.max:
                found = True
                break
            if v.bits == 1:
                found = False
                break
            c = v.clusters.get(x >> v.lo_bits)
            if c is None:
                found = False
                break
            x &= (1 << v.lo_bits) - 1
            v = c
            d += 1
        self._end()
        return found

    def insert(self, x: int) -> bool:
        """Add x; returns False when it was already present."""
        if x in self:
            return False
        self._begin()
        self._insert(self._root, x, 1)
        self._end()
        self._size += 1
        return True

    def _insert(self, v, x, d):
        self._enter(d)
        if v.min is None:
            v.min = v.max = x
            return
        if x < v.min:
            x, v.min = v.min, x
        if v.bits > 1:
            h = x >> v.lo_bits
            l = x & ((1 << v.lo_bits) - 1)
            c = v.clusters.get(h)
            if c is None:
                c = v.clusters[h] = self._Node(v.lo_bits)
            if c.min is None:
                if v.summary is None:
                    v.summary = self._Node(v.bits - v.lo_bits)
                self._insert(v.summary, h, d + 1)
                c.min = c.max = l
            else:
                self._insert(c, l, d + 1)
        if x > v.max:
            v.max = x

    def delete(self, x: int) -> bool:
        """Remove x; deleting an absent key does nothing and returns False."""
        if x not in self:
            return False
        self._begin()
        self._delete(self._root, x, 1)
        self._end()
        self._size -= 1
        return True

    def _delete(self, v, x, d):
        self._enter(d)
        if v.min == v.max:
            v.min = v.max = None
            return
        if v.bits == 1:
            v.min = 1 if x == 0 else 0
            v.max = v.min
            return
        lb = v.lo_bits
        if x == v.min:
            first = v.summary.min
            x = (first << lb) | v.clusters[first].min
            v.min = x
        h = x >> lb
        l = x & ((1 << lb) - 1)
        c = v.clusters[h]
        self._delete(c, l, d + 1)
        if c.min is None:
            self._delete(v.summary, h, d + 1)
            del v.clusters[h]
            if x == v.max:
                smax = v.summary.max
                v.max = v.min if smax is None else (smax << lb) | v.clusters[smax].max
        elif x == v.max:
            v.max = (h << lb) | c.max

    def succ(self, x: int) -> Optional[int]:
        """Smallest key > x."""
        self._begin()
        r = self._succ(self._root, x, 1)
        self._end()
        return r

    def _succ(self, v, x, d):
        self._enter(d)
        if v.min is None:
            return None
        if x < v.min:
            return v.min
        if v.bits == 1:
            return 1 if x == 0 and v.max == 1 else None
        lb = v.lo_bits
        h = x >> lb
        l = x & ((1 << lb) - 1)
        c = v.clusters.get(h)
        if c is not None and c.max is not None and l < c.max:
            return (h << lb) | self._succ(c, l, d + 1)
        if v.summary is None:
            return None
        sh = self._succ(v.summary, h, d + 1)
        if sh is None:
            return None
        return (sh << lb) | v.clusters[sh].min

    def pred(self, x: int) -> Optional[int]:
        """Largest key < x."""
        self._begin()
        r = self._pred(self._root, x, 1)
        self._end()
        return r

    def _pred(self, v, x, d):
        self._enter(d)
        if v.min is None:
            return None
        if x > v.max:
            return v.max
        if v.bits == 1:
            return 0 if x == 1 and v.min == 0 else None
        lb = v.lo_bits
        h = x >> lb
        l = x & ((1 << lb) - 1)
        c = v.clusters.get(h)
        if c is not None and c.min is not None and l > c.min:
            return (h << lb) | self._pred(c, l, d + 1)
        ph = self._pred(v.summary, h, d + 1) if v.summary is not None else None
        if ph is None:
            return v.min if x > v.min else None
        return (ph << lb) | v.clusters[ph].max


def _groups(keys):
    """For a sorted key sequence, first and last index of each run of equal
    keys, reported per position."""
    n = len(keys)
    start = [0] * n
    end = [0] * n
    i = 0
    while i < n:
        j = i
        while j + 1 < n and keys[j + 1] == keys[i]:
            j += 1
        for t in range(i, j + 1):
            start[t] = i
            end[t] = j
        i = j + 1
    return start, end


def _collinear_overlap(buckets, seg_by_id):
    for bucket in buckets:
        best = None
        for sid in bucket:
            s = seg_by_id[sid]
            if best is not None and s.lo <= best.hi:
                return tuple(sorted((best.id, s.id)))
            if best is None or s.hi > best.hi:
                best = s
    return None


def detect_intersection(ep: EndpointPresorting, stats: Optional[dict] = None):
    """Ids of one intersecting pair, or None when all segments are disjoint."""
    segs = {s.id: s for s in ep.segments}
    a_x, a_y, pi = ep.a_x, ep.a_y, ep.pi
    m = len(a_x)
    if stats is not None:
        stats["phase"] = None
        stats["veb_max_depth"] = 0
        stats["veb_depth_bound"] = 0
    if m == 0:
        return None
    ygs, yge = _groups([e.y for e in a_y])
    xgs, xge = _groups([e.x for e in a_x])
    # horizontal pairs on a common line: bucket lower ends by y-group, in x order
    buckets = {}
    for i, e in enumerate(a_x):
        if e.role == 0 and segs[e.seg].orient == "H":
            buckets.setdefault(ygs[pi[i] - 1], []).append(e.seg)
    hit = _collinear_overlap(buckets.values(), segs)
    if hit:
        if stats is not None:
            stats["phase"] = "HH"
        return hit
    # vertical pairs: bucket by x-group, in y order
    inv = [0] * m
    for i, r in enumerate(pi):
        inv[r - 1] = i
    buckets = {}
    for j, e in enumerate(a_y):
        if e.role == 0 and segs[e.seg].orient == "V":
            buckets.setdefault(xgs[inv[j]], []).append(e.seg)
    hit = _collinear_overlap(buckets.values(), segs)
    if hit:
        if stats is not None:
            stats["phase"] = "VV"
        return hit
    # horizontal against vertical
    tree = VebSet(max(m, 2))
    owner = {}
    yrank_lo = {}
    yrank_hi = {}
    for i, e in enumerate(a_x):
        if e.role == 0:
            yrank_lo[e.seg] = pi[i] - 1
        else:
            yrank_hi[e.seg] = pi[i] - 1
    result = None
    i = 0
    while i < m and result is None:
        j = xge[i]
        group = a_x[i:j + 1]
        for e in group:
            if e.role == 0 and segs[e.seg].orient == "H":
                key = yrank_lo[e.seg]
                tree.insert(key)
                owner[key] = e.seg
        for e in group:
            if e.role == 0 and segs[e.seg].orient == "V":
                lo = ygs[yrank_lo[e.seg]]
                hi = yge[yrank_hi[e.seg]]
                k = tree.min() if lo == 0 else tree.succ(lo - 1)
                if k is not None and k <= hi:
                    result = (owner[k], e.seg)
                    break
        if result is None:
            for e in group:
                if e.role == 1 and segs[e.seg].orient == "H":
                    tree.delete(yrank_lo[e.seg])
        i = j + 1
    if stats is not None:
        stats["phase"] = "HV" if result else None
        stats["veb_max_depth"] = tree.max_depth
        stats["veb_depth_bound"] = tree.depth_bound
    return result


def segments_intersect(a: OrthoSegment, b: OrthoSegment) -> bool:
    if a.orient == b.orient:
        return a.fixed == b.fixed and a.lo <= b.hi and b.lo <= a.hi
    h, v = (a, b) if a.orient == "H" else (b, a)
    return h.lo <= v.fixed <= h.hi and v.lo <= h.fixed <= v.hi


def brute_force_pairs(segments: Sequence[OrthoSegment]) -> list:
    """Every intersecting pair, by checking all pairs."""
    return [(a.id, b.id) for a, b in combinations(segments, 2) if segments_intersect(a, b)]


def any_intersection_brute(segments: Sequence[OrthoSegment]) -> bool:
    """All-pairs presence test, vectorised; same answer as brute_force_pairs."""
    import numpy as np

    H = np.array([(s.fixed, s.lo, s.hi) for s in segments if s.orient == "H"], dtype=float).reshape(-1, 3)
    V = np.array([(s.fixed, s.lo, s.hi) for s in segments if s.orient == "V"], dtype=float).reshape(-1, 3)
    for A in (H, V):
        if len(A) > 1:
            same = A[:, None, 0] == A[None, :, 0]
            meet = (A[:, None, 1] <= A[None, :, 2]) & (A[None, :, 1] <= A[:, None, 2])
            # the diagonal always matches; anything beyond it is a real pair
            if np.count_nonzero(same & meet) > len(A):
                return True
    if len(H) and len(V):
        hit = ((H[:, None, 1] <= V[None, :, 0]) & (V[None, :, 0] <= H[:, None, 2])
               & (V[None, :, 1] <= H[:, None, 0]) & (H[:, None, 0] <= V[None, :, 2]))
        if np.any(hit):
            return True
    return False
