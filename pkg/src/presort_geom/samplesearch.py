"""Random sample hierarchy and exponential search over it.

Each point gets a height drawn by repeated fair coin flips; level i holds
the points of height >= i and has its own RankIndex.  A search for the
boundary of a half-plane inside a rank rectangle climbs levels while the
next point on that level still lies on the near side, then walks back down,
stepping forward on a level whenever possible.  The cost is proportional to
the logarithm of the number of points on the near side, so two searches
started from opposite ends and advanced alternately finish after
O(log min(|left|, |right|)) queries.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .arith import NATIVE
from .core import EMPTY_EXTREMES, Extremes, Presorting, RankRect
from .rankindex import NaiveIndex, RankIndex

RNG_ALGORITHM = "numpy.random.PCG64"


@dataclass
class SearchStats:
    up_steps: int = 0
    right_steps: int = 0
    down_steps: int = 0
    queries: int = 0
    record_levels: bool = False
    right_step_levels: list = field(default_factory=list)

    @property
    def steps(self) -> int:
        return self.up_steps + self.right_steps + self.down_steps

    def absorb(self, other: "SearchStats") -> None:
        self.up_steps += other.up_steps
        self.right_steps += other.right_steps
        self.down_steps += other.down_steps
        self.queries += other.queries


def sample_heights(n: int, seed: int) -> np.ndarray:
    """Height of each of n points: the number of coin flips survived."""
    rng = np.random.Generator(np.random.PCG64(seed))
    heights = np.zeros(n, dtype=np.int64)
    alive = np.arange(n)
    while alive.size:
        keep = rng.random(alive.size) < 0.5
        alive = alive[keep]
        heights[alive] += 1
    return heights


@dataclass(frozen=True)
class LevelStack:
    levels: tuple
    heights: np.ndarray
    presorting: Presorting
    seed: int
    rng_algorithm: str = RNG_ALGORITHM

    @property
    def base(self):
        return self.levels[0]


def preprocess(pre: Presorting, seed: int = 0, arith=NATIVE, backend: str = "wavelet") -> LevelStack:
    """Build the level hierarchy for a presorting.  Expected O(n) space."""
    heights = sample_heights(pre.n, seed)
    top = int(heights.max()) if pre.n else 0
    pairs = pre.rank_pairs()
    levels = []
    for i in range(top + 1):
        pts = [pairs[j] for j in np.flatnonzero(heights >= i).tolist()]
        if backend == "wavelet":
            levels.append(RankIndex(pts, arith))
        elif backend == "naive":
            levels.append(NaiveIndex(pts))
        else:
            raise ValueError(f"unknown index backend {backend!r}")
    return LevelStack(tuple(levels), heights, pre, seed)


def _walk(levels, bounds, start, axis, from_low, inside, stats):
    """Exponential search from one end of ``bounds`` along ``axis``.

    ``start`` is the extreme point on that end, already known to satisfy
    ``inside``.  Yields once per index query and returns the last point (in
    walking order) that satisfies ``inside``.
    """
    b = list(bounds)
    mv = 2 * axis + (0 if from_low else 1)
    step = 1 if from_low else -1
    pick = 0 if from_low else 1
    name = "x_next" if axis == 0 else "y_next"
    best = start
    b[mv] = start[axis] + step
    i = 0
    top = None
    nlev = len(levels)
    while i < nlev:
        res = getattr(levels[i], name)(RankRect(*b))
        stats.queries += 1
        stats.up_steps += 1
        yield
        if res is None or not inside(res[pick]):
            break
        top = res[pick]
        i += 1
    if top is None:
        return best
    best = top
    b[mv] = top[axis] + step
    c = i - 1
    while c >= 0:
        res = getattr(levels[c], name)(RankRect(*b))
        stats.queries += 1
        yield
        if res is not None and inside(res[pick]):
            best = res[pick]
            b[mv] = best[axis] + step
            stats.right_steps += 1
            if stats.record_levels:
                stats.right_step_levels.append(c)
        else:
            c -= 1
            stats.down_steps += 1
    return best


def _drain(gen):
    try:
        while True:
            next(gen)
    except StopIteration as stop:
        return stop.value


def _race(first, second):
    """Advance two walks alternately until one finishes."""
    gens = (first, second)
    while True:
        for k in (0, 1):
            try:
                next(gens[k])
            except StopIteration as stop:
                return k, stop.value


def exponential_search(ls: LevelStack, g: RankRect, start, line: float, axis: int = 0,
                       from_low: bool = True, stats: Optional[SearchStats] = None):
    """One-sided search: the last point before crossing ``line`` when walking
    from ``start`` (a rank pair on that side)."""
    stats = stats if stats is not None else SearchStats()
    a_x = ls.presorting.a_x

    def inside(p):
        return (a_x[p[0] - 1][axis] < line) == from_low

    return _drain(_walk(ls.levels, g, start, axis, from_low, inside, stats))


def _pair(pre: Presorting, p):
    return (p.id, pre.pi[p.id - 1])


def half_split(ls: LevelStack, g: RankRect, ex: Extremes, line: float, axis: int = 0,
               stats: Optional[SearchStats] = None):
    """Split the points described by ``ex`` (whose rank box is ``g``) at a
    vertical (axis 0) or horizontal (axis 1) line.

    Points with coordinate < line go to the first result, the rest to the
    second; both are returned as Extremes.
    """
    stats = stats if stats is not None else SearchStats()
    if ex.leftmost is None:
        return EMPTY_EXTREMES, EMPTY_EXTREMES
    pre = ls.presorting
    a_x = pre.a_x
    if axis == 0:
        lo_ext, hi_ext = ex.leftmost, ex.rightmost
    else:
        lo_ext, hi_ext = ex.bottommost, ex.topmost
    if lo_ext[axis] >= line:
        return EMPTY_EXTREMES, ex
    if hi_ext[axis] < line:
        return ex, EMPTY_EXTREMES

    def low_side(p):
        return a_x[p[0] - 1][axis] < line

    def high_side(p):
        return not (a_x[p[0] - 1][axis] < line)

    levels = ls.levels
    k, q = _race(_walk(levels, g, _pair(pre, lo_ext), axis, True, low_side, stats),
                 _walk(levels, g, _pair(pre, hi_ext), axis, False, high_side, stats))
    base = levels[0]
    name = "x_next" if axis == 0 else "y_next"
    b = list(g)
    if k == 0:
        q_lo = q
        b[2 * axis] = q_lo[axis] + 1
        q_hi = getattr(base, name)(RankRect(*b))[0]
    else:
        q_hi = q
        b[2 * axis + 1] = q_hi[axis] - 1
        q_lo = getattr(base, name)(RankRect(*b))[1]
    stats.queries += 1
    other = "y_next" if axis == 0 else "x_next"
    lo_rect = list(g)
    lo_rect[2 * axis + 1] = q_lo[axis]
    hi_rect = list(g)
    hi_rect[2 * axis] = q_hi[axis]
    r_lo = getattr(base, other)(RankRect(*lo_rect))
    r_hi = getattr(base, other)(RankRect(*hi_rect))
    stats.queries += 2
    P = lambda pr: a_x[pr[0] - 1]
    if axis == 0:
        left = Extremes(ex.leftmost, P(q_lo), P(r_lo[0]), P(r_lo[1]))
        right = Extremes(P(q_hi), ex.rightmost, P(r_hi[0]), P(r_hi[1]))
    else:
        left = Extremes(P(r_lo[0]), P(r_lo[1]), ex.bottommost, P(q_lo))
        right = Extremes(P(r_hi[0]), P(r_hi[1]), P(q_hi), ex.topmost)
    return left, right


def half_split_x(ls, g, ex, line, stats=None):
    return half_split(ls, g, ex, line, 0, stats)


def half_split_y(ls, g, ex, line, stats=None):
    return half_split(ls, g, ex, line, 1, stats)


def median_split(ls: LevelStack, g: RankRect, axis: int = 0, count: Optional[int] = None,
                 stats: Optional[SearchStats] = None):
    """Rank pair of the element with index floor((m - 1) / 2) along ``axis``
    among the m points in ``g``, found by the same exponential search steered
    by counting queries."""
    stats = stats if stats is not None else SearchStats()
    base = ls.levels[0]
    if count is None:
        count = base.range_count(g)
        stats.queries += 1
    if count == 0:
        return None
    k = (count - 1) // 2
    name = "x_next" if axis == 0 else "y_next"
    first = getattr(base, name)(g)[0]
    stats.queries += 1
    if k == 0:
        return first
    hi_slot = 2 * axis + 1
    b = list(g)

    def inside(p):
        b[hi_slot] = p[axis]
        stats.queries += 1
        return base.range_count(RankRect(*b)) <= k + 1

    return _drain(_walk(ls.levels, g, first, axis, True, inside, stats))
