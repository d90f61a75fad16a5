"""Points, presortings, boundary-aware squares and rank-space rectangles.

A presorting of n planar points is the triple (a_x, a_y, pi): the points
sorted by x, the same points sorted by y, and the 1-based permutation with
a_x[i] == a_y[pi[i] - 1].  Point ids are x-ranks, so ``p.id`` doubles as the
x-index and ``pi[p.id - 1]`` is the y-index.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .errors import DegenerateResolution, DuplicateCoordinate, NotSorted, PermutationMismatch


class Point(NamedTuple):
    x: float
    y: float
    id: int


@dataclass(frozen=True)
class Presorting:
    a_x: tuple
    a_y: tuple
    pi: tuple

    @property
    def n(self) -> int:
        return len(self.a_x)

    def x_index(self, p: Point) -> int:
        return p.id

    def y_index(self, p: Point) -> int:
        return self.pi[p.id - 1]

    def by_x_rank(self, r: int) -> Point:
        return self.a_x[r - 1]

    def by_y_rank(self, r: int) -> Point:
        return self.a_y[r - 1]

    def rank_pairs(self):
        """(x-rank, y-rank) for every point, in x order."""
        return [(i + 1, r) for i, r in enumerate(self.pi)]


def _xy(item):
    if isinstance(item, Point):
        return item.x, item.y
    x, y = item[0], item[1]
    return float(x), float(y)


def _check_finite(x, y):
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"non-finite coordinate ({x}, {y})")


def validate_presorting(a_x: Sequence, a_y: Sequence, pi: Sequence[int]) -> Presorting:
    """Check a caller-supplied presorting and return it with ids attached.

    Entries of a_x / a_y may be Points or (x, y) pairs.  Runs in O(n).
    """
    n = len(a_x)
    if n == 0 or len(a_y) != n or len(pi) != n:
        raise ValueError("a_x, a_y and pi must be non-empty and of equal length")
    xs = []
    for i, item in enumerate(a_x):
        x, y = _xy(item)
        _check_finite(x, y)
        xs.append(Point(x, y, i + 1))
    for i in range(1, n):
        if xs[i].x == xs[i - 1].x:
            raise DuplicateCoordinate(f"x = {xs[i].x} repeats at x-rank {i + 1}")
        if xs[i].x < xs[i - 1].x:
            raise NotSorted(f"a_x decreases at position {i + 1}")
    ys = [_xy(item) for item in a_y]
    for i in range(1, n):
        if ys[i][1] == ys[i - 1][1]:
            raise DuplicateCoordinate(f"y = {ys[i][1]} repeats at y-rank {i + 1}")
        if ys[i][1] < ys[i - 1][1]:
            raise NotSorted(f"a_y decreases at position {i + 1}")
    seen = bytearray(n + 1)
    perm = []
    for r in pi:
        r = int(r)
        if r < 1 or r > n or seen[r]:
            raise PermutationMismatch(f"pi is not a permutation of 1..{n}")
        seen[r] = 1
        perm.append(r)
    out_y = [None] * n
    for i, r in enumerate(perm):
        p = xs[i]
        q = a_y[r - 1]
        qx, qy = ys[r - 1]
        if qx != p.x or qy != p.y:
            raise PermutationMismatch(f"a_x[{i + 1}] and a_y[{r}] are different points")
        if isinstance(q, Point) and q.id != p.id:
            raise PermutationMismatch(f"a_y[{r}] carries id {q.id}, expected {p.id}")
        out_y[r - 1] = p
    return Presorting(tuple(xs), tuple(out_y), tuple(perm))


def make_presorting(points: Iterable) -> Presorting:
    """Sort arbitrary points into a presorting.  Setup only, O(n log n)."""
    raw = [_xy(p) for p in points]
    if not raw:
        raise ValueError("need at least one point")
    for x, y in raw:
        _check_finite(x, y)
    raw.sort()
    xs = [Point(x, y, i + 1) for i, (x, y) in enumerate(raw)]
    for i in range(1, len(xs)):
        if xs[i].x == xs[i - 1].x:
            raise DuplicateCoordinate(f"x = {xs[i].x} appears twice")
    ys = sorted(xs, key=lambda p: p.y)
    for i in range(1, len(ys)):
        if ys[i].y == ys[i - 1].y:
            raise DuplicateCoordinate(f"y = {ys[i].y} appears twice")
    pi = [0] * len(xs)
    for r, p in enumerate(ys):
        pi[p.id - 1] = r + 1
    return Presorting(tuple(xs), tuple(ys), tuple(pi))


class RankRect(NamedTuple):
    """Closed rectangle [xlo, xhi] x [ylo, yhi] in rank space."""
    xlo: int
    xhi: int
    ylo: int
    yhi: int

    @property
    def is_empty(self) -> bool:
        return self.xlo > self.xhi or self.ylo > self.yhi

    def contains(self, xr: int, yr: int) -> bool:
        return self.xlo <= xr <= self.xhi and self.ylo <= yr <= self.yhi

    @classmethod
    def empty(cls) -> "RankRect":
        return EMPTY_RECT


EMPTY_RECT = RankRect(1, 0, 1, 0)


class Extremes(NamedTuple):
    leftmost: Optional[Point]
    rightmost: Optional[Point]
    bottommost: Optional[Point]
    topmost: Optional[Point]

    @property
    def is_empty(self) -> bool:
        return self.leftmost is None

    @property
    def single(self) -> bool:
        return self.leftmost is not None and self.leftmost is self.rightmost


EMPTY_EXTREMES = Extremes(None, None, None, None)


def extremes_of(points: Iterable[Point]) -> Extremes:
    """Linear scan; the brute-force counterpart of the indexed searches."""
    it = iter(points)
    try:
        first = next(it)
    except StopIteration:
        return EMPTY_EXTREMES
    l = r = b = t = first
    for p in it:
        if p.x < l.x:
            l = p
        elif p.x > r.x:
            r = p
        if p.y < b.y:
            b = p
        elif p.y > t.y:
            t = p
    return Extremes(l, r, b, t)


def gamma(ex: Extremes, pre: Presorting) -> RankRect:
    """Smallest rank rectangle holding the points described by ``ex``."""
    if ex.leftmost is None:
        return EMPTY_RECT
    pi = pre.pi
    return RankRect(ex.leftmost.id, ex.rightmost.id,
                    pi[ex.bottommost.id - 1], pi[ex.topmost.id - 1])


@dataclass(frozen=True, slots=True)
class Square:
    """Axis-aligned square with explicit edges and per-edge closedness.

    Edges are stored rather than a side length so that children produced by
    a split share their midline exactly with their siblings.
    """
    x0: float
    y0: float
    x1: float
    y1: float
    left: bool = True
    right: bool = True
    bottom: bool = True
    top: bool = True

    @property
    def side(self) -> float:
        return self.x1 - self.x0

    @property
    def flags(self) -> str:
        return "".join("C" if f else "O" for f in (self.left, self.right, self.bottom, self.top))

    def contains(self, x: float, y: float) -> bool:
        if x < self.x0 or x > self.x1 or y < self.y0 or y > self.y1:
            return False
        if x == self.x0 and not self.left:
            return False
        if x == self.x1 and not self.right:
            return False
        if y == self.y0 and not self.bottom:
            return False
        if y == self.y1 and not self.top:
            return False
        return True

    def within_closure(self, other: "Square") -> bool:
        return (other.x0 <= self.x0 and self.x1 <= other.x1
                and other.y0 <= self.y0 and self.y1 <= other.y1)

    def fits_in(self, other: "Square") -> bool:
        """True when every point this square can hold is also held by ``other``."""
        if not self.within_closure(other):
            return False
        if self.left and self.x0 == other.x0 and not other.left:
            return False
        if self.right and self.x1 == other.x1 and not other.right:
            return False
        if self.bottom and self.y0 == other.y0 and not other.bottom:
            return False
        if self.top and self.y1 == other.y1 and not other.top:
            return False
        return True


def closed_square(x0: float, y0: float, side: float) -> Square:
    return Square(x0, y0, x0 + side, y0 + side)


def midlines(b: Square):
    xm = (b.x0 + b.x1) / 2
    ym = (b.y0 + b.y1) / 2
    if not (b.x0 < xm < b.x1 and b.y0 < ym < b.y1):
        raise DegenerateResolution(f"cannot halve square {b}")
    return xm, ym


def split(b: Square):
    """Four quadrants (SW, SE, NW, NE).

    A point on a midline goes to the east / north child; outer edges keep the
    parent's closedness.
    """
    xm, ym = midlines(b)
    return (
        Square(b.x0, b.y0, xm, ym, b.left, False, b.bottom, False),
        Square(xm, b.y0, b.x1, ym, True, b.right, b.bottom, False),
        Square(b.x0, ym, xm, b.y1, b.left, False, True, b.top),
        Square(xm, ym, b.x1, b.y1, True, b.right, True, b.top),
    )


def quadrant_index(b: Square, x: float, y: float) -> int:
    xm, ym = midlines(b)
    return (x >= xm) + 2 * (y >= ym)


def _single_point_square(x: float, y: float) -> Square:
    h = max(abs(x), abs(y), 1.0) * 2.0 ** -30
    return Square(x - h, y - h, x + h, y + h)


def min_enclosing_square(ex: Extremes, within: Optional[Square] = None) -> Square:
    """Smallest closed square anchored at the lower-left extreme.

    With ``within`` the square is shifted left / down as needed to stay inside
    that square's closure.  A single point yields a tiny canonical square.
    """
    if ex.leftmost is None:
        raise ValueError("no points")
    lx, rx = ex.leftmost.x, ex.rightmost.x
    by, ty = ex.bottommost.y, ex.topmost.y
    s = max(rx - lx, ty - by)
    if s == 0:
        return _single_point_square(lx, by)
    x0, y0 = lx, by
    x1 = max(x0 + s, rx)
    y1 = max(y0 + s, ty)
    if within is not None:
        if x1 > within.x1:
            x1 = within.x1
            x0 = max(min(x1 - s, lx), within.x0)
        if y1 > within.y1:
            y1 = within.y1
            y0 = max(min(y1 - s, by), within.y0)
    return Square(x0, y0, x1, y1)
