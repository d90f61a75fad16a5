import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from presort_geom.core import (EMPTY_EXTREMES, Point, RankRect, Square, extremes_of, gamma,
                               make_presorting, midlines, min_enclosing_square, quadrant_index,
                               split, validate_presorting)
from presort_geom.errors import (DegenerateResolution, DuplicateCoordinate, NotSorted,
                                 PermutationMismatch)


def test_validate_singleton():
    pre = validate_presorting([(0, 0)], [(0, 0)], [1])
    assert pre.n == 1 and pre.pi == (1,)


def test_validate_swap():
    pre = validate_presorting([(0, 1), (1, 0)], [(1, 0), (0, 1)], [2, 1])
    assert pre.by_y_rank(1) == Point(1.0, 0.0, 2)


def test_validate_duplicate_y():
    with pytest.raises(DuplicateCoordinate):
        validate_presorting([(0, 0), (1, 0)], [(0, 0), (1, 0)], [1, 2])


def test_validate_not_sorted():
    with pytest.raises(NotSorted):
        validate_presorting([(1, 0), (0, 1)], [(1, 0), (0, 1)], [1, 2])
    with pytest.raises(NotSorted):
        validate_presorting([(0, 1), (1, 0)], [(0, 1), (1, 0)], [2, 1])


def test_validate_permutation_mismatch():
    with pytest.raises(PermutationMismatch):
        validate_presorting([(0, 1), (1, 0)], [(1, 0), (0, 1)], [1, 2])
    with pytest.raises(PermutationMismatch):
        validate_presorting([(0, 1), (1, 0)], [(1, 0), (0, 1)], [2, 2])


def test_make_presorting_example():
    pre = make_presorting([(3, 1), (1, 3), (2, 2)])
    assert [p.x for p in pre.a_x] == [1, 2, 3]
    assert pre.pi == (3, 2, 1)
    assert make_presorting([(5, 5)]).pi == (1,)
    assert make_presorting([(1, 1), (2, 2), (3, 3)]).pi == (1, 2, 3)


def test_make_presorting_rejects_duplicates():
    with pytest.raises(DuplicateCoordinate):
        make_presorting([(1, 2), (1, 3)])


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(-1000, 1000), st.integers(-1000, 1000)), min_size=1, max_size=40,
                unique_by=(lambda p: p[0], lambda p: p[1])))
def test_validate_accepts_make(points):
    pre = make_presorting(points)
    again = validate_presorting(pre.a_x, pre.a_y, pre.pi)
    assert again == pre
    for p in pre.a_x:
        assert pre.x_index(p) == p.id
        assert pre.by_y_rank(pre.y_index(p)) == p


def test_gamma_examples():
    pre = make_presorting(np.random.default_rng(0).random((10, 2)).tolist())
    p = pre.a_x[3]
    assert gamma(extremes_of([p]), pre) == RankRect(4, 4, pre.pi[3], pre.pi[3])
    assert gamma(extremes_of(pre.a_x), pre) == RankRect(1, 10, 1, 10)
    assert gamma(EMPTY_EXTREMES, pre).is_empty


def test_gamma_matches_square_membership():
    rng = np.random.default_rng(1)
    pre = make_presorting(rng.random((300, 2)).tolist())
    for _ in range(200):
        x0, y0 = rng.random(2) * 0.8
        sq = Square(x0, y0, x0 + 0.2, y0 + 0.2)
        inside = [p for p in pre.a_x if sq.contains(p.x, p.y)]
        r = gamma(extremes_of(inside), pre)
        in_rect = {p.id for p in pre.a_x if r.contains(p.id, pre.pi[p.id - 1])}
        assert in_rect == {p.id for p in inside}


def test_split_convention():
    sw, se, nw, ne = split(Square(0, 0, 1, 1))
    assert (sw.x0, sw.y0, sw.x1, sw.y1) == (0, 0, 0.5, 0.5)
    assert sw.flags == "COCO"
    assert ne.flags == "CCCC"
    assert not sw.contains(0.5, 0.2) and se.contains(0.5, 0.2)
    assert quadrant_index(Square(0, 0, 1, 1), 0.5, 0.5) == 3


def test_split_partitions_random_points():
    rng = np.random.default_rng(2)
    for _ in range(200):
        x0, y0 = rng.random(2)
        side = rng.random() + 1e-3
        flags = rng.random(4) < 0.5
        b = Square(x0, y0, x0 + side, y0 + side, *flags)
        kids = split(b)
        pts = np.column_stack((x0 + rng.random(500) * side, y0 + rng.random(500) * side))
        # include points exactly on the midlines and edges
        xm, ym = midlines(b)
        pts[:10, 0] = xm
        pts[10:20, 1] = ym
        pts[20, :] = (b.x0, b.y0)
        pts[21, :] = (b.x1, b.y1)
        for x, y in pts.tolist():
            hits = sum(k.contains(x, y) for k in kids)
            assert hits == (1 if b.contains(x, y) else 0)


def test_split_degenerate():
    x = 1.0
    tiny = Square(x, x, np.nextafter(x, 2.0), np.nextafter(x, 2.0))
    with pytest.raises(DegenerateResolution):
        split(tiny)


def test_min_enclosing_square_examples():
    ex = extremes_of([Point(0, 0, 1), Point(1, 0.2, 2)])
    sq = min_enclosing_square(ex, Square(0, 0, 4, 4))
    assert (sq.x0, sq.y0, sq.x1, sq.y1) == (0, 0, 1, 1)
    # overhang on the right: shifted left to abut the border
    ex = extremes_of([Point(3.5, 0, 1), Point(3.9, 1, 2)])
    sq = min_enclosing_square(ex, Square(0, 0, 4, 4))
    assert sq.x1 == 4 and sq.x0 == 3 and sq.contains(3.5, 0) and sq.contains(3.9, 1)


def test_min_enclosing_square_random():
    rng = np.random.default_rng(3)
    for _ in range(500):
        outer = Square(0, 0, 1, 1)
        k = int(rng.integers(2, 6))
        pts = [Point(float(x), float(y), i) for i, (x, y) in enumerate(rng.random((k, 2)), start=1)]
        ex = extremes_of(pts)
        sq = min_enclosing_square(ex, outer)
        assert sq.within_closure(outer)
        extent = max(ex.rightmost.x - ex.leftmost.x, ex.topmost.y - ex.bottommost.y)
        assert sq.side == pytest.approx(extent)
        assert all(sq.contains(p.x, p.y) for p in pts)


def test_rankrect_empty():
    assert RankRect(1, 0, 1, 0).is_empty
    assert not RankRect(1, 1, 1, 1).is_empty
