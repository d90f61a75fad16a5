"""Reference implementations checked against answers worked out by hand.

These values were fixed before the fast implementations were compared with
the references; they must not be regenerated from the code under test.
"""
from fractions import Fraction

import pytest

from presort_geom.core import RankRect, make_presorting
from presort_geom.hardness import count_distinct_onion, largest_gap, ordered_k_closest
from presort_geom.io import serialize_kdtree, serialize_quadtree
from presort_geom.kdtree import build_kd_baseline
from presort_geom.quadtree import build_baseline
from presort_geom.rankindex import NaiveIndex
from presort_geom.restricted import RestrictedArith
from presort_geom.segisect import brute_force_pairs, make_segments
from presort_geom.triangulate import hull_indices, orient2d

FROZEN_DIVMOD_OPS = 708
FROZEN_ONION = {8: 2, 12: 6, 16: 24}

TWO_POINT_QUADTREE = """\
Q 0.1 0.2 0.9 1.0 CCCC
L 0.1 0.2 0.5 0.6 COCO 1
L 0.5 0.2 0.9 0.6 CCCO -
L 0.1 0.6 0.5 1.0 COCC -
L 0.5 0.6 0.9 1.0 CCCC 2
"""

FIVE_POINT_KDTREE = "x 3\ny 1\n-\nx 2\n-\n-\ny 4\n-\nx 5\n-\n-\n"


def test_quadtree_reference_two_points():
    pre = make_presorting([(0.1, 0.2), (0.9, 0.7)])
    tree, _ = build_baseline(pre.a_x)
    assert serialize_quadtree(tree) == TWO_POINT_QUADTREE


def test_quadtree_reference_compresses_a_tight_pair(small_pre):
    tree, st = build_baseline(small_pre.a_x)
    kinds = "".join(tree.nodes[i].kind for i in tree.preorder())
    # root, SW block of three cells, two empty quadrants, then the tight pair
    assert kinds == "QQLLLLLLCQLLLL"
    assert st.type1_splits == 1


def test_kdtree_reference(small_pre):
    assert serialize_kdtree(build_kd_baseline(small_pre.a_x)) == FIVE_POINT_KDTREE


def test_naive_index_by_hand():
    idx = NaiveIndex([(1, 3), (2, 1), (3, 4), (4, 2)])
    assert idx.x_next(RankRect(1, 4, 1, 2)) == ((2, 1), (4, 2))
    assert idx.y_next(RankRect(2, 4, 1, 4)) == ((2, 1), (3, 4))
    assert idx.range_count(RankRect(1, 3, 2, 4)) == 2
    assert idx.x_next(RankRect(1, 1, 4, 4)) is None


def test_brute_force_pairs_by_hand():
    segs = make_segments([("H", 0, 0, 2), ("V", 1, -1, 1), ("V", 5, 0, 1), ("H", 1, 5, 6)])
    assert brute_force_pairs(segs) == [(1, 2), (3, 4)]


def test_orient2d_exact():
    a, b = (0.1, 0.1), (0.3, 0.3)
    assert orient2d(a, b, (0.2, 0.2)) == 0
    assert orient2d((0, 0), (1, 0), (0, 1)) == 1
    assert orient2d((0, 0), (0, 1), (1, 0)) == -1
    # nearly collinear: the exact sign from rational arithmetic
    c = (0.5, 0.5 + 2.0 ** -50)
    det = (Fraction(b[0]) - Fraction(a[0])) * (Fraction(c[1]) - Fraction(a[1])) - \
          (Fraction(b[1]) - Fraction(a[1])) * (Fraction(c[0]) - Fraction(a[0]))
    assert orient2d(a, b, c) == (det > 0) - (det < 0)


def test_hull_by_hand():
    pts = [(0, 0), (1, 1), (2, 0), (1, 3), (1, 0)]
    assert hull_indices(pts) == [1, 3, 4]


@pytest.mark.parametrize("n", sorted(FROZEN_ONION))
def test_onion_counts(n):
    assert count_distinct_onion(n) == FROZEN_ONION[n]


def test_k_closest_by_hand():
    pts = [(0, 0), (3, 0), (0, 1), (10, 10)]
    assert [(i, j) for _, i, j in ordered_k_closest(pts, 2)] == [(0, 2), (0, 1)]
    assert ordered_k_closest(pts, 1)[0] == (1.0, 0, 2)


def test_largest_gap_by_hand():
    assert largest_gap([5, 1, 2, 9, 2]) == 4


def test_divmod_constant():
    ar = RestrictedArith(12)
    ar.counter.reset()
    assert ar.divmod(4000, 7) == (571, 3)
    assert ar.counter.total == FROZEN_DIVMOD_OPS
