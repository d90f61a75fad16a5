import math
import random
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from presort_geom.arith import NATIVE
from presort_geom.core import RankRect
from presort_geom.errors import DuplicateRank
from presort_geom.rankindex import BitVec, NaiveIndex, RankIndex, WaveletMatrix, level_count
from presort_geom.restricted import RestrictedArith


def perm_points(n, seed):
    rng = np.random.default_rng(seed)
    pi = rng.permutation(n) + 1
    return [(i + 1, int(pi[i])) for i in range(n)]


def test_identity_and_reverse_examples():
    ident = RankIndex([(i, i) for i in range(1, 5)])
    assert ident.x_next(RankRect(1, 4, 1, 4)) == ((1, 1), (4, 4))
    rev = RankIndex([(i, 5 - i) for i in range(1, 5)])
    assert rev.y_next(RankRect(1, 4, 1, 4))[0] == (4, 1)


def test_empty_full_and_column():
    pts = perm_points(30, 0)
    idx = RankIndex(pts)
    assert idx.x_next(RankRect(1, 0, 1, 0)) is None
    assert idx.y_next(RankRect(5, 4, 1, 30)) is None
    assert idx.range_count(RankRect(1, 0, 1, 0)) == 0
    assert idx.range_count(RankRect(1, 30, 1, 30)) == 30
    assert idx.x_next(RankRect(1, 30, 1, 30)) == (pts[0], pts[-1])
    x, y = pts[7]
    assert idx.y_next(RankRect(x, x, 1, 30)) == ((x, y), (x, y))


def test_duplicate_rank():
    with pytest.raises(DuplicateRank):
        RankIndex([(1, 1), (1, 2)])
    with pytest.raises(DuplicateRank):
        RankIndex([(1, 1), (2, 1)])


def test_bitvec():
    rng = np.random.default_rng(0)
    bits = (rng.random(200) < 0.4).astype(int).tolist()
    bv = BitVec(bits)
    for i in range(201):
        assert bv.rank0(i) + bv.rank1(i) == i
        assert bv.rank1(i) == sum(bits[:i])
        assert bv.select1(bv.rank1(i)) <= i
    for j in range(1, sum(bits) + 1):
        assert bv.rank1(bv.select1(j)) == j
        assert bv.rank1(bv.select1(j) - 1) == j - 1


@pytest.mark.parametrize("arith", [None, "restricted"])
def test_wavelet_access(arith):
    vals = np.random.default_rng(1).permutation(100)
    ar = RestrictedArith.for_n(100) if arith else NATIVE
    wm = WaveletMatrix(vals, 100, ar)
    assert [wm.access(i) for i in range(100)] == vals.tolist()


def _subset(n, seed, frac=0.7):
    rnd = random.Random(seed)
    pts = perm_points(n, seed)
    return [p for p in pts if rnd.random() < frac] or pts[:1]


@pytest.mark.parametrize("n", [1, 2, 3, 7, 16, 24])
def test_exhaustive_small(n):
    pts = _subset(n, n)
    fast, pure, slow = RankIndex(pts), RankIndex(pts, RestrictedArith.for_n(n)), NaiveIndex(pts)
    assert fast.points() == slow.pts
    rng = range(0, n + 2)
    for a, b, c, d in product(rng, rng, rng, rng):
        r = RankRect(a, b, c, d)
        want = (slow.x_next(r), slow.y_next(r), slow.range_count(r))
        assert (fast.x_next(r), fast.y_next(r), fast.range_count(r)) == want
        assert (pure.x_next(r), pure.y_next(r), pure.range_count(r)) == want


def test_random_rects_n256():
    pts = perm_points(256, 5)
    fast, slow = RankIndex(pts), NaiveIndex(pts)
    rng = np.random.default_rng(6)
    for _ in range(1000):
        a, b = sorted(rng.integers(1, 257, 2).tolist())
        c, d = sorted(rng.integers(1, 257, 2).tolist())
        r = RankRect(a, b, c, d)
        assert fast.x_next(r) == slow.x_next(r)
        assert fast.y_next(r) == slow.y_next(r)
        assert fast.range_count(r) == slow.range_count(r)


@settings(max_examples=80, deadline=None)
@given(st.integers(1, 60).flatmap(lambda n: st.tuples(st.permutations(range(1, n + 1)),
                                                        st.lists(st.integers(0, n + 1), min_size=4,
                                                                 max_size=4))))
def test_property_against_naive(data):
    pi, (a, b, c, d) = data
    pts = [(i + 1, v) for i, v in enumerate(pi)]
    r = RankRect(a, b, c, d)
    fast, slow = RankIndex(pts), NaiveIndex(pts)
    assert fast.x_next(r) == slow.x_next(r)
    assert fast.y_next(r) == slow.y_next(r)
    assert fast.range_count(r) == slow.range_count(r)


def test_descent_length_bounded_by_levels():
    for n in (5, 64, 100, 1000):
        pts = perm_points(n, n)
        idx = RankIndex(pts)
        trace = []
        rng = np.random.default_rng(n)
        for _ in range(300):
            a, b = sorted(rng.integers(1, n + 1, 2).tolist())
            c, d = sorted(rng.integers(1, n + 1, 2).tolist())
            idx.x_next(RankRect(a, b, c, d), trace)
            idx.y_next(RankRect(a, b, c, d), trace)
        assert trace and max(trace) <= math.ceil(math.log2(n))
        assert level_count(n) == math.ceil(math.log2(n))


def test_restricted_backend_identical_answers():
    pts = perm_points(300, 9)
    a, b = RankIndex(pts), RankIndex(pts, RestrictedArith.for_n(300))
    rng = np.random.default_rng(10)
    for _ in range(500):
        lo, hi = sorted(rng.integers(1, 301, 2).tolist())
        c, d = sorted(rng.integers(1, 301, 2).tolist())
        r = RankRect(lo, hi, c, d)
        assert a.x_next(r) == b.x_next(r)
        assert a.y_next(r) == b.y_next(r)
        assert a.range_count(r) == b.range_count(r)
