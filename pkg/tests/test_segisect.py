import bisect
import itertools

import numpy as np
import pytest

from presort_geom.instances import grid_segments
from presort_geom.segisect import (VebSet, any_intersection_brute, brute_force_pairs,
                                   detect_intersection, make_endpoint_presorting, make_segments,
                                   segments_intersect)


def detect(rows):
    segs = make_segments(rows)
    return detect_intersection(make_endpoint_presorting(segs)), segs


def test_examples():
    assert detect([("H", 0, 0, 1), ("H", 1, 0, 1)])[0] is None
    assert detect([("H", 0, -1, 1), ("V", 0, -1, 1)])[0] == (1, 2)
    assert detect([("H", 0, 0, 2), ("H", 0, 1, 3)])[0] == (1, 2)
    assert detect([("H", 0, 0, 2), ("V", 1, 0, 3)])[0] == (1, 2)  # T-junction
    assert detect([("V", 0, 0, 1), ("V", 0, 1, 2)])[0] == (1, 2)  # shared endpoint
    assert detect([])[0] is None


def test_brute_force_examples():
    disjoint = make_segments([("H", 0, 0, 1), ("V", 5, 0, 1)])
    assert brute_force_pairs(disjoint) == []
    assert brute_force_pairs(make_segments([("H", 2, 0, 3), ("H", 2, 1, 2)])) == [(1, 2)]
    assert brute_force_pairs(make_segments([("H", 0, 0, 2), ("V", 2, 0, 1)])) == [(1, 2)]


def test_zero_length_rejected():
    with pytest.raises(ValueError):
        make_segments([("H", 0, 1, 1)])
    with pytest.raises(ValueError):
        make_segments([("D", 0, 1, 2)])


def test_endpoint_presorting_ties():
    segs = make_segments([("V", 0, 0, 1), ("V", 0, 1, 2), ("H", 1, -1, 0)])
    ep = make_endpoint_presorting(segs)
    keys = [(e.x, e.seg, e.role) for e in ep.a_x]
    assert keys == sorted(keys)
    keys = [(e.y, e.seg, e.role) for e in ep.a_y]
    assert keys == sorted(keys)
    for i, r in enumerate(ep.pi):
        assert ep.a_x[i] == ep.a_y[r - 1]


def _shapes(g):
    return [(o, f, lo, hi) for o in "HV" for f in range(g) for lo in range(g) for hi in range(lo + 1, g)]


def test_exhaustive_small_grid():
    for k in range(1, 5):
        for combo in itertools.combinations_with_replacement(_shapes(3), k):
            hit, segs = detect(combo)
            pairs = brute_force_pairs(segs)
            assert (hit is None) == (not pairs)
            if hit:
                assert hit in pairs


def test_random_grid_instances():
    for seed in range(300):
        segs, kind = grid_segments(200, seed)
        stats = {}
        hit = detect_intersection(make_endpoint_presorting(segs), stats)
        truth = any_intersection_brute(segs)
        assert (hit is not None) == truth == (kind is not None)
        if hit:
            a, b = hit
            assert segments_intersect(segs[a - 1], segs[b - 1])
        assert stats["veb_max_depth"] <= stats["veb_depth_bound"]


def test_vectorised_brute_matches_pairs():
    rng = np.random.default_rng(0)
    for _ in range(300):
        rows = []
        for _ in range(int(rng.integers(1, 12))):
            lo = int(rng.integers(0, 7))
            rows.append(("HV"[int(rng.integers(0, 2))], int(rng.integers(0, 8)), lo,
                         lo + int(rng.integers(1, 3))))
        segs = make_segments(rows)
        assert any_intersection_brute(segs) == bool(brute_force_pairs(segs))


def test_veb_examples():
    v = VebSet(16)
    assert v.pred(5) is None and v.succ(5) is None and v.min() is None
    assert v.insert(3) and not v.insert(3)
    assert v.succ(3) is None and v.pred(4) == 3 and 3 in v
    assert v.delete(3) and not v.delete(3)
    assert len(v) == 0
    assert VebSet(1000).universe == 1024
    with pytest.raises(ValueError):
        3000 in VebSet(1000)


@pytest.mark.parametrize("universe", [2, 16, 1000, 1 << 16])
def test_veb_against_sorted_list(universe):
    rng = np.random.default_rng(universe)
    v = VebSet(universe)
    ref = []
    ops = 100_000 if universe == 1000 else 20_000
    keys = rng.integers(0, universe, ops).tolist()
    kinds = rng.random(ops).tolist()
    for x, r in zip(keys, kinds):
        i = bisect.bisect_left(ref, x)
        present = i < len(ref) and ref[i] == x
        if r < 0.35:
            assert v.insert(x) == (not present)
            if not present:
                ref.insert(i, x)
        elif r < 0.6:
            assert v.delete(x) == present
            if present:
                ref.pop(i)
        elif r < 0.8:
            j = bisect.bisect_right(ref, x)
            assert v.succ(x) == (ref[j] if j < len(ref) else None)
        else:
            assert v.pred(x) == (ref[i - 1] if i > 0 else None)
        assert v.last_depth <= v.depth_bound
        assert v.min() == (ref[0] if ref else None)
        assert v.max() == (ref[-1] if ref else None)
    assert len(v) == len(ref)
    assert v.max_depth <= v.depth_bound
