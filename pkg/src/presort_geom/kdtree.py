"""KD-trees from a presorting by median search, plus a sorting-based baseline.

Levels alternate x and y starting with x.  A node over m points stores the
element of index floor((m - 1) / 2) along its axis; smaller ones go left,
larger ones right.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .arith import NATIVE
from .core import Point, Presorting, RankRect
from .samplesearch import LevelStack, SearchStats, median_split, preprocess


@dataclass(slots=True)
class KdNode:
    axis: int
    point: int
    left: Optional[int] = None
    right: Optional[int] = None


@dataclass
class KdTree:
    nodes: list
    root: Optional[int] = 0

    def __len__(self):
        return len(self.nodes)

    def inorder(self):
        out = []
        stack = []
        cur = self.root
        while stack or cur is not None:
            while cur is not None:
                stack.append(cur)
                cur = self.nodes[cur].left
            cur = stack.pop()
            out.append(self.nodes[cur].point)
            cur = self.nodes[cur].right
        return out


@dataclass
class KdBuildStats:
    total_skiplist_steps: int = 0
    total_range_queries: int = 0
    search: SearchStats = field(default_factory=SearchStats)


def _link(nodes, parent, side, node):
    idx = len(nodes)
    nodes.append(node)
    if parent is not None:
        if side == 0:
            nodes[parent].left = idx
        else:
            nodes[parent].right = idx
    return idx


def build_kd_presorted(pre: Presorting, seed: int = 0, arith=NATIVE, backend: str = "wavelet",
                       levels: Optional[LevelStack] = None):
    """KD-tree of a presorted set.  Returns (tree, KdBuildStats)."""
    ls = levels if levels is not None else preprocess(pre, seed, arith, backend)
    stats = KdBuildStats()
    ss = stats.search
    a_y = pre.a_y
    nodes: list = []
    tasks = [(RankRect(1, pre.n, 1, pre.n), pre.n, 0, None, 0)]
    while tasks:
        rect, m, axis, parent, side = tasks.pop()
        if m == 0:
            continue
        med = median_split(ls, rect, axis, m, ss)
        pid = med[0] if axis == 0 else a_y[med[1] - 1].id
        idx = _link(nodes, parent, side, KdNode(axis, pid))
        k = (m - 1) // 2
        lo = list(rect)
        hi = list(rect)
        lo[2 * axis + 1] = med[axis] - 1
        hi[2 * axis] = med[axis] + 1
        tasks.append((RankRect(*hi), m - 1 - k, 1 - axis, idx, 1))
        tasks.append((RankRect(*lo), k, 1 - axis, idx, 0))
    stats.total_skiplist_steps = ss.steps
    stats.total_range_queries = ss.queries
    return KdTree(nodes, 0 if nodes else None), stats


def build_kd_baseline(points: Sequence):
    """KD-tree by sorting once per axis and splitting the sorted lists."""
    pts = [p if isinstance(p, Point) else Point(float(p[0]), float(p[1]), i + 1)
           for i, p in enumerate(points)]
    by_x = sorted(pts, key=lambda p: p.x)
    by_y = sorted(pts, key=lambda p: p.y)
    nodes: list = []
    tasks = [(by_x, by_y, 0, None, 0)]
    while tasks:
        xs, ys, axis, parent, side = tasks.pop()
        if not xs:
            continue
        k = (len(xs) - 1) // 2
        if axis == 0:
            med = xs[k]
            lx, rx = xs[:k], xs[k + 1:]
            ly = [p for p in ys if p.x < med.x]
            ry = [p for p in ys if p.x > med.x]
        else:
            med = ys[k]
            ly, ry = ys[:k], ys[k + 1:]
            lx = [p for p in xs if p.y < med.y]
            rx = [p for p in xs if p.y > med.y]
        idx = _link(nodes, parent, side, KdNode(axis, med.id))
        tasks.append((rx, ry, 1 - axis, idx, 1))
        tasks.append((lx, ly, 1 - axis, idx, 0))
    return KdTree(nodes, 0 if nodes else None)


def kd_trees_equal(a: KdTree, b: KdTree) -> bool:
    stack = [(a.root, b.root)]
    while stack:
        i, j = stack.pop()
        if i is None or j is None:
            if i is not j:
                return False
            continue
        u, v = a.nodes[i], b.nodes[j]
        if u.axis != v.axis or u.point != v.point:
            return False
        stack.append((u.left, v.left))
        stack.append((u.right, v.right))
    return True


def kd_violations(tree: KdTree, points: Sequence) -> list:
    """Check axis alternation, the median rule and the search-tree order of
    every node.  Returns human-readable messages; empty means valid."""
    pts = {p.id: p for p in points}
    out = []
    if tree.root is None:
        return [] if not pts else ["empty tree for non-empty input"]
    sizes = {}
    members = {}
    order = []
    stack = [tree.root]
    while stack:
        i = stack.pop()
        order.append(i)
        nd = tree.nodes[i]
        for c in (nd.left, nd.right):
            if c is not None:
                stack.append(c)
    for i in reversed(order):
        nd = tree.nodes[i]
        ms = [nd.point]
        for c in (nd.left, nd.right):
            if c is not None:
                ms.extend(members[c])
        members[i] = ms
        sizes[i] = len(ms)
    if sorted(members[tree.root]) != sorted(pts):
        out.append("tree does not hold exactly the input points")
    for i in order:
        nd = tree.nodes[i]
        med = pts[nd.point]
        coord = lambda q: q[nd.axis]
        left = members[nd.left] if nd.left is not None else []
        right = members[nd.right] if nd.right is not None else []
        if any(coord(pts[q]) >= coord(med) for q in left):
            out.append(f"node {i}: left subtree not below split")
        if any(coord(pts[q]) <= coord(med) for q in right):
            out.append(f"node {i}: right subtree not above split")
        if len(left) != (sizes[i] - 1) // 2:
            out.append(f"node {i}: split is not the lower median")
        for c in (nd.left, nd.right):
            if c is not None and tree.nodes[c].axis != 1 - nd.axis:
                out.append(f"node {c}: axis does not alternate")
    if tree.nodes[tree.root].axis != 0:
        out.append("root must split on x")
    return out
