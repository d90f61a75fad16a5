"""Compressed quadtrees: a presorted builder, a brute-force builder and a
verifier.

A node with at least two points either splits its square into four
quadrants (``QUAD``) or, when all points fall into a single quadrant, hops
to the smallest square enclosing them that still fits in that quadrant
(``COMPRESSED``).  Empty quadrants become empty leaves.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence

from .arith import NATIVE
from .core import (Extremes, Point, Presorting, Square, extremes_of, gamma,
                   min_enclosing_square, split)
from .errors import DegenerateResolution
from .samplesearch import LevelStack, SearchStats, half_split, preprocess

LEAF = "L"
QUAD = "Q"
COMPRESSED = "C"


@dataclass(slots=True)
class QuadNode:
    square: Square
    kind: str
    point: Optional[int] = None
    children: tuple = ()


@dataclass
class QuadTree:
    nodes: list
    root: int = 0

    def __len__(self):
        return len(self.nodes)

    def preorder(self):
        stack = [self.root]
        while stack:
            i = stack.pop()
            yield i
            stack.extend(reversed(self.nodes[i].children))

    def leaves(self):
        return [self.nodes[i] for i in self.preorder() if self.nodes[i].kind == LEAF]


@dataclass
class BuildStats:
    type1_splits: int = 0
    type2_splits: int = 0
    total_skiplist_steps: int = 0
    total_range_queries: int = 0
    search: SearchStats = field(default_factory=SearchStats)

    def finish(self) -> "BuildStats":
        self.total_skiplist_steps = self.search.steps
        self.total_range_queries = self.search.queries
        return self


def _root_extremes(pre: Presorting) -> Extremes:
    return Extremes(pre.a_x[0], pre.a_x[-1], pre.a_y[0], pre.a_y[-1])


def _attach(nodes, parent, slot, node):
    idx = len(nodes)
    nodes.append(node)
    if parent is not None:
        nodes[parent].children[slot] = idx
    return idx


def _finalize(nodes):
    for nd in nodes:
        nd.children = tuple(nd.children)
    return QuadTree(nodes, 0)


def build_presorted(pre: Presorting, seed: int = 0, arith=NATIVE, backend: str = "wavelet",
                    levels: Optional[LevelStack] = None):
    """Compressed quadtree of a presorted point set in expected O(n) time.

    Returns (tree, BuildStats).
    """
    ls = levels if levels is not None else preprocess(pre, seed, arith, backend)
    stats = BuildStats()
    ss = stats.search
    nodes: list = []
    tasks = [(min_enclosing_square(_root_extremes(pre)), _root_extremes(pre), None, 0)]
    while tasks:
        sq, ex, parent, slot = tasks.pop()
        if ex.leftmost is None:
            _attach(nodes, parent, slot, QuadNode(sq, LEAF))
            continue
        if ex.leftmost.id == ex.rightmost.id:
            _attach(nodes, parent, slot, QuadNode(sq, LEAF, ex.leftmost.id))
            continue
        quads = split(sq)
        xm = quads[1].x0
        ym = quads[2].y0
        west, east = half_split(ls, gamma(ex, pre), ex, xm, 0, ss)
        sw, nw = half_split(ls, gamma(west, pre), west, ym, 1, ss)
        se, ne = half_split(ls, gamma(east, pre), east, ym, 1, ss)
        parts = (sw, se, nw, ne)
        occupied = [i for i in range(4) if parts[i].leftmost is not None]
        if len(occupied) == 1:
            stats.type1_splits += 1
            idx = _attach(nodes, parent, slot, QuadNode(sq, COMPRESSED, None, [None]))
            inner = min_enclosing_square(ex, quads[occupied[0]])
            tasks.append((inner, ex, idx, 0))
        else:
            stats.type2_splits += 1
            idx = _attach(nodes, parent, slot, QuadNode(sq, QUAD, None, [None] * 4))
            for i in range(3, -1, -1):
                tasks.append((quads[i], parts[i], idx, i))
    return _finalize(nodes), stats.finish()


def _as_points(points) -> list:
    out = []
    for i, p in enumerate(points):
        out.append(p if isinstance(p, Point) else Point(float(p[0]), float(p[1]), i + 1))
    return out


def build_baseline(points: Sequence):
    """Same tree by direct partitioning of point lists.  O(n * depth)."""
    pts = _as_points(points)
    stats = BuildStats()
    nodes: list = []
    tasks = [(min_enclosing_square(extremes_of(pts)), pts, None, 0)]
    while tasks:
        sq, group, parent, slot = tasks.pop()
        if not group:
            _attach(nodes, parent, slot, QuadNode(sq, LEAF))
            continue
        if len(group) == 1:
            _attach(nodes, parent, slot, QuadNode(sq, LEAF, group[0].id))
            continue
        quads = split(sq)
        xm = quads[1].x0
        ym = quads[2].y0
        parts = ([], [], [], [])
        for p in group:
            parts[(p.x >= xm) + 2 * (p.y >= ym)].append(p)
        occupied = [i for i in range(4) if parts[i]]
        if len(occupied) == 1:
            stats.type1_splits += 1
            idx = _attach(nodes, parent, slot, QuadNode(sq, COMPRESSED, None, [None]))
            inner = min_enclosing_square(extremes_of(group), quads[occupied[0]])
            tasks.append((inner, group, idx, 0))
        else:
            stats.type2_splits += 1
            idx = _attach(nodes, parent, slot, QuadNode(sq, QUAD, None, [None] * 4))
            for i in range(3, -1, -1):
                tasks.append((quads[i], parts[i], idx, i))
    return _finalize(nodes), stats.finish()


def trees_equal(a: QuadTree, b: QuadTree) -> bool:
    stack = [(a.root, b.root)]
    while stack:
        i, j = stack.pop()
        u, v = a.nodes[i], b.nodes[j]
        if u.kind != v.kind or u.point != v.point or u.square != v.square:
            return False
        if len(u.children) != len(v.children):
            return False
        stack.extend(zip(u.children, v.children))
    return True


class Violation(NamedTuple):
    kind: str
    node: int
    detail: str


def verify(tree: QuadTree, points: Sequence) -> list:
    """Check every defining property of a compressed quadtree.

    Returns a list of Violations; an empty list means the tree is valid.
    """
    pts = _as_points(points)
    by_id = {p.id: p for p in pts}
    nodes = tree.nodes
    out = []
    occupants = {}
    seen_at = [[] for _ in nodes]
    for p in pts:
        cur = tree.root
        while True:
            nd = nodes[cur]
            seen_at[cur].append(p.id)
            if not nd.square.contains(p.x, p.y):
                out.append(Violation("outside", cur, f"point {p.id} not in square"))
                break
            if nd.kind == LEAF:
                occupants.setdefault(cur, []).append(p.id)
                break
            if nd.kind == COMPRESSED:
                cur = nd.children[0]
                continue
            holders = [c for c in nd.children if nodes[c].square.contains(p.x, p.y)]
            if len(holders) != 1:
                out.append(Violation("partition", cur, f"point {p.id} in {len(holders)} children"))
                break
            cur = holders[0]
    for i, nd in enumerate(nodes):
        if nd.kind == LEAF:
            occ = occupants.get(i, [])
            if len(occ) > 1:
                out.append(Violation("occupancy", i, f"{len(occ)} points in one leaf"))
            expect = occ[0] if len(occ) == 1 else None
            if nd.point != expect:
                out.append(Violation("leaf-point", i, f"stores {nd.point}, holds {expect}"))
            if nd.children:
                out.append(Violation("leaf-children", i, "leaf has children"))
            continue
        if len(seen_at[i]) < 2:
            out.append(Violation("needless-split", i, f"{len(seen_at[i])} points reach an inner node"))
        try:
            quads = split(nd.square)
        except DegenerateResolution:
            out.append(Violation("degenerate", i, "square cannot be halved"))
            continue
        if nd.kind == QUAD:
            if len(nd.children) != 4:
                out.append(Violation("arity", i, "quad node needs four children"))
                continue
            for q, c in zip(quads, nd.children):
                if nodes[c].square != q:
                    out.append(Violation("split", c, "child square is not the quadrant"))
            used = sum(1 for c in nd.children if seen_at[c])
            if used < 2:
                out.append(Violation("type", i, "all points in one quadrant; expected a compressed node"))
        elif nd.kind == COMPRESSED:
            if len(nd.children) != 1:
                out.append(Violation("arity", i, "compressed node needs one child"))
                continue
            child = nodes[nd.children[0]]
            homes = [q for q in quads if child.square.within_closure(q)]
            if not homes:
                out.append(Violation("compressed-quadrant", i, "child square leaves every quadrant"))
            elif seen_at[i]:
                ex = extremes_of([by_id[j] for j in seen_at[i]])
                if child.square != min_enclosing_square(ex, homes[0]):
                    out.append(Violation("canonical", nd.children[0],
                                         "compressed child is not the canonical enclosing square"))
            if child.kind == COMPRESSED:
                out.append(Violation("compressed-chain", i, "compressed node followed by another"))
        else:
            out.append(Violation("kind", i, f"unknown node kind {nd.kind!r}"))
    if pts and nodes[tree.root].square != min_enclosing_square(extremes_of(pts)):
        out.append(Violation("canonical", tree.root, "root is not the canonical enclosing square"))
    placed = sum(len(v) for v in occupants.values())
    if placed != len(pts):
        out.append(Violation("lost", tree.root, f"{len(pts) - placed} points reach no leaf"))
    return out
