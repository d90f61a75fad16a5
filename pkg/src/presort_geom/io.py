"""Plain-text file formats.

Point file::

    n
    x y        (n lines, floats written with repr so they round-trip)
    [p1 ... pn] optional permutation line: the file is then a presorting,
                with points listed by x and p_i the y-rank of point i

Segment file::

    n
    H|V fixed lo hi

Quadtree text is one node per line in pre-order,
``kind x0 y0 x1 y1 flags [point]``, where kind is Q, C or L, flags gives
left/right/bottom/top closedness as C or O, and leaves end with a point id
or ``-``.  KD-tree text is pre-order ``x id`` / ``y id`` lines with ``-``
for a missing child.  Triangle files hold ``i j k`` lines (1-based).
"""
from __future__ import annotations

import json
from pathlib import Path

from .core import Presorting, Square, make_presorting, validate_presorting
from .errors import PermutationMismatch
from .kdtree import KdNode, KdTree
from .quadtree import COMPRESSED, LEAF, QUAD, QuadNode, QuadTree
from .segisect import make_segments


def format_points(points, pi=None) -> str:
    lines = [str(len(points))]
    lines += [f"{float(p[0])!r} {float(p[1])!r}" for p in points]
    if pi is not None:
        lines.append(" ".join(str(int(r)) for r in pi))
    return "\n".join(lines) + "\n"


def write_points(path, points, pi=None) -> None:
    Path(path).write_text(format_points(points, pi))


def _rows(path):
    """Non-blank lines as (line number, fields)."""
    lines = Path(path).read_text().splitlines()
    return [(i, ln.split()) for i, ln in enumerate(lines, start=1) if ln.strip()]


def _parse(path, lineno, conv, fields):
    try:
        return [conv(v) for v in fields]
    except ValueError:
        raise ValueError(f"{path}:{lineno}: cannot parse {' '.join(fields)!r}") from None


def _count(path, rows) -> int:
    if not rows:
        raise ValueError(f"{path}: empty file")
    n = _parse(path, rows[0][0], int, rows[0][1][:1])[0]
    if n < 0:
        raise ValueError(f"{path}:{rows[0][0]}: negative count")
    return n


def read_points(path):
    """Returns (points, pi) where pi is None for a plain point file."""
    rows = _rows(path)
    n = _count(path, rows)
    body = rows[1:n + 1]
    if len(body) != n:
        raise ValueError(f"{path}: expected {n} lines of 'x y', found {len(body)}")
    pts = []
    for lineno, r in body:
        if len(r) != 2:
            raise ValueError(f"{path}:{lineno}: expected 'x y'")
        pts.append(tuple(_parse(path, lineno, float, r)))
    pi = None
    if len(rows) > n + 1:
        lineno, r = rows[n + 1]
        pi = _parse(path, lineno, int, r)
    return pts, pi


def write_presorting(path, pre: Presorting) -> None:
    write_points(path, pre.a_x, pre.pi)


def load_presorting(path) -> Presorting:
    """Presorting from a file; plain point files are sorted on load."""
    pts, pi = read_points(path)
    if pi is None:
        return make_presorting(pts)
    if sorted(pi) != list(range(1, len(pts) + 1)):
        raise PermutationMismatch(f"{path}: last line is not a permutation of 1..{len(pts)}")
    a_y = [None] * len(pts)
    for i, r in enumerate(pi):
        a_y[r - 1] = pts[i]
    ys = [p[1] for p in a_y]
    if any(b < a for a, b in zip(ys, ys[1:])):
        raise PermutationMismatch(f"{path}: permutation line does not sort the points by y")
    return validate_presorting(pts, a_y, pi)


def write_segments(path, segments) -> None:
    lines = [str(len(segments))]
    lines += [f"{s.orient} {s.fixed!r} {s.lo!r} {s.hi!r}" for s in segments]
    Path(path).write_text("\n".join(lines) + "\n")


def read_segments(path):
    rows = _rows(path)
    n = _count(path, rows)
    body = rows[1:n + 1]
    if len(body) != n:
        raise ValueError(f"{path}: expected {n} segment lines, found {len(body)}")
    out = []
    for lineno, r in body:
        if len(r) != 4:
            raise ValueError(f"{path}:{lineno}: expected 'H|V fixed lo hi'")
        out.append((r[0], *_parse(path, lineno, float, r[1:])))
    return make_segments(out)


def serialize_quadtree(tree: QuadTree) -> str:
    out = []
    for i in tree.preorder():
        nd = tree.nodes[i]
        s = nd.square
        line = f"{nd.kind} {s.x0!r} {s.y0!r} {s.x1!r} {s.y1!r} {s.flags}"
        if nd.kind == LEAF:
            line += f" {nd.point if nd.point is not None else '-'}"
        out.append(line)
    return "\n".join(out) + "\n"


def parse_quadtree(text: str) -> QuadTree:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    nodes = []
    open_nodes = []  # [index, arity, children so far]
    root = None
    for r in rows:
        if root is not None and not open_nodes:
            raise ValueError("trailing lines after quadtree")
        kind = r[0]
        flags = [c == "C" for c in r[5]]
        sq = Square(float(r[1]), float(r[2]), float(r[3]), float(r[4]), *flags)
        idx = len(nodes)
        if kind == LEAF:
            nodes.append(QuadNode(sq, LEAF, None if r[6] == "-" else int(r[6]), ()))
        elif kind in (QUAD, COMPRESSED):
            nodes.append(QuadNode(sq, kind, None, ()))
        else:
            raise ValueError(f"unknown node kind {kind!r}")
        if open_nodes:
            open_nodes[-1][2].append(idx)
        else:
            root = idx
        if kind != LEAF:
            open_nodes.append([idx, 4 if kind == QUAD else 1, []])
        while open_nodes and len(open_nodes[-1][2]) == open_nodes[-1][1]:
            i, _, ch = open_nodes.pop()
            nodes[i].children = tuple(ch)
    if root is None or open_nodes:
        raise ValueError("quadtree text ends early")
    return QuadTree(nodes, root)


def serialize_kdtree(tree: KdTree) -> str:
    out = []
    stack = [tree.root]
    while stack:
        i = stack.pop()
        if i is None:
            out.append("-")
            continue
        nd = tree.nodes[i]
        out.append(f"{'xy'[nd.axis]} {nd.point}")
        stack.append(nd.right)
        stack.append(nd.left)
    return "\n".join(out) + "\n"


def parse_kdtree(text: str) -> KdTree:
    rows = [ln.split() for ln in text.splitlines() if ln.strip()]
    nodes = []
    # each entry: (parent index, side)
    slots = [(None, 0)]
    root = None
    for r in rows:
        if not slots:
            raise ValueError("trailing lines after kd-tree")
        parent, side = slots.pop()
        if r[0] == "-":
            continue
        idx = len(nodes)
        nodes.append(KdNode("xy".index(r[0]), int(r[1])))
        if parent is None:
            root = idx
        elif side == 0:
            nodes[parent].left = idx
        else:
            nodes[parent].right = idx
        slots.append((idx, 1))
        slots.append((idx, 0))
    if slots:
        raise ValueError("kd-tree text ends early")
    return KdTree(nodes, root)


def write_triangles(path, triangulation) -> None:
    Path(path).write_text("".join(f"{a} {b} {c}\n" for a, b, c in triangulation.triangles))


def read_triangles(path):
    return [tuple(int(v) for v in ln.split()) for ln in Path(path).read_text().splitlines() if ln.strip()]


def write_sidecar(path, meta: dict) -> Path:
    side = Path(str(path) + ".json")
    side.write_text(json.dumps(meta, indent=2, sort_keys=True) + "\n")
    return side


def read_sidecar(path) -> dict:
    return json.loads(Path(str(path) + ".json").read_text())
