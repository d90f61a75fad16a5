"""Random and structured inputs for tests, benchmarks and the CLI."""
from __future__ import annotations

import math

import numpy as np

from .segisect import make_segments


def random_points(n: int, seed: int = 0) -> list:
    """n points uniform in the unit square with pairwise distinct coordinates."""
    rng = np.random.default_rng(seed)
    while True:
        P = rng.random((n, 2))
        if len(np.unique(P[:, 0])) == n and len(np.unique(P[:, 1])) == n:
            return [(float(x), float(y)) for x, y in P]


def clustered_points(n: int, seed: int = 0, clusters: int = 3, spread: float = 1e-3) -> list:
    """Tight clusters, which force many single-quadrant (compressed) steps."""
    rng = np.random.default_rng(seed)
    centres = rng.random((clusters, 2))
    while True:
        P = centres[rng.integers(0, clusters, n)] + rng.normal(0, spread, (n, 2))
        if len(np.unique(P[:, 0])) == n and len(np.unique(P[:, 1])) == n:
            return [(float(x), float(y)) for x, y in P]


def grid_segments(n: int, seed: int = 0, inject=None):
    """n axis-parallel segments with integer coordinates, one per cell of a
    10-unit grid, so they are pairwise disjoint.  With ``inject`` true (or
    by a coin flip when None) one segment is replaced by one built to cross,
    touch or overlap another.  Returns (segments, injected kind or None).
    """
    rng = np.random.default_rng(seed)
    c = max(1, math.isqrt(n - 1) + 1) if n > 1 else 1
    cells = rng.permutation(c * c)[:n]
    bx, by = 10 * (cells % c), 10 * (cells // c)
    lo = rng.integers(1, 9, n)
    hi = lo + 1 + np.floor(rng.random(n) * (9 - lo)).astype(np.int64)
    fixed = rng.integers(1, 10, n)
    horiz = rng.random(n) < 0.5
    off = np.where(horiz, bx, by)
    rows = list(zip(
        np.where(horiz, "H", "V").tolist(),
        np.where(horiz, by + fixed, bx + fixed).tolist(),
        (off + lo).tolist(),
        (off + hi).tolist(),
    ))
    if inject is None:
        inject = bool(rng.random() < 0.5)
    kind = None
    if inject and n >= 2:
        t, s = rng.choice(n, 2, replace=False).tolist()
        o, f, lo, hi = rows[t]
        other = "V" if o == "H" else "H"
        kind = ("cross", "touch", "end-touch", "overlap", "contain")[int(rng.integers(0, 5))]
        at = int(rng.integers(lo, hi + 1))
        if kind == "cross":
            rows[s] = (other, at, f - int(rng.integers(1, 5)), f + int(rng.integers(1, 5)))
        elif kind == "touch":
            rows[s] = (other, at, f, f + int(rng.integers(1, 5)))
        elif kind == "end-touch":
            rows[s] = (o, f, hi, hi + int(rng.integers(1, 5)))
        elif kind == "overlap":
            rows[s] = (o, f, at, hi + int(rng.integers(1, 5)))
        else:
            a = int(rng.integers(lo, hi))
            rows[s] = (o, f, a, a + 1)
    return make_segments(rows), kind
