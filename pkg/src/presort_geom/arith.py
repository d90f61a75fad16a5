"""Arithmetic backends and counted primitive operations.

Two backends expose the same small interface used by the rank index:

* ``NativeArith`` uses ordinary machine integer operations.
* ``restricted.RestrictedArith`` derives shifts, masks and division from
  addition, subtraction, multiplication, comparison and table lookup only.

Every primitive in ``Prim`` bumps an ``OpCounter``.  The primitives accept
Python ints or numpy arrays; an array op counts once per lane.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, fields

import numpy as np

from .errors import DivisionByZero

MEM_CAP_ENV = "PRESORT_GEOM_MEM_CAP"
DEFAULT_MEM_CAP = 1 << 24


def mem_cap() -> int:
    """Largest lookup table (in entries) a backend may allocate."""
    raw = os.environ.get(MEM_CAP_ENV)
    if raw:
        return int(raw)
    return DEFAULT_MEM_CAP


@dataclass
class OpCounter:
    add: int = 0
    sub: int = 0
    mul: int = 0
    cmp: int = 0
    lookup: int = 0

    @property
    def total(self) -> int:
        return self.add + self.sub + self.mul + self.cmp + self.lookup

    def snapshot(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    def reset(self) -> None:
        for f in fields(self):
            setattr(self, f.name, 0)


AUDITED_OPS = frozenset(f.name for f in fields(OpCounter))


def _lanes(a, b=None) -> int:
    if isinstance(a, np.ndarray):
        return a.size
    if isinstance(b, np.ndarray):
        return b.size
    return 1


class Prim:
    """Counted primitives.  Comparisons return 0/1 integers so they can be
    used as multiplicative masks."""

    def __init__(self, counter: OpCounter | None = None):
        self.counter = counter if counter is not None else OpCounter()

    def add(self, a, b):
        self.counter.add += _lanes(a, b)
        return a + b

    def sub(self, a, b):
        self.counter.sub += _lanes(a, b)
        return a - b

    def mul(self, a, b):
        self.counter.mul += _lanes(a, b)
        return a * b

    def lt(self, a, b):
        self.counter.cmp += _lanes(a, b)
        return (a < b) * 1

    def le(self, a, b):
        self.counter.cmp += _lanes(a, b)
        return (a <= b) * 1

    def eq(self, a, b):
        self.counter.cmp += _lanes(a, b)
        return (a == b) * 1

    def ge(self, a, b):
        self.counter.cmp += _lanes(a, b)
        return (a >= b) * 1

    def lookup(self, table, i):
        self.counter.lookup += _lanes(i)
        return table[i]

    def put(self, table, i, v):
        """Indirect store; counted with lookups since both are addressed memory."""
        self.counter.lookup += _lanes(i)
        table[i] = v


class NativeArith:
    """Backend using the host's shifts and masks."""

    name = "native"

    def bits_msb(self, v: int, nbits: int) -> list:
        return [(v >> j) & 1 for j in range(nbits - 1, -1, -1)]

    def bits_at(self, values: np.ndarray, j: int) -> np.ndarray:
        return (values >> j) & 1

    def divmod(self, a, b):
        if np.any(np.asarray(b) == 0):
            raise DivisionByZero("divmod by zero")
        return a // b, a % b


NATIVE = NativeArith()


def get_backend(name: str, n: int | None = None):
    """Return the arithmetic backend called ``name`` sized for inputs of ``n``."""
    if name == "native":
        return NATIVE
    if name == "restricted":
        from .restricted import RestrictedArith
        return RestrictedArith.for_n(n or 2)
    raise ValueError(f"unknown backend {name!r}")
