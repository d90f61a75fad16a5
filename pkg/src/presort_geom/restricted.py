"""Integer arithmetic without shifts, masks or division.

Words live in [0, N) with N = 2**L.  Tables built with counted additions,
multiplications, comparisons and lookups supply everything else:

* SHIFT[x] = floor(x / beta) for x < N, beta = 2**k, k = floor(L / 3),
  which splits a word into base-beta digits;
* Q2 / R2 hold quotient and remainder of u / v for u < beta**2 and
  1 <= v < beta, indexed by u * beta + v;
* NORM[v] = floor(beta / (v + 1)), the normalising factor for long division;
* BITS[j * beta + c] is bit j of the digit c.

Word division is long division on four base-beta digits with a fixed
instruction shape: every branch is replaced by 0/1 masks, so each call
performs exactly the same number of primitive operations.

This module must not use the host's //, %, shifts or bitwise operators;
a test walks its syntax tree to make sure.
"""
from __future__ import annotations

import numpy as np

from .arith import OpCounter, Prim, mem_cap
from .errors import BadDigit, DivisionByZero, SizeOverflow

DIGITS = 4


def _as_index(v):
    if isinstance(v, np.ndarray):
        return v.astype(np.int64)
    return int(v)


def _check_cap(size: int, what: str) -> None:
    cap = mem_cap()
    if size > cap:
        raise SizeOverflow(f"{what} needs {size} entries, cap is {cap}")


def build_shift_table(N: int, k: int, ops: Prim | None = None):
    """SHIFT[x] = floor(x / 2**k) for 0 <= x < N, in two passes.

    The first pass writes j at every multiple of 2**k, the second carries the
    last written value forward.  Returns (table, ops).
    """
    ops = ops or Prim()
    if k < 1:
        raise ValueError("k must be positive")
    step = 1
    for _ in range(k):
        step = ops.mul(step, 2)
    if step > N:
        raise ValueError("2**k exceeds N")
    _check_cap(N, "shift table")
    table = [0] * N
    marked = [0] * N
    m = 0
    j = 0
    while ops.lt(m, N):
        ops.put(table, m, j)
        ops.put(marked, m, 1)
        m = ops.add(m, step)
        j = ops.add(j, 1)
    cur = 0
    for i in range(N):
        if ops.lookup(marked, i):
            cur = ops.lookup(table, i)
        else:
            ops.put(table, i, cur)
    return table, ops


def build_small_div_tables(beta: int, ops: Prim | None = None):
    """Quotient / remainder tables for u < beta**2 and 1 <= v < beta.

    Filled by counting: walking u upward, the remainder wraps at v and the
    quotient ticks.  Index 0 (v = 0) is never written.
    """
    ops = ops or Prim()
    bsq = ops.mul(beta, beta)
    size = ops.mul(bsq, beta)
    _check_cap(size, "division tables")
    q2 = [0] * size
    r2 = [0] * size
    for v in range(1, beta):
        q = 0
        r = 0
        for u in range(bsq):
            idx = ops.add(ops.mul(u, beta), v)
            ops.put(q2, idx, q)
            ops.put(r2, idx, r)
            r = ops.add(r, 1)
            wrap = ops.eq(r, v)
            r = ops.mul(r, ops.sub(1, wrap))
            q = ops.add(q, wrap)
    norm = [0] * beta
    for v in range(beta):
        d = ops.add(v, 1)
        if ops.lt(d, beta):
            ops.put(norm, v, ops.lookup(q2, ops.add(ops.mul(beta, beta), d)))
        else:
            ops.put(norm, v, 1)
    return q2, r2, norm, ops


def build_bit_table(k: int, beta: int, ops: Prim | None = None):
    """BITS[j * beta + c] = bit j of c, by toggling every 2**j steps."""
    ops = ops or Prim()
    bits = [0] * ops.mul(k, beta)
    period = 1
    for j in range(k):
        cnt = 0
        b = 0
        for c in range(beta):
            ops.put(bits, ops.add(ops.mul(j, beta), c), b)
            cnt = ops.add(cnt, 1)
            t = ops.eq(cnt, period)
            # b <- b xor t, written with ring operations
            b = ops.sub(ops.add(b, t), ops.mul(ops.mul(2, b), t))
            cnt = ops.mul(cnt, ops.sub(1, t))
        period = ops.mul(period, 2)
    return bits, ops


class RestrictedArith:
    """Word arithmetic for words below N = 2**L built from tables."""

    name = "restricted"

    def __init__(self, L: int, ops: Prim | None = None):
        if L < 6:
            raise ValueError("word size must be at least 6 bits")
        k = 0
        while 3 * (k + 1) <= L:
            k += 1
        if DIGITS * k < L:
            raise ValueError("four digits do not cover a word")
        self.L = L
        self.k = k
        self.build_ops = Prim()
        N = 1
        for _ in range(L):
            N = self.build_ops.mul(N, 2)
        self.N = N
        beta = 1
        for _ in range(k):
            beta = self.build_ops.mul(beta, 2)
        self.beta = beta
        shift, _ = build_shift_table(N, k, self.build_ops)
        q2, r2, norm, _ = build_small_div_tables(beta, self.build_ops)
        bits, _ = build_bit_table(k, beta, self.build_ops)
        self._lists = (shift, q2, r2, norm, bits)
        self._arrays = tuple(np.asarray(t, dtype=np.int64) for t in self._lists)
        # bit j of a word sits in digit j_digit[j] at offset j_off[j]
        self._bitpos = []
        for j in range(DIGITS * k):
            ci = 0
            off = j
            while off >= k:
                off -= k
                ci += 1
            self._bitpos.append((ci, off))
        self.ops = ops or Prim()

    @classmethod
    def for_n(cls, n: int, ops: Prim | None = None) -> "RestrictedArith":
        """Smallest admissible word size for inputs of size n (N >= 4n)."""
        lg = 0
        p = 1
        while p < max(n, 1):
            p *= 2
            lg += 1
        return cls(max(lg + 2, 6), ops)

    @property
    def counter(self) -> OpCounter:
        return self.ops.counter

    def _tables(self, v):
        return self._arrays if isinstance(v, np.ndarray) else self._lists

    def check_word(self, v) -> None:
        lo = np.min(v) if isinstance(v, np.ndarray) else v
        hi = np.max(v) if isinstance(v, np.ndarray) else v
        if lo < 0 or hi >= self.N:
            raise BadDigit(f"value outside [0, {self.N})")

    def digits(self, v):
        """Four base-beta digits of v, least significant first."""
        p = self.ops
        shift = self._tables(v)[0]
        out = []
        cur = _as_index(v)
        for _ in range(DIGITS - 1):
            hi = p.lookup(shift, cur)
            out.append(p.sub(cur, p.mul(hi, self.beta)))
            cur = hi
        out.append(cur)
        return out

    def chunk(self, v):
        """(high part, low k bits) of v."""
        p = self.ops
        shift = self._tables(v)[0]
        hi = p.lookup(shift, _as_index(v))
        return hi, p.sub(v, p.mul(hi, self.beta))

    def recombine(self, digits):
        p = self.ops
        acc = digits[-1]
        for d in reversed(digits[:-1]):
            acc = p.add(p.mul(acc, self.beta), d)
        return acc

    def bits_msb(self, v: int, nbits: int) -> list:
        """The low ``nbits`` bits of v, most significant first."""
        p = self.ops
        d = self.digits(v)
        bits = self._lists[4]
        out = []
        for j in range(nbits - 1, -1, -1):
            ci, off = self._bitpos[j]
            out.append(p.lookup(bits, p.add(p.mul(off, self.beta), d[ci])))
        return out

    def bits_at(self, values: np.ndarray, j: int) -> np.ndarray:
        p = self.ops
        values = np.asarray(values, dtype=np.int64)
        d = self.digits(values)
        ci, off = self._bitpos[j]
        return p.lookup(self._arrays[4], p.add(p.mul(off, self.beta), d[ci]))

    def _shift_digits(self, xs, w, width):
        # digit j of x * beta**s, with s selected by the one-hot mask w
        p = self.ops
        out = []
        for j in range(width):
            acc = 0
            for s in range(DIGITS):
                if 0 <= j - s < len(xs):
                    acc = p.add(acc, p.mul(w[s], xs[j - s]))
            out.append(acc)
        return out

    def _mul_digit(self, xs, d, shift):
        p = self.ops
        carry = 0
        out = []
        for x in xs:
            t = p.add(p.mul(x, d), carry)
            carry = p.lookup(shift, t)
            out.append(p.sub(t, p.mul(carry, self.beta)))
        out.append(carry)
        return out

    def divmod(self, a, b):
        """Floor quotient and remainder of words a and b > 0.

        Works lane-wise on numpy arrays.  The operation count per call does
        not depend on a, b or N.
        """
        p = self.ops
        if np.any(p.eq(b, 0)):
            raise DivisionByZero("divmod by zero")
        shift, q2, r2, norm, _ = self._tables(a if isinstance(a, np.ndarray) else b)
        if isinstance(a, np.ndarray) or isinstance(b, np.ndarray):
            a = np.asarray(a, dtype=np.int64)
            b = np.asarray(b, dtype=np.int64)
            a, b = np.broadcast_arrays(a, b)
            a = a.copy()
            b = b.copy()
            shift, q2, r2, norm, _ = self._arrays
        zero = np.zeros_like(a) if isinstance(a, np.ndarray) else 0
        beta = self.beta
        A = self.digits(a)
        B = self.digits(b)
        # count leading zero digits of b as a one-hot mask w[s]
        z3 = p.eq(B[3], 0)
        z2 = p.mul(z3, p.eq(B[2], 0))
        z1 = p.mul(z2, p.eq(B[1], 0))
        w = [p.sub(1, z3), p.sub(z3, z2), p.sub(z2, z1), z1]
        Bs = self._shift_digits(B, w, DIGITS)
        As = self._shift_digits(A, w, 2 * DIGITS - 1)
        d = p.lookup(norm, _as_index(Bs[3]))
        V = self._mul_digit(Bs, d, shift)[:DIGITS]
        U = self._mul_digit(As, d, shift)
        U.append(zero)
        qd = [0] * (DIGITS + 1)
        for j in range(DIGITS, -1, -1):
            num = p.add(p.mul(U[j + 4], beta), U[j + 3])
            idx = _as_index(p.add(p.mul(num, beta), V[3]))
            qhat = p.lookup(q2, idx)
            rhat = p.lookup(r2, idx)
            active = 1
            for _ in range(2):
                big = p.ge(qhat, beta)
                over = p.lt(p.add(p.mul(rhat, beta), U[j + 2]), p.mul(qhat, V[2]))
                c = p.mul(p.sub(p.add(big, over), p.mul(big, over)), active)
                qhat = p.sub(qhat, c)
                rhat = p.add(rhat, p.mul(c, V[3]))
                active = p.mul(c, p.lt(rhat, beta))
            carry = 0
            borrow = 0
            for i in range(DIGITS):
                t = p.add(p.mul(qhat, V[i]), carry)
                carry = p.lookup(shift, _as_index(t))
                lo = p.sub(t, p.mul(carry, beta))
                x = p.sub(p.sub(U[j + i], lo), borrow)
                borrow = p.lt(x, 0)
                U[j + i] = p.add(x, p.mul(borrow, beta))
            top = p.sub(p.sub(U[j + 4], carry), borrow)
            neg = p.lt(top, 0)
            c = 0
            for i in range(DIGITS):
                t = p.add(p.add(U[j + i], p.mul(neg, V[i])), c)
                c = p.ge(t, beta)
                U[j + i] = p.sub(t, p.mul(c, beta))
            U[j + 4] = p.add(top, c)
            qd[j] = p.sub(qhat, neg)
        # undo the normalisation: divide the remainder digits by d
        rem = zero
        R = [0] * DIGITS
        for i in range(DIGITS - 1, -1, -1):
            num = p.add(p.mul(rem, beta), U[i])
            idx = _as_index(p.add(p.mul(num, beta), d))
            R[i] = p.lookup(q2, idx)
            rem = p.lookup(r2, idx)
        # and the digit shift
        Rs = []
        for i in range(DIGITS):
            acc = 0
            for s in range(DIGITS):
                if i + s < DIGITS:
                    acc = p.add(acc, p.mul(w[s], R[i + s]))
            Rs.append(acc)
        return self.recombine(qd), self.recombine(Rs)
