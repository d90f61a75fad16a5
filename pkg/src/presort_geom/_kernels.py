"""Compiled wavelet-matrix queries for the native backend.

These mirror the pure-Python methods of ``WaveletMatrix`` one for one; the
Python versions stay as the reference and serve the restricted backend.
"""
import numpy as np
from numba import njit


@njit(cache=True)
def _lower(a, v):
    lo = 0
    hi = a.shape[0]
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] < v:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def _upper(a, v):
    lo = 0
    hi = a.shape[0]
    while lo < hi:
        mid = (lo + hi) >> 1
        if a[mid] <= v:
            lo = mid + 1
        else:
            hi = mid
    return lo


@njit(cache=True)
def next_geq(R0, Z, L, s, e, lo):
    if s >= e:
        return -1
    cand_l = -1
    cs = 0
    ce = 0
    cv = 0
    val = 0
    done = True
    for l in range(L):
        s0 = R0[l, s]
        e0 = R0[l, e]
        if (lo >> (L - 1 - l)) & 1:
            s = Z[l] + s - s0
            e = Z[l] + e - e0
            val += 1 << (L - 1 - l)
        else:
            s1 = Z[l] + s - s0
            e1 = Z[l] + e - e0
            if s1 < e1:
                cand_l = l
                cs = s1
                ce = e1
                cv = val + (1 << (L - 1 - l))
            s = s0
            e = e0
        if s >= e:
            done = False
            break
    if done:
        return val
    if cand_l < 0:
        return -1
    s = cs
    e = ce
    val = cv
    for l in range(cand_l + 1, L):
        s0 = R0[l, s]
        e0 = R0[l, e]
        if s0 < e0:
            s = s0
            e = e0
        else:
            s = Z[l] + s - s0
            e = Z[l] + e - e0
            val += 1 << (L - 1 - l)
    return val


@njit(cache=True)
def prev_leq(R0, Z, L, s, e, hi):
    if s >= e or hi < 0:
        return -1
    cand_l = -1
    cs = 0
    ce = 0
    cv = 0
    val = 0
    done = True
    for l in range(L):
        s0 = R0[l, s]
        e0 = R0[l, e]
        if (hi >> (L - 1 - l)) & 1:
            if s0 < e0:
                cand_l = l
                cs = s0
                ce = e0
                cv = val
            s = Z[l] + s - s0
            e = Z[l] + e - e0
            val += 1 << (L - 1 - l)
        else:
            s = s0
            e = e0
        if s >= e:
            done = False
            break
    if done:
        return val
    if cand_l < 0:
        return -1
    s = cs
    e = ce
    val = cv
    for l in range(cand_l + 1, L):
        s0 = R0[l, s]
        e0 = R0[l, e]
        s1 = Z[l] + s - s0
        e1 = Z[l] + e - e0
        if s1 < e1:
            s = s1
            e = e1
            val += 1 << (L - 1 - l)
        else:
            s = s0
            e = e0
    return val


@njit(cache=True)
def count_less(R0, Z, L, s, e, v):
    if s >= e or v <= 0:
        return 0
    if v >= (1 << L):
        return e - s
    cnt = 0
    for l in range(L):
        s0 = R0[l, s]
        e0 = R0[l, e]
        if (v >> (L - 1 - l)) & 1:
            cnt += e0 - s0
            s = Z[l] + s - s0
            e = Z[l] + e - e0
        else:
            s = s0
            e = e0
        if s >= e:
            break
    return cnt


@njit(cache=True)
def range_next(pos_keys, val_keys, R0, Z, L, plo, phi, vlo, vhi):
    """Smallest and largest local value in [vlo, vhi] (global ranks) among
    positions whose key lies in [plo, phi]; (-1, -1) when there is none."""
    s = _lower(pos_keys, plo)
    e = _upper(pos_keys, phi)
    lo = _lower(val_keys, vlo)
    hi = _upper(val_keys, vhi) - 1
    if s >= e or lo > hi:
        return -1, -1
    if L == 0:
        return 0, 0
    a = next_geq(R0, Z, L, s, e, lo)
    if a < 0 or a > hi:
        return -1, -1
    return a, prev_leq(R0, Z, L, s, e, hi)


@njit(cache=True)
def range_count(pos_keys, val_keys, R0, Z, L, plo, phi, vlo, vhi):
    s = _lower(pos_keys, plo)
    e = _upper(pos_keys, phi)
    lo = _lower(val_keys, vlo)
    hi = _upper(val_keys, vhi)
    if s >= e or lo >= hi:
        return 0
    return count_less(R0, Z, L, s, e, hi) - count_less(R0, Z, L, s, e, lo)
