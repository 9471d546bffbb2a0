"""Compiled inner loop for large sparse products.

Used only when the mixed-radix monomial keys and every possible output
coefficient provably fit in int64; callers fall back to exact Python
arithmetic otherwise.
"""

import numpy as np
from numba import njit

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


@njit(cache=True)
def _slot(key, mask):
    return np.int64((np.uint64(key) * _GOLDEN) >> np.uint64(17)) & mask


@njit(cache=True)
def _grow(keys, vals, slots, used):
    size = keys.size * 2
    mask = size - 1
    nk = np.full(size, -1, np.int64)
    nv = np.zeros(size, np.int64)
    ns = np.empty(size, np.int64)
    for u in range(used):
        t = slots[u]
        k = keys[t]
        h = _slot(k, mask)
        while nk[h] >= 0:
            h = (h + 1) & mask
        nk[h] = k
        nv[h] = vals[t]
        ns[u] = h
    return nk, nv, ns


@njit(cache=True)
def sparse_mul(ak, ac, bk, bc, top_w, n_top):
    """Product of two sparse polynomials given as (key, coeff) arrays with
    additive keys, both sorted ascending.  The top digit ``key // top_w`` is
    the beta exponent; outputs with top digit >= n_top are dropped.

    Output keys are produced one top digit at a time, so the accumulator only
    ever holds a single beta-degree and stays cache sized."""
    bounds = np.arange(n_top + 1) * top_w
    a_at = np.searchsorted(ak, bounds)
    b_at = np.searchsorted(bk, bounds)
    size = 1024
    keys = np.full(size, -1, np.int64)
    vals = np.zeros(size, np.int64)
    slots = np.empty(size, np.int64)
    mask = size - 1
    ok = np.empty(1024, np.int64)
    ov = np.empty(1024, np.int64)
    n = 0
    for t in range(n_top):
        used = 0
        for da in range(t + 1):
            db = t - da
            for i in range(a_at[da], a_at[da + 1]):
                ka = ak[i]
                ca = ac[i]
                for j in range(b_at[db], b_at[db + 1]):
                    k = ka + bk[j]
                    h = _slot(k, mask)
                    while True:
                        cur = keys[h]
                        if cur == k:
                            vals[h] += ca * bc[j]
                            break
                        if cur < 0:
                            keys[h] = k
                            vals[h] = ca * bc[j]
                            slots[used] = h
                            used += 1
                            break
                        h = (h + 1) & mask
                    if 2 * used > size:
                        keys, vals, slots = _grow(keys, vals, slots, used)
                        size = keys.size
                        mask = size - 1
        if n + used > ok.size:
            cap = max(2 * ok.size, n + used)
            nk = np.empty(cap, np.int64)
            nv = np.empty(cap, np.int64)
            nk[:n] = ok[:n]
            nv[:n] = ov[:n]
            ok, ov = nk, nv
        for u in range(used):
            h = slots[u]
            if vals[h] != 0:
                ok[n] = keys[h]
                ov[n] = vals[h]
                n += 1
            keys[h] = -1
            vals[h] = 0
    return ok[:n].copy(), ov[:n].copy()
