"""Compiled depth-first enumeration of canonical circulant Butson rows.

Each lag sum sum_k w^(e[k+d] - e[k]) is kept as one int64: its coordinates
modulo Phi_l, written in balanced base B (``lin = sum_i s_i B^i``).  The
encoding is additive, so adding a root is adding a precomputed delta, and a
lag sum is zero iff its code is zero.  A partial lag sum with r terms still
missing survives only if its negative is a sum of r l-th roots, checked by
binary search in the sorted codes of all such sums.
"""

from __future__ import annotations

import numpy as np
from numba import njit

STATUS_DONE = 0
STATUS_BUDGET = 1
STATUS_FULL = 2


@njit(cache=True)
def _contains(keys, length, key):
    lo, hi = 0, length
    while lo < hi:
        mid = (lo + hi) >> 1
        if keys[mid] < key:
            lo = mid + 1
        else:
            hi = mid
    return lo < length and keys[lo] == key


@njit(cache=True)
def dfs(n, l, delta, reach_keys, reach_len, neg_base, remaining, first_values, budget, out):
    """Enumerate rows with e[0] = 0 that are lexicographically least in their
    rotation/constant orbit and have every lag sum zero.

    delta[t]            code of w^t
    reach_keys[r, :]    sorted codes of sums of r roots (first reach_len[r] valid)
    neg_base            code of (O, ..., O); code(-S) = neg_base - code(S)
    remaining[d, k]     terms of lag d still missing once e[0..k] are set
    first_values        allowed e[1] (subtree split)
    out                 (cap, n) buffer for solutions

    Returns (status, found, nodes, pruned).
    """
    h = n // 2
    e = np.zeros(n, np.int64)
    lin = np.zeros(h + 1, np.int64)
    dead_at = np.full(n, -1, np.int64)  # depth at which rotation s stopped competing
    cursor = np.zeros(n, np.int64)  # next candidate index per depth
    nfirst = first_values.shape[0]
    found = 0
    nodes = 0
    pruned = 0
    k = 1
    cursor[1] = 0
    while k >= 1:
        limit = nfirst if k == 1 else l
        if cursor[k] >= limit:
            k -= 1
            if k >= 1:
                # retract e[k]
                v = e[k]
                for d in range(1, h + 1):
                    if k >= d:
                        lin[d] -= delta[(v - e[k - d]) % l]
                    if k + d >= n:
                        lin[d] -= delta[(e[k + d - n] - v) % l]
                for s in range(1, k):
                    if dead_at[s] == k:
                        dead_at[s] = -1
                cursor[k] += 1
            continue
        v = first_values[cursor[k]] if k == 1 else cursor[k]
        nodes += 1
        if nodes > budget:
            return STATUS_BUDGET, found, nodes, pruned
        e[k] = v
        # rotation s compares e[k] - e[s] with e[k - s]
        ok = True
        for s in range(1, k):
            if dead_at[s] < 0:
                f = (v - e[s]) % l
                g = e[k - s]
                if f < g:
                    ok = False
                    break
                if f > g:
                    dead_at[s] = k
        if not ok:
            for s in range(1, k):
                if dead_at[s] == k:
                    dead_at[s] = -1
            pruned += 1
            cursor[k] += 1
            continue
        for d in range(1, h + 1):
            if k >= d:
                lin[d] += delta[(v - e[k - d]) % l]
            if k + d >= n:
                lin[d] += delta[(e[k + d - n] - v) % l]
        for d in range(1, h + 1):
            r = remaining[d, k]
            if not _contains(reach_keys[r], reach_len[r], neg_base - lin[d]):
                ok = False
                break
        if ok and k == n - 1:
            # finish the rotation comparisons through the wrap-around
            for s in range(1, n):
                if dead_at[s] >= 0:
                    continue
                for j in range(n - s, n):
                    f = (e[s + j - n] - e[s]) % l
                    g = e[j]
                    if f < g:
                        ok = False
                        break
                    if f > g:
                        break
                if not ok:
                    break
            if ok:
                if found >= out.shape[0]:
                    return STATUS_FULL, found, nodes, pruned
                for i in range(n):
                    out[found, i] = e[i]
                found += 1
            ok = False  # leaf: never descend
        elif not ok:
            pruned += 1
        if ok:
            k += 1
            cursor[k] = 0
            continue
        # undo this candidate and try the next one
        for d in range(1, h + 1):
            if k >= d:
                lin[d] -= delta[(v - e[k - d]) % l]
            if k + d >= n:
                lin[d] -= delta[(e[k + d - n] - v) % l]
        for s in range(1, k):
            if dead_at[s] == k:
                dead_at[s] = -1
        cursor[k] += 1
    return STATUS_DONE, found, nodes, pruned
