"""Numba kernels for the exhaustive table sweeps.

Rings enter as dense uint16 index tables, subsets as uint8 masks; callers
own all shape/dtype validation.  Witness-returning kernels encode a
failing tuple as a linear index and return -1 on a clean sweep.  Parallel
kernels report the failure with the smallest outer index so results do
not depend on thread scheduling.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

NO_WITNESS = -1


@njit(cache=True, parallel=True)
def assoc_witness(table):
    """First (a,b,c) with t[t[a,b],c] != t[a,t[b,c]], encoded a*n*n+b*n+c."""
    n = table.shape[0]
    per_a = np.full(n, np.int64(-1))
    for a in prange(n):
        hit = np.int64(-1)
        row_a = table[a]
        for b in range(n):
            row_ab = table[table[a, b]]
            row_b = table[b]
            for c in range(n):
                if row_ab[c] != row_a[row_b[c]]:
                    hit = np.int64(b) * n + c
                    break
            if hit >= 0:
                break
        per_a[a] = hit
    for a in range(n):
        if per_a[a] >= 0:
            return np.int64(a) * n * n + per_a[a]
    return np.int64(NO_WITNESS)


@njit(cache=True, parallel=True)
def left_dist_witness(add, mul):
    """First (a,b,c) with a*(b+c) != a*b + a*c, encoded a*n*n+b*n+c."""
    n = add.shape[0]
    per_a = np.full(n, np.int64(-1))
    for a in prange(n):
        hit = np.int64(-1)
        row_mul_a = mul[a]
        for b in range(n):
            row_add_ab = add[mul[a, b]]
            row_add_b = add[b]
            for c in range(n):
                if row_mul_a[row_add_b[c]] != row_add_ab[row_mul_a[c]]:
                    hit = np.int64(b) * n + c
                    break
            if hit >= 0:
                break
        per_a[a] = hit
    for a in range(n):
        if per_a[a] >= 0:
            return np.int64(a) * n * n + per_a[a]
    return np.int64(NO_WITNESS)


@njit(cache=True, parallel=True)
def right_dist_witness(add, mul_t):
    """First (c,a,b) with (a+b)*c != a*c + b*c, encoded c*n*n+a*n+b.

    Takes the transposed multiplication table so each c-slice walks rows.
    """
    n = add.shape[0]
    per_c = np.full(n, np.int64(-1))
    for c in prange(n):
        hit = np.int64(-1)
        row_t = mul_t[c]
        for a in range(n):
            row_add_a = add[a]
            row_add_ac = add[row_t[a]]
            for b in range(n):
                if row_t[row_add_a[b]] != row_add_ac[row_t[b]]:
                    hit = np.int64(a) * n + b
                    break
            if hit >= 0:
                break
        per_c[c] = hit
    for c in range(n):
        if per_c[c] >= 0:
            return np.int64(c) * n * n + per_c[c]
    return np.int64(NO_WITNESS)


@njit(cache=True)
def subgroup_closure(add, genmask, zero):
    """Additive closure of the masked set inside the group given by `add`.

    Incremental coset extension: adjoining a generator g multiplies the
    current subgroup by the cosets M, M+g, M+2g, ... until a multiple of g
    lands back in M, so total work stays near the output size.
    """
    n = add.shape[0]
    m_mask = np.zeros(n, np.uint8)
    m_list = np.empty(n, np.int64)
    m_mask[zero] = 1
    m_list[0] = zero
    msize = 1
    for g in range(n):
        if genmask[g] == 0 or m_mask[g] == 1:
            continue
        base = msize
        cur = np.int64(g)
        while m_mask[cur] == 0:
            for i in range(base):
                e = add[m_list[i], cur]
                if m_mask[e] == 0:
                    m_mask[e] = 1
                    m_list[msize] = e
                    msize += 1
            cur = np.int64(add[cur, g])
    return m_mask


@njit(cache=True, parallel=True)
def principal_triples(add, mul, zero):
    """Per element a: masks of RaR, l(RaR) and r(l(RaR)).

    Uses l(RaR) = l(Ra): x kills RaR iff x kills the left orbit Ra, which
    keeps the annihilator scans near-linear with early exits.
    """
    n = add.shape[0]
    pr = np.zeros((n, n), np.uint8)
    la = np.zeros((n, n), np.uint8)
    rl = np.zeros((n, n), np.uint8)
    for a in prange(n):
        ra_mask = np.zeros(n, np.uint8)
        ra_list = np.empty(n, np.int64)
        k = 0
        for x in range(n):
            v = mul[x, a]
            if ra_mask[v] == 0:
                ra_mask[v] = 1
                ra_list[k] = v
                k += 1
        l_list = np.empty(n, np.int64)
        lcount = 0
        for x in range(n):
            ok = True
            row = mul[x]
            for t in range(k):
                if row[ra_list[t]] != zero:
                    ok = False
                    break
            if ok:
                la[a, x] = 1
                l_list[lcount] = x
                lcount += 1
        for y in range(n):
            ok = True
            for t in range(lcount):
                if mul[l_list[t], y] != zero:
                    ok = False
                    break
            if ok:
                rl[a, y] = 1
        if k == n:
            for y in range(n):
                pr[a, y] = 1
        else:
            pm = np.zeros(n, np.uint8)
            cnt = 0
            for t in range(k):
                row = mul[ra_list[t]]
                for y in range(n):
                    v = row[y]
                    if pm[v] == 0:
                        pm[v] = 1
                        cnt += 1
                if cnt == n:
                    break
            closed = subgroup_closure(add, pm, zero)
            for y in range(n):
                pr[a, y] = closed[y]
    return pr, la, rl


@njit(cache=True)
def ann_scan(table, members, zero):
    """{x : table[x, m] == zero for every m in members}.

    With table=mul this is the left annihilator of the member set; with
    the transposed table it is the right annihilator.
    """
    n = table.shape[0]
    out = np.zeros(n, np.uint8)
    k = members.shape[0]
    for x in range(n):
        row = table[x]
        ok = True
        for t in range(k):
            if row[members[t]] != zero:
                ok = False
                break
        if ok:
            out[x] = 1
    return out


@njit(cache=True)
def prime_witness(mul, mul_t, mask):
    """First pair (a,b) outside the masked ideal with aXb inside it, or -1."""
    n = mul.shape[0]
    for a in range(n):
        if mask[a] == 1:
            continue
        row_a = mul[a]
        for b in range(n):
            if mask[b] == 1:
                continue
            row_bt = mul_t[b]
            separated = False
            for x in range(n):
                if mask[row_bt[row_a[x]]] == 0:
                    separated = True
                    break
            if not separated:
                return np.int64(a) * n + b
    return np.int64(NO_WITNESS)


@njit(cache=True)
def pairwise_product_mask(mul, mem_i, mem_j):
    """Mask of {i*j : i in mem_i, j in mem_j} (additive generators of IJ)."""
    n = mul.shape[0]
    out = np.zeros(n, np.uint8)
    for p in range(mem_i.shape[0]):
        row = mul[mem_i[p]]
        for q in range(mem_j.shape[0]):
            out[row[mem_j[q]]] = 1
    return out


@njit(cache=True)
def ideal_subset_flags(add, mul, zero):
    """Flag every subset bitmask (over <=16 elements) that is a two-sided ideal.

    The brute-force oracle: nonempty, contains zero, closed under addition
    (finite + closed under addition implies closed under negation) and
    absorbing under multiplication on both sides.
    """
    n = add.shape[0]
    total = 1 << n
    flags = np.zeros(total, np.uint8)
    members = np.empty(n, np.int64)
    for m in range(1, total):
        if (m >> zero) & 1 == 0:
            continue
        k = 0
        for i in range(n):
            if (m >> i) & 1:
                members[k] = i
                k += 1
        ok = True
        for p in range(k):
            for q in range(k):
                if (m >> add[members[p], members[q]]) & 1 == 0:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            for p in range(k):
                s = members[p]
                for r in range(n):
                    if (m >> mul[s, r]) & 1 == 0 or (m >> mul[r, s]) & 1 == 0:
                        ok = False
                        break
                if not ok:
                    break
        if ok:
            flags[m] = 1
    return flags


@njit(cache=True)
def coherence_witness(mul, principal, lann, zero):
    """First (a,b) with l(RaRbR) strictly below l(RabR), encoded a*n+b.

    principal[a] is the RaR mask and lann[c] the l(RcR) mask.  Since
    RabR <= RaRbR always gives l(RaRbR) <= l(RabR), only the reverse
    containment needs testing: every w in l(RabR) must kill (RaR)b.
    """
    n = mul.shape[0]
    tb_list = np.empty(n, np.int64)
    tb_mask = np.zeros(n, np.uint8)
    for a in range(n):
        prow = principal[a]
        for b in range(n):
            lrow = lann[mul[a, b]]
            tb_count = 0
            for t in range(n):
                if prow[t] == 1:
                    v = mul[t, b]
                    if v != zero and tb_mask[v] == 0:
                        tb_mask[v] = 1
                        tb_list[tb_count] = v
                        tb_count += 1
            for t in range(tb_count):
                tb_mask[tb_list[t]] = 0
            if tb_count == 0:
                continue
            for w in range(n):
                if lrow[w] == 0 or w == zero:
                    continue
                row_w = mul[w]
                ok = True
                for t in range(tb_count):
                    if row_w[tb_list[t]] != zero:
                        ok = False
                        break
                if not ok:
                    return np.int64(a) * n + b
    return np.int64(NO_WITNESS)


@njit(cache=True)
def meet_expansion_witness(mul, rl):
    """First (a,b) with r(l(RaR)) & r(l(RbR)) != r(l(RabR)), encoded a*n+b."""
    n = mul.shape[0]
    for a in range(n):
        row_a = rl[a]
        for b in range(n):
            row_b = rl[b]
            row_ab = rl[mul[a, b]]
            for k in range(n):
                lhs = 1 if (row_a[k] == 1 and row_b[k] == 1) else 0
                if lhs != row_ab[k]:
                    return np.int64(a) * n + b
    return np.int64(NO_WITNESS)


@njit(cache=True)
def center_mask(mul):
    """Mask of elements commuting with the whole ring."""
    n = mul.shape[0]
    out = np.zeros(n, np.uint8)
    for x in range(n):
        row = mul[x]
        ok = True
        for y in range(n):
            if row[y] != mul[y, x]:
                ok = False
                break
        if ok:
            out[x] = 1
    return out
