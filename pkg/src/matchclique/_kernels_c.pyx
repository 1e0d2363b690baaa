# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of _kernels_py.

Same algorithms, same branch order, same tie-breaking: values, witnesses
and node counts must match the pure-Python kernel exactly (tests compare
the two backends call for call).
"""

import array as _array

from cpython cimport array
from libc.string cimport memcpy
from time import monotonic

BACKEND = "c"

ctypedef unsigned long long u64

cdef extern from *:
    int __builtin_popcountll(unsigned long long)

cdef enum:
    POLL = 1024

cdef inline int popcnt(u64 x):
    return __builtin_popcountll(x)

cdef array.array _U64_T = _array.array('Q', [])
cdef array.array _INT_T = _array.array('i', [])


cdef int _cover_ub_c(u64* rem_in, int n, int limit, u64* scratch):
    """Greedy hitting-set size, or limit + 1 once it exceeds limit.
    Tie-break: highest count, then lowest bit (matches the Python twin)."""
    cdef int cnt = n, cov = 0, i, b, bestb, bestc, nn
    cdef int freq[64]
    cdef u64 m, low, bit
    memcpy(scratch, rem_in, n * sizeof(u64))
    while cnt:
        if cov > limit:
            return limit + 1
        for b in range(64):
            freq[b] = 0
        for i in range(cnt):
            m = scratch[i]
            while m:
                low = m & (~m + 1)
                m ^= low
                freq[popcnt(low - 1)] += 1
        bestb = 0
        bestc = -1
        for b in range(64):
            if freq[b] > bestc:
                bestc = freq[b]
                bestb = b
        bit = (<u64>1) << bestb
        nn = 0
        for i in range(cnt):
            if not (scratch[i] & bit):
                scratch[nn] = scratch[i]
                nn += 1
        cnt = nn
        cov += 1
    return cov


cdef struct MM:
    u64* masks
    u64 universe
    int kmin
    int m
    int best
    int* best_wit
    int best_n
    int* chosen
    int nchosen
    int* arena
    u64* cscratch1
    u64* cscratch2


cdef void _mm_rec(MM* c, int* cands, int ncands, u64 used, int lvl):
    cdef int i, gap, cap, j, nc
    cdef u64 e
    if c.nchosen > c.best:
        c.best = c.nchosen
        memcpy(c.best_wit, c.chosen, c.nchosen * sizeof(int))
        c.best_n = c.nchosen
    if ncands == 0:
        return
    gap = c.best - c.nchosen
    cap = popcnt(c.universe & ~used) / c.kmin
    if ncands <= gap or cap <= gap:
        return
    for i in range(ncands):
        c.cscratch1[i] = c.masks[cands[i]]
    if _cover_ub_c(c.cscratch1, ncands, gap, c.cscratch2) <= gap:
        return
    j = cands[0]
    e = c.masks[j]
    c.chosen[c.nchosen] = j
    c.nchosen += 1
    nc = 0
    cdef int* buf = c.arena + lvl * c.m
    for i in range(1, ncands):
        if not (c.masks[cands[i]] & e):
            buf[nc] = cands[i]
            nc += 1
    _mm_rec(c, buf, nc, used | e, lvl + 1)
    c.nchosen -= 1
    _mm_rec(c, cands + 1, ncands - 1, used, lvl)


def max_matching(masks):
    """Return (size, witness index tuple) of a maximum pairwise-disjoint subset."""
    masks_t = tuple(masks)
    cdef Py_ssize_t m = len(masks_t)
    if m == 0:
        return 0, ()
    if masks_t[0] == 0:
        return 1, (0,)
    cdef array.array am = _array.array('Q', masks_t)
    cdef u64[::1] mv = am
    cdef MM ctx
    cdef Py_ssize_t i
    cdef int bc
    ctx.masks = &mv[0]
    ctx.m = <int>m
    ctx.universe = 0
    ctx.kmin = 65
    for i in range(m):
        ctx.universe |= mv[i]
        bc = popcnt(mv[i])
        if bc < ctx.kmin:
            ctx.kmin = bc
    # greedy seed
    cdef array.array wit_a = array.clone(_INT_T, m, zero=False)
    cdef int[::1] wit = wit_a
    cdef u64 used0 = 0
    cdef int ngreedy = 0
    for i in range(m):
        if not (mv[i] & used0):
            used0 |= mv[i]
            wit[ngreedy] = <int>i
            ngreedy += 1
    ctx.best = ngreedy
    ctx.best_n = ngreedy
    cdef array.array bw_a = array.clone(_INT_T, m, zero=False)
    cdef int[::1] bw = bw_a
    memcpy(&bw[0], &wit[0], ngreedy * sizeof(int))
    ctx.best_wit = &bw[0]
    cdef array.array ch_a = array.clone(_INT_T, m, zero=False)
    cdef int[::1] ch = ch_a
    ctx.chosen = &ch[0]
    ctx.nchosen = 0
    # include-level candidate buffers: one slot per possible matching edge
    cdef int depth_cap = 64 // ctx.kmin + 3 if ctx.kmin else 67
    cdef array.array ar_a = array.clone(_INT_T, (depth_cap + 1) * m, zero=False)
    cdef int[::1] ar = ar_a
    ctx.arena = &ar[0]
    cdef array.array s1_a = array.clone(_U64_T, m, zero=False)
    cdef array.array s2_a = array.clone(_U64_T, m, zero=False)
    cdef u64[::1] s1 = s1_a
    cdef u64[::1] s2 = s2_a
    ctx.cscratch1 = &s1[0]
    ctx.cscratch2 = &s2[0]
    for i in range(m):
        ctx.arena[i] = <int>i
    _mm_rec(&ctx, ctx.arena, <int>m, 0, 1)
    return ctx.best, tuple(bw_a[i] for i in range(ctx.best_n))


cdef bint _fd_rec(u64* cand, int cn, u64* su, int kk, int i, u64 used,
                  int need, u64* out, int nout):
    cdef int j
    cdef u64 e
    if need == 0:
        return True
    for j in range(i, cn - need + 1):
        e = cand[j]
        if e & used:
            continue
        if popcnt(su[j] & ~used) < need * kk:
            break
        out[nout] = e
        if _fd_rec(cand, cn, su, kk, j + 1, used | e, need - 1, out, nout + 1):
            return True
    return False


cdef int _find_disjoint_c(u64* masks, int count, int target, u64 avoid,
                          u64* cand, u64* su, u64* out, u64* scratch):
    """Fill `out` with `target` pairwise-disjoint masks avoiding `avoid`;
    return target on success, -1 on failure (0 for an empty target)."""
    cdef int cn = 0, i, got, kk
    cdef u64 used
    if target <= 0:
        return 0
    for i in range(count):
        if not (masks[i] & avoid):
            cand[cn] = masks[i]
            cn += 1
    if cn < target:
        return -1
    got = 0
    used = avoid
    for i in range(cn):
        if not (cand[i] & used):
            used |= cand[i]
            out[got] = cand[i]
            got += 1
            if got >= target:
                return target
    if _cover_ub_c(cand, cn, target - 1, scratch) < target:
        return -1
    su[cn] = 0
    for i in range(cn - 1, -1, -1):
        su[i] = su[i + 1] | cand[i]
    kk = popcnt(cand[0])
    if kk <= 0:
        kk = 1
    if _fd_rec(cand, cn, su, kk, 0, avoid, target, out, 0):
        return target
    return -1


def find_disjoint(masks, count, target, avoid=0):
    """A `target`-sized pairwise-disjoint selection from masks[:count], every
    pick also disjoint from `avoid`; None if impossible."""
    cdef Py_ssize_t cnt = count
    if target > 0 and cnt == 0:
        return None
    cdef array.array am = _array.array('Q', tuple(masks)[:cnt])
    cdef u64[::1] mv = am if cnt else _array.array('Q', [0])
    cdef array.array cand_a = array.clone(_U64_T, cnt + 1, zero=False)
    cdef array.array su_a = array.clone(_U64_T, cnt + 2, zero=False)
    cdef array.array out_a = array.clone(_U64_T, max(target, 1) + 1, zero=False)
    cdef array.array sc_a = array.clone(_U64_T, cnt + 1, zero=False)
    cdef u64[::1] candv = cand_a
    cdef u64[::1] suv = su_a
    cdef u64[::1] outv = out_a
    cdef u64[::1] scv = sc_a
    cdef int got = _find_disjoint_c(&mv[0], <int>cnt, target, avoid,
                                    &candv[0], &suv[0], &outv[0], &scv[0])
    if got < 0:
        return None
    return tuple(out_a[i] for i in range(got))


def has_disjoint(masks, count, target, avoid=0):
    """True iff `target` pairwise-disjoint masks occur among masks[:count],
    each disjoint from `avoid`."""
    return find_disjoint(masks, count, target, avoid) is not None


def downset_search(masks, pred_flat, pred_off, included_init, start,
                   excluded_idx, s_max, exact_nu, best_init, shared,
                   node_limit, deadline):
    """Exact maximum-size search over down-sets of the colex edge universe.
    See the pure-Python twin for the full contract."""
    cdef Py_ssize_t M = len(masks)
    cdef int startc = start
    cdef int excl = excluded_idx
    cdef int smax = s_max
    cdef bint exact = bool(exact_nu)
    cdef long long nlimit = node_limit
    cdef double dl = -1.0 if deadline is None else <double>deadline

    cdef array.array masks_a = _array.array('Q', tuple(masks))
    cdef u64[::1] mv = masks_a if M else _array.array('Q', [0])
    cdef array.array pf_a = _array.array('i', tuple(pred_flat))
    cdef int[::1] pf = pf_a if len(pred_flat) else _array.array('i', [0])
    cdef array.array po_a = _array.array('i', tuple(pred_off))
    cdef int[::1] po = po_a

    cdef bytearray inc_b = bytearray(included_init)
    cdef unsigned char[::1] inc = inc_b

    cdef int L = <int>M - startc
    cdef array.array fam_a = array.clone(_U64_T, M + 1, zero=False)
    cdef u64[::1] fam = fam_a
    cdef int size = 0
    cdef Py_ssize_t i
    for i in range(startc):
        if inc[i]:
            fam[size] = mv[i]
            size += 1

    # matching number of the initial family, via the matching kernel
    nu_py, wit_idx = max_matching([fam_a[i] for i in range(size)])
    cdef int nu = nu_py
    cdef int cache_cap = smax + 2 if smax >= 0 else 2
    cdef array.array cache_a = array.clone(_U64_T, cache_cap + 1, zero=False)
    cdef u64[::1] cache = cache_a
    cdef int clen = 0
    cdef u64 cunion = 0
    for i in wit_idx:
        cache[clen] = fam[<Py_ssize_t>i]
        cunion |= cache[clen]
        clen += 1

    cdef int best = best_init
    cdef int bound = best_init
    witness = None
    cdef long long nodes = 0
    cdef bint completed = True

    if nu > smax:
        return best, witness, nodes, completed

    cdef array.array ph_a = array.clone(_INT_T, L + 2, zero=True)
    cdef int[::1] ph = ph_a
    cdef array.array nus_a = array.clone(_INT_T, L + 2, zero=True)
    cdef int[::1] nu_save = nus_a
    # cache undo: a push stack bounded by the matching number, plus a
    # per-level flag telling whether this include raised it
    cdef array.array raised_a = array.clone(_INT_T, L + 2, zero=True)
    cdef int[::1] raised = raised_a
    cdef array.array cstack_a = array.clone(_U64_T, (cache_cap + 1) * (cache_cap + 2), zero=False)
    cdef u64[::1] cstack = cstack_a
    cdef array.array cslen_a = array.clone(_INT_T, cache_cap + 2, zero=True)
    cdef int[::1] cslen = cslen_a
    cdef int ctop = 0

    # scratch for the incremental matching test
    cdef array.array fd_cand_a = array.clone(_U64_T, M + 2, zero=False)
    cdef array.array fd_su_a = array.clone(_U64_T, M + 3, zero=False)
    cdef array.array fd_out_a = array.clone(_U64_T, cache_cap + 2, zero=False)
    cdef array.array fd_sc_a = array.clone(_U64_T, M + 2, zero=False)
    cdef u64[::1] fd_cand = fd_cand_a
    cdef u64[::1] fd_su = fd_su_a
    cdef u64[::1] fd_out = fd_out_a
    cdef u64[::1] fd_sc = fd_sc_a

    cdef int d = 0, t, p, pi, new_nu, got, ci
    cdef long long iters = 0
    cdef bint include_ok
    cdef u64 e
    cdef object shared_obj = shared
    cdef int shared_val

    while d >= 0:
        iters += 1
        if iters % POLL == 0:
            if dl >= 0 and monotonic() >= dl:
                completed = False
                break
            if shared_obj is not None:
                shared_val = shared_obj.value
                if shared_val > bound:
                    bound = shared_val
        if nodes >= nlimit:
            completed = False
            break
        if d == L:
            if (not exact or nu == smax) and size > bound:
                best = size
                bound = size
                witness = bytes(inc_b)
                if shared_obj is not None:
                    shared_obj.offer(size)
            d -= 1
            continue
        t = startc + d
        p = ph[d]
        if p == 0:
            if size + (<int>M - t) <= bound:
                d -= 1
                continue
            include_ok = t != excl
            if include_ok:
                for pi in range(po[t], po[t + 1]):
                    if not inc[pf[pi]]:
                        include_ok = False
                        break
            new_nu = nu
            got = -2  # -2: no raise attempt resolved through the full search
            if include_ok:
                e = mv[t]
                if not (e & cunion):
                    new_nu = nu + 1
                    got = -3  # raise via the cached matching
                else:
                    got = _find_disjoint_c(&fam[0], size, nu, e,
                                           &fd_cand[0], &fd_su[0], &fd_out[0],
                                           &fd_sc[0])
                    if got >= 0:
                        new_nu = nu + 1
                if new_nu > smax:
                    include_ok = False
            if include_ok:
                nodes += 1
                inc[t] = 1
                fam[size] = mv[t]
                size += 1
                nu_save[d] = nu
                if new_nu > nu:
                    # push the old cache, install the new one
                    raised[d] = 1
                    for ci in range(clen):
                        cstack[ctop * (cache_cap + 1) + ci] = cache[ci]
                    cslen[ctop] = clen
                    ctop += 1
                    if got == -3:
                        cache[clen] = e
                        clen += 1
                        cunion |= e
                    else:
                        clen = got
                        cunion = e
                        for ci in range(got):
                            cache[ci] = fd_out[ci]
                            cunion |= fd_out[ci]
                        cache[clen] = e
                        clen += 1
                    nu = new_nu
                else:
                    raised[d] = 0
                ph[d] = 1
                d += 1
                ph[d] = 0
            else:
                nodes += 1
                ph[d] = 2
                d += 1
                ph[d] = 0
            continue
        if p == 1:
            inc[t] = 0
            size -= 1
            nu = nu_save[d]
            if raised[d]:
                ctop -= 1
                clen = cslen[ctop]
                cunion = 0
                for ci in range(clen):
                    cache[ci] = cstack[ctop * (cache_cap + 1) + ci]
                    cunion |= cache[ci]
            nodes += 1
            ph[d] = 2
            d += 1
            ph[d] = 0
            continue
        d -= 1

    return best, witness, nodes, completed
