"""Pure-Python search kernels.

Three hot routines live here: exact maximum matching over bitmask edge
lists, bounded disjoint-selection search, and the branch-and-bound over
down-sets that powers the oracle. The compiled twin in ``_kernels_c``
mirrors them decision for decision; values, witnesses and node counts
must agree exactly (tests enforce parity), so any behavioural change
here has to be ported there.

Matching searches prune with three upper bounds on what the remaining
candidates can add: their count, free vertices divided by the uniformity,
and a greedy vertex-cover size (any hitting set bounds a matching).
"""

from __future__ import annotations

from time import monotonic

BACKEND = "python"

_POLL = 1024  # budget / shared-incumbent poll interval, in loop iterations


def _cover_ub(mask_list, limit):
    """Greedy hitting-set size of mask_list, or limit + 1 once it exceeds
    limit (no prune possible). Any cover bounds the matching size."""
    rem = list(mask_list)
    cov = 0
    while rem:
        if cov > limit:
            return limit + 1
        freq = {}
        for e in rem:
            m = e
            while m:
                low = m & -m
                m ^= low
                freq[low] = freq.get(low, 0) + 1
        bestbit = 0
        bestcount = -1
        for bit, cnt in freq.items():
            if cnt > bestcount or (cnt == bestcount and bit < bestbit):
                bestbit = bit
                bestcount = cnt
        rem = [e for e in rem if not e & bestbit]
        cov += 1
    return cov


def max_matching(masks):
    """Return (size, witness index tuple) of a maximum pairwise-disjoint subset.

    Branches on the least-index candidate edge (take it / skip it), seeded
    with a greedy matching.
    """
    masks = tuple(masks)
    m = len(masks)
    if m == 0:
        return 0, ()
    if masks[0] == 0:
        # lone empty edge of a 0-uniform family
        return 1, (0,)
    universe = 0
    kmin = 65
    for e in masks:
        universe |= e
        bc = e.bit_count()
        if bc < kmin:
            kmin = bc
    used0 = 0
    greedy = []
    for i in range(m):
        if not masks[i] & used0:
            used0 |= masks[i]
            greedy.append(i)
    best = len(greedy)
    best_wit = tuple(greedy)
    chosen = []

    def rec(cands, used):
        nonlocal best, best_wit
        if len(chosen) > best:
            best = len(chosen)
            best_wit = tuple(chosen)
        if not cands:
            return
        gap = best - len(chosen)
        cap = (universe & ~used).bit_count() // kmin
        if len(cands) <= gap or cap <= gap:
            return
        if _cover_ub([masks[c] for c in cands], gap) <= gap:
            return
        j = cands[0]
        e = masks[j]
        chosen.append(j)
        rec([c for c in cands[1:] if not masks[c] & e], used | e)
        chosen.pop()
        rec(cands[1:], used)

    rec(list(range(m)), 0)
    return best, best_wit


def find_disjoint(masks, count, target, avoid=0):
    """A `target`-sized pairwise-disjoint selection from masks[:count], every
    pick also disjoint from `avoid`; None if impossible.

    Greedy pass, then the cover bound, then a DFS over ascending indices
    with a suffix vertex-supply bound.
    """
    if target <= 0:
        return ()
    cand = [masks[i] for i in range(count) if not masks[i] & avoid]
    cn = len(cand)
    if cn < target:
        return None
    picked = []
    used = avoid
    for e in cand:
        if not e & used:
            used |= e
            picked.append(e)
            if len(picked) >= target:
                return tuple(picked)
    if _cover_ub(cand, target - 1) < target:
        return None
    su = [0] * (cn + 1)
    for i in range(cn - 1, -1, -1):
        su[i] = su[i + 1] | cand[i]
    kk = cand[0].bit_count()
    if kk <= 0:
        kk = 1
    out = []

    def rec(i, used, need):
        if need == 0:
            return True
        for j in range(i, cn - need + 1):
            e = cand[j]
            if e & used:
                continue
            if (su[j] & ~used).bit_count() < need * kk:
                break
            out.append(e)
            if rec(j + 1, used | e, need - 1):
                return True
            out.pop()
        return False

    if rec(0, avoid, target):
        return tuple(out)
    return None


def has_disjoint(masks, count, target, avoid=0):
    """True iff `target` pairwise-disjoint masks occur among masks[:count],
    each disjoint from `avoid`."""
    return find_disjoint(masks, count, target, avoid) is not None


def downset_search(masks, pred_flat, pred_off, included_init, start,
                   excluded_idx, s_max, exact_nu, best_init, shared,
                   node_limit, deadline):
    """Exact maximum-size search over down-sets of the colex edge universe.

    Edges are decided in colex order (a linear extension of the
    componentwise order), include-branch first. An edge may be included
    only when all its immediate predecessors are; this keeps every node a
    down-set, so exclusion propagates for free. The matching number is
    maintained incrementally through a cached maximum matching: one added
    edge raises it by at most one, and only when the current included set
    has a full-size matching avoiding the new edge.

    masks:         full colex-sorted edge universe.
    pred_flat/off: CSR immediate-predecessor indices per edge.
    included_init: bytes of length len(masks); decisions below `start`.
    excluded_idx:  index barred from inclusion (-1 for none).
    s_max:         prune states whose matching number exceeds this.
    exact_nu:      leaves must have matching number == s_max to count.
    best_init:     incumbent size; only strictly better leaves recorded.
    shared:        optional box with .value / .offer(v) shared by workers;
                   stale reads only weaken pruning.
    node_limit:    decisions budget; deadline: time.monotonic() cutoff or None.

    Returns (best, witness_bytes_or_None, nodes, completed).
    """
    M = len(masks)
    included = bytearray(included_init)
    fam = [masks[i] for i in range(start) if included[i]]
    size = len(fam)
    nu, wit_idx = max_matching(fam)
    cache = tuple(fam[i] for i in wit_idx)
    cache_union = 0
    for e in cache:
        cache_union |= e

    bound = best_init
    best = best_init
    witness = None
    nodes = 0
    completed = True
    L = M - start
    ph = bytearray(L + 1)
    nu_save = [0] * (L + 1)
    cache_save = [None] * (L + 1)

    if nu > s_max:
        return best, witness, nodes, completed

    d = 0
    iters = 0
    while d >= 0:
        iters += 1
        if iters % _POLL == 0:
            if deadline is not None and monotonic() >= deadline:
                completed = False
                break
            if shared is not None and shared.value > bound:
                bound = shared.value
        if nodes >= node_limit:
            completed = False
            break
        if d == L:
            if (not exact_nu or nu == s_max) and size > bound:
                best = size
                bound = size
                witness = bytes(included)
                if shared is not None:
                    shared.offer(size)
            d -= 1
            continue
        t = start + d
        p = ph[d]
        if p == 0:
            if size + (M - t) <= bound:
                d -= 1
                continue
            include_ok = t != excluded_idx
            if include_ok:
                for pi in range(pred_off[t], pred_off[t + 1]):
                    if not included[pred_flat[pi]]:
                        include_ok = False
                        break
            new_nu = nu
            new_cache = cache
            new_union = cache_union
            if include_ok:
                e = masks[t]
                if e & cache_union == 0:
                    new_nu = nu + 1
                    new_cache = cache + (e,)
                    new_union = cache_union | e
                else:
                    found = find_disjoint(fam, size, nu, e)
                    if found is not None:
                        new_nu = nu + 1
                        new_cache = found + (e,)
                        new_union = e
                        for f in found:
                            new_union |= f
                if new_nu > s_max:
                    include_ok = False
            if include_ok:
                nodes += 1
                included[t] = 1
                fam.append(masks[t])
                size += 1
                nu_save[d] = nu
                cache_save[d] = (cache, cache_union)
                nu = new_nu
                cache = new_cache
                cache_union = new_union
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
            included[t] = 0
            fam.pop()
            size -= 1
            nu = nu_save[d]
            cache, cache_union = cache_save[d]
            nodes += 1
            ph[d] = 2
            d += 1
            ph[d] = 0
            continue
        d -= 1

    return best, witness, nodes, completed
