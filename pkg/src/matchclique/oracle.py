"""Exact branch-and-bound oracle over shifted families.

Computes, at desk scale, the maximum size of a family with matching
number at most s and clique number at least q ("free" mode), and of a
shifted family with matching number exactly s and clique number exactly
q ("exact" mode). Shifted families are down-sets of the componentwise
order on k-subsets; colex is a linear extension of that order, so the
search decides edges in colex order, where inclusion is legal iff all
immediate predecessors are already in. For shifted families the clique
constraints collapse to single edges: clique number >= q iff the
staircase edge {q-k+1, ..., q} is present, so the colex prefix of all
C(q, k) subsets of [q] is forced, and clique number <= q iff the edge
{q-k+2, ..., q+1} is absent.

Restricting to shifted families loses nothing in free mode: compression
preserves the size, never increases the matching number and never
decreases the clique number.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, replace
from functools import lru_cache
from itertools import combinations
from math import comb
from time import monotonic

from . import constructions, kernels
from .families import (CapacityError, Family, clique_number, edge_mask,
                       is_shifted, matching_number)

MODE_M = "m"
MODE_M_STAR = "mstar"

MAX_UNIVERSE = 200_000  # edge-universe cap; memory guard under the n <= 64 cap

DEFAULT_NODE_LIMIT = 10 ** 8
DEFAULT_TIME_LIMIT = 600.0


@dataclass(frozen=True)
class SearchProblem:
    n: int
    k: int
    s: int
    q: int
    mode: str = MODE_M
    node_limit: int = DEFAULT_NODE_LIMIT
    time_limit: float = DEFAULT_TIME_LIMIT
    threads: int = 1


@dataclass(frozen=True)
class SearchResult:
    value: int
    witness: Family
    nodes_explored: int
    proven_optimal: bool


class _Incumbent:
    """Shared best value for worker pruning; stale reads are harmless."""

    __slots__ = ("value", "_lock")

    def __init__(self, value: int):
        self.value = value
        self._lock = threading.Lock()

    def offer(self, value: int) -> bool:
        with self._lock:
            if value > self.value:
                self.value = value
                return True
            return False


@lru_cache(maxsize=16)
def _universe(n: int, k: int):
    """Colex-sorted edge masks with CSR immediate-predecessor indices."""
    if n > 64:
        raise CapacityError(f"ground set size {n} exceeds 64")
    if comb(n, k) > MAX_UNIVERSE:
        raise CapacityError(
            f"edge universe C({n},{k})={comb(n, k)} exceeds {MAX_UNIVERSE}")
    masks = tuple(sorted(edge_mask(c, n) for c in combinations(range(1, n + 1), k)))
    index = {m: i for i, m in enumerate(masks)}
    pred_off = [0]
    pred_flat = []
    for m in masks:
        mm = m
        while mm:
            low = mm & -mm
            mm ^= low
            b = low.bit_length() - 1  # 0-based bit
            if b >= 1 and not m & (low >> 1):
                pred_flat.append(index[(m ^ low) | (low >> 1)])
        pred_off.append(len(pred_flat))
    return masks, tuple(pred_flat), tuple(pred_off), index


def _staircase_mask(q: int, k: int) -> int:
    """Bitmask of {q-k+1, ..., q}."""
    return ((1 << k) - 1) << (q - k)


def _witness_from_bytes(n: int, k: int, masks, included: bytes) -> Family:
    return Family(n, k, tuple(m for m, flag in zip(masks, included) if flag))


def _initial_candidates(problem: SearchProblem):
    """Constructions satisfying the mode constraints, used as incumbents.

    Candidates are verified with the structural invariants before use, so
    an out-of-range construction can never inject an unsound lower bound.
    """
    n, k, s, q = problem.n, problem.k, problem.s, problem.q
    exact = problem.mode == MODE_M_STAR
    cands = []
    ts = [q] if exact else list(range(q, min(s * k + k - 1, n) + 1))
    for t in ts:
        if s + k - 1 <= t <= s * k + k - 1 and t <= n and k >= 2 and s >= 1:
            try:
                cands.append(constructions.clique_matching_family(n, t, k, s))
            except ValueError:
                pass
        if k <= t <= n and t // k == s:
            cands.append(constructions.clique_family(n, t, k))
    if not exact and 1 <= s <= n and k <= n:
        cands.append(constructions.star_family(n, k, s))
    best = None
    for fam in cands:
        nu, _ = matching_number(fam)
        if exact and nu != s:
            continue
        if not exact and nu > s:
            continue
        omega, _ = clique_number(fam)
        if exact and omega != q:
            continue
        if not exact and omega < q:
            continue
        if best is None or len(fam) > len(best):
            best = fam
    return best


def _run_search(problem: SearchProblem, masks, pred_flat, pred_off,
                included0: bytearray, start: int, excluded_idx: int,
                best_init: int):
    """Drive the kernel, splitting the tree across threads when asked.

    Worker tasks share only the incumbent value; each explores a disjoint
    frontier subtree, so the combined value equals the single-threaded one.
    """
    exact = problem.mode == MODE_M_STAR
    deadline = monotonic() + problem.time_limit
    if problem.threads <= 1:
        return kernels.downset_search(
            masks, pred_flat, pred_off, bytes(included0), start, excluded_idx,
            problem.s, exact, best_init, None, problem.node_limit, deadline)

    states, frontier_nodes, feasible_done = _frontier(
        problem, masks, pred_flat, pred_off, included0, start, excluded_idx)
    shared = _Incumbent(best_init)
    best = best_init
    witness = None
    nodes = frontier_nodes
    completed = True
    if feasible_done:
        # the frontier expansion already decided every edge
        for leaf_inc, leaf_size in feasible_done:
            if leaf_size > best:
                best = leaf_size
                witness = bytes(leaf_inc)
    results = []

    def task(state):
        inc, new_start = state
        return kernels.downset_search(
            masks, pred_flat, pred_off, bytes(inc), new_start, excluded_idx,
            problem.s, exact, shared.value, shared, problem.node_limit, deadline)

    from concurrent.futures import ThreadPoolExecutor
    with ThreadPoolExecutor(max_workers=problem.threads) as pool:
        results = list(pool.map(task, states))
    for b, w, nd, comp in results:
        nodes += nd
        completed = completed and comp
        if w is not None and b > best:
            best = b
            witness = w
    return best, witness, nodes, completed


def _frontier(problem: SearchProblem, masks, pred_flat, pred_off,
              included0: bytearray, start: int, excluded_idx: int):
    """Expand the first levels into independent subtree states."""
    M = len(masks)
    want = max(4 * problem.threads, 8)
    exact = problem.mode == MODE_M_STAR
    states = [(bytes(included0), start)]
    nodes = 0
    finished = []
    depth = start
    while depth < M and len(states) < want and depth - start < 24:
        nxt = []
        for inc, _ in states:
            inc = bytearray(inc)
            t = depth
            fam = [masks[i] for i in range(t) if inc[i]]
            nu, _ = kernels.max_matching(fam)
            include_ok = t != excluded_idx and all(
                inc[pred_flat[pi]] for pi in range(pred_off[t], pred_off[t + 1]))
            if include_ok:
                found = kernels.find_disjoint(fam, len(fam), nu, masks[t])
                new_nu = nu + 1 if found is not None else nu
                if new_nu > problem.s:
                    include_ok = False
            if include_ok:
                nodes += 1
                inc2 = bytearray(inc)
                inc2[t] = 1
                nxt.append((bytes(inc2), t + 1))
            nodes += 1
            nxt.append((bytes(inc), t + 1))
        states = nxt
        depth += 1
    if depth >= M:
        # everything decided during expansion; evaluate leaves directly
        for inc, _ in states:
            fam = [masks[i] for i in range(M) if inc[i]]
            nu, _ = kernels.max_matching(fam)
            if not exact or nu == problem.s:
                finished.append((inc, len(fam)))
        return [], nodes, finished
    return states, nodes, None


def _verify_witness(problem: SearchProblem, fam: Family, value: int) -> None:
    """Independent post-check of a proven witness (guards search bugs)."""
    if len(fam) != value:
        raise RuntimeError("internal error: witness size disagrees with value")
    if value == 0:
        return
    if not is_shifted(fam):
        raise RuntimeError("internal error: witness is not shifted")
    nu, _ = matching_number(fam)
    omega, _ = clique_number(fam)
    if problem.mode == MODE_M_STAR:
        ok = nu == problem.s and omega == problem.q
    else:
        ok = nu <= problem.s and omega >= problem.q
    if not ok:
        raise RuntimeError(
            f"internal error: witness invariants nu={nu}, omega={omega} "
            f"violate mode {problem.mode} at {problem}")


def exact_m_star(problem: SearchProblem) -> SearchResult:
    """Exact maximum size of a shifted family with matching number exactly s
    and clique number exactly q; 0 with an empty witness when infeasible."""
    if problem.mode != MODE_M_STAR:
        raise ValueError("exact_m_star requires mode 'mstar'")
    n, k, s, q = problem.n, problem.k, problem.s, problem.q
    _validate_common(problem)
    empty = Family(n, k, ())
    # degenerate clique targets: only the empty family has omega = k-1,
    # and nothing at all has omega strictly between k-1 and k or above n
    if q > n or q < k:
        return SearchResult(0, empty, 0, True)
    if q // k > s:
        return SearchResult(0, empty, 0, True)

    masks, pred_flat, pred_off, index = _universe(n, k)
    prefix_len = comb(q, k)
    included0 = bytearray(len(masks))
    for i in range(prefix_len):
        included0[i] = 1
    excluded_idx = index[_staircase_mask(q + 1, k)] if q + 1 <= n else -1

    init = _initial_candidates(problem)
    best_init = len(init) if init is not None else 0
    best, wbytes, nodes, completed = _run_search(
        problem, masks, pred_flat, pred_off, included0, prefix_len,
        excluded_idx, best_init)
    if wbytes is not None:
        witness = _witness_from_bytes(n, k, masks, wbytes)
    elif init is not None and best == best_init:
        witness = init
    else:
        witness = empty
        best = 0 if best == best_init and init is None else best
    if completed:
        _verify_witness(problem, witness, best)
    return SearchResult(best, witness, nodes, completed)


def exact_m(problem: SearchProblem, method: str = "direct") -> SearchResult:
    """Exact maximum size of a family with matching number <= s and clique
    number >= q. `method` picks the direct shifted search or the sweep of
    exact-mode answers over q <= t < (s+1)k; both must agree."""
    if problem.mode != MODE_M:
        raise ValueError("exact_m requires mode 'm'")
    n, k, s, q = problem.n, problem.k, problem.s, problem.q
    _validate_common(problem)
    if q < k:
        raise ValueError(f"q={q} below k={k} is not exposed")
    empty = Family(n, k, ())
    if q >= (s + 1) * k or q > n:
        return SearchResult(0, empty, 0, True)

    if method == "sweep":
        return _exact_m_sweep(problem)
    if method != "direct":
        raise ValueError(f"unknown method {method!r}")

    masks, pred_flat, pred_off, index = _universe(n, k)
    prefix_len = comb(q, k)
    included0 = bytearray(len(masks))
    for i in range(prefix_len):
        included0[i] = 1

    init = _initial_candidates(problem)
    best_init = len(init) if init is not None else 0
    best, wbytes, nodes, completed = _run_search(
        problem, masks, pred_flat, pred_off, included0, prefix_len, -1,
        best_init)
    if wbytes is not None:
        witness = _witness_from_bytes(n, k, masks, wbytes)
    elif init is not None:
        witness = init
    else:
        witness = empty
    if completed:
        _verify_witness(problem, witness, best)
    return SearchResult(best, witness, nodes, completed)


def _exact_m_sweep(problem: SearchProblem) -> SearchResult:
    n, k, s, q = problem.n, problem.k, problem.s, problem.q
    deadline = monotonic() + problem.time_limit
    nodes = 0
    best = 0
    witness = Family(n, k, ())
    completed = True
    for t in range(q, (s + 1) * k):
        remaining_nodes = problem.node_limit - nodes
        remaining_time = deadline - monotonic()
        if remaining_nodes <= 0 or remaining_time <= 0:
            completed = False
            break
        sub = replace(problem, q=t, mode=MODE_M_STAR,
                      node_limit=remaining_nodes, time_limit=remaining_time)
        res = exact_m_star(sub)
        nodes += res.nodes_explored
        completed = completed and res.proven_optimal
        if res.value > best:
            best = res.value
            witness = res.witness
    return SearchResult(best, witness, nodes, completed)


def _validate_common(problem: SearchProblem) -> None:
    n, k, s = problem.n, problem.k, problem.s
    if n < 1 or n > 64:
        raise CapacityError(f"n={n} outside [1, 64]")
    if k < 1 or k > n:
        raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
    if s < 0:
        raise ValueError("s must be nonnegative")
    if problem.threads < 1:
        raise ValueError("threads must be positive")
    _universe(n, k)  # capacity check


# -- identity checks -----------------------------------------------------------

def verify_identity(name: str, **params) -> dict:
    """Recompute both sides of a structural identity with the oracle and
    report; reports never assert (budget-limited cells are marked)."""
    if name == "recursion":
        return _verify_recursion(**params)
    if name == "eq-sweep":
        return _verify_eq_sweep(**params)
    if name == "trichotomy":
        return _verify_trichotomy(**params)
    if name == "monotonicity":
        return _verify_monotonicity(**params)
    raise ValueError(f"unknown identity {name!r}")


def _verify_recursion(n, q, k, s, node_limit=DEFAULT_NODE_LIMIT,
                      time_limit=DEFAULT_TIME_LIMIT, threads=1) -> dict:
    """One reduction step: the exact-(s, q) value versus C(n-1, k-1) plus the
    exact-(s-1, q-1) value. Equality is proven only when the optimum is
    reducible, so the report carries the witness reducibility flag."""
    from . import formulas
    from .families import restrict_avoid

    lhs_res = exact_m_star(SearchProblem(n, k, s, q, MODE_M_STAR,
                                         node_limit, time_limit, threads))
    inner = exact_m_star(SearchProblem(n - 1, k, s - 1, q - 1, MODE_M_STAR,
                                       node_limit, time_limit, threads))
    rhs = formulas.recursion_rhs(n, q, k, s, inner.value)
    wit = lhs_res.witness
    reducible = None
    if lhs_res.proven_optimal and len(wit):
        rest = restrict_avoid(wit, (1,))
        nu_rest, _ = matching_number(rest)
        reducible = nu_rest == s - 1
    return {
        "identity": "recursion",
        "params": {"n": n, "q": q, "k": k, "s": s},
        "lhs": lhs_res.value,
        "rhs": rhs,
        "inner_value": inner.value,
        "equal": lhs_res.value == rhs,
        "lhs_ge_rhs": lhs_res.value >= rhs,
        "witness_reducible": reducible,
        "proven": lhs_res.proven_optimal and inner.proven_optimal,
    }


def _verify_eq_sweep(n, q, k, s, node_limit=DEFAULT_NODE_LIMIT,
                     time_limit=DEFAULT_TIME_LIMIT, threads=1) -> dict:
    """Free-mode value versus the maximum of exact-mode values over
    q <= t < (s+1)k."""
    direct = exact_m(SearchProblem(n, k, s, q, MODE_M,
                                   node_limit, time_limit, threads))
    sweep = exact_m(SearchProblem(n, k, s, q, MODE_M,
                                  node_limit, time_limit, threads),
                    method="sweep")
    return {
        "identity": "eq-sweep",
        "params": {"n": n, "q": q, "k": k, "s": s},
        "direct": direct.value,
        "sweep": sweep.value,
        "equal": direct.value == sweep.value,
        "proven": direct.proven_optimal and sweep.proven_optimal,
    }


def _verify_trichotomy(n_max=9, k_max=3, samples=1000, seed=0) -> dict:
    """Random shifted families with bounded matching number fall in exactly
    one branch: inside the s-star, clique number in [s+k, sk+k-1), or the
    full clique on sk+k-1 vertices."""
    import random

    from .families import shift_closure
    rng = random.Random(seed)
    violations = []
    for _ in range(samples):
        k = rng.randint(2, k_max)
        n = rng.randint(k + 1, n_max)
        universe = [edge_mask(c, n) for c in combinations(range(1, n + 1), k)]
        size = rng.randint(0, min(len(universe), 20))
        fam = shift_closure(Family.from_masks(n, k, rng.sample(universe, size)))
        nu, _ = matching_number(fam)
        for s in (max(nu, 1), nu + 1):
            if not _trichotomy_holds(fam, s):
                violations.append({"n": n, "k": k, "s": s,
                                   "edges": fam.vertex_sets()})
    return {
        "identity": "trichotomy",
        "samples": samples,
        "violations": violations,
        "equal": not violations,
        "proven": True,
    }


def _trichotomy_holds(fam: Family, s: int) -> bool:
    n, k = fam.n, fam.k
    in_star = all(edge_vertices_min(m) <= s for m in fam.edge_masks)
    omega, _ = clique_number(fam)
    mid = s + k <= omega < s * k + k - 1
    top_q = s * k + k - 1
    is_top = False
    if top_q <= n:
        is_top = fam == constructions.clique_family(n, top_q, k)
    return (in_star + mid + is_top) == 1


def edge_vertices_min(mask: int) -> int:
    return (mask & -mask).bit_length()


def _verify_monotonicity(k_max=5, s_max=5, n_max=200) -> dict:
    """Construction size is non-increasing in q (delegated closed-form sweep)."""
    from . import formulas
    violations = []
    for k in range(2, k_max + 1):
        for s in range(1, s_max + 1):
            for q in range(s + k - 1, s * k + k - 1):
                for n in range(2 * q, n_max + 1):
                    if formulas.size_A(n, q, k, s) < formulas.size_A(n, q + 1, k, s):
                        violations.append((n, q, k, s))
    return {
        "identity": "monotonicity",
        "violations": violations,
        "equal": not violations,
        "proven": True,
    }
