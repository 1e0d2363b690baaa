"""Verification suites: each acceptance-grade property packaged as a
reusable check that reports pass/fail lines. The CLI `verify` subcommand
and the acceptance test module both run these.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from math import comb

from . import constructions, formulas, oracle
from .families import (Family, are_cross_intersecting, clique_number,
                       covering_number, edge_mask, is_shifted,
                       is_t_intersecting, matching_number, shift_closure,
                       shift_ij)


@dataclass
class SuiteReport:
    name: str
    passed: bool
    lines: list = field(default_factory=list)
    checks: int = 0
    inconclusive: bool = False

    def summary(self) -> str:
        state = "PASS" if self.passed else (
            "INCONCLUSIVE" if self.inconclusive else "FAIL")
        return f"{state} {self.name}: {self.checks} checks"


def random_family(rng: random.Random, n: int, k: int,
                  max_edges: "int | None" = None) -> Family:
    universe = [edge_mask(c, n) for c in combinations(range(1, n + 1), k)]
    cap = len(universe) if max_edges is None else min(max_edges, len(universe))
    return Family.from_masks(n, k, rng.sample(universe, rng.randint(0, cap)))


# -- criterion 1: complete k=2 theorem vs oracle --------------------------------

def suite_k2_exact(node_limit=oracle.DEFAULT_NODE_LIMIT,
                   time_limit=300.0) -> SuiteReport:
    rep = SuiteReport("k2-exact", True)
    t0 = time.monotonic()
    for n in range(6, 10):
        for q in range(3, 6):
            res = oracle.exact_m(oracle.SearchProblem(
                n, 2, 2, q, oracle.MODE_M, node_limit,
                max(1e-3, time_limit - (time.monotonic() - t0))))
            expect = max(comb(5, 2), comb(q, 2) + (5 - q) * (n - q))
            rep.checks += 1
            if not res.proven_optimal:
                rep.passed = False
                rep.inconclusive = True
                rep.lines.append(f"cell n={n} q={q}: budget exhausted")
            elif res.value != expect:
                rep.passed = False
                rep.lines.append(
                    f"cell n={n} q={q}: oracle {res.value} != theorem {expect}")
    elapsed = time.monotonic() - t0
    if elapsed >= time_limit:
        rep.passed = False
        rep.lines.append(f"runtime {elapsed:.1f}s exceeded {time_limit:.0f}s")
    rep.lines.append(
        f"12 cells (6<=n<=9, 3<=q<=5, k=2, s=2) in {elapsed:.2f}s")
    return rep


# -- criterion 2: q = sk+k-2 theorem at the searchable cell ---------------------

def suite_second_clique(node_limit=oracle.DEFAULT_NODE_LIMIT,
                        time_limit=600.0) -> SuiteReport:
    rep = SuiteReport("second-clique", True)
    t0 = time.monotonic()
    res = oracle.exact_m(oracle.SearchProblem(
        9, 3, 2, 7, oracle.MODE_M, node_limit, time_limit))
    rep.checks = 1
    elapsed = time.monotonic() - t0
    if not res.proven_optimal:
        rep.passed = False
        rep.inconclusive = True
        rep.lines.append("budget exhausted; criterion fails")
    elif res.value != 56:
        rep.passed = False
        rep.lines.append(f"oracle {res.value} != 56")
    rep.lines.append(
        f"m(9,7,3,2) = {res.value} (theorem max(56, 47) = 56) in "
        f"{elapsed:.2f}s, {res.nodes_explored} nodes")
    return rep


# -- criterion 3: spot value where two exact regimes overlap --------------------

def suite_spot_regimes() -> SuiteReport:
    rep = SuiteReport("spot-regimes", True)
    res = formulas.m_closed(16, 15, 2, 7)
    rep.checks += 1
    if res.value != 105 or not res.hypotheses_met:
        rep.passed = False
        rep.lines.append(f"m_closed(16,15,2,7) = {res}")
    regimes = {r.regime: r for r in formulas.applicable_regimes(16, 15, 2, 7)}
    for name in ("pair-graph-exact", "tight-ground-clique"):
        rep.checks += 1
        r = regimes.get(name)
        if r is None or r.value != 105 or not r.hypotheses_met:
            rep.passed = False
            rep.lines.append(f"regime {name}: {r}")
    rep.lines.append(
        "m(16,15,2,7) = C(15,2) = 105 under both the k=2 theorem and the "
        "tight-ground clique theorem; regimes agree")
    return rep


# -- criterion 4: construction ledger -------------------------------------------

def suite_constructions(n_max=12, k_max=4, s_max=3) -> SuiteReport:
    rep = SuiteReport("constructions", True)

    def fail(msg):
        rep.passed = False
        rep.lines.append(msg)

    # layered clique-plus-matching families
    for k in range(2, k_max + 1):
        for s in range(1, s_max + 1):
            for n in range((s + 1) * k, n_max + 1):
                for q in range(s + k - 1, min(s * k + k - 1, n) + 1):
                    fam = constructions.clique_matching_family(n, q, k, s)
                    rep.checks += 1
                    if len(fam) != formulas.size_A(n, q, k, s):
                        fail(f"A({n},{q},{k},{s}): size {len(fam)}")
                    nu, _ = matching_number(fam)
                    om, _ = clique_number(fam)
                    if nu != s or om != q or not is_shifted(fam):
                        fail(f"A({n},{q},{k},{s}): nu={nu} omega={om} "
                             f"shifted={is_shifted(fam)}")
    # s-stars
    for k in range(1, k_max + 1):
        for s in range(1, s_max + 1):
            for n in range((s + 1) * k, n_max + 1):
                fam = constructions.star_family(n, k, s)
                rep.checks += 1
                if len(fam) != comb(n, k) - comb(n - s, k):
                    fail(f"E({n},{k},{s}): size {len(fam)}")
                nu, _ = matching_number(fam)
                tau, _ = covering_number(fam)
                om, _ = clique_number(fam)
                if (nu, tau, om) != (s, s, s + k - 1):
                    fail(f"E({n},{k},{s}): nu={nu} tau={tau} omega={om}")
    # Hilton-Milner type families (k >= 2: with k = 1 the family degenerates
    # to one edge and the clique claim is off by one)
    for k in range(2, k_max + 1):
        for n in range(2 * k + 1, n_max + 1):
            fam = constructions.hilton_milner_family(n, k)
            rep.checks += 1
            if len(fam) != formulas.hm_bound(n, k):
                fail(f"HM({n},{k}): size {len(fam)}")
            om, _ = clique_number(fam)
            if om != k + 1:
                fail(f"HM({n},{k}): omega={om}")
    # covering-gap families
    for k in range(2, k_max + 1):
        for s in range(1, s_max + 1):
            for n in range((s + 1) * k, n_max + 1):
                fam = constructions.covering_gap_family(n, k, s)
                rep.checks += 1
                tau, _ = covering_number(fam)
                om, _ = clique_number(fam)
                if om != k + s or tau != s + 1:
                    fail(f"B({n},{k},{s}): tau={tau} omega={om}")
    rep.lines.append(f"{rep.checks} construction cells verified "
                     f"(n<={n_max}, k<={k_max}, s<={s_max}, n>=(s+1)k)")
    return rep


# -- criterion 5: shifting suite -------------------------------------------------

def suite_shifting(seed=0, samples=500) -> SuiteReport:
    rep = SuiteReport("shifting", True)
    rng = random.Random(seed)

    def fail(msg):
        rep.passed = False
        rep.lines.append(msg)

    for _ in range(samples):
        k = rng.randint(1, 4)
        n = rng.randint(max(2, k), 10)
        fam = random_family(rng, n, k, max_edges=24)
        nu0, _ = matching_number(fam)
        om0, _ = clique_number(fam)
        rep.checks += 1
        for i in range(1, n):
            for j in range(i + 1, n + 1):
                shifted = shift_ij(fam, i, j)
                if len(shifted) != len(fam):
                    fail(f"S_{i}{j} changed size on {fam.vertex_sets()}")
                if shifted != fam:
                    nu1, _ = matching_number(shifted)
                    om1, _ = clique_number(shifted)
                    if nu1 > nu0:
                        fail(f"S_{i}{j} raised matching number on "
                             f"{fam.vertex_sets()}")
                    if om1 < om0:
                        fail(f"S_{i}{j} lowered clique number on "
                             f"{fam.vertex_sets()}")
        closed = shift_closure(fam)
        if not is_shifted(closed) or shift_closure(closed) != closed:
            fail(f"closure not idempotent on {fam.vertex_sets()}")
        if k >= 2:
            nu_c, _ = matching_number(closed)
            for s in (max(nu_c, 1), nu_c + 1):
                if not oracle._trichotomy_holds(closed, s):
                    fail(f"trichotomy fails at s={s} on {closed.vertex_sets()}")
    rep.lines.append(f"{samples} seeded families (n<=10, k<=4): compression "
                     "preserves size, never raises the matching number, never "
                     "lowers the clique number; closure idempotent; trichotomy "
                     "holds on shifted samples")
    return rep


# -- criterion 6: monotonicity sweep ---------------------------------------------

def suite_monotonicity(k_max=5, s_max=5, n_max=200) -> SuiteReport:
    rep = SuiteReport("monotonicity", True)
    for k in range(2, k_max + 1):
        for s in range(1, s_max + 1):
            for q in range(s + k - 1, s * k + k - 1):
                for n in range(2 * q, n_max + 1):
                    rep.checks += 1
                    if formulas.size_A(n, q, k, s) < formulas.size_A(n, q + 1, k, s):
                        rep.passed = False
                        rep.lines.append(f"size_A increased at {(n, q, k, s)}")
    rep.lines.append(
        f"{rep.checks} cells swept (k<=5, s<=5, s+k-1<=q<=sk+k-2, 2q<=n<=200)")
    return rep


# -- criterion 7: weighted cross-intersecting bound ------------------------------

def _prefix_family(n: int, l: int, i: int) -> Family:
    """All l-subsets of [n] containing [i]; empty once i exceeds l."""
    if i > l:
        return Family(n, l, ())
    return Family.from_vertex_sets(
        n, l, (tuple(range(1, i + 1)) + rest
               for rest in combinations(range(i + 1, n + 1), l - i)))


def _cross_hypotheses_ok(n, k, l, t, s):
    return (s >= t >= 0 and n >= k + l and n >= (2 * s + 1) * k
            and n >= (l - t + 1) * (t + 1))


def suite_cross(seed=0, samples=1000, n_max=12) -> SuiteReport:
    rep = SuiteReport("cross", True)

    def fail(msg):
        rep.passed = False
        rep.lines.append(msg)

    combos = [(n, k, l, t, s)
              for n in range(2, n_max + 1)
              for k in range(1, 4) for l in range(1, 4)
              for s in range(0, 4) for t in range(0, s + 1)
              if _cross_hypotheses_ok(n, k, l, t, s)]

    # equality pairs attain each term
    for (n, k, l, t, s) in combos:
        for beta in (1, Fraction(1, 2)):
            for i in range(t, s + 1):
                a_fam = (constructions.star_family(n, k, i) if i >= 1
                         else Family(n, k, ()))
                b_fam = _prefix_family(n, l, i)
                term = (formulas.comb0(n, k) - formulas.comb0(n - i, k)
                        + beta * formulas.comb0(n - i, l - i))
                rep.checks += 1
                if len(a_fam) + beta * len(b_fam) != term:
                    fail(f"equality pair misses term i={i} at "
                         f"{(n, k, l, t, s, beta)}")
                if i >= 1 and not are_cross_intersecting(a_fam, b_fam):
                    fail(f"equality pair not cross-intersecting at "
                         f"{(n, k, l, t, s, i)}")
                if not is_t_intersecting(b_fam, t):
                    fail(f"prefix family not {t}-intersecting at "
                         f"{(n, k, l, t, s, i)}")

    # random admissible pairs never exceed the bound
    rng = random.Random(seed)
    betas = (1, 2, Fraction(1, 2), Fraction(3, 2))
    for _ in range(samples):
        n, k, l, t, s = combos[rng.randrange(len(combos))]
        beta = betas[rng.randrange(len(betas))]
        if s >= 1 and rng.random() < 0.5:
            base = constructions.star_family(n, k, rng.randint(1, s))
            size = rng.randint(0, min(len(base), 24))
            a_fam = Family.from_masks(n, k, rng.sample(base.edge_masks, size))
        else:
            while True:
                a_fam = random_family(rng, n, k, max_edges=3 * s + 2)
                if matching_number(a_fam)[0] <= s:
                    break
        b_pool = [m for m in
                  random_family(rng, n, l, max_edges=20).edge_masks
                  if all(m & a for a in a_fam.edge_masks)]
        kept: list = []
        for m in b_pool:
            if all((m & other).bit_count() >= t for other in kept):
                kept.append(m)
        b_fam = Family.from_masks(n, l, kept)
        bound = formulas.cross_bound(n, k, l, t, s, beta)
        rep.checks += 1
        if len(a_fam) + beta * len(b_fam) > bound.value:
            fail(f"random pair exceeds bound at {(n, k, l, t, s, beta)}: "
                 f"{len(a_fam)} + {beta}*{len(b_fam)} > {bound.value}")
    rep.lines.append(
        f"equality pairs attain every term and {samples} random admissible "
        f"pairs stay within the bound (n<={n_max}, k,l<=3, t<=s<=3)")
    return rep


# -- criterion 8: cyclic-interval bounds ------------------------------------------

def _cyclic_orders(m: int):
    """Distinct cyclic orders of [m]: first element fixed, reflections
    deduplicated (interval families are invariant under both)."""
    if m == 1:
        yield (1,)
        return
    for rest in permutations(range(2, m + 1)):
        if m >= 3 and rest[0] > rest[-1]:
            continue
        yield (1,) + rest


def suite_cyclic(m_max=8) -> SuiteReport:
    rep = SuiteReport("cyclic", True)
    for m in range(2, m_max + 1):
        full = (1 << m) - 1
        for sigma in _cyclic_orders(m):
            for b in range(1, m):
                ib = [_interval_mask(sigma, i, b) for i in range(m)]
                for d in range(1, m - b + 1):
                    idd = [_interval_mask(sigma, i, d) for i in range(m)]
                    rows = []
                    for i in range(m):
                        row = 0
                        for j in range(m):
                            if ib[i] & idd[j]:
                                row |= 1 << j
                        rows.append(row)
                    compat = [0] * (1 << m)
                    compat[0] = full
                    for bmask in range(1, 1 << m):
                        low = bmask & -bmask
                        compat[bmask] = compat[bmask ^ low] & rows[low.bit_length() - 1]
                    for bmask in range(1, 1 << m):
                        pcb = bmask.bit_count()
                        pcd = compat[bmask].bit_count()
                        rep.checks += 1
                        if pcb + pcd > m:
                            rep.passed = False
                            rep.lines.append(
                                f"sum bound fails: m={m} sigma={sigma} "
                                f"b={b} d={d} B={bmask:b}")
                        if compat[bmask] and pcb + pcd > b + d:
                            rep.passed = False
                            rep.lines.append(
                                f"nonempty bound fails: m={m} sigma={sigma} "
                                f"b={b} d={d} B={bmask:b}")
    rep.lines.append(
        f"exhaustive over all cyclic orders (up to rotation/reflection), all "
        f"interval lengths b+d<=m<={m_max}, all cross-intersecting pairs "
        f"(via maximal partners)")
    return rep


def _interval_mask(sigma, i, length):
    m = len(sigma)
    out = 0
    for o in range(length):
        out |= 1 << (sigma[(i + o) % m] - 1)
    return out


# -- criterion 9: regime boundary evidence ----------------------------------------

def suite_boundary(node_limit=oracle.DEFAULT_NODE_LIMIT,
                   time_limit=60.0) -> SuiteReport:
    rep = SuiteReport("boundary", True)
    star = oracle.exact_m_star(oracle.SearchProblem(
        6, 2, 2, 4, oracle.MODE_M_STAR, node_limit, time_limit))
    free = oracle.exact_m(oracle.SearchProblem(
        6, 2, 2, 4, oracle.MODE_M, node_limit, time_limit))
    size_a = formulas.size_A(6, 4, 2, 2)
    conj = formulas.conjecture_rhs(6, 4, 2, 2)
    rep.checks = 3
    ok = (star.proven_optimal and free.proven_optimal
          and star.value == 9 and size_a == 8 and star.value > size_a
          and free.value == 10 and free.value == conj)
    rep.passed = ok
    rep.lines.append(
        f"exact shifted optimum at (6,4,2,2) = {star.value} > construction "
        f"size {size_a}: the wide-ground theorem needs its n restriction")
    rep.lines.append(
        f"free optimum at (6,4,2,2) = {free.value} = conjectured value "
        f"{conj}: consistent with the general conjecture via the sweep "
        f"identity")
    return rep


# -- oracle-vs-conjecture sweep (parametrized) -------------------------------------

def suite_conjecture(k=2, s=2, n_max=9,
                     node_limit=oracle.DEFAULT_NODE_LIMIT,
                     time_limit=300.0) -> SuiteReport:
    rep = SuiteReport("conjecture", True)
    t0 = time.monotonic()
    for n in range((s + 1) * k, n_max + 1):
        for q in range(k, (s + 1) * k):
            remaining = max(1e-3, time_limit - (time.monotonic() - t0))
            res = oracle.exact_m(oracle.SearchProblem(
                n, k, s, q, oracle.MODE_M, node_limit, remaining))
            expect = formulas.conjecture_value(n, q, k, s)
            rep.checks += 1
            if not res.proven_optimal:
                rep.passed = False
                rep.inconclusive = True
                rep.lines.append(f"cell n={n} q={q}: budget exhausted")
            elif res.value != expect:
                rep.passed = False
                rep.lines.append(
                    f"cell n={n} q={q}: oracle {res.value} != conjectured "
                    f"{expect}")
    rep.lines.append(
        f"oracle agrees with the conjectured value on {rep.checks} cells "
        f"(k={k}, s={s}, n<={n_max})")
    return rep


# -- oracle identity reports --------------------------------------------------------

def suite_identities(seed=0) -> SuiteReport:
    rep = SuiteReport("identities", True)

    for (n, q, k, s) in [(6, 4, 2, 2), (7, 4, 2, 2), (7, 5, 2, 2), (8, 5, 3, 2)]:
        r = oracle.verify_identity("eq-sweep", n=n, q=q, k=k, s=s)
        rep.checks += 1
        if not (r["proven"] and r["equal"]):
            rep.passed = False
            rep.lines.append(f"sweep identity fails at {(n, q, k, s)}: {r}")

    for (n, q, k, s) in [(6, 4, 2, 2), (7, 5, 2, 2), (8, 5, 2, 2)]:
        r = oracle.verify_identity("recursion", n=n, q=q, k=k, s=s)
        rep.checks += 1
        if r["proven"] and not r["lhs_ge_rhs"]:
            rep.passed = False
            rep.lines.append(f"recursion direction fails at {(n, q, k, s)}: {r}")
        rep.lines.append(
            f"recursion at {(n, q, k, s)}: lhs={r['lhs']} rhs={r['rhs']} "
            f"equal={r['equal']} witness_reducible={r['witness_reducible']}")

    r = oracle.verify_identity("trichotomy", n_max=9, k_max=3,
                               samples=1000, seed=seed)
    rep.checks += 1
    if not r["equal"]:
        rep.passed = False
        rep.lines.append(f"trichotomy violations: {r['violations'][:3]}")

    # compressing never loses free-mode optima
    rng = random.Random(seed)
    for _ in range(200):
        k = rng.randint(2, 3)
        n = rng.randint(k + 1, 9)
        fam = random_family(rng, n, k, max_edges=20)
        nu0, _ = matching_number(fam)
        om0, _ = clique_number(fam)
        closed = shift_closure(fam)
        nu1, _ = matching_number(closed)
        om1, _ = clique_number(closed)
        rep.checks += 1
        if len(closed) != len(fam) or nu1 > nu0 or om1 < om0:
            rep.passed = False
            rep.lines.append(
                f"closure broke invariants on {fam.vertex_sets()}")
    rep.lines.append("sweep identity, recursion direction, trichotomy "
                     "(1000 shifted samples), and closure soundness checked")
    return rep


SUITES = {
    "k2-exact": suite_k2_exact,
    "second-clique": suite_second_clique,
    "spot-regimes": suite_spot_regimes,
    "constructions": suite_constructions,
    "shifting": suite_shifting,
    "monotonicity": suite_monotonicity,
    "cross": suite_cross,
    "cyclic": suite_cyclic,
    "boundary": suite_boundary,
    "conjecture": suite_conjecture,
    "identities": suite_identities,
}
