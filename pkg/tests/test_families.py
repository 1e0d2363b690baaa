"""Core family operations: representation, invariants, shifting, shadows,
lex segments and links. Derived expectations are recomputed here with
independent brute-force oracles before being asserted.
"""

import json
import random
from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from matchclique import (CapacityError, Family, are_cross_intersecting,
                         clique_number, covering_number, edge_mask,
                         edge_vertices, intersection_predicates,
                         is_intersecting, is_shifted, is_t_intersecting,
                         lex_family, link, link_within, matching_number,
                         precedes, restrict_avoid, shadow, shift_closure,
                         shift_ij)
from matchclique.constructions import (clique_family, clique_matching_family,
                                       covering_gap_family, star_family,
                                       hilton_milner_family)


def fam(n, k, *edges):
    return Family.from_vertex_sets(n, k, edges)


def masks_of(n, k):
    return [edge_mask(c, n) for c in combinations(range(1, n + 1), k)]


def rand_family(rng, n, k, cap=None):
    univ = masks_of(n, k)
    cap = len(univ) if cap is None else min(cap, len(univ))
    return Family.from_masks(n, k, rng.sample(univ, rng.randint(0, cap)))


# -- representation ------------------------------------------------------------

def test_edge_mask_roundtrip():
    assert edge_mask((3, 1, 5), 6) == 0b10101
    assert edge_vertices(0b10101) == (1, 3, 5)
    with pytest.raises(ValueError):
        edge_mask((0, 1), 6)
    with pytest.raises(ValueError):
        edge_mask((7,), 6)
    with pytest.raises(ValueError):
        edge_mask((2, 2), 6)


def test_family_validation():
    with pytest.raises(ValueError):
        Family(4, 2, (0b11, 0b11))  # not strictly ascending
    with pytest.raises(ValueError):
        Family(4, 2, (0b111,))  # size 3 edge in a 2-uniform family
    with pytest.raises(ValueError):
        Family(3, 2, (0b1100,))  # vertex 4 outside [3]
    with pytest.raises(CapacityError):
        Family(65, 2, ())


def test_family_colex_order_is_mask_order():
    f = clique_family(5, 4, 2)
    assert f.vertex_sets() == ((1, 2), (1, 3), (2, 3), (1, 4), (2, 4), (3, 4))


def test_json_round_trip(tmp_path):
    f = star_family(6, 2, 2)
    path = tmp_path / "fam.json"
    f.save(path)
    assert Family.load(path) == f
    obj = json.loads(f.dumps())
    assert obj["edges"] == [list(e) for e in f.vertex_sets()]


@pytest.mark.parametrize("bad", [
    {"n": 4, "k": 2, "edges": [[1, 2], [1, 2]]},       # duplicate
    {"n": 4, "k": 2, "edges": [[1, 5]]},               # out of range
    {"n": 4, "k": 2, "edges": [[1, 2, 3]]},            # non-uniform
    {"n": 4, "k": 2, "edges": [[1, 1]]},               # repeated vertex
    {"n": 4, "k": 2},                                   # missing field
])
def test_json_rejects(bad):
    with pytest.raises(ValueError):
        Family.from_json_dict(bad)


# -- precedes -------------------------------------------------------------------

def test_precedes_examples():
    assert precedes((1, 3), (2, 3))
    assert not precedes((1, 4), (2, 3))
    assert precedes((2, 3, 4), (3, 4, 5))
    with pytest.raises(ValueError):
        precedes((1, 2), (1, 2, 3))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_precedes_matches_componentwise(data):
    k = data.draw(st.integers(1, 4))
    a = sorted(data.draw(st.sets(st.integers(1, 9), min_size=k, max_size=k)))
    b = sorted(data.draw(st.sets(st.integers(1, 9), min_size=k, max_size=k)))
    assert precedes(a, b) == all(x <= y for x, y in zip(a, b))


# -- matching number ---------------------------------------------------------------

def test_matching_examples():
    assert matching_number(fam(6, 2, (1, 2), (3, 4), (5, 6)))[0] == 3
    assert matching_number(star_family(6, 2, 2))[0] == 2
    assert matching_number(Family(6, 2, ()))[0] == 0


def test_matching_witness_is_valid():
    f = star_family(8, 3, 2)
    nu, wit = matching_number(f)
    assert len(wit) == nu
    used = set()
    for e in wit:
        assert f.contains_set(e)
        assert not used & set(e)
        used |= set(e)


def _brute_matching(f):
    best = 0
    masks = f.edge_masks
    for r in range(len(masks), 0, -1):
        if r <= best:
            break
        for sel in combinations(masks, r):
            u = 0
            ok = True
            for m in sel:
                if m & u:
                    ok = False
                    break
                u |= m
            if ok:
                return r
    return best


def test_matching_against_brute_force():
    rng = random.Random(3)
    for _ in range(120):
        k = rng.randint(1, 3)
        n = rng.randint(k, 8)
        f = rand_family(rng, n, k, cap=10)
        assert matching_number(f)[0] == _brute_matching(f)


def test_matching_shifted_fast_path_k2():
    rng = random.Random(11)
    for _ in range(200):
        n = rng.randint(2, 10)
        f = shift_closure(rand_family(rng, n, 2, cap=18))
        assert matching_number(f, assume_shifted=True)[0] == matching_number(f)[0]


def _down_closure(n, k, *tops):
    return Family.from_vertex_sets(
        n, k, (g for g in combinations(range(1, n + 1), k)
               if any(precedes(g, t) for t in tops)))


def test_no_static_matching_certificate_for_k3():
    # two shifted (down-closed) 3-uniform families with matching number 2
    # that share no disjoint pair at all, so no fixed certificate works for
    # k >= 3 and the fast path stays restricted to k = 2
    f1 = _down_closure(6, 3, (1, 2, 6), (3, 4, 5))
    f2 = _down_closure(6, 3, (1, 3, 5), (2, 4, 6))
    assert is_shifted(f1) and is_shifted(f2)
    assert matching_number(f1)[0] == 2 == matching_number(f2)[0]

    def disjoint_pairs(f):
        out = set()
        for a in f.edge_masks:
            for b in f.edge_masks:
                if a < b and not a & b:
                    out.add((a, b))
        return out

    assert not disjoint_pairs(f1) & disjoint_pairs(f2)


# -- covering number -----------------------------------------------------------------

def test_covering_examples():
    tau, wit = covering_number(star_family(6, 2, 2))
    assert (tau, wit) == (2, (1, 2))
    assert covering_number(fam(5, 3, (1, 2, 3)))[0] == 1
    assert covering_number(Family(5, 2, ()))[0] == 0


def _brute_covering(f):
    if not len(f):
        return 0
    for r in range(0, f.n + 1):
        for sel in combinations(range(1, f.n + 1), r):
            smask = edge_mask(sel, f.n)
            if all(m & smask for m in f.edge_masks):
                return r
    raise AssertionError


def test_covering_gap_family_needs_three_vertices():
    # exhaustive check over all vertex sets of size <= 3
    b = covering_gap_family(8, 2, 2)
    assert _brute_covering(b) == 3
    tau, wit = covering_number(b)
    assert tau == 3
    assert all(m & edge_mask(wit, 8) for m in b.edge_masks)


def test_covering_against_brute_force():
    rng = random.Random(5)
    for _ in range(80):
        k = rng.randint(1, 3)
        n = rng.randint(k, 7)
        f = rand_family(rng, n, k, cap=9)
        assert covering_number(f)[0] == _brute_covering(f)


def test_nu_tau_sandwich():
    rng = random.Random(9)
    for _ in range(100):
        k = rng.randint(1, 4)
        n = rng.randint(k, 9)
        f = rand_family(rng, n, k, cap=14)
        if not len(f):
            continue
        nu, _ = matching_number(f)
        tau, _ = covering_number(f)
        assert nu <= tau <= k * nu


# -- clique number ------------------------------------------------------------------

def test_clique_examples():
    assert clique_number(hilton_milner_family(7, 3))[0] == 4
    assert clique_number(star_family(6, 2, 2))[0] == 3
    assert clique_number(covering_gap_family(8, 2, 2))[0] == 4


def test_clique_empty_family_convention():
    omega, wit = clique_number(Family(6, 3, ()))
    assert omega == 2
    assert wit == (1, 2)
    assert clique_number(Family(6, 1, ()))[0] == 0


def _brute_clique(f):
    present = set(f.edge_masks)
    for r in range(f.n, f.k - 1, -1):
        for sel in combinations(range(1, f.n + 1), r):
            if all(edge_mask(c, f.n) in present for c in combinations(sel, f.k)):
                return r
    return f.k - 1


def test_clique_against_brute_force():
    rng = random.Random(7)
    for _ in range(80):
        k = rng.randint(1, 3)
        n = rng.randint(k, 7)
        f = rand_family(rng, n, k, cap=12)
        omega, wit = clique_number(f)
        assert omega == _brute_clique(f)
        if len(f):
            assert len(wit) == omega
            present = set(f.edge_masks)
            for c in combinations(wit, f.k):
                assert edge_mask(c, f.n) in present


def test_staircase_clique_criterion_on_shifted_families():
    # for a shifted family, clique number >= q iff {q-k+1, ..., q} is present
    rng = random.Random(13)
    for _ in range(100):
        k = rng.randint(2, 3)
        n = rng.randint(k + 1, 8)
        f = shift_closure(rand_family(rng, n, k, cap=14))
        omega, _ = clique_number(f)
        for q in range(k, n + 1):
            stair = tuple(range(q - k + 1, q + 1))
            assert (omega >= q) == f.contains_set(stair)


# -- intersection predicates -----------------------------------------------------------

def test_intersection_examples():
    triangle = fam(3, 2, (1, 2), (1, 3), (2, 3))
    rep = intersection_predicates(triangle, t=1)
    assert rep.intersecting and rep.t_intersecting
    assert not is_intersecting(fam(4, 2, (1, 2), (3, 4)))
    e = star_family(6, 2, 2)
    g = fam(6, 2, (1, 2))
    # exhaustive pair check: every member of E(6,2,2) meets {1,2}
    assert all(set(a) & {1, 2} for a in e.vertex_sets())
    assert are_cross_intersecting(e, g)
    with pytest.raises(ValueError):
        are_cross_intersecting(e, fam(5, 2, (1, 2)))


def test_t_intersecting():
    f = fam(6, 3, (1, 2, 3), (1, 2, 4), (1, 2, 5))
    assert is_t_intersecting(f, 2)
    assert not is_t_intersecting(f, 3)
    assert is_t_intersecting(f, 0)
    with pytest.raises(ValueError):
        is_t_intersecting(f, -1)


# -- shifting ---------------------------------------------------------------------------

def test_shift_ij_examples():
    assert shift_ij(fam(4, 2, (2, 3)), 1, 2) == fam(4, 2, (1, 3))
    assert shift_ij(fam(4, 2, (3, 4), (1, 4)), 1, 3) == fam(4, 2, (3, 4), (1, 4))
    e = star_family(6, 2, 2)
    assert shift_ij(e, 1, 2) == e
    with pytest.raises(ValueError):
        shift_ij(e, 2, 2)
    with pytest.raises(ValueError):
        shift_ij(e, 3, 2)


@settings(max_examples=50, deadline=None)
@given(st.data())
def test_shift_preserves_size_and_monotonicity(data):
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    k = rng.randint(1, 3)
    n = rng.randint(max(2, k), 8)
    f = rand_family(rng, n, k, cap=12)
    i = rng.randint(1, n - 1)
    j = rng.randint(i + 1, n)
    g = shift_ij(f, i, j)
    assert len(g) == len(f)
    assert matching_number(g)[0] <= matching_number(f)[0]
    assert clique_number(g)[0] >= clique_number(f)[0]


def test_shift_closure_examples():
    assert shift_closure(fam(6, 2, (5, 6))) == fam(6, 2, (1, 2))
    e = star_family(6, 2, 2)
    assert shift_closure(e) == e
    # pinned sweep order: lexicographic (i, j) passes to a fixpoint
    assert shift_closure(fam(4, 2, (1, 4), (2, 3))) == fam(4, 2, (1, 2), (1, 3))


def test_shift_closure_idempotent_and_shifted():
    rng = random.Random(17)
    for _ in range(60):
        k = rng.randint(1, 3)
        n = rng.randint(max(2, k), 8)
        f = rand_family(rng, n, k, cap=12)
        c = shift_closure(f)
        assert is_shifted(c)
        assert shift_closure(c) == c
        assert len(c) == len(f)


def test_is_shifted_examples():
    assert is_shifted(clique_family(6, 4, 2))
    assert not is_shifted(fam(4, 2, (2, 3)))
    assert is_shifted(clique_matching_family(8, 5, 3, 2))


def test_is_shifted_matches_downset_definition():
    # single-step test equals the full componentwise down-set condition
    rng = random.Random(19)
    for _ in range(60):
        k = rng.randint(1, 3)
        n = rng.randint(k, 6)
        f = rand_family(rng, n, k, cap=10)
        present = set(f.edge_masks)
        universe = masks_of(n, k)
        downset = all(
            (edge_mask(g, n) in present)
            for m in f.edge_masks
            for g in combinations(range(1, n + 1), k)
            if precedes(g, edge_vertices(m)))
        assert is_shifted(f) == downset
        assert universe  # silence unused warning on tiny cases


# -- shadow, lex, links -------------------------------------------------------------------

def test_shadow_examples():
    assert shadow(fam(5, 3, (1, 2, 3)), 1) == fam(5, 2, (1, 2), (1, 3), (2, 3))
    assert shadow(clique_family(6, 4, 2), 1) == fam(6, 1, (1,), (2,), (3,), (4,))
    a = clique_matching_family(8, 7, 3, 2)
    inside = restrict_avoid(a, (8,))
    assert shadow(inside, 1) == clique_family(8, 7, 2)
    f = fam(5, 3, (1, 2, 3))
    assert shadow(f, 0) == f
    with pytest.raises(ValueError):
        shadow(f, 3)


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_shadow_composition(data):
    rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
    n = rng.randint(4, 7)
    k = rng.randint(3, min(4, n))
    f = rand_family(rng, n, k, cap=8)
    a = rng.randint(0, k - 2)
    b = rng.randint(0, k - 1 - a)
    assert shadow(shadow(f, a), b) == shadow(f, a + b)


def test_lex_family_examples():
    assert lex_family(4, 2, 3) == fam(4, 2, (1, 2), (1, 3), (1, 4))
    assert lex_family(5, 2, 4) == fam(5, 2, (1, 2), (1, 3), (1, 4), (1, 5))
    assert lex_family(5, 3, 10) == clique_family(5, 5, 3)
    with pytest.raises(ValueError):
        lex_family(4, 2, 7)


def test_lex_family_picks_min_difference_smallest():
    # every selected set beats every omitted one in the min-of-difference
    # order (storage order inside the family itself is colex, as everywhere)
    chosen = set(lex_family(6, 3, 12).vertex_sets())
    for other in combinations(range(1, 7), 3):
        if other in chosen:
            continue
        for a in chosen:
            diff = set(a) ^ set(other)
            assert min(diff) in set(a)


def test_lex_segment_minimizes_shadow_exhaustive():
    for n, k in [(4, 2), (5, 2), (5, 3), (6, 2)]:
        univ = masks_of(n, k)
        for bits in range(1 << len(univ)):
            f = Family.from_masks(
                n, k, (m for i, m in enumerate(univ) if bits >> i & 1))
            if not len(f):
                continue
            assert len(shadow(f, 1)) >= len(shadow(lex_family(n, k, len(f)), 1))


def test_lex_segment_minimizes_shadow_sampled():
    rng = random.Random(23)
    for n, k in [(6, 3), (7, 2), (7, 3)]:
        for _ in range(250):
            f = rand_family(rng, n, k)
            if not len(f):
                continue
            assert len(shadow(f, 1)) >= len(shadow(lex_family(n, k, len(f)), 1))


def _max_cross_partner_sizes(n, k, l):
    """For each size a, the largest b such that some cross-intersecting pair
    (A, B) with |A| = a, |B| = b exists; by subset DP over A."""
    univ_k = list(combinations(range(1, n + 1), k))
    univ_l = list(combinations(range(1, n + 1), l))
    rows = []
    for a in univ_k:
        row = 0
        for j, b in enumerate(univ_l):
            if set(a) & set(b):
                row |= 1 << j
        rows.append(row)
    full = (1 << len(univ_l)) - 1
    compat = [full] * (1 << len(univ_k))
    best = {}
    for am in range(1, 1 << len(univ_k)):
        low = am & -am
        compat[am] = compat[am ^ low] & rows[low.bit_length() - 1]
        a = am.bit_count()
        b = compat[am].bit_count()
        if b > best.get(a, -1):
            best[a] = b
    return best


@pytest.mark.parametrize("n,k,l", [
    (4, 2, 2), (5, 2, 2), (5, 2, 3), (5, 3, 2),
    (6, 2, 2), (6, 3, 3), (6, 3, 2), (6, 2, 3), (6, 1, 3),
])
def test_lex_replacement_preserves_cross_intersection(n, k, l):
    # exhaustive over all realizable size pairs: if any cross-intersecting
    # pair of sizes (a, b) exists, the lex initial segments of those sizes
    # are cross-intersecting as well (checked at the maximal b; initial
    # segments nest, so smaller b follows)
    if n < k + l:
        pytest.skip("needs n >= k + l")
    best = _max_cross_partner_sizes(n, k, l)
    for a, bmax in best.items():
        lex_a = lex_family(n, k, a)
        lex_b = lex_family(n, l, bmax)
        assert are_cross_intersecting(lex_a, lex_b)


def test_link_examples():
    e = star_family(6, 2, 2)
    assert link(e, (1,)) == fam(6, 1, (2,), (3,), (4,), (5,), (6,))
    assert restrict_avoid(e, (1,)) == fam(6, 2, (2, 3), (2, 4), (2, 5), (2, 6))
    assert link_within(clique_family(5, 5, 3), (5,), range(1, 5)) == \
        clique_family(5, 4, 2)
    # oversized V gives the empty family, not an error
    assert len(link(e, (1, 2, 3))) == 0


def test_link_counts_split():
    rng = random.Random(29)
    for _ in range(40):
        n = rng.randint(3, 8)
        k = rng.randint(2, min(3, n))
        f = rand_family(rng, n, k, cap=14)
        v = rng.randint(1, n)
        assert len(link(f, (v,))) + len(restrict_avoid(f, (v,))) == len(f)
