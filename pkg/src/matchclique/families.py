"""k-uniform set families over [n] with bitmask edges.

Vertices are 1-based. An edge is stored as an n-bit integer with bit
(v - 1) set for vertex v. Integer order on masks coincides with
colexicographic order on k-sets, so a family keeps its edges as a
strictly ascending mask tuple; that fixes iteration and serialization
order throughout the package.

Degenerate conventions (pinned by tests): the empty family has matching
number 0, covering number 0, and clique number k - 1 (every (k-1)-set
vacuously qualifies, which keeps "clique number >= q" monotone in q).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, islice
from math import comb
from typing import Iterable, Iterator, NamedTuple, Sequence

from . import kernels

MAX_GROUND_SET = 64


class CapacityError(ValueError):
    """Ground set does not fit the 64-bit edge encoding."""


def edge_mask(vertices: Iterable[int], n: int) -> int:
    """Encode a vertex set as a bitmask, validating range and distinctness."""
    mask = 0
    for v in vertices:
        if not 1 <= v <= n:
            raise ValueError(f"vertex {v} outside ground set [1, {n}]")
        bit = 1 << (v - 1)
        if mask & bit:
            raise ValueError(f"repeated vertex {v}")
        mask |= bit
    return mask


def edge_vertices(mask: int) -> tuple[int, ...]:
    """Decode a bitmask into its ascending vertex tuple."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return tuple(out)


def precedes(a: Sequence[int], b: Sequence[int]) -> bool:
    """Componentwise order on equal-size edges: a_l <= b_l for every l."""
    ta, tb = tuple(sorted(a)), tuple(sorted(b))
    if len(ta) != len(tb):
        raise ValueError("edges must have equal size")
    return all(x <= y for x, y in zip(ta, tb))


@dataclass(frozen=True)
class Family:
    """A k-uniform family on ground set [n]; edge masks strictly ascending."""

    n: int
    k: int
    edge_masks: tuple[int, ...] = ()

    def __post_init__(self):
        if not isinstance(self.n, int) or not isinstance(self.k, int):
            raise ValueError("n and k must be integers")
        if self.n < 0 or self.n > MAX_GROUND_SET:
            raise CapacityError(
                f"ground set size {self.n} outside [0, {MAX_GROUND_SET}]")
        if self.k < 0:
            raise ValueError("k must be nonnegative")
        full = (1 << self.n) - 1
        prev = -1
        for m in self.edge_masks:
            if m & ~full:
                raise ValueError("edge leaves the ground set")
            if m.bit_count() != self.k:
                raise ValueError(f"edge {edge_vertices(m)} has size != {self.k}")
            if m <= prev:
                raise ValueError("edge masks must be strictly ascending")
            prev = m

    @staticmethod
    def from_masks(n: int, k: int, masks: Iterable[int]) -> "Family":
        return Family(n, k, tuple(sorted(set(masks))))

    @staticmethod
    def from_vertex_sets(n: int, k: int, sets: Iterable[Iterable[int]]) -> "Family":
        return Family.from_masks(n, k, (edge_mask(s, n) for s in sets))

    def __len__(self) -> int:
        return len(self.edge_masks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.edge_masks)

    def __contains__(self, mask: int) -> bool:
        return mask in set(self.edge_masks)

    def contains_set(self, vertices: Iterable[int]) -> bool:
        return edge_mask(vertices, self.n) in set(self.edge_masks)

    def vertex_sets(self) -> tuple[tuple[int, ...], ...]:
        """Edges as vertex tuples, colex order, vertices ascending."""
        return tuple(edge_vertices(m) for m in self.edge_masks)

    # -- serialization (the wire contract used by the CLI) ------------------

    def to_json_dict(self) -> dict:
        return {"n": self.n, "k": self.k,
                "edges": [list(edge_vertices(m)) for m in self.edge_masks]}

    @staticmethod
    def from_json_dict(obj) -> "Family":
        if not isinstance(obj, dict):
            raise ValueError("family JSON must be an object")
        for key in ("n", "k", "edges"):
            if key not in obj:
                raise ValueError(f"family JSON missing field {key!r}")
        n, k, edges = obj["n"], obj["k"], obj["edges"]
        if not isinstance(n, int) or not isinstance(k, int):
            raise ValueError("fields n and k must be integers")
        if not isinstance(edges, list):
            raise ValueError("field edges must be a list")
        masks = []
        for idx, e in enumerate(edges):
            if not isinstance(e, list) or not all(isinstance(v, int) for v in e):
                raise ValueError(f"edge #{idx} must be a list of integers")
            if len(e) != k:
                raise ValueError(f"edge #{idx} has size {len(e)}, expected {k}")
            masks.append(edge_mask(e, n))
        if len(set(masks)) != len(masks):
            raise ValueError("duplicate edges")
        return Family.from_masks(n, k, masks)

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict())

    @staticmethod
    def loads(text: str) -> "Family":
        return Family.from_json_dict(json.loads(text))

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(self.dumps())
            fh.write("\n")

    @staticmethod
    def load(path) -> "Family":
        with open(path, "r", encoding="utf-8") as fh:
            return Family.loads(fh.read())


class IntersectionReport(NamedTuple):
    intersecting: bool
    t_intersecting: "bool | None"
    cross_intersecting: "bool | None"


@dataclass(frozen=True)
class InvariantReport:
    """Matching, covering and clique numbers with certificates."""

    nu: int
    tau: int
    omega: int
    matching_witness: tuple[tuple[int, ...], ...]
    cover_witness: tuple[int, ...]
    clique_witness: tuple[int, ...]


# -- matching number ---------------------------------------------------------

def matching_number(fam: Family, *, assume_shifted: bool = False):
    """Exact matching number and a maximum pairwise-disjoint witness.

    assume_shifted enables the nested-pair certificate, valid for shifted
    2-uniform families only ({i, 2m+1-i} for i = 1..m); any other k falls
    back to the general branch and bound. No static certificate exists
    for k >= 3 (see the counterexample pinned in tests), so the flag never
    changes behaviour there.
    """
    if assume_shifted and fam.k == 2:
        return _matching_number_shifted_pairs(fam)
    nu, idx = kernels.max_matching(fam.edge_masks)
    return nu, tuple(edge_vertices(fam.edge_masks[i]) for i in idx)


def _matching_number_shifted_pairs(fam: Family):
    present = set(fam.edge_masks)
    m = 0
    witness = ()
    while 2 * (m + 1) <= fam.n:
        cert = tuple((i, 2 * (m + 1) + 1 - i) for i in range(1, m + 2))
        if all(edge_mask(e, fam.n) in present for e in cert):
            m += 1
            witness = cert
        else:
            break
    return m, witness


def has_matching_of_size(fam: Family, size: int) -> bool:
    """True iff the family contains `size` pairwise disjoint edges."""
    return kernels.has_disjoint(fam.edge_masks, len(fam.edge_masks), size)


# -- covering number ---------------------------------------------------------

def covering_number(fam: Family):
    """Exact minimum vertex cover (hitting set) with a witness.

    Branch and bound on the vertices of the first uncovered edge, seeded
    with a greedy max-degree cover. Empty family: 0 by convention.
    """
    masks = fam.edge_masks
    if not masks:
        return 0, ()
    if fam.k == 0:
        raise ValueError("the empty edge cannot be covered")

    # greedy seed
    cover = 0
    while True:
        uncovered = [m for m in masks if not m & cover]
        if not uncovered:
            break
        degree = {}
        for m in uncovered:
            for v in edge_vertices(m):
                degree[v] = degree.get(v, 0) + 1
        bestv = min(degree, key=lambda v: (-degree[v], v))
        cover |= 1 << (bestv - 1)
    best_size = cover.bit_count()
    best_mask = cover

    def first_uncovered(cmask):
        for m in masks:
            if not m & cmask:
                return m
        return 0

    def rec(cmask, count):
        nonlocal best_size, best_mask
        m = first_uncovered(cmask)
        if m == 0:
            if count < best_size:
                best_size = count
                best_mask = cmask
            return
        if count + 1 >= best_size:
            return
        for v in edge_vertices(m):
            rec(cmask | (1 << (v - 1)), count + 1)

    rec(0, 0)
    return best_size, edge_vertices(best_mask)


# -- clique number ------------------------------------------------------------

def clique_number(fam: Family):
    """Largest q such that every k-subset of some q-set is an edge.

    Maximum-clique branch and bound grown from edges: each clique is
    reached exactly once from the edge formed by its k smallest vertices,
    extending only by vertices above the current maximum. Empty family:
    k - 1 by convention.
    """
    k = fam.k
    if not fam.edge_masks:
        size = max(k - 1, 0)
        return k - 1, tuple(range(1, min(size, fam.n) + 1))
    if k == 0:
        # the empty edge is a subset of everything
        return fam.n, tuple(range(1, fam.n + 1))
    present = set(fam.edge_masks)
    n = fam.n
    best = k
    best_verts = edge_vertices(fam.edge_masks[0])

    def compatible_root(root_verts, v):
        bit = 1 << (v - 1)
        for sub in combinations(root_verts, k - 1):
            if edge_mask(sub, n) | bit not in present:
                return False
        return True

    def compatible_incr(q_verts, v, w):
        vw = (1 << (v - 1)) | (1 << (w - 1))
        if k == 1:
            return True
        for sub in combinations(q_verts, k - 2):
            if edge_mask(sub, n) | vw not in present:
                return False
        return True

    def extend(q_verts, cands):
        nonlocal best, best_verts
        if len(q_verts) > best:
            best = len(q_verts)
            best_verts = tuple(q_verts)
        for idx, v in enumerate(cands):
            if len(q_verts) + (len(cands) - idx) <= best:
                break
            new_cands = [w for w in cands[idx + 1:]
                         if compatible_incr(q_verts, v, w)]
            extend(q_verts + (v,), new_cands)

    for root in fam.edge_masks:
        rv = edge_vertices(root)
        top = rv[-1]
        cands = [v for v in range(top + 1, n + 1) if compatible_root(rv, v)]
        if k + len(cands) <= best:
            continue
        extend(rv, cands)
    return best, best_verts


def compute_invariants(fam: Family) -> InvariantReport:
    nu, mwit = matching_number(fam)
    tau, cwit = covering_number(fam)
    omega, qwit = clique_number(fam)
    return InvariantReport(nu, tau, omega, mwit, cwit, qwit)


# -- intersection predicates ---------------------------------------------------

def is_intersecting(fam: Family) -> bool:
    masks = fam.edge_masks
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if not masks[i] & masks[j]:
                return False
    return True


def is_t_intersecting(fam: Family, t: int) -> bool:
    if t < 0:
        raise ValueError("t must be nonnegative")
    if t == 0:
        return True
    masks = fam.edge_masks
    for i in range(len(masks)):
        for j in range(i + 1, len(masks)):
            if (masks[i] & masks[j]).bit_count() < t:
                return False
    return True


def are_cross_intersecting(fam: Family, other: Family) -> bool:
    if fam.n != other.n:
        raise ValueError("cross-intersection needs a common ground set")
    for a in fam.edge_masks:
        for b in other.edge_masks:
            if not a & b:
                return False
    return True


def intersection_predicates(fam: Family, other: "Family | None" = None,
                            t: "int | None" = None) -> IntersectionReport:
    """Combined predicate report; fields for omitted arguments are None."""
    return IntersectionReport(
        is_intersecting(fam),
        None if t is None else is_t_intersecting(fam, t),
        None if other is None else are_cross_intersecting(fam, other),
    )


# -- shifting -----------------------------------------------------------------

def shift_ij(fam: Family, i: int, j: int) -> Family:
    """One compression step: replace j by i in each edge unless i is present
    or the image already belongs to the family. Preserves the family size."""
    if not (1 <= i < j <= fam.n):
        raise ValueError(f"need 1 <= i < j <= n, got i={i}, j={j}, n={fam.n}")
    bi, bj = 1 << (i - 1), 1 << (j - 1)
    present = set(fam.edge_masks)
    out = []
    for m in fam.edge_masks:
        if m & bj and not m & bi:
            img = (m ^ bj) | bi
            out.append(m if img in present else img)
        else:
            out.append(m)
    return Family.from_masks(fam.n, fam.k, out)


def is_shifted(fam: Family) -> bool:
    """Single-step test: every one-vertex lowering of every edge is present."""
    present = set(fam.edge_masks)
    for m in fam.edge_masks:
        for j in edge_vertices(m):
            bj = 1 << (j - 1)
            for i in range(1, j):
                bi = 1 << (i - 1)
                if not m & bi and ((m ^ bj) | bi) not in present:
                    return False
    return True


def shift_closure(fam: Family) -> Family:
    """Repeat full (i, j) passes in lexicographic order until a fixpoint.

    The sweep order is part of the contract: the fixpoint family depends
    on it, though its size never does.
    """
    cur = fam
    while True:
        changed = False
        for i in range(1, cur.n):
            for j in range(i + 1, cur.n + 1):
                nxt = shift_ij(cur, i, j)
                if nxt != cur:
                    cur = nxt
                    changed = True
        if not changed:
            return cur


# -- shadows, lex segments, links ----------------------------------------------

def shadow(fam: Family, steps: int = 1) -> Family:
    """All (k - steps)-subsets contained in at least one edge."""
    if steps == 0:
        return fam
    if not 0 <= steps < fam.k:
        raise ValueError(f"steps must lie in [0, k), got {steps} with k={fam.k}")
    kk = fam.k - steps
    out = set()
    for m in fam.edge_masks:
        for sub in combinations(edge_vertices(m), kk):
            out.add(edge_mask(sub, fam.n))
    return Family.from_masks(fam.n, kk, out)


def lex_family(n: int, k: int, m: int) -> Family:
    """First m k-subsets of [n] in lexicographic order (the order where A
    comes first iff min(A diff B) lies in A)."""
    if not 0 <= m <= comb(n, k):
        raise ValueError(f"m={m} outside [0, C({n},{k})={comb(n, k)}]")
    return Family.from_vertex_sets(
        n, k, islice(combinations(range(1, n + 1), k), m))


def link(fam: Family, vertices: Iterable[int]) -> Family:
    """Edges containing all of `vertices`, with those vertices removed.
    Uniformity drops to k - |V|; an oversized V gives the empty family."""
    vmask = edge_mask(vertices, fam.n)
    kk = fam.k - vmask.bit_count()
    if kk < 0:
        return Family(fam.n, 0, ())
    return Family.from_masks(
        fam.n, kk, (m ^ vmask for m in fam.edge_masks if m & vmask == vmask))


def restrict_avoid(fam: Family, vertices: Iterable[int]) -> Family:
    """Edges disjoint from `vertices`; uniformity unchanged."""
    vmask = edge_mask(vertices, fam.n)
    return Family.from_masks(
        fam.n, fam.k, (m for m in fam.edge_masks if not m & vmask))


def link_within(fam: Family, vertices: Iterable[int],
                inside: Iterable[int]) -> Family:
    """Link of V restricted to remainders inside the given vertex set."""
    vmask = edge_mask(vertices, fam.n)
    qmask = edge_mask(inside, fam.n)
    kk = fam.k - vmask.bit_count()
    if kk < 0:
        return Family(fam.n, 0, ())
    return Family.from_masks(
        fam.n, kk,
        (m ^ vmask for m in fam.edge_masks
         if m & vmask == vmask and (m ^ vmask) & ~qmask == 0))
