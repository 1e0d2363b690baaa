"""Builders for the named extremal families.

Each builder enumerates its defining clauses literally over the k-subsets
of [n] and returns a concrete Family, so every structural claim about a
construction can be checked by direct computation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from . import formulas
from .families import Family

FAMILY_NAMES = ("E", "HM", "T3", "B", "L", "A", "CLIQUE", "LEX", "CYC")


@dataclass(frozen=True)
class ConstructionSpec:
    """A named construction with its integer parameters; CYC additionally
    carries the cyclic order (defaults to the identity)."""

    name: str
    params: dict = field(default_factory=dict)
    sigma: "tuple[int, ...] | None" = None


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def _filter_build(n: int, k: int, keep) -> Family:
    return Family.from_vertex_sets(
        n, k, (c for c in combinations(range(1, n + 1), k) if keep(c)))


def star_family(n: int, k: int, s: int) -> Family:
    """Every k-subset of [n] meeting [s]."""
    _require(1 <= k <= n, f"need 1 <= k <= n, got k={k}, n={n}")
    _require(1 <= s <= n, f"need 1 <= s <= n, got s={s}")
    return _filter_build(n, k, lambda c: c[0] <= s)


def hilton_milner_family(n: int, k: int) -> Family:
    """Edges through 1 that meet [2, k+1], plus [2, k+1] itself."""
    _require(k >= 1 and n >= k + 1, f"need n >= k+1, got n={n}, k={k}")
    block = tuple(range(2, k + 2))
    return _filter_build(
        n, k,
        lambda c: c == block or (c[0] == 1 and any(2 <= v <= k + 1 for v in c)))


def majority_triple_family(n: int) -> Family:
    """Triples with at least two vertices inside [3]."""
    _require(n >= 3, f"need n >= 3, got n={n}")
    return _filter_build(n, 3, lambda c: sum(1 for v in c if v <= 3) >= 2)


def covering_gap_family(n: int, k: int, s: int) -> Family:
    """The extremal family with matching number s but covering number s+1:
    edges meeting [s-1], the block [s+1, s+k], and edges through s inside
    [s, n] that meet the block."""
    _require(k >= 1 and s >= 1, "k and s must be positive")
    _require(n >= s + k, f"need n >= s+k, got n={n}, s={s}, k={k}")
    block = tuple(range(s + 1, s + k + 1))
    return _filter_build(
        n, k,
        lambda c: c[0] <= s - 1 or c == block
        or (c[0] == s and any(s + 1 <= v <= s + k for v in c)))


def clique_star_family(n: int, k: int, q: int) -> Family:
    """The clique on [q] plus edges through 1 with more than q-k vertices
    inside [q]; the intersecting extremal family at clique number q."""
    _require(k < q < 2 * k, f"need k < q < 2k, got k={k}, q={q}")
    _require(n >= q, f"need n >= q, got n={n}, q={q}")
    return _filter_build(
        n, k,
        lambda c: c[-1] <= q
        or (c[0] == 1 and sum(1 for v in c if v <= q) > q - k))


def clique_family(n: int, q: int, k: int) -> Family:
    """All k-subsets of [q]."""
    _require(0 <= k <= q <= n, f"need k <= q <= n, got k={k}, q={q}, n={n}")
    return _filter_build(n, k, lambda c: not c or c[-1] <= q)


def clique_matching_family(n: int, q: int, k: int, s: int) -> Family:
    """The layered construction with matching number s and clique number q.

    One pass evaluates the definition's three clauses per edge: the clique
    on [q]; edges meeting [p]; and edges through p+1, avoiding [p], with at
    least r vertices in [p+2, q]. With p = s (q = s+k-1) this degenerates
    to the s-star, and with p = 0 (q > sk) the middle clause alone remains.
    The enumerated size is checked against the closed formula; a mismatch
    is an internal error.
    """
    p, r = formulas.derive_pr(q, k, s)
    _require(n >= q, f"need n >= q, got n={n}, q={q}")

    def keep(c):
        if c[-1] <= q:  # inside the clique on [q]
            return True
        if c[0] <= p:  # meets [p]
            return True
        # through p+1, avoiding [p], with >= r vertices in [p+2, q]
        return c[0] == p + 1 and sum(1 for v in c if p + 2 <= v <= q) >= r

    fam = _filter_build(n, k, keep)
    expected = formulas.size_A(n, q, k, s)
    if len(fam) != expected:
        raise RuntimeError(
            f"internal error: clique_matching_family({n},{q},{k},{s}) "
            f"enumerated {len(fam)} edges, closed formula gives {expected}")
    return fam


def cyclic_intervals(sigma: Sequence[int], l: int,
                     n: "int | None" = None) -> Family:
    """The m cyclic intervals of length l along the cyclic order sigma."""
    m = len(sigma)
    _require(sorted(sigma) == list(range(1, m + 1)),
             "sigma must be a permutation of [m]")
    _require(1 <= l < m, f"need 1 <= l < m, got l={l}, m={m}")
    if n is None:
        n = m
    _require(n >= m, f"need n >= m, got n={n}, m={m}")
    edges = [tuple(sigma[(i + o) % m] for o in range(l)) for i in range(m)]
    fam = Family.from_vertex_sets(n, l, edges)
    assert len(fam) == m
    return fam


def build(spec: ConstructionSpec) -> Family:
    """Dispatch a ConstructionSpec to its builder, validating parameters."""
    name = spec.name
    p = dict(spec.params)
    _require(name in FAMILY_NAMES, f"unknown family name {name!r}")

    def take(*keys):
        missing = [kk for kk in keys if p.get(kk) is None]
        _require(not missing, f"{name} requires parameters {missing}")
        extra = [kk for kk in p if p[kk] is not None and kk not in keys]
        _require(not extra, f"{name} does not take parameters {extra}")
        return [p[kk] for kk in keys]

    if name == "E":
        n, k, s = take("n", "k", "s")
        return star_family(n, k, s)
    if name == "HM":
        n, k = take("n", "k")
        return hilton_milner_family(n, k)
    if name == "T3":
        if p.get("k") == 3:
            p.pop("k")
        (n,) = take("n")
        return majority_triple_family(n)
    if name == "B":
        n, k, s = take("n", "k", "s")
        return covering_gap_family(n, k, s)
    if name == "L":
        n, k, q = take("n", "k", "q")
        return clique_star_family(n, k, q)
    if name == "A":
        n, q, k, s = take("n", "q", "k", "s")
        return clique_matching_family(n, q, k, s)
    if name == "CLIQUE":
        n, q, k = take("n", "q", "k")
        return clique_family(n, q, k)
    if name == "LEX":
        from .families import lex_family
        n, k, m = take("n", "k", "m")
        return lex_family(n, k, m)
    # CYC
    n_ground = p.pop("n", None)
    if spec.sigma is not None:
        sigma = tuple(spec.sigma)
        if p.get("m") is not None:
            _require(p["m"] == len(sigma), "m disagrees with len(sigma)")
        p.pop("m", None)
        (l,) = take("l")
    else:
        m, l = take("m", "l")
        sigma = tuple(range(1, m + 1))
    return cyclic_intervals(sigma, l, n=n_ground)


def build_named(name: str, sigma: "Iterable[int] | None" = None,
                **params) -> Family:
    return build(ConstructionSpec(name, params,
                                  None if sigma is None else tuple(sigma)))
