"""Closed-form evaluators for the extremal bounds.

Every evaluator is exact integer (or exact rational, where a weight
enters) arithmetic; binomials follow the convention C(a, b) = 0 for
b < 0 or a < b, which makes the degenerate boundary terms vanish.

Regime tags name what a theorem does, and the exact theorems implemented:

  pair-graph-exact     complete answer for 2-uniform families (any n)
  clique-forced        top clique size q = sk+k-1, where the maximum is
                       the full clique on sk+k-1 vertices
  near-clique-exact    q = sk+k-2, complete answer for all n
  tight-ground-clique  large q with n barely above (s+1)k, where the
                       clique still wins
  wide-ground-exact    n >= 8*k^2*s, value is the layered construction
  wide-ground-star     n >= 8*k^2*s with small q, value is the s-star count
  conjectured          no proven theorem applies; the conjectured maximum
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple


def comb0(a: int, b: int) -> int:
    """C(a, b) with out-of-range arguments evaluating to 0."""
    if b < 0 or a < 0 or a < b:
        return 0
    return comb(a, b)


@dataclass(frozen=True)
class BoundResult:
    value: int
    regime: str
    hypotheses_met: bool
    note: str = ""


class CrossBound(NamedTuple):
    value: "int | Fraction"
    argmax_i: int
    hypotheses_met: bool = True
    note: str = ""


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def derive_pr(q: int, k: int, s: int) -> tuple[int, int]:
    """The unique (p, r) with sk - p(k-1) + 1 <= q <= sk - p(k-1) + k - 1
    and r = q - p - (s-p)k; defined for s+k-1 <= q <= sk+k-1."""
    _require(k >= 2, "k >= 2 required")
    _require(s >= 1, "s >= 1 required")
    _require(s + k - 1 <= q <= s * k + k - 1,
             f"q={q} outside [{s + k - 1}, {s * k + k - 1}]")
    num = s * k - q + 1
    p = -(-num // (k - 1)) if num > 0 else 0
    r = q - p - (s - p) * k
    assert 0 <= p <= s and 1 <= r <= k - 1
    return p, r


def size_A(n: int, q: int, k: int, s: int) -> int:
    """Edge count of the layered clique-plus-matching construction:
    C(n,k) - C(n-p,k) + C(q-p,k) + sum_{i=r+1}^{k-1} C(q-p-1,i-1) C(n-q,k-i)."""
    p, r = derive_pr(q, k, s)
    _require(n >= q, f"n={n} must be at least q={q}")
    total = comb0(n, k) - comb0(n - p, k) + comb0(q - p, k)
    for i in range(r + 1, k):
        total += comb0(q - p - 1, i - 1) * comb0(n - q, k - i)
    return total


def emc_bound(n: int, k: int, s: int) -> int:
    """Conjectured maximum size of a family with matching number <= s:
    max of the s-star count and the full clique on (s+1)k - 1 vertices."""
    _require(n >= (s + 1) * k, f"n={n} below (s+1)k={(s + 1) * k}")
    return max(comb0(n, k) - comb0(n - s, k), comb0((s + 1) * k - 1, k))


def hm_bound(n: int, k: int) -> int:
    """Maximum size of an intersecting family with empty common intersection:
    C(n-1,k-1) - C(n-k-1,k-1) + 1 for n > 2k."""
    _require(n > 2 * k, f"n={n} must exceed 2k={2 * k}")
    return comb0(n - 1, k - 1) - comb0(n - k - 1, k - 1) + 1


def m_star_closed(n: int, q: int, k: int, s: int) -> BoundResult:
    """Closed form for the shifted exact-(s, q) maximum.

    Proven when q = sk+k-1 (clique forced at any valid n) and on
    s+k <= q <= sk+k-2 with n >= 8*k^2*s; elsewhere the construction
    size is returned with hypotheses_met=False.
    """
    derive_pr(q, k, s)
    _require(n >= q, f"n={n} must be at least q={q}")
    if q == s * k + k - 1:
        return BoundResult(comb0(q, k), "clique-forced", True)
    if s + k <= q <= s * k + k - 2 and n >= 8 * k * k * s:
        return BoundResult(size_A(n, q, k, s), "wide-ground-exact", True)
    return BoundResult(size_A(n, q, k, s), "construction-size", False,
                       "outside proven regime")


def _pair_exact_value(n: int, q: int, s: int) -> int:
    # below q = s+1 the clique constraint is slack; the clamped value equals
    # the s-star count, the Erdos-Gallai maximum
    qq = max(q, s + 1)
    return max(comb0(2 * s + 1, 2), comb0(qq, 2) + (2 * s + 1 - qq) * (n - qq))


def applicable_regimes(n: int, q: int, k: int, s: int) -> list[BoundResult]:
    """Every proven theorem whose hypotheses hold at (n, q, k, s), most
    specific first. All returned values must agree (tested)."""
    out: list[BoundResult] = []
    if q >= (s + 1) * k:
        return out
    if k == 2 and s >= 2 and n >= 2 * s + 2:
        out.append(BoundResult(_pair_exact_value(n, q, s), "pair-graph-exact", True))
    if q == s * k + k - 1:
        out.append(BoundResult(comb0(q, k), "clique-forced", True))
    if q == s * k + k - 2 and q >= k:
        val = max(comb0(s * k + k - 1, k),
                  comb0(q, k) + comb0(q - 1, k - 2) * (n - q))
        out.append(BoundResult(val, "near-clique-exact", True))
    ell = (s + 1) * k - q
    if ell >= 1 and 3 * k * ell < s and 3 * k * (n - (s + 1) * k + ell) <= s:
        out.append(BoundResult(comb0(s * k + k - 1, k), "tight-ground-clique", True))
    if n >= 8 * k * k * s:
        if q >= s + k:
            out.append(BoundResult(size_A(n, q, k, s), "wide-ground-exact", True))
        else:
            out.append(BoundResult(comb0(n, k) - comb0(n - s, k),
                                   "wide-ground-star", True))
    return out


def conjecture_rhs(n: int, q: int, k: int, s: int) -> int:
    """Conjectured general maximum: max of the layered construction and the
    full clique on sk+k-1 vertices."""
    _require(n >= (s + 1) * k, f"n={n} below (s+1)k={(s + 1) * k}")
    derive_pr(q, k, s)
    return max(size_A(n, q, k, s), comb0(s * k + k - 1, k))


def conjecture_value(n: int, q: int, k: int, s: int) -> int:
    """conjecture_rhs extended below q = s+k-1, where the clique constraint
    is slack and the conjectured value is the matching-only maximum."""
    if q >= (s + 1) * k:
        return 0
    return conjecture_rhs(n, max(q, s + k - 1), k, s)


def m_closed(n: int, q: int, k: int, s: int) -> BoundResult:
    """Most specific proven value of the general maximum at (n, q, k, s);
    the conjectured value with hypotheses_met=False when nothing is proven.

    Returns value 0 (not an error) for q >= (s+1)k, where no family
    qualifies.
    """
    _require(k >= 1, "k >= 1 required")
    _require(s >= 1, "s >= 1 required")
    _require(q >= k, f"q={q} below k={k} is not exposed")
    _require(n >= (s + 1) * k, f"n={n} below (s+1)k={(s + 1) * k}")
    if q >= (s + 1) * k:
        return BoundResult(0, "void", True,
                           "clique on q vertices already has matching number above s")
    regimes = applicable_regimes(n, q, k, s)
    if regimes:
        return regimes[0]
    return BoundResult(conjecture_value(n, q, k, s), "conjectured", False,
                       "conjectured only")


def cross_bound(n: int, k: int, l: int, t: int, s: int,
                beta: "int | Fraction" = 1) -> CrossBound:
    """Weighted bound for a cross-intersecting pair (A, B) with A of bounded
    matching number and B t-intersecting:
    max_{t <= i <= s} C(n,k) - C(n-i,k) + beta * C(n-i, l-i), exact rationals.

    The arithmetic is always evaluated; the theorem's side conditions are
    reported through hypotheses_met (naming the first failing inequality)
    rather than raised, so the value stays inspectable outside the proven
    range.
    """
    _require(s >= t >= 0, f"need s >= t >= 0, got s={s}, t={t}")
    beta = Fraction(beta)
    _require(beta > 0, "beta must be positive")
    note = ""
    if n < k + l:
        note = f"hypothesis n >= k+l fails: {n} < {k + l}"
    elif n < (2 * s + 1) * k:
        note = f"hypothesis n >= (2s+1)k fails: {n} < {(2 * s + 1) * k}"
    elif n < (l - t + 1) * (t + 1):
        note = f"hypothesis n >= (l-t+1)(t+1) fails: {n} < {(l - t + 1) * (t + 1)}"
    best = None
    best_i = t
    for i in range(t, s + 1):
        term = comb0(n, k) - comb0(n - i, k) + beta * comb0(n - i, l - i)
        if best is None or term > best:
            best = term
            best_i = i
    assert best is not None
    if isinstance(best, Fraction) and best.denominator == 1:
        best = int(best)
    return CrossBound(best, best_i, not note, note)


def cross_direct_bound(n1: int, n2: int, k: int, l: int, lp: int, s: int) -> int:
    """Bound for cross-intersecting families in a two-part ground set, one
    intersecting on l first-part vertices, the other with bounded matching
    number on lp: max of the two displayed products."""
    _require(1 <= l < lp <= k - 1, f"need 1 <= l < l' <= k-1, got l={l}, l'={lp}")
    _require(n2 >= 4 * k * n1, f"hypothesis n2 >= 4k*n1 fails: {n2} < {4 * k * n1}")
    _require(n1 >= l + lp, f"hypothesis n1 >= l+l' fails: {n1} < {l + lp}")
    first = comb0(n1 - 1, l - 1) * comb0(n2, k - l) \
        + comb0(n1 - 1, lp - 1) * comb0(n2, k - lp)
    second = 2 * s * comb0(n1 - 1, lp - 1) * comb0(n2, k - lp)
    return max(first, second)


def recursion_rhs(n: int, q: int, k: int, s: int, m_star_smaller: int) -> int:
    """Right-hand side of the reduction step: C(n-1, k-1) plus the exact
    value of the one-smaller problem."""
    _require(n >= 1 and k >= 1, "n, k must be positive")
    return comb0(n - 1, k - 1) + m_star_smaller
