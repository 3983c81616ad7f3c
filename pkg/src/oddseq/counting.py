"""Composite-class counters and the prime-counting assembly.

With M_n odd numbers in [3, U_n] and W_n of them composite,

    pi(x) = M_n - W_n + 1          U_n = largest odd <= x

since 2 is the only prime outside the odd sequence.  W_n comes either
from the sieve oracle (exact) or from an alternating combination of
closed-form class counts (the `formula` strategy).  The formula route
undercounts once products of three distinct primes appear (105 enters
at index 51) and its residual is surfaced by the `verify` command, never
hidden: class counts overlap and the combination does not fully resolve
the double counting.

Class counters follow the ascending-pair convention: a pair (k, l) is
counted when both are odd, l >= k, and the product fits.  That makes
9*5 a (3, 15) pair rather than a square pair, so permutations never
double count.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .oracle import SieveTable
from .sequences import element_at, floor_element, index_of


class Strategy(str, Enum):
    """How assemble_w / pi_of obtain the composite count."""

    ORACLE = "oracle"
    FORMULA = "formula"


def square_base_bound(n: int) -> int:
    """Largest odd s >= 3 whose square still fits below 3 + 2*n."""
    if n < 3:
        raise ValueError(f"no odd square <= {3 + 2 * n}; need index >= 3")
    s = math.isqrt(element_at(n))
    return s if s % 2 else s - 1


def nth_root_floor(value: int, j: int) -> int:
    """Exact floor(value ** (1/j)) by binary search on integers.

    Floating-point roots misround at perfect-power boundaries, which is
    precisely where the power counters need exactness.
    """
    if value < 0 or j < 1:
        raise ValueError(f"need value >= 0 and j >= 1, got {value}, {j}")
    if j == 1 or value < 2:
        return value
    lo, hi = 1, 1 << (value.bit_length() // j + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**j <= value:
            lo = mid
        else:
            hi = mid - 1
    return lo


def count_kl(n: int) -> int:
    """Pairs (k, l), odd l >= k >= 3, with k*l <= 3 + 2*n.

    Counts with multiplicity: 45 contributes as (3, 15) and (5, 9).
    """
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    u = element_at(n)
    total = 0
    for k in range(3, math.isqrt(u) + 1, 2):
        total += (u - k * k) // (2 * k) + 1
    return total


def count_kkl(n: int) -> int:
    """Pairs (k, l), odd l >= k >= 3, with k*k*l <= 3 + 2*n."""
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    u = element_at(n)
    total = 0
    k = 3
    while k * k * k <= u:
        total += (u - k**3) // (2 * k * k) + 1
        k += 2
    return total


def count_kkl_classic(n: int) -> int:
    """The classic square-pair form, kept for comparison.

    Its per-k term lets the cofactor range over every element l >= 3
    instead of l >= k, so it drifts above count_kkl once 75 = 5*5*3
    enters at index 36.  `verify` reports the divergence.
    """
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    u = element_at(n)
    total = 0
    for k in range(3, math.isqrt(u) + 1, 2):
        total += (u - k * k) // (2 * k * k)
    return total


def count_kpow(j: int, n: int) -> int:
    """Odd bases k >= 3 with k**j <= 3 + 2*n."""
    if j < 1:
        raise ValueError(f"exponent must be >= 1, got {j}")
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    root = nth_root_floor(element_at(n), j)
    return (root - 3) // 2 + 1 if root >= 3 else 0


# -- formula-strategy helper terms ---------------------------------------


def _odd_primes_upto(limit: int) -> list[int]:
    if limit < 3:
        return []
    bits = bytearray([1]) * (limit + 1)
    for p in range(3, math.isqrt(limit) + 1, 2):
        if bits[p]:
            step = 2 * p
            bits[p * p :: step] = b"\x00" * len(bits[p * p :: step])
    return [u for u in range(3, limit + 1, 2) if bits[u]]


def _count_power_pairs(j: int, u: int) -> int:
    """Pairs (k, l), odd l >= k, with k**j * l <= u."""
    total = 0
    k = 3
    while k ** (j + 1) <= u:
        total += (u - k ** (j + 1)) // (2 * k**j) + 1
        k += 2
    return total


def _count_two_prime_cofactor(u: int) -> int:
    """Triples (k1, k2, l): odd primes k1 < k2, odd l >= k2, product <= u."""
    total = 0
    bound = math.isqrt(u // 3) + 1
    primes = _odd_primes_upto(bound)
    for i, k1 in enumerate(primes):
        if k1 * (k1 + 2) ** 2 > u:
            break
        for k2 in primes[i + 1 :]:
            if k1 * k2 * k2 > u:
                break
            total += (u // (k1 * k2) - k2) // 2 + 1
    return total


def _count_distinct_prime_products(r: int, u: int) -> int:
    """Squarefree products of r distinct odd primes <= u."""
    primes = _odd_primes_upto(u // max(3 ** (r - 1), 1) + 1)

    def descend(start: int, remaining: int, product: int) -> int:
        if remaining == 0:
            return 1
        total = 0
        for i in range(start, len(primes)):
            p = primes[i]
            if product * p**remaining > u:
                break
            total += descend(i + 1, remaining - 1, product * p)
        return total

    return descend(0, r, 1)


def _w_formula_terms(n: int) -> tuple[int, dict[str, int]]:
    """The alternating class combination and its per-term breakdown.

    Term mapping: the pair count, then for each power j >= 2 a
    subtracted k**j-pair count and an added (j+1)-power count, then the
    two-prime-cofactor triples, then (r - 1) times each squarefree
    r-prime product count.  Overlap between classes is why the total is
    approximate; the exact route is Strategy.ORACLE.
    """
    u = element_at(n)
    terms: dict[str, int] = {}
    total = terms["kl"] = count_kl(n)

    j = 2
    while 3 ** (j + 1) <= u:
        pairs = count_kkl(n) if j == 2 else _count_power_pairs(j, u)
        terms["kkl" if j == 2 else f"kjl:{j}"] = pairs
        total -= pairs
        powers = count_kpow(j + 1, n)
        terms[f"kpow:{j + 1}"] = powers
        total += powers
        j += 1

    two_prime = _count_two_prime_cofactor(u)
    terms["two_prime_l"] = two_prime
    total -= two_prime

    r = 3
    small_primes = _odd_primes_upto(64)
    min_r_product = 3 * 5 * 7
    while min_r_product <= u:
        count = _count_distinct_prime_products(r, u)
        terms[f"multi:{r}"] = count
        total -= (r - 1) * count
        r += 1
        if r - 1 >= len(small_primes):
            break
        min_r_product *= small_primes[r - 1]
    return total, terms


def assemble_w(
    n: int, strategy: Strategy = Strategy.ORACLE, table: SieveTable | None = None
) -> int:
    """Number of distinct composites among the odds 3 .. 3 + 2*n.

    Strategy.ORACLE counts nonprime odds off the sieve bitmap (exact);
    Strategy.FORMULA evaluates the closed-form class combination, whose
    deviation is reported by `verify` rather than patched over.
    """
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    strategy = Strategy(strategy)
    if strategy is Strategy.ORACLE:
        u = element_at(n)
        if table is None or table.limit < u:
            table = SieveTable.build(max(u, 3))
        return table.odd_composite_count(u)
    total, _ = _w_formula_terms(n)
    return total


@dataclass(frozen=True)
class PiBreakdown:
    """pi(x) with the quantities it was assembled from.

    Satisfies pi = m_n - w_n + m_corr; m_corr is always 1, standing for
    the prime 2 which the odd sequence omits.  n is None below 3, where
    the sequence is empty and pi counts only the prime 2.
    """

    x: float | int
    strategy: str
    n: int | None
    m_n: int
    w_n: int
    m_corr: int
    pi: int
    class_counts: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.pi != self.m_n - self.w_n + self.m_corr:
            raise ValueError("breakdown arithmetic does not balance")

    def to_dict(self) -> dict:
        return {
            "x": self.x,
            "strategy": self.strategy,
            "n": self.n,
            "m_n": self.m_n,
            "w_n": self.w_n,
            "m": self.m_corr,
            "pi": self.pi,
            "class_counts": dict(self.class_counts),
        }


def pi_of(
    x: float | int,
    strategy: Strategy = Strategy.ORACLE,
    table: SieveTable | None = None,
) -> PiBreakdown:
    """Count primes <= x through the odd-sequence decomposition.

    Exact under Strategy.ORACLE.  A prebuilt SieveTable covering x makes
    repeated calls O(1) each.
    """
    if x < 2:
        raise ValueError(f"pi is defined for x >= 2, got {x}")
    strategy = Strategy(strategy)
    if x < 3:
        return PiBreakdown(x, strategy.value, None, 0, 0, 1, 1)

    n = index_of(floor_element(x))
    m_n = n + 1
    if strategy is Strategy.ORACLE:
        w_n = assemble_w(n, Strategy.ORACLE, table)
        counts: dict[str, int] = {}
    else:
        w_n, counts = _w_formula_terms(n)
    return PiBreakdown(
        x, strategy.value, n, m_n, w_n, 1, m_n - w_n + 1, counts
    )
