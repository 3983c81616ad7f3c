"""The main sequence of odd numbers 3, 5, 7, ... and its wheel subsequences.

Every prime except 2 lives in this sequence, so prime counting reduces to
counting its composite elements.  Elements and indices convert via

    element_at(n) = 3 + 2*n        index_of(u) = (u - 3) // 2

A wheel is the subsequence of odds coprime to a fixed set of odd primes;
it repeats with period 2 * product(divisors) and still contains every
prime above the largest divisor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

U64_MAX = 2**64 - 1

FIRST_ELEMENT = 3


def element_at(n: int) -> int:
    """Return the n-th odd number of the sequence, 3 + 2*n."""
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    u = 3 + 2 * n
    if u > U64_MAX:
        raise OverflowError(f"element at index {n} exceeds 64-bit range")
    return u


def index_of(u: int) -> int:
    """Return the index of an element: the inverse of element_at."""
    if u < 3 or u % 2 == 0:
        raise ValueError(f"not a sequence element (odd, >= 3): {u}")
    return (u - 3) // 2


def floor_element(x: float | int) -> int:
    """Largest sequence element (odd number >= 3) that is <= x."""
    if x < 3:
        raise ValueError(f"no sequence element <= {x}")
    m = x if isinstance(x, int) else math.floor(x)
    return m if m % 2 else m - 1


def count_elements(x: float | int) -> int:
    """Number of sequence elements <= x, i.e. odd numbers in [3, x]."""
    return index_of(floor_element(x)) + 1


def _is_odd_prime(p: int) -> bool:
    if p < 3 or p % 2 == 0:
        return False
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


@dataclass(frozen=True)
class WheelSpec:
    """A wheel: the odds coprime to `divisors`, periodic mod `period`.

    offsets are the residues the stream occupies within one period.
    seeds are the conventional starting values: for each residue class,
    the smallest prime above max(divisors).  For a single divisor 5 the
    seed list (7, 11, 13, 19) skips the composite 9, so seeds are not
    always the first stream elements; the stream itself is the plain
    coprime filter in increasing order.
    """

    divisors: tuple[int, ...]
    period: int
    offsets: tuple[int, ...]
    seeds: tuple[int, ...]


def build_wheel(divisors) -> WheelSpec:
    """Build the wheel for a set of distinct odd primes.

    Raises ValueError for an empty set, a repeated divisor, or any
    divisor that is not an odd prime.
    """
    divs = tuple(sorted(divisors))
    if not divs:
        raise ValueError("divisor set must not be empty")
    if len(set(divs)) != len(divs):
        raise ValueError(f"repeated divisor in {divs}")
    for d in divs:
        if not _is_odd_prime(d):
            raise ValueError(f"divisor must be an odd prime, got {d}")

    period = 2 * math.prod(divs)
    offsets = tuple(
        r for r in range(1, period, 2) if all(r % d for d in divs)
    )

    top = max(divs)
    seeds = []
    for r in offsets:
        u = r
        while u <= top or not _is_odd_prime(u):
            u += period
        seeds.append(u)
    return WheelSpec(divs, period, offsets, tuple(sorted(seeds)))


def wheel_elements(spec: WheelSpec, limit: int) -> list[int]:
    """All wheel elements in [min(seeds), limit], strictly increasing.

    Returns an empty list when limit falls below the first seed.
    """
    start = min(spec.seeds)
    out = []
    base = (start // spec.period) * spec.period
    while base <= limit:
        for r in spec.offsets:
            u = base + r
            if u > limit:
                break
            if u >= start:
                out.append(u)
        base += spec.period
    return out
