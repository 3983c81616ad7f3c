"""Partition-based prime generation by trial division over the odd sequence.

Primes are discovered in partitions anchored by a pair of consecutive
primes (a, b).  Within a partition the index cursor steps by a, so the
candidates element/a sweep every odd number from just past the previous
partition's last discovery up to (but excluding) b*b; each candidate is
kept unless one of the accumulated moduli divides it.  At rollover b
joins the moduli, the anchors advance one prime, and the next partition
starts where the last one left off.

The exclusive loop guard (`index < endpoint - a`) is deliberate: it
stops one step short of the index of a*b*b, whose candidate b*b would
otherwise be accepted because b only enters the moduli at rollover.
Candidates cover every odd in (last_element, b*b), so nothing is
skipped; the suite checks completeness per partition against the sieve.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import ResourceLimitError
from .sequences import U64_MAX

DEFAULT_MAX_COUNT = 1_000_000

GUARDS = ("strict", "inclusive")


@dataclass(frozen=True)
class GeneratorState:
    """Snapshot between partitions.

    primes is strictly increasing; moduli after k completed partitions
    are the first k + 2 odd primes; prime_a < prime_b are the anchors
    for the next partition.  The initial prime_b = 7 is a bootstrap: it
    is discovered as the very first candidate (35 / 5).
    """

    primes: tuple[int, ...]
    moduli: tuple[int, ...]
    prime_a: int
    prime_b: int
    index: int
    partition: int
    last_element: int


def initial_state() -> GeneratorState:
    return GeneratorState(
        primes=(3, 5),
        moduli=(3, 5),
        prime_a=5,
        prime_b=7,
        index=(5 * 5 - 3) // 2,
        partition=1,
        last_element=1,
    )


def _advance(
    primes: list[int],
    moduli: list[int],
    a: int,
    b: int,
    index: int,
    partition: int,
    last_element: int,
    inclusive: bool,
) -> tuple[int, int, int, int, int]:
    """Run one partition plus rollover; mutates primes and moduli."""
    if a * b * b > U64_MAX:
        raise OverflowError("partition endpoint exceeds 64-bit range")
    if partition > 1:
        index = (last_element * a - 3) // 2
    endpoint = (a * b * b - 3) // 2

    if inclusive:
        # inclusive guard also reaches the boundary candidate b*b, which
        # must be skipped explicitly since b joins the moduli only later
        while index < endpoint:
            index += a
            candidate = (3 + 2 * index) // a
            if candidate == b * b:
                continue
            for m in moduli:
                if candidate % m == 0:
                    break
            else:
                primes.append(candidate)
    else:
        while index < endpoint - a:
            index += a
            candidate = (3 + 2 * index) // a
            for m in moduli:
                if candidate % m == 0:
                    break
            else:
                primes.append(candidate)

    moduli.append(b)
    a, b = b, primes[primes.index(b) + 1]
    return a, b, index, partition + 1, primes[-1]


def step_partition(state: GeneratorState, guard: str = "strict") -> GeneratorState:
    """Process one full partition and roll the anchors forward."""
    if guard not in GUARDS:
        raise ValueError(f"guard must be one of {GUARDS}, got {guard!r}")
    primes = list(state.primes)
    moduli = list(state.moduli)
    a, b, index, partition, last = _advance(
        primes,
        moduli,
        state.prime_a,
        state.prime_b,
        state.index,
        state.partition,
        state.last_element,
        inclusive=guard == "inclusive",
    )
    return GeneratorState(
        tuple(primes), tuple(moduli), a, b, index, partition, last
    )


def first_n_primes(
    count: int,
    include_two: bool = True,
    guard: str = "strict",
    max_count: int = DEFAULT_MAX_COUNT,
) -> list[int]:
    """The first `count` primes, starting at 2 (or 3 without include_two).

    Runs whole partitions until enough primes accumulate, then truncates.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if count > max_count:
        raise ResourceLimitError(f"count {count} exceeds cap {max_count}")
    if guard not in GUARDS:
        raise ValueError(f"guard must be one of {GUARDS}, got {guard!r}")

    needed = count - 1 if include_two else count
    state = initial_state()
    primes = list(state.primes)
    moduli = list(state.moduli)
    a, b = state.prime_a, state.prime_b
    index, partition, last = state.index, state.partition, state.last_element
    while len(primes) < needed:
        a, b, index, partition, last = _advance(
            primes, moduli, a, b, index, partition, last,
            inclusive=guard == "inclusive",
        )
    head = primes[:needed]
    return [2] + head if include_two else head
