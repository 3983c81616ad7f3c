"""Ground truth for differential testing: sieve, enumerators, factorization.

Everything here is deliberately brute force and shares no arithmetic with
the closed-form counters it validates.  The sieve is bit-packed (one bit
per odd number); prime-rank queries go through a dense cumulative table
for small limits and per-block popcounts for large ones.
"""
from __future__ import annotations

import math
import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ResourceLimitError

MAGIC = b"ODSQ"
DEFAULT_MAX_LIMIT = 10**8

# dense cumulative prime ranks up to this limit; block ranks above
_DENSE_RANK_LIMIT = 2**24
_BLOCK_ODDS = 8192  # odds per rank block (1024 packed bytes)

_POPCOUNT = np.array([bin(i).count("1") for i in range(256)], dtype=np.uint32)


def _odd_index(u: int) -> int:
    return (u - 3) // 2


class SieveTable:
    """Primality over [2, limit], stored one bit per odd number.

    bit i of the packed map corresponds to the odd number 3 + 2*i
    (little-endian bit order within each byte).
    """

    def __init__(self, limit: int, packed: np.ndarray):
        self.limit = limit
        self.packed = packed
        self._n_odds = (limit - 1) // 2 if limit >= 3 else 0
        self._dense_rank: np.ndarray | None = None
        self._block_rank: np.ndarray | None = None

    @classmethod
    def build(cls, limit: int, max_limit: int = DEFAULT_MAX_LIMIT) -> "SieveTable":
        """Sieve of Eratosthenes over the odds up to limit."""
        if limit < 2:
            raise ValueError(f"limit must be >= 2, got {limit}")
        if limit > max_limit:
            raise ResourceLimitError(
                f"sieve limit {limit} exceeds cap {max_limit}"
            )
        n_odds = (limit - 1) // 2 if limit >= 3 else 0
        bits = np.ones(n_odds, dtype=bool)
        for p in range(3, math.isqrt(limit) + 1, 2):
            if bits[(p - 3) // 2]:
                first = (p * p - 3) // 2
                bits[first::p] = False
        packed = np.packbits(bits, bitorder="little")
        return cls(limit, packed)

    # -- queries ---------------------------------------------------------

    def is_prime(self, u: int) -> bool:
        if u < 2 or u > self.limit:
            raise ValueError(f"{u} outside sieve range [2, {self.limit}]")
        if u == 2:
            return True
        if u % 2 == 0:
            return False
        i = _odd_index(u)
        return bool((self.packed[i >> 3] >> (i & 7)) & 1)

    def _ranks(self):
        if self._n_odds == 0:
            return
        if self.limit <= _DENSE_RANK_LIMIT:
            if self._dense_rank is None:
                bits = np.unpackbits(
                    self.packed, count=self._n_odds, bitorder="little"
                )
                self._dense_rank = np.cumsum(bits, dtype=np.int64)
        elif self._block_rank is None:
            per_byte = _POPCOUNT[self.packed]
            nbytes = len(per_byte)
            blk = _BLOCK_ODDS // 8
            pad = (-nbytes) % blk
            if pad:
                per_byte = np.concatenate(
                    [per_byte, np.zeros(pad, dtype=np.uint32)]
                )
            sums = per_byte.reshape(-1, blk).sum(axis=1, dtype=np.int64)
            self._block_rank = np.concatenate([[0], np.cumsum(sums)])

    def _odd_prime_rank(self, i: int) -> int:
        """Number of odd primes among the odds 3 .. 3+2*i."""
        self._ranks()
        if self._dense_rank is not None:
            return int(self._dense_rank[i])
        blk = i // _BLOCK_ODDS
        count = int(self._block_rank[blk])
        b0 = blk * (_BLOCK_ODDS // 8)
        b1 = i >> 3
        if b1 > b0:
            count += int(_POPCOUNT[self.packed[b0:b1]].sum())
        tail = int(self.packed[b1]) & ((1 << ((i & 7) + 1)) - 1)
        return count + bin(tail).count("1")

    def prime_count(self, x: float | int) -> int:
        """Exact number of primes <= x."""
        if x < 2 or x > self.limit:
            raise ValueError(f"{x} outside sieve range [2, {self.limit}]")
        if x < 3:
            return 1
        u = int(x)
        if u % 2 == 0:
            u -= 1
        return 1 + self._odd_prime_rank(_odd_index(u))

    def odd_composite_count(self, u: int) -> int:
        """Number of composite odd numbers in [3, u]."""
        if u < 3 or u > self.limit:
            raise ValueError(f"{u} outside sieve range [3, {self.limit}]")
        if u % 2 == 0:
            u -= 1
        i = _odd_index(u)
        return (i + 1) - self._odd_prime_rank(i)

    def primes(self, upto: int | None = None) -> np.ndarray:
        """All primes <= upto (default: the sieve limit), ascending."""
        hi = self.limit if upto is None else min(upto, self.limit)
        if hi < 2:
            return np.empty(0, dtype=np.int64)
        n = (hi - 1) // 2
        bits = np.unpackbits(self.packed, count=n, bitorder="little")
        odds = 3 + 2 * np.flatnonzero(bits).astype(np.int64)
        return np.concatenate([[2], odds])

    # -- persistence -----------------------------------------------------

    def dump(self, path: str | Path) -> None:
        """Write magic 'ODSQ', u64 little-endian limit, raw bitmap."""
        with open(path, "wb") as fh:
            fh.write(MAGIC)
            fh.write(struct.pack("<Q", self.limit))
            fh.write(self.packed.tobytes())

    @classmethod
    def load(cls, path: str | Path) -> "SieveTable":
        with open(path, "rb") as fh:
            magic = fh.read(4)
            if magic != MAGIC:
                raise ValueError(f"bad sieve file magic: {magic!r}")
            (limit,) = struct.unpack("<Q", fh.read(8))
            packed = np.frombuffer(fh.read(), dtype=np.uint8).copy()
        n_odds = (limit - 1) // 2 if limit >= 3 else 0
        if len(packed) != (n_odds + 7) // 8:
            raise ValueError("sieve file bitmap length does not match limit")
        return cls(int(limit), packed)


@dataclass(frozen=True)
class CompositePattern:
    """Shape of a composite class: kl, kkl, kpow:<j>, or multi:<r>."""

    kind: str
    param: int | None = None

    def __post_init__(self):
        if self.kind in ("kl", "kkl"):
            if self.param is not None:
                raise ValueError(f"{self.kind} takes no parameter")
        elif self.kind == "kpow":
            if self.param is None or self.param < 1:
                raise ValueError("kpow needs an exponent >= 1")
        elif self.kind == "multi":
            if self.param is None or self.param < 2:
                raise ValueError("multi needs a factor count >= 2")
        else:
            raise ValueError(f"unknown pattern kind: {self.kind}")

    @classmethod
    def parse(cls, text: str) -> "CompositePattern":
        if ":" in text:
            kind, _, arg = text.partition(":")
            return cls(kind, int(arg))
        return cls(text)

    def __str__(self) -> str:
        if self.param is None:
            return self.kind
        return f"{self.kind}:{self.param}"


KL = CompositePattern("kl")
KKL = CompositePattern("kkl")


def kpow(j: int) -> CompositePattern:
    return CompositePattern("kpow", j)


def multi(r: int) -> CompositePattern:
    return CompositePattern("multi", r)


def _odd_primes_upto(limit: int) -> list[int]:
    if limit < 3:
        return []
    bits = bytearray([1]) * (limit + 1)
    for p in range(3, math.isqrt(limit) + 1, 2):
        if bits[p]:
            bits[p * p :: 2 * p] = b"\x00" * len(bits[p * p :: 2 * p])
    return [u for u in range(3, limit + 1, 2) if bits[u]]


def count_class(pattern: CompositePattern, n: int) -> int:
    """Exhaustively count pattern instances with value <= 3 + 2*n.

    Counts ordered tuples, matching each class definition: (k, l) with
    odd 3 <= k <= l for kl and kkl, odd bases for kpow, ascending tuples
    of distinct odd primes for multi.
    """
    if n < 0:
        raise ValueError(f"index must be >= 0, got {n}")
    u = 3 + 2 * n
    if pattern.kind == "kl":
        count = 0
        for k in range(3, math.isqrt(u) + 1, 2):
            l = k
            while k * l <= u:
                count += 1
                l += 2
        return count
    if pattern.kind == "kkl":
        count = 0
        k = 3
        while k * k * k <= u:
            l = k
            while k * k * l <= u:
                count += 1
                l += 2
            k += 2
        return count
    if pattern.kind == "kpow":
        j = pattern.param
        count = 0
        k = 3
        while k**j <= u:
            count += 1
            k += 2
        return count
    # multi: squarefree products of r distinct odd primes
    r = pattern.param
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


def count_class_upto(pattern: CompositePattern, n_max: int) -> np.ndarray:
    """count_class for every index 0..n_max in one pass.

    Enumerates each tuple once, buckets it at the index where its value
    enters the sequence, and accumulates.  Built for differential sweeps.
    """
    u_max = 3 + 2 * n_max
    hits: list[int] = []
    if pattern.kind == "kl":
        for k in range(3, math.isqrt(u_max) + 1, 2):
            l = k
            while k * l <= u_max:
                hits.append((k * l - 3) // 2)
                l += 2
    elif pattern.kind == "kkl":
        k = 3
        while k * k * k <= u_max:
            l = k
            while k * k * l <= u_max:
                hits.append((k * k * l - 3) // 2)
                l += 2
            k += 2
    elif pattern.kind == "kpow":
        j = pattern.param
        k = 3
        while k**j <= u_max:
            hits.append((k**j - 3) // 2)
            k += 2
    else:
        r = pattern.param
        primes = _odd_primes_upto(u_max // max(3 ** (r - 1), 1) + 1)

        def descend(start: int, remaining: int, product: int) -> None:
            if remaining == 0:
                hits.append((product - 3) // 2)
                return
            for i in range(start, len(primes)):
                p = primes[i]
                if product * p**remaining > u_max:
                    break
                descend(i + 1, remaining - 1, product * p)

        descend(0, r, 1)

    counts = np.zeros(n_max + 1, dtype=np.int64)
    if hits:
        counts = np.bincount(
            np.asarray(hits, dtype=np.int64), minlength=n_max + 1
        ).astype(np.int64)
    return np.cumsum(counts)


@dataclass(frozen=True)
class AscendingFactorization:
    """Prime factorization with strictly ascending primes."""

    factors: tuple[tuple[int, int], ...]

    @property
    def value(self) -> int:
        out = 1
        for p, m in self.factors:
            out *= p**m
        return out

    def __iter__(self):
        return iter(self.factors)


def factorize_ascending(u: int) -> AscendingFactorization:
    """Trial-division factorization, primes in ascending order."""
    if u < 2:
        raise ValueError(f"need an integer >= 2, got {u}")
    factors = []
    rest = u
    for d in (2, 3):
        m = 0
        while rest % d == 0:
            rest //= d
            m += 1
        if m:
            factors.append((d, m))
    d = 5
    while d * d <= rest:
        m = 0
        while rest % d == 0:
            rest //= d
            m += 1
        if m:
            factors.append((d, m))
        d += 2
    if rest > 1:
        factors.append((rest, 1))
    return AscendingFactorization(tuple(factors))
