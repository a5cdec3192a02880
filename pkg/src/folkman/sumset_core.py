"""Finite-sum sets and the structural objects built from them.

The central object is S(A), the set of all nonempty-subset sums of a set A
of distinct positive integers.  On top of it this module provides
sum-distinctness, extraction of two disjoint equal-sum subsets when sums
collide, dyadic decompositions m = 2^j * t, least-element representatives of
the geometric progressions {m, 2m, 4m, ...} hit by a sum set, and the
disjoint family of prime-scaled sets {p, 2p, ..., kp}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Tuple

from .errors import RejectedInput

# All sum arithmetic is kept inside 64-bit range; desk-scale inputs never
# come close, and the dense bitmap representation would be unusable anyway.
MAX_TOTAL = 2**63 - 1

KSet = Tuple[int, ...]


def as_kset(elements: Iterable[int]) -> KSet:
    """Validate and normalize a collection of elements into a KSet tuple.

    Elements must be distinct positive integers; the result is sorted
    ascending.  Rejects totals beyond 64-bit range.
    """
    a = tuple(sorted(elements))
    if not a:
        raise RejectedInput("a KSet must have at least one element")
    if any(not isinstance(x, int) or isinstance(x, bool) for x in a):
        raise RejectedInput("KSet elements must be integers")
    if a[0] < 1:
        raise RejectedInput("KSet elements must be positive")
    for prev, cur in zip(a, a[1:]):
        if prev == cur:
            raise RejectedInput(f"duplicate element {cur}")
    if sum(a) > MAX_TOTAL:
        raise RejectedInput("element sum exceeds 64-bit range")
    return a


@dataclass(frozen=True)
class SumSet:
    """S(A) as a dense bitmap over [1, total]: bit i is set iff i is a sum."""

    bits: int
    total: int  # sum of the generating set; also the largest member
    count: int  # number of members

    def __contains__(self, x: int) -> bool:
        return 0 < x <= self.total and (self.bits >> x) & 1 == 1

    def __len__(self) -> int:
        return self.count

    def members(self) -> Iterator[int]:
        """Yield members in ascending order."""
        bits = self.bits
        while bits:
            low = bits & -bits
            yield low.bit_length() - 1
            bits ^= low

    def to_set(self) -> set:
        return set(self.members())


def finite_sums(a: Iterable[int]) -> SumSet:
    """Compute S(A), the set of sums of all nonempty subsets of A.

    Incremental bitmap DP: after processing x, bits holds every sum
    reachable with the elements seen so far (bits |= bits << x, plus x
    itself).  Cost O(k * sum(A) / wordsize).
    """
    ks = as_kset(a)
    bits = 0
    for x in ks:
        bits |= (bits << x) | (1 << x)
    return SumSet(bits=bits, total=sum(ks), count=bits.bit_count())


def is_sum_distinct(a: Iterable[int]) -> bool:
    """True iff all 2^k - 1 nonempty subsets of A have distinct sums."""
    ks = as_kset(a)
    return finite_sums(ks).count == (1 << len(ks)) - 1


@dataclass(frozen=True)
class DisjointPair:
    """Two nonempty disjoint subsets with equal element-sums."""

    first: KSet
    second: KSet

    def sum_value(self) -> int:
        return sum(self.first)


def equal_sum_disjoint_pair(a: Iterable[int]) -> Optional[DisjointPair]:
    """Find two disjoint nonempty subsets of A with the same sum, or None.

    Returns None exactly when A is sum-distinct.  The returned pair is
    canonical: the collision sum is minimal, and among the subsets attaining
    it (they are pairwise disjoint, see below) the two with the smallest
    bitmasks are chosen, later-enumerated one first.
    """
    ks = as_kset(a)
    k = len(ks)
    by_sum: dict = {}
    for mask in range(1, 1 << k):
        s = 0
        m = mask
        while m:
            low = m & -m
            s += ks[low.bit_length() - 1]
            m ^= low
        by_sum.setdefault(s, []).append(mask)
    best = None
    for s, masks in by_sum.items():
        if len(masks) > 1 and (best is None or s < best):
            best = s
    if best is None:
        return None
    # Subsets sharing the minimal collision sum are pairwise disjoint: a
    # common part could be stripped from both, leaving a smaller collision.
    m1, m2 = sorted(by_sum[best])[:2]
    pick = lambda m: tuple(ks[i] for i in range(k) if (m >> i) & 1)
    return DisjointPair(first=pick(m2), second=pick(m1))


@dataclass(frozen=True)
class DyadicDecomposition:
    """m = 2^exponent * odd_part with odd_part odd."""

    odd_part: int
    exponent: int

    def value(self) -> int:
        return self.odd_part << self.exponent


def dyadic(m: int) -> DyadicDecomposition:
    """Split m >= 1 into its odd part and power-of-two exponent."""
    if m < 1:
        raise RejectedInput("dyadic decomposition needs m >= 1")
    j = (m & -m).bit_length() - 1
    return DyadicDecomposition(odd_part=m >> j, exponent=j)


def representative_set(s: SumSet) -> set:
    """Least element of S(A) in each geometric progression {m, 2m, 4m, ...}.

    One representative per odd part occurring in s; progressions that miss s
    are absent.  The size equals the number of distinct odd parts.
    """
    least: dict = {}
    for x in s.members():  # ascending, so first hit per odd part is least
        t = x >> ((x & -x).bit_length() - 1)
        if t not in least:
            least[t] = x
    return set(least.values())


@dataclass(frozen=True)
class PrimeFamily:
    """Prime-scaled sets {p, 2p, ..., kp} with pairwise disjoint sum sets."""

    members: Tuple[KSet, ...]
    n: int


def _sieve(limit: int) -> Sequence[int]:
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for p in range(2, int(limit**0.5) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return [i for i in range(2, limit + 1) if flags[i]]


def prime_scaled_family(n: int, k: int) -> PrimeFamily:
    """Build the family of sets {p, 2p, ..., kp} for primes p in
    [n/log^2 n, 2n/log^2 n] whose sum set fits inside [n].

    Logs are base 2; the interval endpoints are floored.  Distinct primes
    give disjoint sum sets automatically: S({p,...,kp}) = p * S({1,...,k})
    and the multipliers stay below either prime.  The family may be empty.
    """
    if n < 16:
        raise RejectedInput("prime_scaled_family needs n >= 16")
    if k < 1:
        raise RejectedInput("k must be positive")
    log2n = math.log2(n)
    lo = math.floor(n / log2n**2)
    hi = math.floor(2 * n / log2n**2)
    weight = k * (k + 1) // 2  # sum of 1..k; total of a member is weight * p
    members = []
    for p in _sieve(hi):
        if p < lo:
            continue
        if weight * p <= n:
            members.append(tuple(p * i for i in range(1, k + 1)))
    return PrimeFamily(members=tuple(members), n=n)
