"""Red/blue colorings of [n] and exact monochromatic probabilities.

Two constructions: uniform (every element an independent fair bit) and
doubling (odd elements get independent fair bits, and the color of 2x always
differs from the color of x, so color(2^j * t) = base(t) XOR (j mod 2)).

Bits come from a splittable counter-based generator: the bit for counter t
under a seed depends only on (seed, t), so colorings of different n with the
same seed agree on their common prefix.

Under the doubling distribution, whether S(A) is monochromatic is a system
of parity constraints per odd part, which makes the exact probability
computable: 0 if some odd part occurs with exponents of both parities,
otherwise 2^(1-d) where d is the number of distinct odd parts in S(A).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

import numpy as np

from .errors import RejectedInput
from .sumset_core import SumSet, as_kset, finite_sums

RED, BLUE = 0, 1

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

# numpy path pays off only once there are enough elements to fill vectors
_VECTOR_MIN = 4096


def _mix64(z: int) -> int:
    # splitmix64 finalizer
    z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
    return z ^ (z >> 31)


def coin(seed: int, t: int) -> int:
    """Fair bit for counter t under seed: top bit of the mixed counter."""
    return _mix64((seed + t * _GAMMA) & _MASK64) >> 63


def _mix_vec(z: np.ndarray) -> np.ndarray:
    """Vectorized splitmix64 finalizer. Matches _mix64 word for word."""
    with np.errstate(over="ignore"):
        z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        return z ^ (z >> np.uint64(31))


def _coin_vec(seed: int, t: np.ndarray) -> np.ndarray:
    """Vectorized coin over an array of counters. Matches coin() bit for bit."""
    with np.errstate(over="ignore"):
        z = _mix_vec(np.uint64(seed) + t.astype(np.uint64) * np.uint64(_GAMMA))
    return (z >> np.uint64(63)).astype(np.uint8)


def _check_n_seed(n: int, seed: int) -> None:
    if n < 1:
        raise RejectedInput("coloring needs n >= 1")
    if not 0 <= seed <= _MASK64:
        raise RejectedInput("seed must fit in 64 bits")


@dataclass(frozen=True)
class Coloring:
    """A coloring of [n]; bit (i-1) of bits is the color of element i,
    0 = red, 1 = blue."""

    n: int
    bits: int
    kind: str  # "uniform" | "doubling"
    seed: int
    note: Optional[str] = None  # provenance remark for imported certificates

    def color(self, i: int) -> int:
        if not 1 <= i <= self.n:
            raise RejectedInput(f"element {i} outside [1, {self.n}]")
        return (self.bits >> (i - 1)) & 1

    def blue_mask(self) -> int:
        """Bitmap with bit i set iff element i is blue (shifted to 1-indexed)."""
        return self.bits << 1

    def __str__(self) -> str:
        return coloring_to_text(self)


def uniform_coloring(n: int, seed: int) -> Coloring:
    """n independent fair bits, deterministic in (n, seed)."""
    _check_n_seed(n, seed)
    if n >= _VECTOR_MIN:
        elems = np.arange(1, n + 1, dtype=np.uint64)
        bits = _pack_bits(_coin_vec(seed, elems))
    else:
        bits = 0
        for i in range(1, n + 1):
            bits |= coin(seed, i) << (i - 1)
    return Coloring(n=n, bits=bits, kind="uniform", seed=seed)


def doubling_coloring(n: int, seed: int) -> Coloring:
    """Color odds with independent fair bits and force color(2x) != color(x).

    Element 2^j * t (t odd) gets coin(seed, t) XOR (j mod 2).
    """
    _check_n_seed(n, seed)
    if n >= _VECTOR_MIN:
        elems = np.arange(1, n + 1, dtype=np.uint64)
        low = elems & (~elems + np.uint64(1))  # 2^j, exact in float64 for j <= 52
        j = np.log2(low.astype(np.float64)).astype(np.uint64)
        t = elems >> j
        bits = _pack_bits(_coin_vec(seed, t) ^ (j & np.uint64(1)).astype(np.uint8))
    else:
        bits = 0
        for i in range(1, n + 1):
            j = (i & -i).bit_length() - 1
            bits |= (coin(seed, i >> j) ^ (j & 1)) << (i - 1)
    return Coloring(n=n, bits=bits, kind="doubling", seed=seed)


def _pack_bits(arr: np.ndarray) -> int:
    packed = np.packbits(arr, bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def is_monochromatic(c: Coloring, s: SumSet) -> Optional[int]:
    """The common color of s under c, or None if both colors occur."""
    if s.total > c.n:
        raise RejectedInput(f"sum set reaches {s.total}, beyond n={c.n}")
    blue = c.blue_mask()
    blue_members = s.bits & blue
    if blue_members == 0:
        return RED
    if blue_members == s.bits:
        return BLUE
    return None


@dataclass(frozen=True)
class MonoProbability:
    """Exact probability that S(A) is monochromatic under the doubling
    distribution: 2^numerator_log2, or 0 when numerator_log2 is None."""

    numerator_log2: Optional[int]  # 1 - distinct_odd_parts, or None
    distinct_odd_parts: int

    @property
    def impossible(self) -> bool:
        return self.numerator_log2 is None

    def probability(self) -> Fraction:
        if self.numerator_log2 is None:
            return Fraction(0)
        return Fraction(1, 1 << (self.distinct_odd_parts - 1))


def exact_mono_probability(a: Iterable[int]) -> MonoProbability:
    """Exact monochromatic probability of S(A) under doubling colorings.

    Group the sums by odd part.  A group whose exponents mix parities can
    never be monochromatic (colors inside a progression alternate); with all
    groups consistent, exactly two base assignments work out of 2^d.
    """
    ks = as_kset(a)
    parity: dict = {}
    conflict = False
    for x in finite_sums(ks).members():
        j = (x & -x).bit_length() - 1
        t = x >> j
        p = j & 1
        prev = parity.setdefault(t, p)
        if prev != p:
            conflict = True  # keep scanning; d is still reported
    d = len(parity)
    return MonoProbability(
        numerator_log2=None if conflict else 1 - d,
        distinct_odd_parts=d,
    )


def mc_mono_frequency(a: Iterable[int], num_seeds: int) -> float:
    """Empirical monochromatic frequency of S(A) over the doubling colorings
    with seeds 0..num_seeds-1.

    Vectorized over seeds: only the base bits of the odd parts of S(A)
    matter, and each exponent parity in a part's group pins the color, so a
    full coloring of [sum(A)] is never materialized.  Bit-identical to
    checking is_monochromatic(doubling_coloring(sum(A), seed), S(A)) per
    seed.
    """
    if num_seeds < 1:
        raise RejectedInput("num_seeds must be positive")
    ks = as_kset(a)
    groups: dict = {}
    for x in finite_sums(ks).members():
        j = (x & -x).bit_length() - 1
        groups.setdefault(x >> j, set()).add(j & 1)
    seeds = np.arange(num_seeds, dtype=np.uint64)
    mono_red = np.ones(num_seeds, dtype=bool)
    mono_blue = np.ones(num_seeds, dtype=bool)
    with np.errstate(over="ignore"):
        for t, parities in groups.items():
            base = (
                _mix_vec(seeds + np.uint64((t * _GAMMA) & _MASK64))
                >> np.uint64(63)
            ).astype(np.uint8)
            for p in parities:
                col = base ^ np.uint8(p)
                mono_red &= col == 0
                mono_blue &= col == 1
    return float(np.count_nonzero(mono_red | mono_blue)) / num_seeds


# ---------------------------------------------------------------------------
# coloring file format, versioned:
#   line 1: folkman-coloring v1 n=<n> kind=<uniform|doubling> seed=<u64> [# note]
#   line 2: ceil(n/4) hex digits; digit p carries bits 4p..4p+3 of the
#           little-endian color stream (bit i-1 = element i)

_HEADER = "folkman-coloring v1"


def coloring_to_text(c: Coloring) -> str:
    ndigits = (c.n + 3) // 4
    hexstr = "".join(format((c.bits >> (4 * p)) & 0xF, "x") for p in range(ndigits))
    head = f"{_HEADER} n={c.n} kind={c.kind} seed={c.seed}"
    if c.note:
        head += f" # {c.note}"
    return head + "\n" + hexstr + "\n"


def parse_coloring(text: str) -> Coloring:
    lines = text.splitlines()
    if len(lines) < 2:
        raise RejectedInput("coloring file needs a header line and a data line")
    head = lines[0]
    note = None
    if " # " in head:
        head, note = head.split(" # ", 1)
    fields = head.split()
    if fields[:2] != _HEADER.split() or len(fields) != 5:
        raise RejectedInput(f"bad coloring header: {lines[0]!r}")
    kv = {}
    for f in fields[2:]:
        key, _, val = f.partition("=")
        kv[key] = val
    try:
        n = int(kv["n"])
        kind = kv["kind"]
        seed = int(kv["seed"])
    except (KeyError, ValueError) as e:
        raise RejectedInput(f"bad coloring header: {lines[0]!r}") from e
    if kind not in ("uniform", "doubling"):
        raise RejectedInput(f"unknown coloring kind {kind!r}")
    if n < 1 or not 0 <= seed <= _MASK64:
        raise RejectedInput("bad n or seed in coloring header")
    hexstr = lines[1].strip()
    if len(hexstr) != (n + 3) // 4:
        raise RejectedInput(
            f"coloring data has {len(hexstr)} hex digits, expected {(n + 3) // 4}"
        )
    bits = 0
    for p, ch in enumerate(hexstr):
        try:
            bits |= int(ch, 16) << (4 * p)
        except ValueError:
            raise RejectedInput(f"bad hex digit {ch!r} in coloring data") from None
    if bits >> n:
        raise RejectedInput("coloring data has bits beyond n")
    return Coloring(n=n, bits=bits, kind=kind, seed=seed, note=note)


def save_coloring(c: Coloring, path) -> None:
    with open(path, "w") as f:
        f.write(coloring_to_text(c))


def load_coloring(path) -> Coloring:
    with open(path) as f:
        return parse_coloring(f.read())
