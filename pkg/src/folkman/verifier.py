"""Witness search over colorings: find A of size k with S(A) monochromatic.

The search enumerates candidate sets in ascending-element DFS with a
remaining-sum feasibility bound (S(A) fits in [n] iff sum(A) <= n), and
kills a branch the moment the partial sum set contains both colors; prefix
sum sets only grow, so the prune is sound.  A leaf that survives is a
witness by construction.

sum-distinct-pruned mode (doubling colorings only) additionally abandons
prefixes whose sum set repeats a value.  A repeated sum yields two disjoint
equal-sum subsets of the prefix, hence sums y and 2y both present, which a
doubling coloring always colors oppositely, so the bichromatic prune fires
at the same node; the mode's value is the cheaper test order, not extra
reach.  The same argument covers odd-part parity conflicts (two sums
2^a*t, 2^b*t with a, b of different parity are oppositely colored under
every doubling coloring), so no separate parity bookkeeping is kept.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from typing import List, Optional, Tuple

from .bounds import new_lower_bound
from .coloring import BLUE, RED, Coloring, doubling_coloring, is_monochromatic
from .errors import AdvisoryRejection, RejectedInput
from .sumset_core import KSet, finite_sums

MODES = ("generic", "sum-distinct-pruned")


@dataclass(frozen=True)
class Witness:
    a: KSet
    color: int  # RED or BLUE
    sum_total: int

    def color_name(self) -> str:
        return "blue" if self.color == BLUE else "red"


def witness_line(w: Witness, c: Coloring) -> str:
    elems = ",".join(str(x) for x in w.a)
    return f"witness a={elems} color={w.color_name()} n={c.n} seed={c.seed} kind={c.kind}"


def _check_mode(c: Coloring, mode: str) -> bool:
    if mode not in MODES:
        raise RejectedInput(f"unknown mode {mode!r}; expected one of {MODES}")
    if mode == "sum-distinct-pruned" and c.kind != "doubling":
        raise RejectedInput(
            "sum-distinct-pruned mode is only sound for doubling colorings"
        )
    return mode == "sum-distinct-pruned"


def _search_block(
    n: int, blue1: int, k: int, a1: int, pruned: bool
) -> Tuple[Optional[Tuple[Tuple[int, ...], int, int]], int]:
    """DFS over candidates with smallest element a1.

    blue1 is the coloring's blue mask, bit i = element i.  Returns
    ((elements, color, total), nodes) for the first witness in DFS order,
    or (None, nodes); nodes counts DFS tree nodes visited, the witness leaf
    included, nothing after it.
    """
    sums0 = 1 << a1
    nodes = 1
    if k == 1:
        color = BLUE if (blue1 >> a1) & 1 else RED
        return ((a1,), color, a1), nodes
    # stack frames: (next_candidate, depth, partial_sums, total, prefix);
    # a frame exists only if its prefix sums are still monochromatic
    stack = [(a1 + 1, 1, sums0, a1, (a1,))]
    while stack:
        x, depth, sums, total, prefix = stack.pop()
        r = k - depth - 1  # elements still needed beyond the next one
        x_max = (n - total - r * (r + 1) // 2) // (r + 1)
        if depth + 1 == k:
            # last level: scan ascending, first survivor is the witness
            for cand in range(x, x_max + 1):
                nodes += 1
                shifted = (sums << cand) | (1 << cand)
                if pruned and shifted & sums:
                    continue  # repeated subset sum: cannot be sum-distinct
                new_sums = sums | shifted
                blue_part = new_sums & blue1
                if blue_part != 0 and blue_part != new_sums:
                    continue  # both colors present
                color = BLUE if blue_part else RED
                return (prefix + (cand,), color, total + cand), nodes
            continue
        # interior level: push descending so pops explore ascending cand first
        for cand in range(x_max, x - 1, -1):
            nodes += 1
            shifted = (sums << cand) | (1 << cand)
            if pruned and shifted & sums:
                continue
            new_sums = sums | shifted
            blue_part = new_sums & blue1
            if blue_part != 0 and blue_part != new_sums:
                continue
            stack.append((cand + 1, depth + 1, new_sums, total + cand, prefix + (cand,)))
    return None, nodes


def _block_range(n: int, k: int) -> range:
    # a1 feasible iff a1 + (a1+1) + ... + (a1+k-1) <= n
    hi = (n - k * (k - 1) // 2) // k
    return range(1, hi + 1)


def _find_witness_counted(
    c: Coloring, k: int, mode: str, threads: int = 1
) -> Tuple[Optional[Witness], int]:
    pruned = _check_mode(c, mode)
    if k < 1:
        raise RejectedInput("k must be positive")
    blue1 = c.blue_mask()
    blocks = _block_range(c.n, k)
    nodes_total = 0
    if threads <= 1 or len(blocks) <= 1:
        for a1 in blocks:
            hit, nodes = _search_block(c.n, blue1, k, a1, pruned)
            nodes_total += nodes
            if hit is not None:
                a, color, total = hit
                return Witness(a=a, color=color, sum_total=total), nodes_total
        return None, nodes_total
    # Parallel: blocks are disjoint and ordered by a1, so consuming results
    # in submission order gives the same canonical witness and the same
    # node count (blocks past the winning one are never accumulated).
    with ProcessPoolExecutor(max_workers=threads) as ex:
        futures = [
            ex.submit(_search_block, c.n, blue1, k, a1, pruned) for a1 in blocks
        ]
        try:
            for fut in futures:
                hit, nodes = fut.result()
                nodes_total += nodes
                if hit is not None:
                    a, color, total = hit
                    return Witness(a=a, color=color, sum_total=total), nodes_total
        finally:
            for fut in futures:
                fut.cancel()
    return None, nodes_total


def find_witness(
    c: Coloring, k: int, mode: str = "generic", threads: int = 1
) -> Optional[Witness]:
    """First witness in ascending-element DFS order, or None."""
    w, _ = _find_witness_counted(c, k, mode, threads)
    return w


def naive_find_witness(c: Coloring, k: int) -> Optional[Witness]:
    """Reference enumerator: every k-subset, no pruning. Test-grade speed."""
    for a in combinations(range(1, c.n + 1), k):
        if sum(a) > c.n:
            continue
        s = finite_sums(a)
        color = is_monochromatic(c, s)
        if color is not None:
            return Witness(a=a, color=color, sum_total=s.total)
    return None


@dataclass
class VerificationReport:
    n: int
    k: int
    colorings_checked: int
    witnesses_found: int
    candidates_enumerated: int  # DFS nodes visited, summed over colorings
    mode: str
    elapsed: float
    per_seed: List[Tuple[int, Optional[Witness]]] = field(default_factory=list)

    def summary_line(self) -> str:
        # elapsed deliberately left out: reports must be byte-identical
        # across thread counts and repeat runs
        return (
            f"verification k={self.k} n={self.n} "
            f"colorings_checked={self.colorings_checked} "
            f"mode={self.mode} "
            f"candidates_enumerated={self.candidates_enumerated} "
            f"witnesses_found={self.witnesses_found}"
        )


def verify_theorem(
    k: int,
    num_seeds: int,
    mode: str = "sum-distinct-pruned",
    threads: int = 1,
    n: Optional[int] = None,
) -> VerificationReport:
    """Check num_seeds doubling colorings of [n], n = floor(2^(2^(k-1)/k)),
    for witnesses.  Zero witnesses found is the constructive confirmation.

    Deterministic: seeds are 0..num_seeds-1 and results are independent of
    the thread count.  Supported for 4 <= k <= 7; k = 8 would need
    exhaustive candidate enumeration over [65536], which is out of budget.
    """
    if num_seeds < 1:
        raise RejectedInput("num_seeds must be positive")
    if k < 4 or k > 7:
        if k == 8:
            raise AdvisoryRejection(
                "k=8 needs n=65536 = 2^16; exhaustive candidate enumeration "
                "at that scale is out of budget (advisory: sampling-only "
                "verification is not implemented)"
            )
        raise AdvisoryRejection(
            f"verify_theorem supports 4 <= k <= 7; k={k} is outside the "
            "desk-verifiable range (tiny k: see the search module)"
        )
    if mode == "generic" and k >= 7:
        raise AdvisoryRejection(
            "generic mode at k=7 (n=565) is declared out of budget; "
            "use sum-distinct-pruned"
        )
    if n is None:
        n = new_lower_bound(k)
    start = time.monotonic()
    witnesses = 0
    nodes_total = 0
    per_seed: List[Tuple[int, Optional[Witness]]] = []
    for seed in range(num_seeds):
        c = doubling_coloring(n, seed)
        w, nodes = _find_witness_counted(c, k, mode, threads)
        nodes_total += nodes
        if w is not None:
            witnesses += 1
        per_seed.append((seed, w))
    return VerificationReport(
        n=n,
        k=k,
        colorings_checked=num_seeds,
        witnesses_found=witnesses,
        candidates_enumerated=nodes_total,
        mode=mode,
        elapsed=time.monotonic() - start,
        per_seed=per_seed,
    )


def count_candidates(n: int, k: int) -> int:
    """Number of k-subsets of [n] with element-sum <= n, by DP.

    dp[j][s] = number of j-subsets of {1..x} with sum exactly s, rolled
    over x; Python ints keep the counts exact at any size.
    """
    if n < 1 or k < 1:
        raise RejectedInput("count_candidates needs n >= 1, k >= 1")
    dp = [[0] * (n + 1) for _ in range(k + 1)]
    dp[0][0] = 1
    for x in range(1, n + 1):
        for j in range(min(k, x), 0, -1):
            row, prev = dp[j], dp[j - 1]
            for s in range(n, x - 1, -1):
                p = prev[s - x]
                if p:
                    row[s] += p
    return sum(dp[k])
