"""Exact Folkman numbers for tiny k, and DIMACS export for SAT solvers.

An instance for (n, k) carries one constraint per k-subset A of [n] with
sum(A) <= n: the sums S(A) must not be monochromatic.  decide() searches
the 2-colorings of [n] (element 1 fixed red, the only symmetry) with
forced-move propagation; folkman_exact() scans n upward for the first
unsatisfiable instance, which is F(k) by monotonicity.  to_cnf() writes the
same constraints as clauses for an external solver, and import_model()
turns a solver model back into a checkable coloring.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, List, Optional, Sequence, Tuple

from . import __version__
from .coloring import Coloring
from .errors import BudgetExceeded, RejectedInput
from .sumset_core import finite_sums

DEFAULT_BUDGET = 10_000_000


def gen_candidates(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    """All k-subsets of [n] with sum <= n, ascending elements, DFS order."""
    if n < 1 or k < 1:
        raise RejectedInput("gen_candidates needs n >= 1, k >= 1")

    def rec(prefix: Tuple[int, ...], start: int, total: int) -> Iterator[Tuple[int, ...]]:
        depth = len(prefix)
        if depth == k:
            yield prefix
            return
        r = k - depth - 1
        x_max = (n - total - r * (r + 1) // 2) // (r + 1)
        for x in range(start, x_max + 1):
            yield from rec(prefix + (x,), x + 1, total + x)

    yield from rec((), 1, 0)


@dataclass(frozen=True)
class FolkmanInstance:
    """Constraints of the (n, k) problem: each is S(A) as a member tuple."""

    n: int
    k: int
    constraints: Tuple[Tuple[int, ...], ...]


def build_instance(n: int, k: int) -> FolkmanInstance:
    """Collect S(A) for every candidate A, deduplicated by sum-set equality
    (distinct A with identical S(A) would give identical clauses)."""
    seen = set()
    constraints: List[Tuple[int, ...]] = []
    for a in gen_candidates(n, k):
        s = finite_sums(a)
        if s.bits not in seen:
            seen.add(s.bits)
            constraints.append(tuple(s.members()))
    return FolkmanInstance(n=n, k=k, constraints=tuple(constraints))


@dataclass(frozen=True)
class SearchOutcome:
    """Result of decide(): satisfiable is None when a budget ran out."""

    satisfiable: Optional[bool]
    certificate: Optional[Coloring]
    nodes: int


def decide(
    n: int,
    k: int,
    constraint_budget: int = DEFAULT_BUDGET,
    node_budget: int = DEFAULT_BUDGET,
) -> SearchOutcome:
    """Does some 2-coloring of [n] avoid every monochromatic S(A)?

    Backtracking over elements in increasing order with color(1) = red;
    whenever a constraint has all but one member in one color and none in
    the other, the remaining member's color is forced.  Budgets make the
    outcome inconclusive (satisfiable None) instead of unbounded.
    """
    if n < 1 or k < 1:
        raise RejectedInput("decide needs n >= 1, k >= 1")
    inst = build_instance(n, k)
    if len(inst.constraints) > constraint_budget:
        return SearchOutcome(satisfiable=None, certificate=None, nodes=0)
    m = len(inst.constraints)
    members = inst.constraints
    sizes = [len(c) for c in members]
    occurs: List[List[int]] = [[] for _ in range(n + 1)]
    for ci, c in enumerate(members):
        for v in c:
            occurs[v].append(ci)

    NONE = -1
    color = [NONE] * (n + 1)
    counts = [[0, 0] for _ in range(m)]  # colored members per side
    trail: List[int] = []  # assigned elements, in order
    nodes = 0

    def assign(v: int, col: int) -> bool:
        """Color v and propagate forced moves; False on conflict."""
        queue = [(v, col)]
        while queue:
            u, cu = queue.pop()
            if color[u] != NONE:
                if color[u] != cu:
                    return False
                continue
            color[u] = cu
            trail.append(u)
            for ci in occurs[u]:
                cnt = counts[ci]
                cnt[cu] += 1
                if cnt[cu] == sizes[ci]:
                    return False  # constraint fully monochromatic
                if cnt[cu] == sizes[ci] - 1 and cnt[1 - cu] == 0:
                    # exactly one member unresolved, everything else is cu
                    for w in members[ci]:
                        if color[w] == NONE:
                            queue.append((w, 1 - cu))
                            break
        return True

    def undo(mark: int) -> None:
        while len(trail) > mark:
            u = trail.pop()
            cu = color[u]
            color[u] = NONE
            for ci in occurs[u]:
                counts[ci][cu] -= 1

    def extract() -> Coloring:
        bits = 0
        for v in range(1, n + 1):
            if color[v] == 1:
                bits |= 1 << (v - 1)
        return Coloring(n=n, bits=bits, kind="uniform", seed=0,
                        note="decide-certificate")

    mark0 = len(trail)
    if not assign(1, 0):
        return SearchOutcome(satisfiable=False, certificate=None, nodes=0)

    def search() -> Optional[bool]:
        """True = satisfying extension exists, False = none, None = budget."""
        nonlocal nodes
        v = 1
        while v <= n and color[v] != NONE:
            v += 1
        if v > n:
            return True
        for col in (0, 1):
            nodes += 1
            if nodes > node_budget:
                return None
            mark = len(trail)
            if assign(v, col):
                sub = search()
                if sub is not None and sub:
                    return True
                undo(mark)
                if sub is None:
                    return None
            else:
                undo(mark)
        return False

    result = search()
    if result is None:
        undo(mark0)
        return SearchOutcome(satisfiable=None, certificate=None, nodes=nodes)
    if result:
        cert = extract()
        return SearchOutcome(satisfiable=True, certificate=cert, nodes=nodes)
    undo(mark0)
    return SearchOutcome(satisfiable=False, certificate=None, nodes=nodes)


def folkman_exact(
    k: int,
    n_max: int,
    constraint_budget: int = DEFAULT_BUDGET,
    node_budget: int = DEFAULT_BUDGET,
    sink: Optional[Callable[[int, Optional[bool], int], None]] = None,
) -> Optional[int]:
    """Least n <= n_max with decide(n, k) unsatisfiable; None if all are
    satisfiable.  Unsatisfiability is monotone in n (constraints only get
    added, and a witness-free coloring restricts), so the scan stops at the
    first hit.  sink, when given, receives (n, satisfiable, nodes) per n.
    """
    if k < 1 or n_max < 1:
        raise RejectedInput("folkman_exact needs k >= 1, n_max >= 1")
    for n in range(1, n_max + 1):
        out = decide(n, k, constraint_budget, node_budget)
        if sink is not None:
            sink(n, out.satisfiable, out.nodes)
        if out.satisfiable is None:
            raise BudgetExceeded(
                f"decide({n}, {k}) exhausted its budget; F({k}) undecided",
                nodes=out.nodes,
            )
        if not out.satisfiable:
            return n
    return None


def enumerate_decide(n: int, k: int) -> bool:
    """Reference enumerator over all 2^(n-1) colorings with 1 red."""
    return count_witness_free(n, k) > 0


def count_witness_free(n: int, k: int) -> int:
    """Number of colorings of [n] with element 1 red and no monochromatic
    S(A).  Brute force; meant for n small enough that 2^(n-1) is tame."""
    if n < 1 or k < 1:
        raise RejectedInput("count_witness_free needs n >= 1, k >= 1")
    masks = []
    seen = set()
    for a in gen_candidates(n, k):
        b = finite_sums(a).bits
        if b not in seen:
            seen.add(b)
            masks.append(b)
    count = 0
    for x in range(1 << (n - 1)):
        blue = x << 2  # element i blue iff bit i set; element 1 stays red
        ok = True
        for b in masks:
            hit = b & blue
            if hit == 0 or hit == b:
                ok = False
                break
        if ok:
            count += 1
    return count


def to_cnf(n: int, k: int) -> str:
    """DIMACS encoding: variable i true iff element i is blue; for each
    constraint S(A) one all-red-forbidding and one all-blue-forbidding
    clause, plus the unit clause -1 fixing element 1 red."""
    inst = build_instance(n, k)
    m = len(inst.constraints)
    lines = [
        f"c version={__version__}",
        f"c folkman n={n} k={k}",
        f"p cnf {n} {2 * m + 1}",
    ]
    for c in inst.constraints:
        pos = " ".join(str(v) for v in c)
        neg = " ".join(str(-v) for v in c)
        lines.append(f"{pos} 0")
        lines.append(f"{neg} 0")
    lines.append("-1 0")
    return "\n".join(lines) + "\n"


def parse_model_text(text: str) -> List[int]:
    """Extract a model from solver output: signed integers terminated by 0.

    Tolerates leading "v" tokens and skips comment/status lines, so both a
    bare model line and a typical solver output body parse.
    """
    lits: List[int] = []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped[0] in "cs":
            continue
        for tok in stripped.split():
            if tok == "v":
                continue
            try:
                val = int(tok)
            except ValueError:
                raise RejectedInput(f"bad token {tok!r} in model text") from None
            if val == 0:
                return lits
            lits.append(val)
    raise RejectedInput("model text has no terminating 0")


def import_model(model: Sequence[int], n: int) -> Coloring:
    """Turn a solver model into a Coloring (variable i true = i blue).

    Every variable 1..n must be assigned exactly once; the result carries an
    imported-model note and is stored as kind=uniform with seed 0.
    """
    if n < 1:
        raise RejectedInput("import_model needs n >= 1")
    assigned = [None] * (n + 1)
    for lit in model:
        v = abs(lit)
        if v == 0 or v > n:
            raise RejectedInput(f"model literal {lit} outside variables 1..{n}")
        val = lit > 0
        if assigned[v] is not None and assigned[v] != val:
            raise RejectedInput(f"model assigns variable {v} both ways")
        assigned[v] = val
    bits = 0
    for v in range(1, n + 1):
        if assigned[v] is None:
            raise RejectedInput(f"model leaves variable {v} unassigned")
        if assigned[v]:
            bits |= 1 << (v - 1)
    return Coloring(n=n, bits=bits, kind="uniform", seed=0, note="imported-model")
