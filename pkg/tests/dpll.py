"""Self-contained DPLL solver over DIMACS CNF text.

Independent decision procedure used to cross-validate the exported CNF
instances.  When a real SAT solver binary is on PATH the acceptance test
uses that instead; this module is the always-available stand-in.  It shares
no code with the package: the DIMACS text is parsed from scratch here.
"""

from __future__ import annotations

import shutil
import subprocess
import tempfile
from typing import List, Optional, Tuple


def parse_dimacs(text: str) -> Tuple[int, List[List[int]]]:
    nvars = 0
    clauses: List[List[int]] = []
    pending: List[int] = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            assert parts[:2] == ["p", "cnf"], f"not a cnf header: {line!r}"
            nvars = int(parts[2])
            continue
        for tok in line.split():
            lit = int(tok)
            if lit == 0:
                clauses.append(pending)
                pending = []
            else:
                pending.append(lit)
    assert not pending, "clause not terminated by 0"
    return nvars, clauses


def _condition(clauses: List[List[int]], lit: int) -> Optional[List[List[int]]]:
    """Simplify under lit=true; None signals an empty clause (conflict)."""
    out = []
    for c in clauses:
        if lit in c:
            continue
        if -lit in c:
            c = [x for x in c if x != -lit]
            if not c:
                return None
        out.append(c)
    return out


def solve(nvars: int, clauses: List[List[int]]) -> Optional[List[int]]:
    """DPLL with unit propagation. Returns a full model as a literal list
    (unconstrained variables default to false), or None if unsatisfiable."""

    def rec(cls: List[List[int]], assign: dict) -> Optional[dict]:
        while True:
            unit = None
            for c in cls:
                if len(c) == 1:
                    unit = c[0]
                    break
            if unit is None:
                break
            cls = _condition(cls, unit)
            if cls is None:
                return None
            assign[abs(unit)] = unit > 0
        if not cls:
            return assign
        lit = cls[0][0]
        for choice in (lit, -lit):
            nxt = _condition(cls, choice)
            if nxt is None:
                continue
            branch = dict(assign)
            branch[abs(choice)] = choice > 0
            res = rec(nxt, branch)
            if res is not None:
                return res
        return None

    model = rec([list(c) for c in clauses], {})
    if model is None:
        return None
    return [v if model.get(v, False) else -v for v in range(1, nvars + 1)]


def solve_dimacs(text: str) -> Optional[List[int]]:
    return solve(*parse_dimacs(text))


def count_models(text: str) -> int:
    """Brute-force model count of a DIMACS instance (tiny nvars only)."""
    nvars, clauses = parse_dimacs(text)
    assert nvars <= 22, "count_models is exponential in nvars"
    count = 0
    for bits in range(1 << nvars):
        ok = True
        for c in clauses:
            sat = False
            for lit in c:
                if ((bits >> (abs(lit) - 1)) & 1) == (1 if lit > 0 else 0):
                    sat = True
                    break
            if not sat:
                ok = False
                break
        if ok:
            count += 1
    return count


# optional real solver integration -----------------------------------------

_SOLVER_NAMES = ("kissat", "cadical", "cryptominisat5", "varisat", "picosat", "minisat")


def find_external_solver() -> Optional[str]:
    for name in _SOLVER_NAMES:
        path = shutil.which(name)
        if path:
            return path
    return None


def solve_with_binary(path: str, text: str) -> Optional[List[int]]:
    """Run a DIMACS solver binary; exit 10 = SAT (model on v-lines),
    exit 20 = UNSAT, per the standard SAT-competition protocol."""
    with tempfile.NamedTemporaryFile("w", suffix=".cnf", delete=False) as f:
        f.write(text)
        name = f.name
    proc = subprocess.run(
        [path, name], capture_output=True, text=True, timeout=300
    )
    if proc.returncode == 20:
        return None
    if proc.returncode != 10:
        raise RuntimeError(
            f"solver {path} returned {proc.returncode}: {proc.stderr[:200]}"
        )
    lits: List[int] = []
    for line in proc.stdout.splitlines():
        if line.startswith("v"):
            for tok in line.split()[1:]:
                lit = int(tok)
                if lit != 0:
                    lits.append(lit)
    return lits
