"""Log-space evaluation of the first-moment inequality chain.

Quantities covered: the classical lower bound exponent c*k^2/log k, the new
bound floor(2^(2^(k-1)/k)) with a certified exact floor, the expectation
bound log2 C(n,k) + 1 - 2^(k-1), and the closing chain bound
log2(2 (e/k)^k).

The exact floor is the delicate part: 2^(k-1)/k has huge numerator, so
n = floor(2^(2^(k-1)/k)) is a number with 2^(k-1)/k bits (k=30: about
17.9 million).  Writing 2^(k-1) = q*k + r, n = floor(2^q * (2^r)^(1/k)).
The k-th root is evaluated in MPFR with directed rounding at precision
q + guard; correct rounding brackets the true (irrational, for r != 0)
value within one ulp, and when both bracket ends floor to the same integer
that floor is certified.  On disagreement the guard precision doubles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

import gmpy2
from gmpy2 import mpfr, mpz

from .errors import PrecisionLimitError, RejectedInput

EXACT_K_MAX = 30  # k=30 already needs ~17.9M bits; beyond is log-mode only
_LOG2E = math.log2(math.e)

# belt-and-suspenders: below this k, additionally certify the floor by
# exact big-integer powering F^k <= 2^(2^(k-1)) < (F+1)^k (cheap there)
_POWER_CHECK_K_MAX = 24


def es_lower_bound(k: int, c: float = 1.0) -> float:
    """Exponent of the classical bound: c * k^2 / log2(k)."""
    if k < 2:
        raise RejectedInput("es_lower_bound needs k >= 2 (log k must be positive)")
    if c <= 0:
        raise RejectedInput("constant c must be positive")
    return c * k * k / math.log2(k)


def log2_new_lower_bound(k: int) -> Fraction:
    """Exact exponent 2^(k-1)/k of the new bound, as a rational."""
    if k < 1:
        raise RejectedInput("k must be positive")
    return Fraction(1 << (k - 1), k)


@dataclass(frozen=True)
class FloorCertificate:
    """Record of how floor(2^(2^(k-1)/k)) was computed and certified."""

    k: int
    value: int
    q: int  # 2^(k-1) = q*k + r
    r: int
    exact_power: bool  # r == 0: the exponent is an integer, value = 2^q
    precision_bits: int  # MPFR working precision (0 on the exact path)
    guard_rounds: int  # times the guard precision had to double
    power_checked: bool  # big-integer powering cross-check performed

    @property
    def certified(self) -> bool:
        return True  # construction fails rather than produce an uncertified value


def certified_floor(k: int) -> FloorCertificate:
    """Compute floor(2^(2^(k-1)/k)) with a certificate, for 1 <= k <= 30."""
    if k < 1:
        raise RejectedInput("k must be positive")
    if k > EXACT_K_MAX:
        raise PrecisionLimitError(
            f"exact floor supported only for k <= {EXACT_K_MAX}; "
            f"use log2_new_lower_bound({k}) instead"
        )
    e_total = 1 << (k - 1)
    q, r = divmod(e_total, k)
    if r == 0:
        # k a power of two: the exponent is the integer q
        return FloorCertificate(
            k=k, value=1 << q, q=q, r=0, exact_power=True,
            precision_bits=0, guard_rounds=0, power_checked=False,
        )
    guard = 64
    rounds = 0
    while True:
        prec = q + guard
        # 2^(r/k) is irrational (an integer k-th root of 2^r would force
        # k | r), so RoundDown gives lo < 2^(r/k) < next_above(lo) strictly.
        with gmpy2.context(precision=prec, round=gmpy2.RoundDown):
            lo = gmpy2.rootn(mpfr(1 << r), k)
            hi = gmpy2.next_above(lo)
            f_lo = mpz(gmpy2.floor(gmpy2.mul_2exp(lo, q)))
            f_hi = mpz(gmpy2.floor(gmpy2.mul_2exp(hi, q)))
        if f_lo == f_hi:
            value = int(f_lo)
            checked = False
            if k <= _POWER_CHECK_K_MAX:
                v = mpz(value)
                target = mpz(1) << e_total
                if not (v**k <= target < (v + 1) ** k):
                    raise AssertionError(
                        f"floor certification mismatch at k={k}"
                    )  # pragma: no cover - would indicate an MPFR defect
                checked = True
            return FloorCertificate(
                k=k, value=value, q=q, r=r, exact_power=False,
                precision_bits=prec, guard_rounds=rounds, power_checked=checked,
            )
        guard *= 2
        rounds += 1


def new_lower_bound(k: int) -> int:
    """Exactly floor(2^(2^(k-1)/k)), certified. Raises beyond k=30."""
    return certified_floor(k).value


def _log2_int(x: int) -> float:
    # math.log2 handles arbitrary-size ints
    return math.log2(x)


def expectation_log_bound(k: int, n: int) -> float:
    """log2 C(n,k) + 1 - 2^(k-1), the first-moment bound in log form.

    log2 C(n,k) is evaluated as sum_i log2(n-i) - log2 k!.
    """
    if k < 1:
        raise RejectedInput("k must be positive")
    if n < k:
        raise RejectedInput("expectation_log_bound needs k <= n")
    log2_binom = sum(_log2_int(n - i) for i in range(k)) - _log2_int(
        math.factorial(k)
    )
    return log2_binom + 1 - (1 << (k - 1))


def chain_log_bound(k: int) -> float:
    """log2(2 (e/k)^k) = 1 + k (log2 e - log2 k)."""
    if k < 1:
        raise RejectedInput("k must be positive")
    return 1.0 + k * (_LOG2E - math.log2(k))


@dataclass(frozen=True)
class BoundReport:
    """One row of the first-moment table."""

    k: int
    n_exact: Optional[int]  # None in log mode
    log2_n: Fraction  # exact exponent 2^(k-1)/k
    log2_binom: float
    log2_expectation_bound: float
    log2_chain_bound: float

    @property
    def passed(self) -> bool:
        return self.log2_expectation_bound < 0 and self.log2_chain_bound < 0


def check_first_moment(
    k_min: int, k_max: int, exact_limit: int = 24
) -> List[BoundReport]:
    """Evaluate the chain for each k in [k_min, k_max].

    For k <= exact_limit the exact n = floor(2^(2^(k-1)/k)) is computed and
    log2 C(n,k) uses the true n.  Beyond, log2 n is taken as the rational
    2^(k-1)/k and log2 C(n,k) is bounded above by k(log2 n - log2 k +
    log2 e); since k*log2 n = 2^(k-1) exactly, the expectation bound then
    collapses to 1 + k(log2 e - log2 k), identical to the chain bound, with
    no floating-point cancellation.  An upper bound below zero still
    certifies the true inequality.  exact_limit defaults to 24 because the
    root extraction cost explodes past it (k=30 alone takes ~10 s).
    """
    if not 2 <= k_min <= k_max <= 64:
        raise RejectedInput("check_first_moment supports 2 <= k_min <= k_max <= 64")
    exact_limit = min(exact_limit, EXACT_K_MAX)
    rows = []
    for k in range(k_min, k_max + 1):
        log2_n = log2_new_lower_bound(k)
        if k <= exact_limit:
            n = new_lower_bound(k)
            if n < k:  # k=3 gives n=2: no k-subsets at all, C(n,k) = 0
                log2_binom = float("-inf")
            else:
                log2_binom = sum(_log2_int(n - i) for i in range(k)) - _log2_int(
                    math.factorial(k)
                )
            ex_bound = log2_binom + 1 - (1 << (k - 1))
            rows.append(
                BoundReport(
                    k=k, n_exact=n, log2_n=log2_n, log2_binom=log2_binom,
                    log2_expectation_bound=ex_bound,
                    log2_chain_bound=chain_log_bound(k),
                )
            )
        else:
            # display value only; the ex_bound below avoids this cancellation
            log2_binom = float(1 << (k - 1)) + k * (_LOG2E - math.log2(k))
            ex_bound = 1.0 + k * (_LOG2E - math.log2(k))
            rows.append(
                BoundReport(
                    k=k, n_exact=None, log2_n=log2_n, log2_binom=log2_binom,
                    log2_expectation_bound=ex_bound,
                    log2_chain_bound=chain_log_bound(k),
                )
            )
    return rows


CSV_HEADER = "k,n_or_log2n,log2_binom,log2_EX_bound,log2_chain_bound,pass"


def _fmt(x: float) -> str:
    return repr(x)


def table_to_csv(rows: List[BoundReport]) -> str:
    """Render check_first_moment rows as CSV (locale-independent)."""
    out = [CSV_HEADER]
    for row in rows:
        n_col = str(row.n_exact) if row.n_exact is not None else _fmt(
            float(row.log2_n)
        )
        out.append(
            ",".join(
                (
                    str(row.k),
                    n_col,
                    _fmt(row.log2_binom),
                    _fmt(row.log2_expectation_bound),
                    _fmt(row.log2_chain_bound),
                    "pass" if row.passed else "fail",
                )
            )
        )
    return "\n".join(out) + "\n"
