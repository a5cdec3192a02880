"""Tests for the bound arithmetic: certified exact floors, log-space
expectation/chain bounds, and the first-moment table."""

import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from folkman.bounds import (
    CSV_HEADER,
    EXACT_K_MAX,
    certified_floor,
    chain_log_bound,
    check_first_moment,
    es_lower_bound,
    expectation_log_bound,
    log2_new_lower_bound,
    new_lower_bound,
    table_to_csv,
)
from folkman.errors import PrecisionLimitError, RejectedInput


# --- classical exponent ---


def test_es_examples():
    assert es_lower_bound(2, 1.0) == 4.0
    assert es_lower_bound(4, 1.0) == 8.0
    assert es_lower_bound(16, 0.5) == 32.0


def test_es_default_c():
    assert es_lower_bound(4) == es_lower_bound(4, 1.0)


def test_es_rejections():
    with pytest.raises(RejectedInput):
        es_lower_bound(1)  # log 1 = 0
    with pytest.raises(RejectedInput):
        es_lower_bound(4, 0.0)
    with pytest.raises(RejectedInput):
        es_lower_bound(4, -2.0)


# --- exact floor of 2^(2^(k-1)/k) ---


def test_new_lower_bound_values():
    assert [new_lower_bound(k) for k in range(1, 9)] == [2, 2, 2, 4, 9, 40, 565, 65536]


def test_log2_exponent_exact():
    assert log2_new_lower_bound(6) == Fraction(32, 6)
    assert log2_new_lower_bound(8) == Fraction(16)
    with pytest.raises(RejectedInput):
        log2_new_lower_bound(0)


def test_precision_limit():
    with pytest.raises(PrecisionLimitError):
        new_lower_bound(EXACT_K_MAX + 1)
    with pytest.raises(RejectedInput):
        new_lower_bound(0)


def mp_floor_oracle(k):
    """Independent floor via mpmath at generous precision."""
    q = (1 << (k - 1)) // k
    with mpmath.workprec(q + 130):
        e = mpmath.mpf(1 << (k - 1)) / k
        return int(mpmath.floor(mpmath.power(2, e)))


def test_floor_against_mpmath_oracle():
    for k in range(1, 17):
        assert new_lower_bound(k) == mp_floor_oracle(k), k


def test_certificate_fields():
    for k in range(1, 17):
        cert = certified_floor(k)
        q, r = divmod(1 << (k - 1), k)
        assert (cert.q, cert.r) == (q, r)
        assert cert.exact_power == (r == 0)
        assert cert.exact_power == (k & (k - 1) == 0)  # iff k is a power of 2
        assert cert.certified
        if cert.exact_power:
            assert cert.value == 1 << q
            assert cert.precision_bits == 0
        else:
            assert cert.precision_bits > q
            assert cert.power_checked  # k <= 24 here


def test_floor_bracketing_by_powering():
    # F^k <= 2^(2^(k-1)) < (F+1)^k certifies F = floor(2^(2^(k-1)/k))
    for k in range(2, 21):
        f = new_lower_bound(k)
        target = 1 << (1 << (k - 1))
        assert f**k <= target < (f + 1) ** k


def test_floor_strictness_when_irrational():
    # k not a power of two: 2^(2^(k-1)/k) irrational, so powering is strict
    for k in (3, 5, 6, 7, 9, 12):
        f = new_lower_bound(k)
        target = 1 << (1 << (k - 1))
        assert f**k < target


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=1, max_value=20))
def test_floor_matches_oracle_sampled(k):
    assert new_lower_bound(k) == mp_floor_oracle(k)


# --- expectation and chain bounds ---


def test_expectation_examples():
    assert expectation_log_bound(4, 4) == -7.0  # C(4,4) = 1
    v = expectation_log_bound(6, 40)
    assert v < 0
    assert abs(v - (math.log2(3838380) + 1 - 32)) < 1e-9  # C(40,6) = 3,838,380


def test_expectation_tighter_than_chain_at_k4_n4():
    assert expectation_log_bound(4, 4) < chain_log_bound(4)
    assert abs(chain_log_bound(4) - (-1.2292198364441465)) < 1e-12


def test_expectation_rejections():
    with pytest.raises(RejectedInput):
        expectation_log_bound(5, 4)  # n < k
    with pytest.raises(RejectedInput):
        expectation_log_bound(0, 4)


@settings(max_examples=100, deadline=None)
@given(st.integers(min_value=1, max_value=12), st.integers(min_value=0, max_value=300))
def test_expectation_monotone_in_n(k, extra):
    n = k + extra
    assert expectation_log_bound(k, n) <= expectation_log_bound(k, n + 1) + 1e-12


def test_chain_values():
    # log2(2 (e/3)^3): positive, and 2^bound = 2 (e/3)^3 = 1.4878...
    b3 = chain_log_bound(3)
    assert b3 > 0
    assert abs(2**b3 - 1.4878175498657533) < 1e-12
    assert chain_log_bound(4) < 0


def test_chain_rejects_k0():
    with pytest.raises(RejectedInput):
        chain_log_bound(0)


@settings(max_examples=60, deadline=None)
@given(st.integers(min_value=4, max_value=64))
def test_chain_negative_from_four(k):
    assert chain_log_bound(k) < 0


# --- crossover of the two lower-bound exponents ---


def test_doubly_exponential_crossover_at_nine():
    # 2^(k-1)/k overtakes k^2/log2(k) exactly at k = 9 (not earlier)
    for k in range(4, 9):
        assert float(log2_new_lower_bound(k)) < es_lower_bound(k, 1.0)
    for k in range(9, 65):
        assert float(log2_new_lower_bound(k)) > es_lower_bound(k, 1.0)


# --- first-moment table ---


def test_table_all_pass_4_to_64():
    rows = check_first_moment(4, 64)
    assert len(rows) == 61
    assert all(r.passed for r in rows)
    assert [r.k for r in rows] == list(range(4, 65))


def test_table_k3_fails():
    rows = check_first_moment(2, 4)
    by_k = {r.k: r for r in rows}
    assert not by_k[3].passed
    assert by_k[3].log2_chain_bound > 0
    assert by_k[4].passed


def test_table_k8_exact_n():
    rows = check_first_moment(8, 8)
    assert rows[0].n_exact == 65536
    assert rows[0].log2_n == Fraction(16)


def test_table_exact_limit_boundary():
    rows = check_first_moment(4, 30, exact_limit=24)
    by_k = {r.k: r for r in rows}
    for k in range(4, 25):
        assert by_k[k].n_exact is not None
        assert by_k[k].n_exact == new_lower_bound(k)
    for k in range(25, 31):
        assert by_k[k].n_exact is None


def test_table_log_mode_exact_cancellation():
    # in log mode k*log2(n) = 2^(k-1) cancels exactly; the expectation
    # bound must equal the chain bound bit for bit, no float residue
    rows = check_first_moment(30, 40, exact_limit=24)
    for r in rows:
        if r.n_exact is None:
            assert r.log2_expectation_bound == r.log2_chain_bound


def test_table_dominance_for_k_ge_4():
    for r in check_first_moment(4, 40):
        assert r.log2_expectation_bound <= r.log2_chain_bound + 1e-9


def test_table_rejections():
    with pytest.raises(RejectedInput):
        check_first_moment(1, 6)
    with pytest.raises(RejectedInput):
        check_first_moment(6, 4)
    with pytest.raises(RejectedInput):
        check_first_moment(4, 65)


def test_csv_rendering():
    rows = check_first_moment(3, 4)
    text = table_to_csv(rows)
    lines = text.splitlines()
    assert lines[0] == CSV_HEADER
    assert lines[0] == "k,n_or_log2n,log2_binom,log2_EX_bound,log2_chain_bound,pass"
    assert len(lines) == 3
    k3 = lines[1].split(",")
    assert k3[0] == "3" and k3[1] == "2" and k3[-1] == "fail"
    k4 = lines[2].split(",")
    assert k4[0] == "4" and k4[1] == "4" and k4[-1] == "pass"
    assert text.endswith("\n")


def test_csv_log_mode_column():
    rows = check_first_moment(25, 25, exact_limit=24)
    line = table_to_csv(rows).splitlines()[1]
    cols = line.split(",")
    # n column carries log2(n) = 2^24/25 as a float in log mode
    assert cols[1] == repr(float(Fraction(1 << 24, 25)))
    assert cols[-1] == "pass"


def test_csv_roundtrip_floats():
    # repr floats parse back exactly
    rows = check_first_moment(4, 10)
    for line in table_to_csv(rows).splitlines()[1:]:
        cols = line.split(",")
        assert float(cols[2]) == float(cols[2])  # parses
        assert cols[-1] in ("pass", "fail")
