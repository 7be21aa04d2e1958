import itertools

import pytest
from hypothesis import given, settings, strategies as st

from signcert.core import DomainError, x_of
from signcert.oracle import (
    EXERCISE_NS,
    Sign,
    SignRun,
    emit_exercise_table,
    find_exceeding,
    merge_runs,
    scan_signs,
    scan_summary,
    second_minimum,
)

from known_values import EXERCISE_TABLE, ZEROS
from oracles import x_search

N, Z, P = Sign.NEGATIVE, Sign.ZERO, Sign.POSITIVE


def _runs_by_search(lo, hi):
    """Maximal runs built from the definitional x, one n at a time."""
    runs = []
    for n in range(lo, hi + 1):
        s = Sign.of(x_search(n))
        if runs and runs[-1][2] is s:
            runs[-1][1] = n
        else:
            runs.append([n, n, s])
    return [SignRun(a, b, s) for a, b, s in runs]


def test_scan_signs_examples():
    assert scan_signs(1, 13) == [SignRun(1, 13, N)]
    assert scan_signs(435, 438) == [SignRun(435, 435, N), SignRun(436, 436, Z), SignRun(437, 438, P)]
    expected = _runs_by_search(544, 547)
    assert expected == [SignRun(544, 544, P), SignRun(545, 546, Z), SignRun(547, 547, P)]
    assert scan_signs(544, 547) == expected


def test_scan_signs_matches_search_to_1200():
    assert scan_signs(1, 1200) == _runs_by_search(1, 1200)


def test_scan_signs_errors():
    with pytest.raises(DomainError):
        scan_signs(5, 4)
    with pytest.raises(DomainError):
        scan_signs(0, 4)


def _check_tiling(runs, lo, hi):
    assert runs[0].lo == lo and runs[-1].hi == hi
    for a, b in zip(runs, runs[1:]):
        assert a.hi + 1 == b.lo
        assert a.sign is not b.sign
    for run in runs:
        assert run.lo <= run.hi


@settings(max_examples=40, deadline=None)
@given(
    lo=st.integers(min_value=1, max_value=3000),
    length=st.integers(min_value=0, max_value=3000),
    chunk=st.integers(min_value=16, max_value=700),
    workers=st.sampled_from([1, 3]),
)
def test_scan_independent_of_partition(lo, length, chunk, workers):
    hi = lo + length
    whole = scan_signs(lo, hi)
    _check_tiling(whole, lo, hi)
    assert scan_signs(lo, hi, chunk=chunk, workers=workers) == whole
    assert scan_summary(lo, hi, chunk=chunk, workers=workers) == scan_summary(lo, hi)


def test_merge_runs_across_arbitrary_cut():
    lo, hi = 400, 600
    for cut in (435, 436, 450, 451, 528, 546):
        parts = [scan_signs(lo, cut), scan_signs(cut + 1, hi)]
        assert merge_runs(parts) == scan_signs(lo, hi)


def test_scan_summary_to_4096():
    summ = scan_summary(1, 4096)
    assert summ.zeros == ZEROS
    assert (summ.min_at, summ.min_value) == (129, -59)
    assert summ.last_nonpositive == 546
    assert (summ.max_at, summ.max_value) == (4096, 1560)


def test_scan_summary_ties_break_low():
    # x(5) = x(6) = -9 is the minimum on [5, 7]
    summ = scan_summary(5, 7)
    assert (summ.min_at, summ.min_value) == (5, -9)


def test_scan_summary_without_nonpositive():
    assert scan_summary(600, 700).last_nonpositive is None


def test_second_minimum():
    assert second_minimum(4096, 129) == (130, -58)
    # x(13) = -17 is the minimum of [2, 13]
    brute = min(((x_search(n), n) for n in range(2, 14)))
    assert second_minimum(13, 1) == (brute[1], brute[0]) == (13, -17)
    # exclusion of the true minimum on [1, 6] leaves a tie at -9 broken toward 5
    assert second_minimum(6, 3) == (5, -9)
    with pytest.raises(DomainError):
        second_minimum(1, 1)


def test_exercise_table():
    rows = emit_exercise_table()
    assert tuple(r.n for r in rows) == EXERCISE_NS
    assert {r.n: r.x for r in rows} == EXERCISE_TABLE


def test_find_exceeding_zero():
    # least k >= 6 with 2^(k+2) > 1
    k = next(k for k in itertools.count(6) if 2 ** (k + 2) > 1)
    w = find_exceeding(0)
    assert (w.k, w.n) == (k, 2**14)
    assert w.x == x_search(2**14) > 0


def test_find_exceeding_1559():
    w = find_exceeding(1559)
    assert w.x >= 1560 and w.x == x_of(w.n)
    assert x_of(4096) == 1560


def test_find_exceeding_million():
    w = find_exceeding(10**6)
    k = next(k for k in itertools.count(6) if 2 ** (k + 2) > 3 * 10**6 + 1)
    assert w.n == 2 ** (2 * k + 2)
    assert w.x == x_of(w.n) > 10**6


@given(st.integers(min_value=0, max_value=2**2000))
def test_find_exceeding_always_verified(bound):
    w = find_exceeding(bound)
    assert w.x == x_of(w.n) > bound
    assert w.k >= 6 and 2 ** (w.k + 2) > 3 * bound + 1
    assert w.k == 6 or 2 ** (w.k + 1) <= 3 * bound + 1


def test_find_exceeding_rejects_negative():
    with pytest.raises(DomainError):
        find_exceeding(-1)
