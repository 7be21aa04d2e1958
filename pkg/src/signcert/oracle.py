"""Brute-force ground truth: every value comes from direct evaluation of x."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterator, Optional

import numpy as np

from .core import DomainError, EvalRow, _check_word_range, eval_row, x_of, x_range

CHUNK = 1 << 20

EXERCISE_NS = tuple(range(1, 14)) + (20, 50, 100, 200, 300, 400, 500, 1000)


class Sign(Enum):
    NEGATIVE = "neg"
    ZERO = "zero"
    POSITIVE = "pos"

    @classmethod
    def of(cls, value: int) -> "Sign":
        if value < 0:
            return cls.NEGATIVE
        return cls.ZERO if value == 0 else cls.POSITIVE


_SIGN_BY_CODE = {-1: Sign.NEGATIVE, 0: Sign.ZERO, 1: Sign.POSITIVE}


@dataclass(frozen=True)
class SignRun:
    lo: int
    hi: int
    sign: Sign


@dataclass(frozen=True)
class ScanSummary:
    lo: int
    hi: int
    zeros: list[int]
    min_at: int
    min_value: int
    max_at: int
    max_value: int
    last_nonpositive: Optional[int]


def _chunks(lo: int, hi: int, size: int) -> Iterator[tuple[int, int]]:
    start = lo
    while start <= hi:
        stop = min(hi, start + size - 1)
        yield start, stop
        start = stop + 1


def _runs_in_chunk(bounds: tuple[int, int]) -> list[SignRun]:
    lo, hi = bounds
    signs = np.sign(x_range(lo, hi))
    cuts = np.flatnonzero(signs[1:] != signs[:-1]) + 1
    starts = np.concatenate(([0], cuts))
    ends = np.concatenate((cuts - 1, [len(signs) - 1]))
    return [
        SignRun(lo + int(s), lo + int(e), _SIGN_BY_CODE[int(signs[s])])
        for s, e in zip(starts, ends)
    ]


def merge_runs(parts: list[list[SignRun]]) -> list[SignRun]:
    """Concatenate per-chunk runs, fusing same-sign runs at the seams."""
    out: list[SignRun] = []
    for part in parts:
        for run in part:
            if out and out[-1].sign is run.sign and out[-1].hi + 1 == run.lo:
                out[-1] = SignRun(out[-1].lo, run.hi, run.sign)
            else:
                out.append(run)
    return out


def _map_chunks(fn, lo: int, hi: int, chunk: int, workers: int) -> list:
    pieces = list(_chunks(lo, hi, chunk))
    if workers <= 1 or len(pieces) == 1:
        return [fn(p) for p in pieces]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, pieces))


def scan_signs(lo: int, hi: int, *, chunk: int = CHUNK, workers: int = 1) -> list[SignRun]:
    """Maximal constant-sign runs of x covering [lo, hi].

    The output does not depend on ``chunk`` or ``workers``.
    """
    _check_word_range(lo, hi)
    return merge_runs(_map_chunks(_runs_in_chunk, lo, hi, chunk, workers))


def _summarize_chunk(bounds: tuple[int, int]) -> tuple:
    lo, _ = bounds
    x = x_range(*bounds)
    i_min, i_max = int(np.argmin(x)), int(np.argmax(x))
    nonpos = np.flatnonzero(x <= 0)
    last = lo + int(nonpos[-1]) if nonpos.size else None
    zeros = [lo + int(i) for i in np.flatnonzero(x == 0)]
    return lo + i_min, int(x[i_min]), lo + i_max, int(x[i_max]), last, zeros


def scan_summary(lo: int, hi: int, *, chunk: int = CHUNK, workers: int = 1) -> ScanSummary:
    _check_word_range(lo, hi)
    parts = _map_chunks(_summarize_chunk, lo, hi, chunk, workers)
    zeros: list[int] = []
    min_at, min_value, max_at, max_value, last = parts[0][0], parts[0][1], parts[0][2], parts[0][3], None
    for p_min_at, p_min, p_max_at, p_max, p_last, p_zeros in parts:
        # strict comparisons keep the smallest n on ties
        if p_min < min_value:
            min_at, min_value = p_min_at, p_min
        if p_max > max_value:
            max_at, max_value = p_max_at, p_max
        if p_last is not None:
            last = p_last
        zeros.extend(p_zeros)
    return ScanSummary(lo, hi, zeros, min_at, min_value, max_at, max_value, last)


def second_minimum(hi: int, exclude: int) -> tuple[int, int]:
    """Minimizing (n, x(n)) over [1, hi] without ``exclude``; ties go to smallest n."""
    _check_word_range(1, hi)
    if exclude > hi:
        raise DomainError(f"exclude={exclude} lies above hi={hi}")
    x = x_range(1, hi)
    keep = np.ones(x.shape, dtype=bool)
    if exclude >= 1:
        keep[exclude - 1] = False
    if not keep.any():
        raise DomainError("search set is empty")
    idx = np.flatnonzero(keep)
    best = idx[int(np.argmin(x[idx]))]
    return int(best) + 1, int(x[best])


def emit_exercise_table() -> list[EvalRow]:
    return [eval_row(n) for n in EXERCISE_NS]


@dataclass(frozen=True)
class ExceedWitness:
    bound: int
    k: int
    n: int
    x: int


def find_exceeding(bound: int) -> ExceedWitness:
    """A power of four n = 2^(2k+2) with x(n) > bound, checked exactly.

    k is the least integer >= 6 with 2^(k+2) > 3*bound + 1.
    """
    if isinstance(bound, bool) or not isinstance(bound, int) or bound < 0:
        raise DomainError(f"bound must be a non-negative integer, got {bound!r}")
    target = 3 * bound + 1
    # 2^(k+2) > target  <=>  k + 2 >= target.bit_length()
    k = max(6, target.bit_length() - 2)
    n = 1 << (2 * k + 2)
    x = x_of(n)
    if x <= bound:
        raise ArithmeticError(f"witness check failed: x({n}) = {x} <= {bound}")
    return ExceedWitness(bound, k, n, x)
