"""Exact evaluation of z, m, r and x = z - (r + 1) * m.

Two tiers share one set of formulas:

* scalar functions on Python integers, valid for any n >= 1;
* vectorized ``uint64``/``int64`` evaluation over a range of n with
  ``hi <= WORD_LIMIT``, used by the brute-force scans.

No floating point is used anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

WORD_LIMIT = 1 << 62


class DomainError(ValueError):
    """Argument outside the domain of an operation."""


def _check_positive(n: int) -> None:
    if isinstance(n, bool) or not isinstance(n, int):
        raise DomainError(f"expected an integer, got {n!r}")
    if n < 1:
        raise DomainError(f"n must be a positive integer, got {n}")


def isqrt(v: int) -> int:
    """Floor of the square root of ``v`` by Newton iteration on integers.

    The iterate starts above the root and decreases monotonically, so the
    loop stops at floor(sqrt(v)); the final correction pins
    ``m*m <= v < (m+1)*(m+1)`` regardless.
    """
    if isinstance(v, bool) or not isinstance(v, int):
        raise DomainError(f"isqrt expects an integer, got {v!r}")
    if v < 0:
        raise DomainError(f"isqrt of negative value {v}")
    if v < 2:
        return v
    m = 1 << ((v.bit_length() + 1) // 2)
    while True:
        nxt = (m + v // m) >> 1
        if nxt >= m:
            break
        m = nxt
    while m * m > v:
        m -= 1
    while (m + 1) * (m + 1) <= v:
        m += 1
    return m


def z_of(n: int) -> int:
    """Largest z with 3z < 2n."""
    _check_positive(n)
    return (2 * n - 1) // 3


def m_of(n: int) -> int:
    """Largest m with m^2 <= 2n."""
    _check_positive(n)
    return isqrt(2 * n)


def r_of(n: int) -> int:
    """Least r >= 0 with n <= 2^r."""
    _check_positive(n)
    return (n - 1).bit_length()


def x_of(n: int) -> int:
    _check_positive(n)
    return (2 * n - 1) // 3 - ((n - 1).bit_length() + 1) * isqrt(2 * n)


@dataclass(frozen=True)
class EvalRow:
    n: int
    z: int
    m: int
    r: int
    x: int

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.n, self.z, self.m, self.r, self.x)


def eval_row(n: int) -> EvalRow:
    _check_positive(n)
    z, m, r = z_of(n), m_of(n), r_of(n)
    return EvalRow(n, z, m, r, z - (r + 1) * m)


@dataclass(frozen=True)
class PowerOfTwoFacts:
    """Closed forms for z(2^s) and bounds on m(2^s).

    ``m_lower <= m(2^s) < m_upper_exclusive``; when s is odd the bound is
    tight and ``m_exact`` holds the value.
    """

    s: int
    z_val: int
    m_lower: int
    m_upper_exclusive: int
    m_exact: Optional[int] = None


def z_at_power(s: int) -> PowerOfTwoFacts:
    if isinstance(s, bool) or not isinstance(s, int) or s < 0:
        raise DomainError(f"exponent must be a non-negative integer, got {s!r}")
    k, odd = divmod(s, 2)
    if not odd:
        # 2^(2k+1) = 3p + 2
        num = (1 << (s + 1)) - 2
        assert num % 3 == 0
        return PowerOfTwoFacts(s, num // 3, 1 << k, 1 << (k + 1))
    # 2^(2k+2) = 3q + 1, and 2 * 2^(2k+1) is the perfect square 4^(k+1)
    num = (1 << (s + 1)) - 1
    assert num % 3 == 0
    m = 1 << (k + 1)
    return PowerOfTwoFacts(s, num // 3, m, m + 1, m)


# ---------------------------------------------------------------------------
# word-size tier

def _check_word_range(lo: int, hi: int) -> None:
    _check_positive(lo)
    _check_positive(hi)
    if lo > hi:
        raise DomainError(f"empty range: lo={lo} > hi={hi}")
    if hi > WORD_LIMIT:
        raise DomainError(f"hi={hi} exceeds the word-size limit 2^62")


def isqrt_words(v: np.ndarray) -> np.ndarray:
    """Digit-by-digit integer square root of a ``uint64`` array."""
    num = np.asarray(v, dtype=np.uint64).copy()
    res = np.zeros_like(num)
    bit = np.uint64(1) << np.uint64(62)
    one, two = np.uint64(1), np.uint64(2)
    for _ in range(32):
        trial = res + bit
        take = num >= trial
        num = np.where(take, num - trial, num)
        res = np.where(take, (res >> one) + bit, res >> one)
        bit >>= two
    return res


def bit_length_words(v: np.ndarray) -> np.ndarray:
    t = np.asarray(v, dtype=np.uint64).copy()
    out = np.zeros(t.shape, dtype=np.int64)
    for shift in (32, 16, 8, 4, 2, 1):
        big = t >= (np.uint64(1) << np.uint64(shift))
        out += shift * big
        t = np.where(big, t >> np.uint64(shift), t)
    out += (t > 0)
    return out


def eval_points(ns: np.ndarray) -> dict[str, np.ndarray]:
    """Arrays n, z, m, r, x (``int64``) at arbitrary points 1 <= n <= 2^62."""
    n = np.asarray(ns, dtype=np.uint64)
    if n.size and (int(n.min()) < 1 or int(n.max()) > WORD_LIMIT):
        raise DomainError("points must lie in [1, 2^62]")
    two, one, three = np.uint64(2), np.uint64(1), np.uint64(3)
    z = ((two * n - one) // three).astype(np.int64)
    m = isqrt_words(two * n).astype(np.int64)
    r = bit_length_words(n - one)
    return {"n": n.astype(np.int64), "z": z, "m": m, "r": r, "x": z - (r + 1) * m}


def eval_range(lo: int, hi: int) -> dict[str, np.ndarray]:
    """Arrays n, z, m, r, x (``int64``) for every n in [lo, hi]."""
    _check_word_range(lo, hi)
    return eval_points(np.arange(lo, hi + 1, dtype=np.uint64))


def x_range(lo: int, hi: int) -> np.ndarray:
    return eval_range(lo, hi)["x"]
