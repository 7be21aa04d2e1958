"""Interval arguments that classify the sign of x without visiting every n.

Three tools cover all n >= 1:

* sign extension: a negative value at ``a`` forces x < 0 on
  [a, floor(3(r(a)+1)m(a)/2)]; a positive value at ``b`` forces x > 0 on
  [ceil((3(r(b)+1)m(b)+4)/2), b];
* blocks: on a maximal interval where r and m are constant, x is
  non-decreasing, so the endpoints bound it;
* the power-of-two tail: for 2^s < n <= 2^(s+1),
  x(n) >= z(2^s) - (s+2) m(2^(s+1)), which is positive for every s >= 12.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .certificate import (
    FORMAT_VERSION,
    Certificate,
    Dominance,
    Method,
    Segment,
    TailCertificate,
)
from .core import DomainError, isqrt, m_of, r_of, x_of, z_at_power, z_of
from .oracle import Sign

TAIL_S_MIN = 12
BOUNDARY = (1 << TAIL_S_MIN) + 1
DOMINANCE = Dominance(a=6, b=10, k0=6)


class PreconditionError(DomainError):
    """An anchor does not have the sign an extension rule requires."""


class CertificationError(RuntimeError):
    pass


class Direction(Enum):
    NEGATIVE_UP = "neg-up"
    POSITIVE_DOWN = "pos-down"


@dataclass(frozen=True)
class ChainStep:
    anchor: int
    derived_bound: int
    direction: Direction
    anchor_x: int

    @property
    def interval(self) -> tuple[int, int]:
        if self.direction is Direction.NEGATIVE_UP:
            return self.anchor, self.derived_bound
        return self.derived_bound, self.anchor


@dataclass(frozen=True)
class Block:
    start: int
    end: int
    r_val: int
    m_val: int
    x_min: int
    x_max: int


def sandwich_bounds(a: int, b: int) -> tuple[int, int]:
    """(lower, upper) with lower <= x(n) <= upper for all a <= n <= b."""
    if a > b:
        raise DomainError(f"a={a} > b={b}")
    lower = z_of(a) - (r_of(b) + 1) * m_of(b)
    upper = z_of(b) - (r_of(a) + 1) * m_of(a)
    return lower, upper


def extend_negative(a: int) -> int:
    if x_of(a) >= 0:
        raise PreconditionError(f"x({a}) = {x_of(a)} is not negative")
    return 3 * (r_of(a) + 1) * m_of(a) // 2


def extend_positive(b: int) -> int:
    if x_of(b) <= 0:
        raise PreconditionError(f"x({b}) = {x_of(b)} is not positive")
    return -(-(3 * (r_of(b) + 1) * m_of(b) + 4) // 2)


def block_end(a: int) -> int:
    """Largest k with r(k) = r(a) and m(k) = m(a)."""
    s, t = r_of(a), m_of(a)
    return min(((t + 1) ** 2 - 1) // 2, 1 << s)


def block_chain(count: int, start: int = 1) -> list[Block]:
    if count < 1:
        raise DomainError(f"count must be positive, got {count}")
    blocks = []
    k = start
    for _ in range(count):
        end = block_end(k)
        blocks.append(Block(k, end, r_of(k), m_of(k), x_of(k), x_of(end)))
        k = end + 1
    return blocks


def block_start(n: int) -> int:
    """First element of the block containing n."""
    s, t = r_of(n), m_of(n)
    # m(k) = t  iff  t^2 <= 2k;  r(k) = s  iff  k > 2^(s-1)
    first_m = (t * t + 1) // 2
    first_r = 1 if s == 0 else (1 << (s - 1)) + 1
    return max(first_m, first_r)


def negative_chain(start: int) -> list[ChainStep]:
    """Push a negative value upward until the next point is non-negative."""
    steps = []
    a = start
    ax = x_of(a)
    while True:
        b = extend_negative(a)
        steps.append(ChainStep(a, b, Direction.NEGATIVE_UP, ax))
        a = b + 1
        ax = x_of(a)
        if ax >= 0:
            return steps


def positive_chain(top: int) -> list[ChainStep]:
    """Push a positive value downward; each next anchor is one below the last bound."""
    steps = []
    b = top
    bx = x_of(b)
    while True:
        a = extend_positive(b)
        if a > b:
            return steps
        steps.append(ChainStep(b, a, Direction.POSITIVE_DOWN, bx))
        if a == 1:
            return steps
        b = a - 1
        bx = x_of(b)
        if bx <= 0:
            return steps


def tail_margin(s: int) -> int:
    """Exact lower bound for x on (2^s, 2^(s+1)]."""
    if s < TAIL_S_MIN:
        raise DomainError(f"tail margin needs s >= {TAIL_S_MIN}, got {s}")
    return z_at_power(s).z_val - (s + 2) * isqrt(1 << (s + 2))


@dataclass(frozen=True)
class DominanceProof:
    coeff_a: int
    coeff_b: int
    k0: int
    base_ok: bool
    step_ok: bool
    detail: str

    @property
    def ok(self) -> bool:
        return self.base_ok and self.step_ok


def dominance_check(coeff_a: int, coeff_b: int, k0: int) -> DominanceProof:
    """Prove 2^k >= coeff_a*k + coeff_b for all k >= k0.

    Base: the inequality at k0. Step: doubling both sides keeps it iff
    coeff_a*k >= coeff_a - coeff_b, which is increasing in k, so checking
    it at k0 covers every k >= k0.
    """
    if coeff_a < 1:
        raise DomainError(f"coeff_a must be >= 1, got {coeff_a}")
    if k0 < 0:
        raise DomainError(f"k0 must be >= 0, got {k0}")
    lhs, rhs = 1 << k0, coeff_a * k0 + coeff_b
    base_ok = lhs >= rhs
    step_lhs, step_rhs = coeff_a * k0, coeff_a - coeff_b
    step_ok = step_lhs >= step_rhs
    parts = [
        f"base: 2^{k0} = {lhs} {'>=' if base_ok else '<'} {rhs}",
        f"step: {coeff_a}*{k0} = {step_lhs} {'>=' if step_ok else '<'} {step_rhs}",
    ]
    return DominanceProof(coeff_a, coeff_b, k0, base_ok, step_ok, "; ".join(parts))


def _first_at_least(lo: int, hi: int, threshold: int) -> int:
    """Least n in [lo, hi] with x(n) >= threshold, or hi + 1; x non-decreasing on [lo, hi]."""
    left, right = lo, hi + 1
    while left < right:
        mid = (left + right) // 2
        if x_of(mid) >= threshold:
            right = mid
        else:
            left = mid + 1
    return left


def block_segments(lo: int, hi: int) -> list[Segment]:
    """Sign segments for [lo, hi], split along blocks and sign changes inside each block."""
    out = []
    n = lo
    while n <= hi:
        start = block_start(n)
        end = min(block_end(start), hi)
        first_zero = _first_at_least(n, end, 0)
        first_pos = _first_at_least(first_zero, end, 1)
        for run_lo, run_hi, sign in (
            (n, first_zero - 1, Sign.NEGATIVE),
            (first_zero, first_pos - 1, Sign.ZERO),
            (first_pos, end, Sign.POSITIVE),
        ):
            if run_lo <= run_hi:
                out.append(Segment(run_lo, run_hi, sign, Method.BLOCK, start))
        n = end + 1
    return out


def tail_certificate(s_checked_max: int) -> TailCertificate:
    if s_checked_max < TAIL_S_MIN:
        raise DomainError(f"tail_s_max must be >= {TAIL_S_MIN}, got {s_checked_max}")
    margins = [(s, tail_margin(s)) for s in range(TAIL_S_MIN, s_checked_max + 1)]
    bad = [(s, v) for s, v in margins if v <= 0]
    if bad:
        raise CertificationError(f"non-positive tail margin L({bad[0][0]}) = {bad[0][1]}")
    proof = dominance_check(DOMINANCE.a, DOMINANCE.b, DOMINANCE.k0)
    if not proof.ok:
        raise CertificationError(f"dominance record fails: {proof.detail}")
    return TailCertificate(TAIL_S_MIN, s_checked_max, margins, DOMINANCE)


def build_certificate(tail_s_max: int = 200) -> Certificate:
    """Certificate classifying the sign of x(n) for every n >= 1."""
    last = BOUNDARY - 1
    segments = []
    neg = negative_chain(1)
    for step in neg:
        segments.append(Segment(step.anchor, step.derived_bound, Sign.NEGATIVE, Method.NEGATIVE_EXTENSION, step.anchor))
    pos = positive_chain(last)
    gap_lo = neg[-1].derived_bound + 1
    gap_hi = pos[-1].derived_bound - 1
    segments.extend(block_segments(gap_lo, gap_hi))
    for step in reversed(pos):
        segments.append(Segment(step.derived_bound, step.anchor, Sign.POSITIVE, Method.POSITIVE_EXTENSION, step.anchor))

    expected = 1
    for seg in segments:
        if seg.lo != expected or seg.hi < seg.lo:
            raise CertificationError(f"segment {seg} does not continue the tiling at {expected}")
        expected = seg.hi + 1
    if expected != BOUNDARY:
        raise CertificationError(f"segments end at {expected - 1}, expected {last}")

    return Certificate(segments, tail_certificate(tail_s_max), BOUNDARY, FORMAT_VERSION)


def sign_at(cert: Certificate, n: int) -> Optional[Sign]:
    """Sign the certificate claims for n (bisection over segments)."""
    if n >= cert.boundary:
        return Sign.POSITIVE
    segs = cert.segments
    lo, hi = 0, len(segs) - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        seg = segs[mid]
        if n < seg.lo:
            hi = mid - 1
        elif n > seg.hi:
            lo = mid + 1
        else:
            return seg.sign
    return None
