"""Independent verification of a sign certificate.

Nothing produced by the certifier is trusted: every rule is re-derived here
from the primitives in :mod:`signcert.core`, and every classified n below
the boundary is additionally compared against direct evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import core
from .certificate import FORMAT_VERSION, Certificate, Method, Segment
from .oracle import Sign

# lower bound the tail argument needs: 2^k >= 6k + 10 for every k in play
REQUIRED_A, REQUIRED_B = 6, 10
TAIL_S_MIN = 12

_NUMPY_SIGN = {Sign.NEGATIVE: -1, Sign.ZERO: 0, Sign.POSITIVE: 1}


@dataclass(frozen=True)
class Failure:
    where: str
    rule: str
    detail: str

    def __str__(self) -> str:
        return f"{self.where}: [{self.rule}] {self.detail}"


@dataclass
class CheckReport:
    ok: bool
    failure: Optional[Failure] = None
    segments_checked: int = 0
    margins_checked: int = 0
    notes: list[str] = field(default_factory=list)


class _Reject(Exception):
    def __init__(self, where: str, rule: str, detail: str):
        super().__init__(detail)
        self.failure = Failure(where, rule, detail)


def _seg_name(i: int, seg: Segment) -> str:
    return f"segment {i} [{seg.lo}, {seg.hi}] {seg.sign.value}/{seg.method.value}"


def _check_tiling(cert: Certificate) -> None:
    if cert.boundary < 2:
        raise _Reject("certificate", "tiling", f"boundary {cert.boundary} < 2")
    expected = 1
    for i, seg in enumerate(cert.segments):
        name = _seg_name(i, seg)
        if seg.hi < seg.lo:
            raise _Reject(name, "tiling", "empty segment (hi < lo)")
        if seg.lo > expected:
            raise _Reject(name, "tiling", f"coverage gap {expected}..{seg.lo - 1}")
        if seg.lo < expected:
            raise _Reject(name, "tiling", f"overlap {seg.lo}..{expected - 1}")
        expected = seg.hi + 1
    if expected < cert.boundary:
        raise _Reject("certificate", "tiling", f"coverage gap {expected}..{cert.boundary - 1}")
    if expected > cert.boundary:
        raise _Reject("certificate", "tiling", f"segments run past boundary-1 = {cert.boundary - 1}")


def _check_negative_extension(name: str, seg: Segment) -> None:
    a = seg.anchor
    if seg.sign is not Sign.NEGATIVE:
        raise _Reject(name, "lemma2-neg", "rule only proves negative signs")
    if a != seg.lo:
        raise _Reject(name, "lemma2-neg", f"anchor {a} must equal lo")
    xa = core.x_of(a)
    if xa >= 0:
        raise _Reject(name, "lemma2-neg", f"x({a}) = {xa} is not negative")
    # 3 z(n) < 2n <= 2 bound <= 3 (r(a)+1) m(a) for n <= bound
    bound = 3 * (core.r_of(a) + 1) * core.m_of(a) // 2
    if seg.hi > bound:
        raise _Reject(name, "lemma2-neg", f"hi {seg.hi} exceeds derived bound {bound}")


def _check_positive_extension(name: str, seg: Segment) -> None:
    b = seg.anchor
    if seg.sign is not Sign.POSITIVE:
        raise _Reject(name, "lemma2-pos", "rule only proves positive signs")
    if b != seg.hi:
        raise _Reject(name, "lemma2-pos", f"anchor {b} must equal hi")
    xb = core.x_of(b)
    if xb <= 0:
        raise _Reject(name, "lemma2-pos", f"x({b}) = {xb} is not positive")
    bound = -(-(3 * (core.r_of(b) + 1) * core.m_of(b) + 4) // 2)
    if seg.lo < bound:
        raise _Reject(name, "lemma2-pos", f"lo {seg.lo} below derived bound {bound}")


def _check_block(name: str, seg: Segment) -> None:
    a = seg.anchor
    if a > seg.lo:
        raise _Reject(name, "lemma3-block", f"anchor {a} lies above lo")
    if a > 1 and core.r_of(a - 1) == core.r_of(a) and core.m_of(a - 1) == core.m_of(a):
        raise _Reject(name, "lemma3-block", f"anchor {a} is not the first point of its block")
    # r, m non-decreasing: equal values at a and hi pin them on all of [a, hi]
    if core.r_of(seg.hi) != core.r_of(a) or core.m_of(seg.hi) != core.m_of(a):
        raise _Reject(name, "lemma3-block", f"r or m changes between anchor {a} and hi {seg.hi}")
    # x = z - const there, hence non-decreasing: endpoints decide the sign
    x_lo, x_hi = core.x_of(seg.lo), core.x_of(seg.hi)
    ok = {
        Sign.NEGATIVE: x_hi < 0,
        Sign.ZERO: x_lo == 0 and x_hi == 0,
        Sign.POSITIVE: x_lo > 0,
    }[seg.sign]
    if not ok:
        raise _Reject(name, "lemma3-block", f"endpoint values x({seg.lo}) = {x_lo}, x({seg.hi}) = {x_hi} contradict sign")


def _check_segment_rule(i: int, seg: Segment) -> None:
    name = _seg_name(i, seg)
    if seg.method is Method.BRUTE:
        return  # settled by the exhaustive comparison
    if seg.anchor is None:
        raise _Reject(name, seg.method.value, "anchor is required")
    if seg.anchor < 1:
        raise _Reject(name, seg.method.value, f"anchor {seg.anchor} is not positive")
    if seg.method is Method.NEGATIVE_EXTENSION:
        _check_negative_extension(name, seg)
    elif seg.method is Method.POSITIVE_EXTENSION:
        _check_positive_extension(name, seg)
    else:
        _check_block(name, seg)


def _check_against_brute(cert: Certificate) -> None:
    x = core.x_range(1, cert.boundary - 1)
    actual = np.sign(x)
    for i, seg in enumerate(cert.segments):
        chunk = actual[seg.lo - 1: seg.hi]
        bad = np.flatnonzero(chunk != _NUMPY_SIGN[seg.sign])
        if bad.size:
            n = seg.lo + int(bad[0])
            raise _Reject(_seg_name(i, seg), "brute", f"x({n}) = {int(x[n - 1])} has the wrong sign")


def _margin(s: int) -> int:
    facts = core.z_at_power(s)
    return facts.z_val - (s + 2) * core.isqrt(1 << (s + 2))


def _check_tail(cert: Certificate) -> int:
    tail = cert.tail
    if tail.s_min != TAIL_S_MIN:
        raise _Reject("tail", "tail", f"s_min must be {TAIL_S_MIN}, got {tail.s_min}")
    if cert.boundary != (1 << tail.s_min) + 1:
        raise _Reject("tail", "tail", f"boundary {cert.boundary} != 2^{tail.s_min} + 1")
    wanted = list(range(tail.s_min, tail.s_checked_max + 1))
    listed = [s for s, _ in tail.margins]
    if listed != wanted:
        raise _Reject("tail", "margins", f"margins must list s = {tail.s_min}..{tail.s_checked_max} in order")
    for s, claimed in tail.margins:
        actual = _margin(s)
        if claimed != actual:
            raise _Reject(f"tail margin s={s}", "margins", f"claimed {claimed}, recomputed {actual}")
        if actual <= 0:
            raise _Reject(f"tail margin s={s}", "margins", f"L({s}) = {actual} is not positive")

    dom = tail.dominance
    where = f"dominance (a={dom.a}, b={dom.b}, k0={dom.k0})"
    if dom.a < 1 or dom.k0 < 0:
        raise _Reject(where, "dominance", "requires a >= 1 and k0 >= 0")
    if (1 << dom.k0) < dom.a * dom.k0 + dom.b:
        raise _Reject(where, "dominance", f"base fails: 2^{dom.k0} < {dom.a * dom.k0 + dom.b}")
    if dom.a * dom.k0 < dom.a - dom.b:
        raise _Reject(where, "dominance", f"induction step fails at k0: {dom.a * dom.k0} < {dom.a - dom.b}")
    # for s = 2k or 2k+1 beyond the listed margins, 3 L(s) is bounded below by
    # 2^(k+1)(2^k - 6k - 6) - 2 or 2^(k+2)(2^k - 6k - 9) - 1; 2^k >= 6k + 10 makes both positive
    if dom.a < REQUIRED_A or dom.a * dom.k0 + dom.b < REQUIRED_A * dom.k0 + REQUIRED_B:
        raise _Reject(where, "dominance", f"does not imply 2^k >= {REQUIRED_A}k + {REQUIRED_B}")
    first_k = (tail.s_checked_max + 1) // 2
    if dom.k0 > first_k:
        raise _Reject(where, "dominance", f"k0 {dom.k0} leaves k = {first_k}..{dom.k0 - 1} uncovered")
    return len(tail.margins)


def check_certificate(cert: Certificate) -> CheckReport:
    """Re-verify every claim of ``cert``; the report names the first discrepancy."""
    report = CheckReport(ok=False)
    try:
        if cert.version != FORMAT_VERSION:
            raise _Reject("certificate", "version", f"unsupported version {cert.version!r}")
        _check_tiling(cert)
        if cert.boundary - 1 > core.WORD_LIMIT:
            raise _Reject("certificate", "tiling", "boundary too large for exhaustive cross-check")
        for i, seg in enumerate(cert.segments):
            _check_segment_rule(i, seg)
        _check_against_brute(cert)
        report.segments_checked = len(cert.segments)
        report.margins_checked = _check_tail(cert)
    except _Reject as rej:
        report.failure = rej.failure
        return report
    report.ok = True
    report.notes.append(
        f"x(n) classified for 1 <= n < {cert.boundary}; x(n) > 0 for all n >= {cert.boundary}"
    )
    return report
