"""Certificate data model and its JSON wire format.

Document layout::

    {"version": "1", "boundary": 4097,
     "segments": [{"lo": 1, "hi": 1, "sign": "neg", "method": "lemma2-neg", "anchor": 1}, ...],
     "tail": {"s_min": 12, "s_checked_max": 200,
              "margins": [[12, "938"], ...],
              "dominance": {"a": 6, "b": 10, "k0": 6}}}

Margins are decimal strings because they outgrow 2^53.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from typing import Any, Optional

from .oracle import Sign

FORMAT_VERSION = "1"


class Method(Enum):
    BRUTE = "brute"
    NEGATIVE_EXTENSION = "lemma2-neg"
    POSITIVE_EXTENSION = "lemma2-pos"
    BLOCK = "lemma3-block"


class CertificateParseError(ValueError):
    pass


@dataclass(frozen=True)
class Segment:
    lo: int
    hi: int
    sign: Sign
    method: Method
    anchor: Optional[int] = None


@dataclass(frozen=True)
class Dominance:
    """Claim: 2^k >= a*k + b for every k >= k0."""

    a: int
    b: int
    k0: int


@dataclass(frozen=True)
class TailCertificate:
    s_min: int
    s_checked_max: int
    margins: list[tuple[int, int]]
    dominance: Dominance


@dataclass
class Certificate:
    segments: list[Segment]
    tail: TailCertificate
    boundary: int
    version: str = FORMAT_VERSION

    def to_dict(self) -> dict[str, Any]:
        segs = []
        for seg in self.segments:
            d: dict[str, Any] = {"lo": seg.lo, "hi": seg.hi, "sign": seg.sign.value, "method": seg.method.value}
            if seg.anchor is not None:
                d["anchor"] = seg.anchor
            segs.append(d)
        dom = self.tail.dominance
        return {
            "version": self.version,
            "boundary": self.boundary,
            "segments": segs,
            "tail": {
                "s_min": self.tail.s_min,
                "s_checked_max": self.tail.s_checked_max,
                "margins": [[s, str(v)] for s, v in self.tail.margins],
                "dominance": {"a": dom.a, "b": dom.b, "k0": dom.k0},
            },
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"


def _int(obj: Any, where: str) -> int:
    if isinstance(obj, bool):
        raise CertificateParseError(f"{where}: expected integer, got {obj!r}")
    if isinstance(obj, int):
        return obj
    if isinstance(obj, str):
        try:
            return int(obj, 10)
        except ValueError:
            pass
    raise CertificateParseError(f"{where}: expected integer, got {obj!r}")


def _get(d: Any, key: str, where: str) -> Any:
    if not isinstance(d, dict):
        raise CertificateParseError(f"{where}: expected object")
    if key not in d:
        raise CertificateParseError(f"{where}: missing field {key!r}")
    return d[key]


def from_dict(doc: Any) -> Certificate:
    version = _get(doc, "version", "certificate")
    if not isinstance(version, str):
        raise CertificateParseError("version must be a string")
    boundary = _int(_get(doc, "boundary", "certificate"), "boundary")

    raw_segments = _get(doc, "segments", "certificate")
    if not isinstance(raw_segments, list):
        raise CertificateParseError("segments must be an array")
    segments = []
    for i, raw in enumerate(raw_segments):
        where = f"segments[{i}]"
        try:
            sign = Sign(_get(raw, "sign", where))
            method = Method(_get(raw, "method", where))
        except ValueError as exc:
            raise CertificateParseError(f"{where}: {exc}") from None
        anchor = raw.get("anchor")
        segments.append(Segment(
            _int(_get(raw, "lo", where), f"{where}.lo"),
            _int(_get(raw, "hi", where), f"{where}.hi"),
            sign,
            method,
            None if anchor is None else _int(anchor, f"{where}.anchor"),
        ))

    tail = _get(doc, "tail", "certificate")
    margins_raw = _get(tail, "margins", "tail")
    if not isinstance(margins_raw, list):
        raise CertificateParseError("tail.margins must be an array")
    margins = []
    for i, pair in enumerate(margins_raw):
        if not isinstance(pair, list) or len(pair) != 2:
            raise CertificateParseError(f"tail.margins[{i}]: expected [s, L] pair")
        margins.append((_int(pair[0], f"tail.margins[{i}][0]"), _int(pair[1], f"tail.margins[{i}][1]")))
    dom = _get(tail, "dominance", "tail")
    dominance = Dominance(
        _int(_get(dom, "a", "tail.dominance"), "tail.dominance.a"),
        _int(_get(dom, "b", "tail.dominance"), "tail.dominance.b"),
        _int(_get(dom, "k0", "tail.dominance"), "tail.dominance.k0"),
    )
    return Certificate(
        segments=segments,
        tail=TailCertificate(
            _int(_get(tail, "s_min", "tail"), "tail.s_min"),
            _int(_get(tail, "s_checked_max", "tail"), "tail.s_checked_max"),
            margins,
            dominance,
        ),
        boundary=boundary,
        version=version,
    )


def loads(text: str) -> Certificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateParseError(f"not valid JSON: {exc}") from None
    return from_dict(doc)
