"""Exit criteria. All comparisons are exact integer equality."""

import copy
import io
import math
import random
import time

import numpy as np
import pytest

from signcert.certificate import from_dict
from signcert.certifier import (
    block_chain,
    build_certificate,
    dominance_check,
    negative_chain,
    positive_chain,
    sandwich_bounds,
    tail_margin,
)
from signcert.checker import check_certificate
from signcert.cli import main
from signcert.core import eval_range, isqrt, m_of, r_of, x_of, z_of
from signcert.oracle import Sign, SignRun, emit_exercise_table, scan_signs, scan_summary, second_minimum

from known_values import BLOCK_TABLE, EXERCISE_TABLE, NEGATIVE_ANCHORS, ZEROS
from oracles import definitional_sequences

N, Z, P = Sign.NEGATIVE, Sign.ZERO, Sign.POSITIVE


@pytest.fixture(scope="module")
def cert():
    return build_certificate(200)


@pytest.mark.criterion(1, "exercise table: 21 golden x values")
def test_exercise_table():
    rows = emit_exercise_table()
    assert len(rows) == 21
    assert {r.n: r.x for r in rows} == EXERCISE_TABLE
    assert (x_of(1), x_of(9), x_of(300), x_of(1000)) == (-1, -15, -41, 182)


@pytest.mark.criterion(2, "zero set on [1, 4096] is {436, 451, 529, 545, 546}")
def test_zero_set():
    assert scan_summary(1, 4096).zeros == ZEROS


@pytest.mark.criterion(3, "sign regions on [1, 4096]")
def test_sign_regions():
    assert scan_signs(1, 4096) == [
        SignRun(1, 435, N), SignRun(436, 436, Z), SignRun(437, 449, P),
        SignRun(450, 450, N), SignRun(451, 451, Z), SignRun(452, 512, P),
        SignRun(513, 528, N), SignRun(529, 529, Z), SignRun(530, 544, P),
        SignRun(545, 546, Z), SignRun(547, 4096, P),
    ]


@pytest.mark.criterion(4, "minimum (129, -59); next smallest value -58; tail positive")
def test_extremum(cert):
    summ = scan_summary(1, 4096)
    assert (summ.min_at, summ.min_value) == (129, -59)
    assert second_minimum(4096, 129)[1] == -58
    report = check_certificate(cert)
    assert report.ok, report.failure


@pytest.mark.criterion(5, "first 37 blocks match the interval table")
def test_interval_table():
    got = [(b.start, b.end, b.r_val, b.m_val, b.x_min, b.x_max) for b in block_chain(37)]
    assert got == BLOCK_TABLE
    assert got[21] == (129, 144, 8, 16, -59, -49)


@pytest.mark.criterion(6, "extension chain anchors and end points")
def test_chain_anchors():
    neg = negative_chain(13)
    assert [s.anchor for s in neg] == NEGATIVE_ANCHORS
    assert neg[-1].derived_bound == 435
    bounds = [s.derived_bound for s in positive_chain(4095)]
    assert 1757 in bounds and 1064 in bounds
    assert bounds[-1] == 547


@pytest.mark.criterion(7, "tail margins positive for 12 <= s <= 200, dominance proven, certificate accepted")
def test_tail(cert):
    assert all(tail_margin(s) > 0 for s in range(12, 201))
    assert dominance_check(6, 10, 6).ok
    report = check_certificate(cert)
    assert report.ok, report.failure
    assert cert.boundary == 4097


@pytest.mark.criterion(8, "certificate passes; 100 random single-field corruptions all fail")
def test_certificate_robustness(cert):
    assert check_certificate(cert).ok
    doc = cert.to_dict()
    rng = random.Random(20261018)
    for i in range(100):
        d = copy.deepcopy(doc)
        kind = ("sign", "boundary", "margin")[i % 3]
        if kind == "sign":
            seg = rng.choice(d["segments"])
            seg["sign"] = rng.choice([s for s in ("neg", "zero", "pos") if s != seg["sign"]])
        elif kind == "boundary":
            d["boundary"] += rng.choice((-1, 1))
        else:
            pair = rng.choice(d["tail"]["margins"])
            pair[1] = str(int(pair[1]) - 1)
        assert not check_certificate(from_dict(d)).ok, (i, kind)


@pytest.mark.criterion(9, "exceed 10^6 returns a verified witness in under 1 s")
def test_unbounded():
    out = io.StringIO()
    t0 = time.perf_counter()
    code = main(["exceed", "1000000"], out=out)
    elapsed = time.perf_counter() - t0
    assert code == 0
    fields = dict(kv.split("=") for kv in out.getvalue().split())
    n, x = int(fields["n"]), int(fields["x"])
    assert x == x_of(n) > 10**6
    assert elapsed < 1.0


@pytest.mark.criterion(10, "property suites: monotonicity, closed forms, preimages, isqrt, sandwich")
def test_property_suites():
    cols = eval_range(1, 10**6)
    for name in ("z", "m", "r"):
        assert np.all(np.diff(cols[name]) >= 0)

    limit = 10**5
    zs, ms, rs = definitional_sequences(limit)
    assert all((z_of(n), m_of(n), r_of(n)) == (zs[n], ms[n], rs[n]) for n in range(1, limit + 1))

    small = eval_range(1, 1001 * 1001 // 2 + 1)
    z_counts = np.bincount(small["z"], minlength=1001)
    m_counts = np.bincount(small["m"], minlength=1002)
    for k in range(1001):
        assert z_counts[k] == (1 if k % 2 == 0 else 2)
        assert m_counts[k] == (0 if k == 0 else k if k % 2 else k + 1)
        if k >= 1:
            lo, hi = 2 ** (k - 1) + 1, 2**k
            assert r_of(lo - 1) == k - 1 and r_of(lo) == k == r_of(hi) and r_of(hi + 1) == k + 1

    rng = random.Random(512)
    for _ in range(10_000):
        v = rng.getrandbits(512)
        m = isqrt(v)
        assert m * m <= v < (m + 1) ** 2 and m == math.isqrt(v)

    for _ in range(200):
        a, n, b = sorted(rng.randint(1, 2**40) for _ in range(3))
        lower, upper = sandwich_bounds(a, b)
        assert lower <= x_of(n) <= upper
