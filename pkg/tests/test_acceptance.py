"""End-to-end acceptance checks, one test group per criterion.

Each test carries ``@pytest.mark.acceptance(label)``; the terminal summary
prints one PASS/FAIL line per label.  Run with ``--runslow`` to include the
full coprime scan.
"""

import random
from collections import Counter
from fractions import Fraction
from math import comb, isqrt

import pytest

from ipsets.constructions import (
    LineApexConfig,
    TruncationParams,
    TwoLineConfig,
    blow_up_apex,
    blow_up_parallel,
    line_apex_to_sdm,
    line_circle_combine,
    regular_simplex,
    truncated_simplex,
    truncation_class_counts,
)
from ipsets.core import SquaredDistanceMatrix, cayley_menger_det, certify, circumradius_squared, scale
from ipsets.fixtures import load
from ipsets.search import (
    enumerate_planar_min,
    offsets_brute_force,
    offsets_for,
    scan_truncation_pairs,
    search_line_apex,
    truncation_pair_ok,
)
from ipsets.tables import TABLE, audit, lookup

C1 = "1 exact small-n planar minima"
C2 = "2 line-apex search equals the table for n=9..16"
C3 = "3 truncated simplex with corner 8, middle 7"
C4 = "4 h2=960 set, apex blow-up and line plus sphere"
C5 = "5 parallel blow-up of the two-line set"
C6 = "6 apex blow-up of the search witnesses"
C7 = "7 coprime truncation-pair scan"
C8 = "8 property suites"

LINE_APEX = {9: 29, 10: 40, 11: 51, 12: 63, 13: 74, 14: 91, 15: 104, 16: 121}


@pytest.fixture(scope="module")
def witnesses():
    return {n: search_line_apex(n, d + 10) for n, d in LINE_APEX.items()}


# -- 1 ----------------------------------------------------------------------

@pytest.mark.acceptance(C1)
@pytest.mark.parametrize("n, cap, d", [(3, 2, 1), (4, 6, 4), (5, 9, 7), (6, 10, 8), (7, 20, 17)])
def test_planar_minima(n, cap, d):
    w = enumerate_planar_min(n, cap)
    cert = certify(w.to_sdm(), 2)
    assert w.diameter == d and cert.ok and cert.integral and cert.diameter == d


@pytest.mark.acceptance(C1)
def test_planar_minimum_8():
    # listed as a stretch goal; it runs in well under a second
    w = enumerate_planar_min(8, 25)
    assert w.diameter == 21 and certify(w.to_sdm(), 2).ok


# -- 2 ----------------------------------------------------------------------

@pytest.mark.acceptance(C2)
@pytest.mark.parametrize("n", sorted(LINE_APEX))
def test_line_apex_minima(witnesses, n):
    w = witnesses[n]
    assert w.diameter == LINE_APEX[n] == lookup(2, n).d
    sdm = w.to_sdm()
    cert = certify(sdm, 2)
    assert sdm.n == n and cert.ok and cert.integral and cert.diameter == LINE_APEX[n]


# -- 3 ----------------------------------------------------------------------

CLASS_LENGTH = {"corner": 8, "middle": 7, "across": 15, "skew": 13, "disjoint": 17}


@pytest.mark.acceptance(C3)
@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_truncated(m):
    sdm = truncated_simplex(TruncationParams(m, 8, 7))
    cert = certify(sdm, m)
    assert sdm.n == m * m + m
    assert cert.ok and cert.integral and cert.diameter == (15 if m == 2 else 17)


@pytest.mark.acceptance(C3)
def test_truncated_m3_distances():
    sdm = truncated_simplex(TruncationParams(3, 8, 7))
    got = Counter(isqrt(x) for x in sdm.off_diagonal())
    assert set(got) == {7, 8, 13, 15, 17}
    counts = truncation_class_counts(3)
    assert sum(counts.values()) == comb(12, 2) == 66
    assert got == Counter({CLASS_LENGTH[k]: c for k, c in counts.items()})


# -- 4 ----------------------------------------------------------------------

OFFSETS_960 = (-43, -34, -22, -14, -8, -1, 1, 8, 14, 22, 34)


@pytest.mark.acceptance(C4)
def test_h2_960_planar():
    sdm = line_apex_to_sdm(LineApexConfig(960, OFFSETS_960))
    cert = certify(sdm, 2)
    assert (sdm.n, cert.dim, cert.integral, cert.diameter) == (12, 2, True, 77)
    assert sdm == load("line_apex_960").sdm


@pytest.mark.acceptance(C4)
def test_h2_960_blow_up():
    sdm = blow_up_apex(LineApexConfig(960, OFFSETS_960), 3)
    cert = certify(sdm, 3)
    assert (sdm.n, cert.dim, cert.integral, cert.diameter) == (13, 3, True, 77)


@pytest.mark.acceptance(C4)
def test_line_plus_sphere():
    sphere = load("trapezoid_x15").sdm
    assert sphere == scale(load("trapezoid_4_3_2").sdm, 15)
    assert circumradius_squared(sphere) == 960
    sdm = line_circle_combine(LineApexConfig(960, OFFSETS_960), sphere, 3)
    cert = certify(sdm, 3)
    assert (sdm.n, cert.dim, cert.integral, cert.diameter) == (15, 3, True, 77)
    assert cert.diameter == lookup(3, 15).d


# -- 5 ----------------------------------------------------------------------

@pytest.fixture(scope="module")
def two_line():
    return TwoLineConfig((0, 3, 8, 11), Fraction(3, 2), Fraction(19, 2), Fraction(315, 4))


@pytest.mark.acceptance(C5)
@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_parallel_blow_up(two_line, m):
    assert two_line.f == 8 and isqrt(8 * 8 + 6 * 6) == 10
    sdm = blow_up_parallel(two_line, m, 6)
    cert = certify(sdm, m)
    assert (sdm.n, cert.dim, cert.integral, cert.diameter) == (2 * m + 2, m, True, 13)
    if m == 3:
        assert cert.diameter == lookup(3, 8).d


# -- 6 ----------------------------------------------------------------------

@pytest.mark.acceptance(C6)
@pytest.mark.parametrize("m", [3, 4, 5])
@pytest.mark.parametrize("n", range(9, 15))
def test_witness_blow_up(witnesses, n, m):
    w = witnesses[n]
    sdm = blow_up_apex(w.config, m)
    cert = certify(sdm, m)
    assert sdm.n == n - 2 + m
    assert cert.ok and cert.integral and cert.diameter == lookup(2, n).d


# -- 7 ----------------------------------------------------------------------

@pytest.mark.acceptance(C7)
def test_scan_20000():
    assert scan_truncation_pairs(20000) == [(8, 7)]


@pytest.mark.acceptance(C7)
def test_large_pair_orientation():
    a, b = 2021231, 8109409
    ok = [(x, y) for x, y in ((a, b), (b, a)) if truncation_pair_ok(x, y)]
    assert ok == [(b, a)]
    s, t = b * b + a * b + a * a, (a + b) ** 2 + b * b
    assert isqrt(s) ** 2 == s and isqrt(t) ** 2 == t


@pytest.mark.slow
@pytest.mark.acceptance(C7)
def test_scan_ten_million():
    assert scan_truncation_pairs(10 ** 7) == [(8, 7), (8109409, 2021231)]


# -- 8 ----------------------------------------------------------------------

def _lattice_offsets(h2):
    # every solution of T² - Q² = h2 has T = Q + delta with delta² <= h2
    out = []
    delta = 1
    while delta * delta <= h2:
        rest = h2 - delta * delta
        if rest % (2 * delta) == 0:
            out.append(rest // (2 * delta))
        delta += 1
    return sorted(out)


@pytest.mark.acceptance(C8)
def test_offsets_against_oracles():
    for h2 in range(1, 20001):
        got = list(offsets_for(h2).offsets)
        assert got == _lattice_offsets(h2), h2
        if h2 <= 2000:
            assert got == offsets_brute_force(h2), h2


@pytest.mark.acceptance(C8)
def test_cayley_menger_heron():
    for a in range(1, 31):
        for b in range(a, 31):
            for c in range(b, min(a + b, 31)):
                tri = SquaredDistanceMatrix(((0, a * a, b * b), (a * a, 0, c * c), (b * b, c * c, 0)))
                heron16 = (a + b + c) * (-a + b + c) * (a - b + c) * (a + b - c)
                assert -cayley_menger_det(tri) == heron16


@pytest.mark.acceptance(C8)
@pytest.mark.parametrize("k", range(1, 9))
def test_regular_simplex(k):
    for e in (1, 2, 5):
        sdm = regular_simplex(k + 1, e)
        assert certify(sdm).dim == k
        assert circumradius_squared(sdm) == Fraction(e * e * k, 2 * (k + 1))


@pytest.mark.acceptance(C8)
@pytest.mark.parametrize("name", ["hexagon_3_5", "two_line_13", "solid_8_13", "line_apex_960"])
def test_certificate_invariance(name):
    sdm = load(name).sdm
    base = certify(sdm)
    rnd = random.Random(name)
    for _ in range(10):
        perm = list(range(sdm.n))
        rnd.shuffle(perm)
        assert certify(sdm.permuted(perm)) == base
    for k in (2, 3, 11):
        c = certify(scale(sdm, k))
        assert (c.dim, c.integral, c.diameter_squared) == (base.dim, base.integral, base.diameter_squared * k * k)


@pytest.mark.acceptance(C8)
def test_table_audit():
    rep = audit()
    assert rep.ok and rep.checked == len(TABLE.entries)
