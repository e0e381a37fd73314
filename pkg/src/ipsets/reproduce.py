"""Re-derive the headline minimum-diameter results from scratch.

Each check returns ``(name, ok, detail)``; nothing is read from the stored
tables except the values being compared against.
"""

from __future__ import annotations

from . import constructions as C
from .core import certify
from .fixtures import load
from .search import enumerate_planar_min, scan_truncation_pairs, search_line_apex, truncation_pair_ok
from .tables import lookup


def _planar_exact(long: bool):
    ns = range(3, 9) if long else range(3, 8)
    got = [enumerate_planar_min(n, lookup(2, n).d).diameter for n in ns]
    want = [lookup(2, n).d for n in ns]
    return "exact d(2,n), n<=%d" % ns[-1], got == want, " ".join(map(str, got))


def _line_apex(long: bool):
    ns = range(9, 23) if long else range(9, 17)
    got = [search_line_apex(n, lookup(2, n).d + 10).diameter for n in ns]
    want = [lookup(2, n).d for n in ns]
    return f"line-apex minima n={ns[0]}..{ns[-1]}", got == want, " ".join(map(str, got))


def _truncated():
    ok = True
    for m in range(2, 6):
        cert = certify(C.truncated_simplex(C.TruncationParams(m, 8, 7)), m)
        ok &= cert.ok and cert.diameter == (15 if m == 2 else 17)
    return "truncated simplex m^2+m points, diameter 17", ok, "m=2..5"


def _line_sphere():
    cfg = C.line_apex_from_sdm(load("line_apex_960").sdm)
    sdm = C.line_circle_combine(cfg, load("trapezoid_x15").sdm, 3)
    cert = certify(sdm, 3)
    ok = cert.ok and sdm.n == 15 and cert.diameter == lookup(3, 15).d
    return "line plus sphere gives d(3,15)", ok, f"n={sdm.n} diameter={cert.diameter}"


def _parallel():
    cfg = C.TwoLineConfig((0, 3, 8, 11), "3/2", "19/2", "315/4")
    ok = True
    for m in range(3, 7):
        sdm = C.blow_up_parallel(cfg, m, 6)
        cert = certify(sdm, m)
        ok &= cert.ok and sdm.n == 2 * m + 2 and cert.diameter == 13
    return "parallel blow-up d(m,2m+2)<=13", ok, "m=3..6"


def _pairs(long: bool):
    limit = 10 ** 7 if long else 20000
    pairs = scan_truncation_pairs(limit)
    big = truncation_pair_ok(8109409, 2021231)
    expected = [(8, 7), (8109409, 2021231)] if long else [(8, 7)]
    return f"coprime truncation pairs <= {limit}", pairs == expected and big, str(pairs)


def run_all(long: bool = False):
    yield _planar_exact(long)
    yield _line_apex(long)
    yield _truncated()
    yield _line_sphere()
    yield _parallel()
    yield _pairs(long)
