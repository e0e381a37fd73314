"""Searches for small-diameter integral point sets.

* :func:`search_line_apex` - minimum diameter over the family of planar sets
  with n-1 collinear points and one apex, driven by the factorisations of h².
* :func:`enumerate_planar_min` - exact d(2, n) for small n by exhaustive
  enumeration over square classes ("characteristics") of point heights.
* :func:`scan_truncation_pairs` - parameters of integral truncated simplices.
"""

from __future__ import annotations

import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .constructions import LineApexConfig, line_apex_to_sdm
from .core import SquaredDistanceMatrix, is_perfect_square
from .errors import Infeasible, NotFoundBelowCap


@dataclass(frozen=True)
class OffsetCatalog:
    """All q >= 0 with q² + h2 the square of an integer, plus those integers."""

    h2: Fraction
    offsets: tuple[Fraction, ...]
    apex: dict = field(compare=False, repr=False)

    @property
    def positions(self) -> list[Fraction]:
        """Signed candidate positions on the line, sorted."""
        return sorted({q for q in self.offsets} | {-q for q in self.offsets})


@dataclass(frozen=True)
class SearchWitness:
    diameter: int
    n: int
    config: LineApexConfig | None = None
    sdm: SquaredDistanceMatrix | None = None

    def to_sdm(self) -> SquaredDistanceMatrix:
        if self.sdm is not None:
            return self.sdm
        return line_apex_to_sdm(self.config)


@dataclass
class CharacteristicClass:
    """Candidate third points sharing the square class k of their height.

    Coordinates are scaled by 2D (D = base length): a candidate at integer
    distances r, s from the base endpoints sits at ``X = r² - s² + D²`` and
    height ``U * sqrt(k)``.
    """

    k: int
    candidates: list[tuple[int, int, int, int]] = field(default_factory=list)


def _split_h2(h2) -> tuple[int, int] | None:
    """Write h2 = H / t² with integers H, t; None if the denominator is not square."""
    h2 = Fraction(h2)
    t = math.isqrt(h2.denominator)
    if t * t != h2.denominator:
        return None
    return h2.numerator, t


def _factor_pairs(H: int) -> Iterator[tuple[int, int]]:
    e = 1
    while e * e <= H:
        if H % e == 0:
            yield e, H // e
        e += 1


def offsets_for(h2) -> OffsetCatalog:
    """Catalog of offsets q >= 0 for which sqrt(q² + h2) is an integer.

    With h2 = H / t², every solution comes from a factorisation H = e·f with
    e ≡ f (mod 2): q = (f - e) / (2t) and apex distance (f + e) / (2t), the
    latter required to be an integer.
    """
    h2 = Fraction(h2)
    if h2 <= 0:
        raise ValueError("h2 must be positive")
    split = _split_h2(h2)
    apex: dict[Fraction, int] = {}
    if split is not None:
        H, t = split
        for e, f in _factor_pairs(H):
            if (f - e) % 2 == 0 and ((f + e) // 2) % t == 0:
                apex[Fraction(f - e, 2 * t)] = (f + e) // (2 * t)
    return OffsetCatalog(h2, tuple(sorted(apex)), apex)


def offsets_brute_force(h2) -> list[Fraction]:
    """Independent oracle: scan q on the 1/t grid up to the apex-distance bound."""
    split = _split_h2(h2)
    if split is None:
        return []
    H, t = split
    out = []
    # Q² + H = T² with T > Q implies Q <= (H - 1) / 2.
    for Q in range(0, (H - 1) // 2 + 2):
        T2 = Q * Q + H
        T = math.isqrt(T2)
        if T * T == T2 and T % t == 0:
            out.append(Fraction(Q, t))
    return out


def _window_key(diameter: int, h2: Fraction, window) -> tuple:
    return (diameter, h2, tuple(window))


def best_window(catalog: OffsetCatalog, n: int) -> tuple[int, list[Fraction]]:
    """Best choice of n-1 signed positions for a fixed h2.

    Only consecutive runs of sorted positions need checking: the span and the
    largest apex distance both depend on the extreme positions only.  Positions
    in different residue classes mod 1 can never share a line.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    k = n - 1
    groups: dict[Fraction, list[Fraction]] = defaultdict(list)
    for p in catalog.positions:
        groups[p % 1].append(p)
    best = None
    for ps in groups.values():
        for i in range(len(ps) - k + 1):
            lo, hi = ps[i], ps[i + k - 1]
            d = max(int(hi - lo), catalog.apex[max(-lo, hi)])
            cand = (d, ps[i:i + k])
            if best is None or cand < best:
                best = cand
    if best is None:
        raise Infeasible(
            f"h2={catalog.h2} offers {len(catalog.positions)} positions, need {k}"
        )
    return best


def _catalog_chunk(t: int, lo: int, hi: int) -> dict[int, dict[Fraction, int]]:
    """Offset catalogs for every H in [lo, hi) on the 1/t grid, one sieve pass."""
    cats: dict[int, dict[Fraction, int]] = defaultdict(dict)
    e = 1
    while e * e < hi:
        f = max(e, -(-lo // e))
        if (f - e) % 2:
            f += 1
        while e * f < hi:
            if ((f + e) // 2) % t == 0:
                cats[e * f][Fraction(f - e, 2 * t)] = (f + e) // (2 * t)
            f += 2
        e += 1
    return cats


def _search_chunk(n: int, t: int, lo: int, hi: int, cap: int):
    """Best (key, config) for h2 = H / t², H in [lo, hi), diameter <= cap."""
    best = None
    need = n - 1
    cats = _catalog_chunk(t, lo, hi)
    for H in sorted(cats):
        h2 = Fraction(H, t * t)
        if h2.denominator != t * t:
            continue  # already covered by a smaller denominator
        if best is not None and h2 >= best[0][0] ** 2:
            break
        apex = cats[H]
        if 2 * len(apex) - (0 in apex) < need:
            continue
        try:
            d, window = best_window(OffsetCatalog(h2, tuple(sorted(apex)), apex), n)
        except Infeasible:
            continue
        if d > cap:
            continue
        key = _window_key(d, h2, window)
        if best is None or key < best[0]:
            best = (key, window)
    return best


def _h2_chunks(t: int, cap: int, size: int):
    # diameter > sqrt(h2), so h2 < cap² i.e. H < (t * cap)².
    top = (t * cap) ** 2
    lo = 1
    while lo < top:
        yield lo, min(top, lo + size)
        lo += size


def search_line_apex(
    n: int,
    diameter_cap: int,
    max_denominator: int = 2,
    jobs: int = 1,
    chunk: int = 1 << 16,
) -> SearchWitness:
    """Minimum-diameter line-apex set with n points and diameter <= cap.

    The apex foot may sit on the 1/t grid for t <= max_denominator (the line
    differences being integers, 2 suffices unless all gaps share a factor).
    Ties go to smaller h2, then to the lexicographically smallest offsets.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    tasks = [
        (n, t, lo, hi, diameter_cap)
        for t in range(1, max_denominator + 1)
        for lo, hi in _h2_chunks(t, diameter_cap, chunk)
    ]
    results = []
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_search_chunk, *zip(*tasks)))
    else:
        best = None
        for task in tasks:
            _, t, lo, _, _ = task
            # Skip chunks whose smallest h2 already exceeds the best diameter².
            if best is not None and Fraction(lo, t * t) >= best[0][0] ** 2:
                continue
            r = _search_chunk(*task)
            if r is not None and (best is None or r[0] < best[0]):
                best = r
            results.append(r)
    found = [r for r in results if r is not None]
    if not found:
        raise NotFoundBelowCap(f"no {n}-point line-apex set with diameter <= {diameter_cap}")
    (d, h2, _), window = min(found, key=lambda r: r[0])
    return SearchWitness(d, n, config=LineApexConfig(h2, tuple(window)))


# -- exhaustive planar enumeration -------------------------------------------

def squarefree_part(x: int) -> int:
    """Squarefree kernel k of x > 0, so that x = k * (square)."""
    if x <= 0:
        raise ValueError("squarefree_part needs a positive integer")
    k = 1
    p = 2
    while p * p <= x:
        if x % p == 0:
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            if e % 2:
                k *= p
        p += 1 if p == 2 else 2
    return k * x


def _classes_for_base(D: int):
    """Collinear candidates and characteristic classes for base length D."""
    collinear = []
    classes: dict[int, CharacteristicClass] = {}
    four_d2 = 4 * D * D
    for r in range(1, D + 1):
        for s in range(1, D + 1):
            X = r * r - s * s + D * D
            N = four_d2 * r * r - X * X
            if N < 0:
                continue
            if N == 0:
                collinear.append((r, s, X, 0))
                continue
            k = squarefree_part(N)
            U = math.isqrt(N // k)
            cls = classes.setdefault(k, CharacteristicClass(k))
            cls.candidates.append((r, s, X, U))
            cls.candidates.append((r, s, X, -U))
    return collinear, [classes[k] for k in sorted(classes)]


def _pair_square(D: int, k: int, p, q) -> int | None:
    """Squared distance of two candidates if it is an integer square <= D²."""
    num = (p[2] - q[2]) ** 2 + k * (p[3] - q[3]) ** 2
    den = 4 * D * D
    if num == 0 or num % den:
        return None
    sq = num // den
    if sq > D * D or not is_perfect_square(sq):
        return None
    return sq


def _cliques(adj: list[int], cand: int, size: int, first_class: int, need_plus):
    """Yield index tuples of cliques of ``size`` drawn from bitset ``cand``.

    Vertices >= first_class are class points; the smallest class point of a
    clique must satisfy ``need_plus`` (reflection symmetry across the base).
    """
    def rec(chosen: list[int], cand: int, have_class: bool):
        if len(chosen) == size:
            if have_class:
                yield tuple(chosen)
            return
        while cand:
            if cand.bit_count() < size - len(chosen):
                return
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            is_class = v >= first_class
            if is_class and not have_class and not need_plus(v):
                continue
            if not have_class and not is_class and not cand >> first_class:
                return
            chosen.append(v)
            yield from rec(chosen, cand & adj[v], have_class or is_class)
            chosen.pop()

    yield from rec([], cand, False)


def _sets_with_base(D: int, n: int, first_only: bool):
    collinear, classes = _classes_for_base(D)
    size = n - 2
    for cls in classes:
        verts = collinear + cls.candidates
        if len(cls.candidates) == 0 or len(verts) < size:
            continue
        m = len(verts)
        adj = [0] * m
        for i in range(m):
            for j in range(i + 1, m):
                if _pair_square(D, cls.k, verts[i], verts[j]) is not None:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
        first_class = len(collinear)
        for clique in _cliques(adj, (1 << m) - 1, size, first_class,
                               lambda v: verts[v][3] > 0):
            yield cls.k, [verts[v] for v in clique]
            if first_only:
                return


def _planar_sdm(D: int, k: int, pts) -> SquaredDistanceMatrix:
    allp = [(0, D, 0, 0), (D, 0, 2 * D * D, 0)] + list(pts)

    def sq(i: int, j: int) -> int:
        if i == 0 and j == 1:
            return D * D
        if i < 2:
            return allp[j][i] ** 2
        return _pair_square(D, k, allp[i], allp[j])

    return SquaredDistanceMatrix.from_function(len(allp), sq)


def enumerate_planar_min(n: int, diameter_cap: int) -> SearchWitness:
    """Exact d(2, n) if it is <= diameter_cap, by exhaustive enumeration.

    Diameters are tried in increasing order with a diameter pair fixed as the
    base AB.  Non-collinear points of an integral planar set share one square
    class of heights, so each class is searched separately for a clique of
    n-2 mutually compatible points.  Among all sets at the minimal diameter
    the lexicographically smallest sorted distance list is returned.
    """
    if n < 3:
        raise ValueError("need n >= 3")
    for D in range(1, diameter_cap + 1):
        if next(_sets_with_base(D, n, True), None) is None:
            continue
        best = None
        for k, pts in _sets_with_base(D, n, False):
            sdm = _planar_sdm(D, k, pts)
            key = tuple(sdm.distances())
            if best is None or key < best[0]:
                best = (key, sdm)
        return SearchWitness(D, n, sdm=best[1])
    raise NotFoundBelowCap(f"d(2,{n}) exceeds {diameter_cap}")


# -- truncated simplex parameters --------------------------------------------

def scan_truncation_pairs(limit: int) -> list[tuple[int, int]]:
    """Coprime (corner_edge, middle_edge) <= limit giving integral truncations.

    Needs (a+b)² + a² and a² + ab + b² to be squares.  The first condition
    makes (a, a+b) the legs of a primitive Pythagorean triple (coprimality of
    a, b is coprimality of the legs, and a is the shorter leg), so the scan
    walks Euclid's parametrisation instead of all limit² pairs.
    """
    out = []
    top = 2 * limit
    m = 2
    # A leg pair below 2*limit forces m² <= (1 + sqrt 2) * limit.
    while m * m <= 3 * limit:
        for k in range(1 + m % 2, m, 2):
            if math.gcd(m, k) != 1:
                continue
            x, y = m * m - k * k, 2 * m * k
            a, c = min(x, y), max(x, y)
            b = c - a
            if a > limit or b > limit or c > top:
                continue
            if is_perfect_square(a * a + a * b + b * b):
                out.append((a, b))
        m += 1
    return sorted(out)


def truncation_pair_ok(corner_edge: int, middle_edge: int) -> bool:
    a, b = corner_edge, middle_edge
    return is_perfect_square(a * a + a * b + b * b) and is_perfect_square((a + b) ** 2 + a * a)
