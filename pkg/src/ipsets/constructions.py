"""Constructions of integral point sets, emitted as squared-distance matrices.

No coordinates are materialised: every construction writes down the squared
distances its geometry implies, and correctness is left to :func:`certify`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import (
    SquaredDistanceMatrix,
    certify,
    circumradius_squared,
    embedding_dimension,
    is_perfect_square,
    rational_sqrt,
    scale,
)
from .errors import (
    DimMismatch,
    DoesNotFit,
    InvalidConfig,
    NoCommonSphere,
    NotPythagorean,
    SphereMismatch,
)

__all__ = [
    "LineApexConfig",
    "TwoLineConfig",
    "TruncationParams",
    "regular_simplex",
    "simplex_circumradius_squared",
    "line_apex_to_sdm",
    "line_apex_from_sdm",
    "two_line_to_sdm",
    "blow_up_apex",
    "blow_up_parallel",
    "truncated_simplex",
    "truncation_class_counts",
    "line_circle_combine",
    "scale",
]


def _integral_square(x: Fraction, what: str) -> int:
    """Check that ``x`` is the square of an integer and return it as int."""
    if x.denominator != 1 or not is_perfect_square(x.numerator) or x <= 0:
        raise InvalidConfig(f"{what} has squared length {x}, not a positive integer square")
    return x.numerator


@dataclass(frozen=True)
class LineApexConfig:
    """n-1 collinear points plus one apex at height sqrt(h2) above the line.

    ``offsets`` are the signed positions of the collinear points measured from
    the foot of the apex.  They may be rational (the foot of a minimal set can
    sit halfway between grid points), but their pairwise differences and every
    apex distance ``sqrt(q**2 + h2)`` must be integers.
    """

    h2: Fraction
    offsets: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        h2 = Fraction(self.h2)
        offsets = tuple(Fraction(q) for q in self.offsets)
        object.__setattr__(self, "h2", h2)
        object.__setattr__(self, "offsets", offsets)
        if h2 <= 0:
            raise InvalidConfig("apex height must be positive")
        if not offsets:
            raise InvalidConfig("at least one collinear point is required")
        for a, b in zip(offsets, offsets[1:]):
            if not a < b:
                raise InvalidConfig("offsets must be strictly increasing")
            if (b - a).denominator != 1:
                raise InvalidConfig(f"offsets {a} and {b} are not an integer apart")
        for q in offsets:
            _integral_square(q * q + h2, f"apex segment at offset {q}")

    @property
    def n(self) -> int:
        return len(self.offsets) + 1

    def apex_distance(self, q: Fraction) -> int:
        return math.isqrt((q * q + self.h2).numerator)

    @property
    def diameter(self) -> int:
        span = int(self.offsets[-1] - self.offsets[0])
        reach = max(abs(self.offsets[0]), abs(self.offsets[-1]))
        return max(span, self.apex_distance(reach))


@dataclass(frozen=True)
class TwoLineConfig:
    """n-2 points on a base line and two points P1, P2 on a parallel line.

    All positions are measured along the base line; ``h2`` is the squared
    distance between the two lines.
    """

    line_positions: tuple[Fraction, ...]
    p1_position: Fraction
    p2_position: Fraction
    h2: Fraction

    def __post_init__(self) -> None:
        pos = tuple(Fraction(x) for x in self.line_positions)
        p1, p2, h2 = Fraction(self.p1_position), Fraction(self.p2_position), Fraction(self.h2)
        for name, val in (("line_positions", pos), ("p1_position", p1),
                          ("p2_position", p2), ("h2", h2)):
            object.__setattr__(self, name, val)
        if h2 <= 0:
            raise InvalidConfig("the two lines must be distinct (h2 > 0)")
        if not p1 < p2:
            raise InvalidConfig("p1_position must be left of p2_position")
        if len(pos) < 1:
            raise InvalidConfig("at least one point on the base line is required")
        for a, b in zip(pos, pos[1:]):
            if not a < b:
                raise InvalidConfig("line positions must be strictly increasing")
        # Construction-time integrality check of every emitted squared distance.
        self.to_sdm()

    @property
    def f(self) -> Fraction:
        return self.p2_position - self.p1_position

    @property
    def n(self) -> int:
        return len(self.line_positions) + 2

    def to_sdm(self) -> SquaredDistanceMatrix:
        pos = self.line_positions
        pts = list(pos)
        k = len(pts)

        def sq(i: int, j: int) -> int:
            if j < k:
                return _integral_square((pts[i] - pts[j]) ** 2, "line segment")
            top = self.p1_position if j == k else self.p2_position
            if i < k:
                return _integral_square((pts[i] - top) ** 2 + self.h2, "cross segment")
            return _integral_square(self.f ** 2, "P1P2")

        return SquaredDistanceMatrix.from_function(k + 2, sq)


@dataclass(frozen=True)
class TruncationParams:
    m: int
    corner_edge: int
    middle_edge: int

    def __post_init__(self) -> None:
        if self.m < 2:
            raise InvalidConfig("truncation needs dimension m >= 2")
        if self.corner_edge < 1 or self.middle_edge < 1:
            raise InvalidConfig("corner_edge and middle_edge must be positive")

    @property
    def original_edge(self) -> int:
        return self.middle_edge + 2 * self.corner_edge


def regular_simplex(k_points: int, edge: int = 1) -> SquaredDistanceMatrix:
    if k_points < 1:
        raise ValueError("a simplex needs at least one point")
    if edge < 1:
        raise ValueError("edge must be a positive integer")
    e2 = edge * edge
    return SquaredDistanceMatrix.from_function(k_points, lambda i, j: e2)


def simplex_circumradius_squared(k_points: int, edge: int) -> Fraction:
    """Squared circumradius of a regular simplex with ``k_points`` vertices."""
    k = k_points - 1
    return Fraction(edge * edge * k, 2 * (k + 1))


def line_apex_to_sdm(cfg: LineApexConfig) -> SquaredDistanceMatrix:
    """Line points in offset order, followed by the apex."""
    q = cfg.offsets
    k = len(q)

    def sq(i: int, j: int) -> Fraction:
        if j < k:
            return (q[i] - q[j]) ** 2
        return q[i] * q[i] + cfg.h2

    return SquaredDistanceMatrix.from_function(k + 1, sq)


def line_apex_from_sdm(sdm: SquaredDistanceMatrix) -> LineApexConfig:
    """Recover the line-apex description of a planar set with n-1 collinear points.

    The apex is taken to be the last point whose removal leaves a collinear set.
    """
    n = sdm.n
    if n < 3:
        raise InvalidConfig("need at least two line points and an apex")
    apex = None
    for p in reversed(range(n)):
        rest = [i for i in range(n) if i != p]
        if embedding_dimension(sdm.submatrix(rest)) == 1:
            apex = p
            break
    if apex is None or embedding_dimension(sdm) != 2:
        raise InvalidConfig("not a planar set with all but one point collinear")
    line = [i for i in range(n) if i != apex]
    ref = line[0]
    # Signed positions along the line, relative to the first line point.
    far = max(line, key=lambda i: sdm[ref, i])
    pos = {}
    for i in line:
        x = rational_sqrt(Fraction(sdm[ref, i]))
        y = rational_sqrt(Fraction(sdm[far, i]))
        if x is None or y is None:
            raise InvalidConfig("collinear distances are not integral")
        d = rational_sqrt(Fraction(sdm[ref, far]))
        pos[i] = x if abs(d - x) == y else -x
    a2 = {i: Fraction(sdm[apex, i]) for i in line}
    i, j = ref, far
    foot = (pos[i] ** 2 - pos[j] ** 2 - a2[i] + a2[j]) / (2 * (pos[i] - pos[j]))
    h2 = a2[i] - (pos[i] - foot) ** 2
    return LineApexConfig(h2, tuple(sorted(pos[i] - foot for i in line)))


def blow_up_apex(cfg: LineApexConfig, m: int, edge: int = 1) -> SquaredDistanceMatrix:
    """Replace the apex by a regular (m-2)-simplex on the sphere of radius sqrt(h2).

    The sphere is centred at the foot of the apex in the hyperplane orthogonal
    to the line, so every simplex vertex keeps the apex's distances.
    """
    if m < 2:
        raise ValueError("target dimension must be at least 2")
    if edge < 1:
        raise ValueError("edge must be a positive integer")
    if m == 2:
        return line_apex_to_sdm(cfg)
    if len(cfg.offsets) < 2:
        raise InvalidConfig("blowing up the apex needs at least two collinear points")
    r2 = simplex_circumradius_squared(m - 1, edge)
    # r2 == h2 would put the simplex centre on the line and lose a dimension.
    if r2 >= cfg.h2:
        raise DoesNotFit(
            f"simplex circumradius^2 {r2} does not fit below apex height^2 {cfg.h2}"
        )
    q = cfg.offsets
    k = len(q)
    e2 = edge * edge

    def sq(i: int, j: int) -> Fraction:
        if j < k:
            return (q[i] - q[j]) ** 2
        if i < k:
            return q[i] * q[i] + cfg.h2
        return Fraction(e2)

    return SquaredDistanceMatrix.from_function(k + m - 1, sq)


def blow_up_parallel(cfg: TwoLineConfig, m: int, v: int) -> SquaredDistanceMatrix:
    """Blow P1 and P2 up into parallel regular (m-2)-simplices of edge ``v``.

    Output order: base line points, the m-1 vertices of S1, then the matching
    m-1 vertices of S2 (S2 is S1 translated by f along the line).
    """
    if m < 3:
        raise ValueError("blow_up_parallel needs m >= 3; m = 2 is the input itself")
    f = cfg.f
    if f.denominator != 1:
        raise InvalidConfig("P1P2 must be an integer")
    f2 = int(f * f)
    w2 = f2 + v * v
    if v < 1 or not is_perfect_square(w2):
        raise NotPythagorean(f"f^2 + v^2 = {w2} is not a perfect square")
    r2 = simplex_circumradius_squared(m - 1, v)
    if r2 >= cfg.h2:
        raise DoesNotFit(f"simplex circumradius^2 {r2} does not fit below h2 {cfg.h2}")
    base = cfg.line_positions
    k = len(base)
    s = m - 1

    def sq(i: int, j: int) -> Fraction:
        if j < k:
            return (base[i] - base[j]) ** 2
        if i < k:
            top = cfg.p1_position if j < k + s else cfg.p2_position
            return (base[i] - top) ** 2 + cfg.h2
        vi, vj = (i - k) % s, (j - k) % s
        same_simplex = (i < k + s) == (j < k + s)
        if same_simplex:
            return Fraction(v * v)
        return Fraction(f2 if vi == vj else w2)

    return SquaredDistanceMatrix.from_function(k + 2 * s, sq)


def _truncation_vertices(m: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(m + 1) for j in range(m + 1) if i != j]


def _truncation_class(p: tuple[int, int], q: tuple[int, int]) -> str:
    (i, j), (k, l) = p, q
    if i == k:
        return "corner"
    if (i, j) == (l, k):
        return "middle"
    if j == l:
        return "across"
    if j == k or i == l:
        return "skew"
    return "disjoint"


def truncated_simplex(p: TruncationParams) -> SquaredDistanceMatrix:
    """Cut a corner simplex of edge ``corner_edge`` off every vertex of a
    regular m-simplex with edge ``middle_edge + 2 * corner_edge``.

    Point ``(i, j)`` lies on edge ij at distance ``corner_edge`` from vertex i.
    """
    a, b = p.corner_edge, p.middle_edge
    value = {
        "corner": a * a,
        "middle": b * b,
        "across": (a + b) ** 2,
        "skew": a * a + a * b + b * b,
        "disjoint": (a + b) ** 2 + a * a,
    }
    pts = _truncation_vertices(p.m)
    return SquaredDistanceMatrix.from_function(
        len(pts), lambda x, y: value[_truncation_class(pts[x], pts[y])]
    )


def truncation_class_counts(m: int) -> dict[str, int]:
    """Number of point pairs in each distance class of the truncated m-simplex."""
    pts = _truncation_vertices(m)
    counts = dict.fromkeys(("corner", "middle", "across", "skew", "disjoint"), 0)
    for x in range(len(pts)):
        for y in range(x + 1, len(pts)):
            counts[_truncation_class(pts[x], pts[y])] += 1
    return counts


def line_circle_combine(
    cfg: LineApexConfig, sphere_set: SquaredDistanceMatrix, m: int
) -> SquaredDistanceMatrix:
    """Put the points of ``sphere_set`` on the apex's sphere of rotation.

    The sphere has radius sqrt(h2), its centre at the foot of the apex and its
    span orthogonal to the line.  Output order: line points, then sphere points.
    """
    if m < 2:
        raise ValueError("target dimension must be at least 2")
    cert = certify(sphere_set)
    if cert.dim != m - 1:
        raise DimMismatch(f"sphere set has dimension {cert.dim}, expected {m - 1}")
    if not cert.integral:
        raise InvalidConfig("sphere set is not integral")
    try:
        r2 = circumradius_squared(sphere_set)
    except NoCommonSphere as exc:
        raise SphereMismatch(str(exc)) from exc
    if r2 != cfg.h2:
        raise SphereMismatch(f"sphere set circumradius^2 {r2} differs from h2 {cfg.h2}")
    q = cfg.offsets
    k = len(q)

    def sq(i: int, j: int) -> Fraction:
        if j < k:
            return (q[i] - q[j]) ** 2
        if i < k:
            return q[i] * q[i] + cfg.h2
        return Fraction(sphere_set[i - k, j - k])

    return SquaredDistanceMatrix.from_function(k + sphere_set.n, sq)


def two_line_to_sdm(cfg: TwoLineConfig) -> SquaredDistanceMatrix:
    return cfg.to_sdm()
