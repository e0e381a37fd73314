"""Exact distance geometry on squared-distance matrices.

Everything here works on arbitrary-precision integers and
:class:`fractions.Fraction`; floating point is confined to
:func:`realize_coordinates`.

Cayley-Menger sign convention: the bordered matrix has ``0`` in its top-left
corner, ones along the first row and column, and the squared distances in the
remaining block.  For ``k + 1`` affinely independent points the determinant
satisfies ``(-1) ** (k + 1) * det > 0``; for a triangle ``det = -16 * area**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import NoCommonSphere, NotRealizable

Rational = Fraction


@dataclass(frozen=True)
class SquaredDistanceMatrix:
    """Symmetric matrix of squared pairwise distances between distinct points."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(_as_int(x) for x in row) for row in self.entries)
        n = len(rows)
        if n < 1:
            raise ValueError("a point set needs at least one point")
        for i, row in enumerate(rows):
            if len(row) != n:
                raise ValueError(f"row {i} has {len(row)} entries, expected {n}")
            if row[i] != 0:
                raise ValueError(f"diagonal entry ({i},{i}) is {row[i]}, expected 0")
            for j in range(i):
                if row[j] != rows[j][i]:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) differ")
                if row[j] <= 0:
                    raise ValueError(
                        f"entry ({i},{j}) is {row[j]}: points must be distinct"
                    )
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_function(cls, n: int, sq) -> "SquaredDistanceMatrix":
        """Build an n-point matrix from ``sq(i, j)`` evaluated for ``i < j``."""
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = rows[j][i] = _as_int(sq(i, j))
        return cls(tuple(map(tuple, rows)))

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def __len__(self) -> int:
        return self.n

    def off_diagonal(self) -> Iterable[int]:
        for i in range(self.n):
            yield from self.entries[i][i + 1:]

    @property
    def diameter_squared(self) -> int:
        return max(self.off_diagonal(), default=0)

    def submatrix(self, indices: Sequence[int]) -> "SquaredDistanceMatrix":
        return SquaredDistanceMatrix(
            tuple(tuple(self.entries[i][j] for j in indices) for i in indices)
        )

    def permuted(self, perm: Sequence[int]) -> "SquaredDistanceMatrix":
        """Relabel points so that new point ``k`` is old point ``perm[k]``."""
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation of the point labels")
        return self.submatrix(perm)

    def distances(self) -> list[int] | None:
        """Sorted off-diagonal distances, or None if one is irrational."""
        out = []
        for x in self.off_diagonal():
            r, exact = integer_sqrt(x)
            if not exact:
                return None
            out.append(r)
        return sorted(out)


@dataclass(frozen=True)
class Certificate:
    dim: int
    integral: bool
    diameter_squared: int
    diameter: int | None = None
    expected_dim: int | None = None
    dim_matches: bool | None = field(default=None)

    @property
    def ok(self) -> bool:
        return self.integral and self.dim_matches is not False


@dataclass(frozen=True)
class Realization:
    coordinates: list[list[float]]
    residual: float


def _as_int(x) -> int:
    if isinstance(x, bool):
        raise TypeError("booleans are not squared distances")
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise ValueError(f"squared distance {x} is not an integer")
        return x.numerator
    raise TypeError(f"expected an integer squared distance, got {type(x).__name__}")


def integer_sqrt(x: int) -> tuple[int, bool]:
    """Return ``(floor(sqrt(x)), is_exact)``."""
    if x < 0:
        raise ValueError("integer_sqrt of a negative number")
    r = math.isqrt(x)
    return r, r * r == x


def is_perfect_square(x) -> bool:
    if isinstance(x, Fraction):
        return (
            x >= 0 and is_perfect_square(x.numerator) and is_perfect_square(x.denominator)
        )
    return x >= 0 and math.isqrt(x) ** 2 == x


def rational_sqrt(x: Fraction) -> Fraction | None:
    """Exact square root of a non-negative rational, or None if irrational."""
    x = Fraction(x)
    if x < 0:
        return None
    p, p_exact = integer_sqrt(x.numerator)
    q, q_exact = integer_sqrt(x.denominator)
    if p_exact and q_exact:
        return Fraction(p, q)
    return None


def determinant(matrix: Sequence[Sequence[int]]) -> int:
    """Exact integer determinant by Bareiss fraction-free elimination."""
    a = [list(row) for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (pivot * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = pivot
    return sign * a[n - 1][n - 1]


def matrix_rank(matrix: Sequence[Sequence[int]]) -> int:
    """Exact rank of an integer matrix (fraction-free elimination)."""
    a = [list(row) for row in matrix]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    rank = 0
    prev = 1
    for c in range(cols):
        pr = next((r for r in range(rank, rows) if a[r][c] != 0), None)
        if pr is None:
            continue
        a[rank], a[pr] = a[pr], a[rank]
        pivot = a[rank][c]
        for i in range(rank + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (pivot * a[i][j] - a[i][c] * a[rank][j]) // prev
            a[i][c] = 0
        prev = pivot
        rank += 1
    return rank


def _check_subset(sdm: SquaredDistanceMatrix, subset: Sequence[int]) -> list[int]:
    idx = list(subset)
    if not idx:
        raise ValueError("subset must contain at least one point")
    if len(set(idx)) != len(idx):
        raise ValueError("subset indices must be distinct")
    for i in idx:
        if not 0 <= i < sdm.n:
            raise IndexError(f"point index {i} out of range for {sdm.n} points")
    return idx


def cayley_menger_matrix(sdm: SquaredDistanceMatrix, subset: Sequence[int]) -> list[list[int]]:
    idx = _check_subset(sdm, subset)
    size = len(idx) + 1
    cm = [[1] * size for _ in range(size)]
    cm[0][0] = 0
    for a, i in enumerate(idx, start=1):
        for b, j in enumerate(idx, start=1):
            cm[a][b] = sdm.entries[i][j]
    return cm


def cayley_menger_det(sdm: SquaredDistanceMatrix, subset: Sequence[int] | None = None) -> int:
    """Determinant of the bordered Cayley-Menger matrix of ``subset``.

    ``subset`` defaults to all points.  See the module docstring for the sign
    convention.
    """
    if subset is None:
        subset = range(sdm.n)
    return determinant(cayley_menger_matrix(sdm, subset))


def gram_matrix_doubled(sdm: SquaredDistanceMatrix) -> list[list[int]]:
    """Twice the Gram matrix of points 1..n-1 relative to point 0.

    Doubling keeps the entries integral; rank and definiteness are unchanged.
    """
    d = sdm.entries
    n = sdm.n
    return [[d[0][i] + d[0][j] - d[i][j] for j in range(1, n)] for i in range(1, n)]


def _psd_pivots(gram: list[list[int]]) -> list[int]:
    """Pivot indices of a symmetric fraction-free elimination of ``gram``.

    Raises NotRealizable if ``gram`` is not positive semidefinite.  The number
    of pivots is the rank; the pivots index a nonsingular principal minor.
    """
    a = [row[:] for row in gram]
    active = list(range(len(a)))
    pivots: list[int] = []
    prev = 1
    while active:
        p = None
        for i in active:
            if a[i][i] < 0:
                raise NotRealizable("Gram matrix is not positive semidefinite")
            if a[i][i] > 0 and (p is None or a[i][i] > a[p][p]):
                p = i
        if p is None:
            if any(a[i][j] for i in active for j in active):
                raise NotRealizable("Gram matrix is indefinite")
            break
        active.remove(p)
        pivot = a[p][p]
        # Bareiss update; division by the previous pivot is exact.
        for i in active:
            api = a[i][p]
            for j in active:
                a[i][j] = (pivot * a[i][j] - api * a[p][j]) // prev
        prev = pivot
        pivots.append(p)
    return pivots


def embedding_dimension(sdm: SquaredDistanceMatrix) -> int:
    """Affine dimension of the point set, or raise NotRealizable."""
    return len(_psd_pivots(gram_matrix_doubled(sdm)))


def affine_basis(sdm: SquaredDistanceMatrix) -> list[int]:
    """Indices of dim+1 affinely independent points, always starting with 0."""
    return [0] + [p + 1 for p in sorted(_psd_pivots(gram_matrix_doubled(sdm)))]


def certify(sdm: SquaredDistanceMatrix, expected_dim: int | None = None) -> Certificate:
    dim = embedding_dimension(sdm)
    integral = all(is_perfect_square(x) for x in sdm.off_diagonal())
    dsq = sdm.diameter_squared
    return Certificate(
        dim=dim,
        integral=integral,
        diameter_squared=dsq,
        diameter=math.isqrt(dsq) if integral else None,
        expected_dim=expected_dim,
        dim_matches=None if expected_dim is None else dim == expected_dim,
    )


def circumradius_squared(sdm: SquaredDistanceMatrix) -> Fraction:
    """Squared radius of the sphere through all points, centred in their hull.

    For an affinely independent subset S the value is
    ``-det(D_S) / (2 * CM(S))``.  The remaining points share that sphere iff
    the full squared-distance matrix has rank dim + 1 (it is dim + 2 otherwise).
    """
    if sdm.n == 1:
        return Fraction(0)
    basis = affine_basis(sdm)
    dim = len(basis) - 1
    if sdm.n > dim + 1 and matrix_rank(sdm.entries) != dim + 1:
        raise NoCommonSphere("points do not lie on a common sphere")
    sub = sdm.submatrix(basis)
    return Fraction(-determinant(sub.entries), 2 * cayley_menger_det(sub))


def scale(sdm: SquaredDistanceMatrix, k: int) -> SquaredDistanceMatrix:
    if k < 1:
        raise ValueError("scale factor must be a positive integer")
    k2 = k * k
    return SquaredDistanceMatrix(tuple(tuple(x * k2 for x in row) for row in sdm.entries))


def realize_coordinates(sdm: SquaredDistanceMatrix) -> Realization:
    """Floating-point coordinates in dimension ``embedding_dimension(sdm)``.

    The factorisation ``G = L diag(p) L^T`` of the Gram matrix is computed
    exactly; only the square roots of the pivots are rounded.
    """
    n = sdm.n
    g = [[Fraction(x, 2) for x in row] for row in gram_matrix_doubled(sdm)]
    active = list(range(n - 1))
    columns: list[tuple[int, list[Fraction], Fraction]] = []
    while active:
        p = None
        for i in active:
            if g[i][i] < 0:
                raise NotRealizable("Gram matrix is not positive semidefinite")
            if g[i][i] > 0 and (p is None or g[i][i] > g[p][p]):
                p = i
        if p is None:
            if any(g[i][j] for i in active for j in active):
                raise NotRealizable("Gram matrix is indefinite")
            break
        active.remove(p)
        pivot = g[p][p]
        col = [Fraction(0)] * (n - 1)
        col[p] = Fraction(1)
        for i in active:
            col[i] = g[i][p] / pivot
        for i in active:
            for j in active:
                g[i][j] -= col[i] * g[p][j]
        columns.append((p, col, pivot))

    dim = len(columns)
    coords = [[0.0] * dim]
    for i in range(n - 1):
        coords.append([float(col[i]) * math.sqrt(pivot) for _, col, pivot in columns])
    residual = 0.0
    for i in range(n):
        for j in range(i + 1, n):
            got = math.fsum((a - b) ** 2 for a, b in zip(coords[i], coords[j]))
            residual = max(residual, abs(got - sdm.entries[i][j]))
    return Realization(coords, residual)
