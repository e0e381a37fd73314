"""Known exact values of d(m, n) and the classical bounds around them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

D2_LIST_SOURCE = "d(2,n) exact-value list, n=3..89"
D2_NEW_SOURCE = "d(2,n) new exact values, n=90..122"
D3_LIST_SOURCE = "d(3,n) exact-value list, n=4..23"

_D2_3_TO_89 = [
    1, 4, 7, 8, 17, 21, 29, 40, 51, 63, 74, 91, 104, 121, 134, 153, 164,
    196, 212, 228, 244, 272, 288, 319, 332, 364, 396, 437, 464, 494, 524, 553, 578, 608,
    642, 667, 692, 754, 816, 897, 959, 1026, 1066, 1139, 1190, 1248, 1306, 1363, 1410,
    1460, 1514, 1564, 1614, 1675, 1727, 1770, 1817, 1887, 1906, 2060, 2140, 2169,
    2231, 2299, 2432, 2494, 2556, 2624, 2692, 2827, 2895, 2993, 3098, 3196, 3294,
    3465, 3575, 3658, 3749, 3885, 3922, 4223, 4380, 4437, 4559, 4693, 4883,
]

_D2_90_TO_122 = [
    5018, 5109, 5264, 5332, 5480, 5603, 5738, 5938, 5995, 6052,
    6324, 6432, 6630, 6738, 6939, 7061, 7245, 7384, 7568, 7752, 7935, 8119, 8321,
    8406, 8648, 8729, 8927, 9052, 9211, 9423, 9534, 9794, 9905,
]

_D3_4_TO_23 = [1, 3, 4, 8, 13, 16, 17, 17, 17, 56, 65, 77, 86, 99, 112, 133, 154,
               195, 212, 228]

# Families valid for every m are materialised up to this dimension.
MAX_FAMILY_DIM = 23


@dataclass(frozen=True)
class TableEntry:
    m: int
    n: int
    d: int
    provenance: tuple[str, ...]


@dataclass
class KnownValueTable:
    entries: dict[tuple[int, int], TableEntry] = field(default_factory=dict)

    def add(self, m: int, n: int, d: int, source: str) -> None:
        old = self.entries.get((m, n))
        if old is None:
            self.entries[(m, n)] = TableEntry(m, n, d, (source,))
        elif old.d != d:
            raise ValueError(f"conflicting values for d({m},{n}): {old.d} vs {d}")
        elif source not in old.provenance:
            self.entries[(m, n)] = TableEntry(m, n, d, old.provenance + (source,))

    def rows(self, m: int | None = None, n: int | None = None) -> list[TableEntry]:
        return [
            e for key, e in sorted(self.entries.items())
            if (m is None or e.m == m) and (n is None or e.n == n)
        ]

    def dims(self) -> list[int]:
        return sorted({m for m, _ in self.entries})


def _build(max_dim: int = MAX_FAMILY_DIM) -> KnownValueTable:
    t = KnownValueTable()
    for n, d in enumerate(_D2_3_TO_89, start=3):
        t.add(2, n, d, D2_LIST_SOURCE)
    for n, d in enumerate(_D2_90_TO_122, start=90):
        t.add(2, n, d, D2_NEW_SOURCE)
    for n, d in enumerate(_D3_4_TO_23, start=4):
        src = D3_LIST_SOURCE + (" (corrected from 17)" if n == 9 else "")
        t.add(3, n, d, src)
    t.add(3, 24, 244, "d(3,24) new exact value")
    for m, n in ((3, 5), (6, 8), (8, 10)):
        t.add(m, n, 3, "sporadic d(3,5)=d(6,8)=d(8,10)=3")
    for m in range(8, 24):
        t.add(m, m + 2, 3, "d(m,m+2)=3 for 8<=m<=23")
    for m in range(3, 13):
        for n in range(m + 3, 2 * m + 1):
            t.add(m, n, 4, "d(m,n)=4 for 3<=m<=12, m+3<=n<=2m")
    for m in range(13, 24):
        for n in range(2 * m - 9, 2 * m + 1):
            t.add(m, n, 4, "d(m,n)=4 for 13<=m<=23, 2m-9<=n<=2m")
    for m in range(2, max_dim + 1):
        t.add(m, m + 1, 1, "d(n,n+1)=1")
        t.add(m, 2 * m, 4, "d(m,2m)=4")
    return t


TABLE = _build()


def lookup(m: int, n: int) -> TableEntry | None:
    """Known exact value of d(m, n) with provenance, or None if unknown."""
    if m < 2 or n < m + 1:
        raise ValueError(f"d({m},{n}) is undefined: need m >= 2 and n >= m + 1")
    entry = TABLE.entries.get((m, n))
    if entry is not None:
        return entry
    # The two unbounded families hold beyond the materialised range.
    if n == m + 1:
        return TableEntry(m, n, 1, ("d(n,n+1)=1",))
    if n == 2 * m:
        return TableEntry(m, n, 4, ("d(m,2m)=4",))
    return None


def upper_bound_1a(m: int, n: int) -> int:
    if n < m + 1:
        raise ValueError("need n >= m + 1")
    k = n - m
    if k % 2 == 0:
        return 2 ** (k + 1) - 2
    return 3 * (2 ** k - 1)


@dataclass(frozen=True)
class LowerBound:
    """Strict lower bound ``d > sqrt(coeff) * n ** (1 / root)`` on d(m, n).

    ``holds`` compares exactly: ``d**(2*root) > coeff**root * n**2``.
    """

    m: int
    n: int
    coeff: Fraction
    root: int
    label: str

    @property
    def value(self) -> float:
        return float(self.coeff) ** 0.5 * self.n ** (1 / self.root)

    def holds(self, d: int) -> bool:
        lhs = Fraction(d) ** (2 * self.root)
        return lhs > self.coeff ** self.root * self.n ** 2


def lower_bound_kanold(m: int, n: int) -> list[LowerBound]:
    """All applicable lower bounds: the general one and, for m = 3, n >= 5,
    the planar-section bound ``d > sqrt(n / 14)``."""
    if n < m + 1:
        raise ValueError("need n >= m + 1")
    bounds = [LowerBound(m, n, Fraction(3, 2 * m), m, "sqrt(3/(2m)) n^(1/m)")]
    if m == 3 and n >= 5:
        bounds.append(LowerBound(m, n, Fraction(1, 14), 2, "n^(1/2)/sqrt(14)"))
    return bounds


@dataclass
class AuditReport:
    hard_failures: list[str] = field(default_factory=list)
    lower_bound_anomalies: list[str] = field(default_factory=list)
    dim_descent: list[str] = field(default_factory=list)
    dim_descent_violations: list[str] = field(default_factory=list)
    blow_up_bound: list[str] = field(default_factory=list)
    blow_up_bound_violations: list[str] = field(default_factory=list)
    checked: int = 0

    @property
    def ok(self) -> bool:
        return not self.hard_failures

    def lines(self) -> list[str]:
        out = [f"entries checked: {self.checked}"]
        out.append(f"hard failures: {len(self.hard_failures)}")
        out += [f"  FAIL {x}" for x in self.hard_failures]
        out.append(f"lower-bound anomalies (reported only): {len(self.lower_bound_anomalies)}")
        out += [f"  {x}" for x in self.lower_bound_anomalies]
        out.append(
            f"conjecture d(m-1,n) >= d(m,n): {len(self.dim_descent)} supported, "
            f"{len(self.dim_descent_violations)} contradicted"
        )
        out += [f"  contradicted {x}" for x in self.dim_descent_violations]
        out.append(
            f"conjecture d(m,n-2+m) <= d(2,n): {len(self.blow_up_bound)} supported, "
            f"{len(self.blow_up_bound_violations)} contradicted"
        )
        out += [f"  contradicted {x}" for x in self.blow_up_bound_violations]
        return out


def audit(table: KnownValueTable = TABLE) -> AuditReport:
    rep = AuditReport()
    by_m: dict[int, list[TableEntry]] = {}
    for e in table.rows():
        by_m.setdefault(e.m, []).append(e)
        rep.checked += 1
        ub = upper_bound_1a(e.m, e.n)
        if e.d > ub:
            rep.hard_failures.append(f"d({e.m},{e.n})={e.d} exceeds upper bound {ub}")
        for lb in lower_bound_kanold(e.m, e.n):
            if not lb.holds(e.d):
                rep.lower_bound_anomalies.append(
                    f"d({e.m},{e.n})={e.d} not above {lb.label} = {lb.value:.4f}"
                )

    for m, rows in by_m.items():
        for a, b in zip(rows, rows[1:]):
            if b.d < a.d:
                rep.hard_failures.append(
                    f"not monotone: d({m},{a.n})={a.d} > d({m},{b.n})={b.d}"
                )

    entries = table.entries
    for (m, n), e in sorted(entries.items()):
        lower = entries.get((m - 1, n))
        if lower is not None and n >= m:
            note = f"d({m - 1},{n})={lower.d} vs d({m},{n})={e.d}"
            (rep.dim_descent if lower.d >= e.d else rep.dim_descent_violations).append(note)
    for (m, k), e in sorted(entries.items()):
        n = k + 2 - m
        if m < 3 or (2, n) not in entries:
            continue
        d2 = entries[(2, n)].d
        note = f"d({m},{k})={e.d} vs d(2,{n})={d2}"
        (rep.blow_up_bound if e.d <= d2 else rep.blow_up_bound_violations).append(note)
    return rep
