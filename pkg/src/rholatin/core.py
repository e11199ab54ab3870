"""Instances: symbol profiles, filled rectangles, squares, and the missing-symbol counts.

Symbols are 1-based ids in ``1..k``; rows and columns are 1-based as well. Internally
sets of rows, columns or symbols are int bitmasks with element ``t`` at bit ``t - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    BadSymbol,
    BudgetExceeded,
    ColRepeat,
    DimensionMismatch,
    IndexOutOfRange,
    RangeViolation,
    RowRepeat,
    SumMismatch,
    ValidationError,
)


def monus(x: int, y: int) -> int:
    """Saturating subtraction ``max(0, x - y)``."""
    return x - y if x > y else 0


def mask_of(items: Iterable[int], universe: int, what: str = "index") -> int:
    """Bitmask of 1-based ``items`` drawn from ``1..universe``."""
    m = 0
    for t in items:
        if not 1 <= t <= universe:
            raise IndexOutOfRange(f"{what} {t} outside 1..{universe}")
        m |= 1 << (t - 1)
    return m


def members(mask: int) -> list[int]:
    """1-based elements of a bitmask, ascending."""
    out = []
    t = 1
    while mask:
        if mask & 1:
            out.append(t)
        mask >>= 1
        t += 1
    return out


def full_mask(size: int) -> int:
    return (1 << size) - 1


@dataclass(frozen=True)
class RhoProfile:
    n: int
    k: int
    rho: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rho", tuple(int(x) for x in self.rho))
        n, k, rho = self.n, self.k, self.rho
        if n < 1 or k < 1:
            raise RangeViolation(f"n and k must be positive (n={n}, k={k})")
        if len(rho) != k:
            raise RangeViolation(f"rho has {len(rho)} entries, expected k={k}")
        if k < n:
            raise RangeViolation(f"k={k} < n={n}")
        for sym, x in enumerate(rho, 1):
            if not 1 <= x <= n:
                raise RangeViolation(f"rho_{sym}={x} outside 1..{n}")
        if sum(rho) != n * n:
            raise SumMismatch(f"sum(rho)={sum(rho)} != n^2={n * n}")

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "rho": list(self.rho)}


def validate_profile(n: int, k: int, rho: Sequence[int]) -> RhoProfile:
    return RhoProfile(n, k, tuple(rho))


def _as_grid(grid) -> tuple[tuple[int, ...], ...]:
    rows = tuple(tuple(int(x) for x in row) for row in grid)
    if not rows or not rows[0]:
        raise RangeViolation("grid must have at least one row and one column")
    width = len(rows[0])
    for i, row in enumerate(rows, 1):
        if len(row) != width:
            raise DimensionMismatch(f"row {i} has {len(row)} cells, expected {width}")
    return rows


def _check_rows(grid: tuple[tuple[int, ...], ...], k: int) -> None:
    for i, row in enumerate(grid, 1):
        seen = {}
        for j, sym in enumerate(row, 1):
            if not 1 <= sym <= k:
                raise BadSymbol(f"cell ({i},{j}) holds {sym}, outside 1..{k}")
            if sym in seen:
                raise RowRepeat(f"symbol {sym} repeated in row {i} at columns {seen[sym]} and {j}")
            seen[sym] = j


def _check_cols(grid: tuple[tuple[int, ...], ...]) -> None:
    for j in range(len(grid[0])):
        seen = {}
        for i, row in enumerate(grid, 1):
            sym = row[j]
            if sym in seen:
                raise ColRepeat(f"symbol {sym} repeated in column {j + 1} at rows {seen[sym]} and {i}")
            seen[sym] = i


def _counts(grid, k: int) -> tuple[int, ...]:
    e = [0] * k
    for row in grid:
        for sym in row:
            e[sym - 1] += 1
    return tuple(e)


@dataclass(frozen=True)
class Rectangle:
    """A completely filled r x s rho-latin rectangle (validated on construction)."""

    grid: tuple[tuple[int, ...], ...]
    profile: RhoProfile
    r: int = field(init=False)
    s: int = field(init=False)
    e: tuple[int, ...] = field(init=False)
    row_present: tuple[int, ...] = field(init=False, repr=False, compare=False)
    col_present: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        grid = _as_grid(self.grid)
        p = self.profile
        r, s = len(grid), len(grid[0])
        if r > p.n or s > p.n:
            raise DimensionMismatch(f"{r}x{s} rectangle does not fit in order {p.n}")
        _check_rows(grid, p.k)
        e = _counts(grid, p.k)
        for sym, (cnt, budget) in enumerate(zip(e, p.rho), 1):
            if cnt > budget:
                raise BudgetExceeded(f"symbol {sym} occurs {cnt} times, budget rho_{sym}={budget}")
        _check_cols(grid)
        set_ = object.__setattr__
        set_(self, "grid", grid)
        set_(self, "r", r)
        set_(self, "s", s)
        set_(self, "e", e)
        set_(self, "row_present", tuple(mask_of(row, p.k) for row in grid))
        set_(self, "col_present", tuple(mask_of((row[j] for row in grid), p.k) for j in range(s)))

    @property
    def n(self) -> int:
        return self.profile.n

    @property
    def k(self) -> int:
        return self.profile.k

    @property
    def rho(self) -> tuple[int, ...]:
        return self.profile.rho

    @property
    def deficit(self) -> tuple[int, ...]:
        """rho_l - e_l for every symbol."""
        return tuple(p - c for p, c in zip(self.profile.rho, self.e))

    @property
    def is_full(self) -> bool:
        return self.r == self.n and self.s == self.n

    def as_dict(self) -> dict:
        return {**self.profile.as_dict(), "r": self.r, "s": self.s, "grid": [list(row) for row in self.grid]}


def validate_rectangle(grid, profile: RhoProfile) -> Rectangle:
    return Rectangle(grid, profile)


@dataclass(frozen=True)
class Square:
    """A rho-latin square: latin, and symbol l occurs exactly rho_l times."""

    grid: tuple[tuple[int, ...], ...]
    profile: RhoProfile

    def __post_init__(self):
        grid = _as_grid(self.grid)
        p = self.profile
        if len(grid) != p.n or len(grid[0]) != p.n:
            raise DimensionMismatch(f"square is {len(grid)}x{len(grid[0])}, expected {p.n}x{p.n}")
        _check_rows(grid, p.k)
        _check_cols(grid)
        e = _counts(grid, p.k)
        for sym, (cnt, budget) in enumerate(zip(e, p.rho), 1):
            if cnt != budget:
                raise ValidationError(f"symbol {sym} occurs {cnt} times, rho_{sym}={budget}")
        object.__setattr__(self, "grid", grid)

    @property
    def n(self) -> int:
        return self.profile.n

    def crop(self, r: int, s: int) -> Rectangle:
        return Rectangle(tuple(row[:s] for row in self.grid[:r]), self.profile)

    def as_dict(self) -> dict:
        n = self.profile.n
        return {**self.profile.as_dict(), "r": n, "s": n, "grid": [list(row) for row in self.grid]}


def validate_square(grid, profile: RhoProfile) -> Square:
    return Square(grid, profile)


def is_completion_of(square: Square, rect: Rectangle) -> bool:
    if square.profile != rect.profile:
        raise DimensionMismatch("square and rectangle have different profiles")
    if rect.r > square.n or rect.s > square.n:
        raise DimensionMismatch("rectangle larger than square")
    return all(square.grid[i][: rect.s] == rect.grid[i] for i in range(rect.r))


class MuStats:
    """Missing-symbol counts of a rectangle.

    ``mu.row(i, K)`` is the number of symbols of ``K`` missing in row ``i``;
    ``mu.sym_rows(l, I)`` is the number of rows of ``I`` in which ``l`` is missing;
    the ``col``/``sym_cols`` pair is the column analogue. ``rows(I, K)`` and friends
    are the set aggregates. Omitted subsets mean the whole universe.

    The ``*_m`` methods take bitmasks and skip validation; the condition evaluators
    use them in their inner loops.
    """

    def __init__(self, rect: Rectangle):
        self.rect = rect
        k, r, s = rect.k, rect.r, rect.s
        allk = full_mask(k)
        self.row_missing = tuple(allk & ~m for m in rect.row_present)
        self.col_missing = tuple(allk & ~m for m in rect.col_present)
        # symbol -> mask of rows / columns where it is missing
        sym_rows = [0] * k
        sym_cols = [0] * k
        for i, miss in enumerate(self.row_missing):
            for sym in members(miss):
                sym_rows[sym - 1] |= 1 << i
        for j, miss in enumerate(self.col_missing):
            for sym in members(miss):
                sym_cols[sym - 1] |= 1 << j
        self.sym_row_missing = tuple(sym_rows)
        self.sym_col_missing = tuple(sym_cols)
        self.all_rows = full_mask(r)
        self.all_cols = full_mask(s)
        self.all_syms = allk

    # bitmask fast paths
    def row_m(self, i: int, kmask: int) -> int:
        return (self.row_missing[i - 1] & kmask).bit_count()

    def col_m(self, j: int, kmask: int) -> int:
        return (self.col_missing[j - 1] & kmask).bit_count()

    def sym_rows_m(self, sym: int, imask: int) -> int:
        return (self.sym_row_missing[sym - 1] & imask).bit_count()

    def sym_cols_m(self, sym: int, jmask: int) -> int:
        return (self.sym_col_missing[sym - 1] & jmask).bit_count()

    def rows_m(self, imask: int, kmask: int) -> int:
        return sum((self.row_missing[i - 1] & kmask).bit_count() for i in members(imask))

    def cols_m(self, jmask: int, kmask: int) -> int:
        return sum((self.col_missing[j - 1] & kmask).bit_count() for j in members(jmask))

    # validated, 1-based index API
    def _k(self, K) -> int:
        return self.all_syms if K is None else mask_of(K, self.rect.k, "symbol")

    def _i(self, I) -> int:
        return self.all_rows if I is None else mask_of(I, self.rect.r, "row")

    def _j(self, J) -> int:
        return self.all_cols if J is None else mask_of(J, self.rect.s, "column")

    def _check(self, t: int, size: int, what: str) -> None:
        if not 1 <= t <= size:
            raise IndexOutOfRange(f"{what} {t} outside 1..{size}")

    def row(self, i: int, K=None) -> int:
        self._check(i, self.rect.r, "row")
        return self.row_m(i, self._k(K))

    def col(self, j: int, K=None) -> int:
        self._check(j, self.rect.s, "column")
        return self.col_m(j, self._k(K))

    def sym_rows(self, sym: int, I=None) -> int:
        self._check(sym, self.rect.k, "symbol")
        return self.sym_rows_m(sym, self._i(I))

    def sym_cols(self, sym: int, J=None) -> int:
        self._check(sym, self.rect.k, "symbol")
        return self.sym_cols_m(sym, self._j(J))

    def rows(self, I=None, K=None) -> int:
        """mu_K(I): sum over rows i in I of mu_K(i)."""
        return self.rows_m(self._i(I), self._k(K))

    def cols(self, J=None, K=None) -> int:
        """mu_K(J)."""
        return self.cols_m(self._j(J), self._k(K))

    def syms_rows(self, K=None, I=None) -> int:
        """mu_I(K): sum over symbols l in K of mu_I(l)."""
        imask = self._i(I)
        return sum(self.sym_rows_m(sym, imask) for sym in members(self._k(K)))

    def syms_cols(self, K=None, J=None) -> int:
        """mu_J(K)."""
        jmask = self._j(J)
        return sum(self.sym_cols_m(sym, jmask) for sym in members(self._k(K)))


_MU_KINDS = ("K(i)", "K(j)", "I(l)", "J(l)", "K(I)", "I(K)", "K(J)", "J(K)")


def mu(rect: Rectangle, kind: str, *, i=None, j=None, l=None, I=None, J=None, K=None) -> int:
    """Evaluate one missing-symbol statistic by name, e.g. ``mu(rect, "K(i)", i=1, K=[3])``."""
    stats = MuStats(rect)
    if kind == "K(i)":
        return stats.row(i, K)
    if kind == "K(j)":
        return stats.col(j, K)
    if kind == "I(l)":
        return stats.sym_rows(l, I)
    if kind == "J(l)":
        return stats.sym_cols(l, J)
    if kind == "K(I)":
        return stats.rows(I, K)
    if kind == "I(K)":
        return stats.syms_rows(K, I)
    if kind == "K(J)":
        return stats.cols(J, K)
    if kind == "J(K)":
        return stats.syms_cols(K, J)
    raise ValueError(f"unknown mu kind {kind!r}; expected one of {_MU_KINDS}")


@dataclass(frozen=True)
class PSets:
    P_r: frozenset[int]
    P_s: frozenset[int]


def p_set(rect: Rectangle, t: int) -> frozenset[int]:
    """Symbols whose deficit rho_l - e_l exceeds n - t."""
    n = rect.n
    return frozenset(sym for sym, d in enumerate(rect.deficit, 1) if d > n - t)


def p_sets(rect: Rectangle) -> PSets:
    P_r, P_s = p_set(rect, rect.r), p_set(rect, rect.s)
    small, big = (P_r, P_s) if rect.r <= rect.s else (P_s, P_r)
    assert small <= big
    return PSets(P_r, P_s)


@dataclass(frozen=True)
class BoundVerdict:
    passed: bool
    violators: tuple[int, ...]

    def __bool__(self) -> bool:
        return self.passed


def necessary_bound(rect: Rectangle) -> BoundVerdict:
    """Check e_l >= r + s + rho_l - 2n for every symbol."""
    r, s, n = rect.r, rect.s, rect.n
    bad = tuple(sym for sym, (cnt, p) in enumerate(zip(rect.e, rect.rho), 1) if cnt < r + s + p - 2 * n)
    return BoundVerdict(not bad, bad)
