"""Exhaustive evaluators for the subset characterizations of completability.

Every condition has two implementations:

* a literal one (``*_value`` functions) that evaluates the inequality for one choice
  of subsets through :class:`MuStats`; it is the definition, and it is what certificate
  replay uses;
* an enumerating one that sweeps all subsets with bitmask subset-sum tables.

Conditions are named ``<family>_<index>`` (e.g. ``hall_3``, ``row_5``). Rows and
columns are handled by one "side" abstraction: for the row side the own dimension is
r, the other is s, subsets I range over rows and the vector is ``a``; the column side
swaps r and s, uses J and ``b``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .certificates import SubsetCertificate
from .core import MuStats, Rectangle, full_mask, mask_of, members, monus, necessary_bound, p_set
from .errors import PreconditionViolation, TooLarge
from .guards import DEFAULT_GUARDS, Guards


@dataclass(frozen=True)
class ConditionReport:
    name: str
    passed: bool
    certificate: SubsetCertificate | None = None

    def __bool__(self) -> bool:
        return self.passed


def _subset_sums(values: Sequence[int]) -> list[int]:
    sums = [0] * (1 << len(values))
    for mask in range(1, len(sums)):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + values[low.bit_length() - 1]
    return sums


def _report(name: str, violation) -> ConditionReport:
    if violation is None:
        return ConditionReport(name, True)
    return ConditionReport(name, False, violation)


class _Side:
    """Row side (own = rows, vector a) or column side (own = columns, vector b)."""

    def __init__(self, rect: Rectangle, stats: MuStats, side: str):
        self.rect, self.stats, self.side = rect, stats, side
        self.n, self.k = rect.n, rect.k
        if side == "row":
            self.t, self.u = rect.r, rect.s
            self.own_missing = stats.row_missing
            self.sym_missing = stats.sym_row_missing
            self.sub = "I"
        elif side == "col":
            self.t, self.u = rect.s, rect.r
            self.own_missing = stats.col_missing
            self.sym_missing = stats.sym_col_missing
            self.sub = "J"
        else:
            raise ValueError(side)
        self.d = rect.deficit
        self.rho = rect.rho
        self.P = p_set(rect, self.t)
        self.all_own = full_mask(self.t)
        self.all_k = full_mask(self.k)

    def mu_own(self, i: int, kmask: int) -> int:
        """Symbols of K missing in own-line i."""
        return (self.own_missing[i - 1] & kmask).bit_count()

    def mu_sym(self, l: int, imask: int) -> int:
        """Own-lines of I missing symbol l."""
        return (self.sym_missing[l - 1] & imask).bit_count()


# --- literal evaluators --------------------------------------------------------------

# Each returns (lhs, rhs, relation) for the Theorem-1.4 style group on one side, given
# the side vector ``vec`` and masks imask (own lines) and kmask (symbols).


def group_value(sd: _Side, c: str, vec, imask: int, kmask: int) -> tuple[int, int, str]:
    n, t, u, k = sd.n, sd.t, sd.u, sd.k
    d, rho, P = sd.d, sd.rho, sd.P
    syms = range(1, k + 1)
    K = members(kmask)
    size_I = imask.bit_count()
    not_i = sd.all_own & ~imask
    not_k = sd.all_k & ~kmask
    KP = [l for l in K if l in P]
    sum_dKP = sum(d[l - 1] for l in KP)
    sum_aK = sum(vec[l - 1] for l in K)
    if c == "1":
        rhs = sum(
            min(vec[l - 1] + d[l - 1] - n + t, sd.mu_sym(l, imask)) if l in P else min(vec[l - 1], sd.mu_sym(l, imask))
            for l in syms
        )
        return size_I * (n - u), rhs, "<="
    if c == "2":
        rhs = sum(min(n - u, sd.mu_own(i, kmask)) for i in range(1, t + 1)) - sum_aK + len(KP) * (n - t)
        return sum_dKP, rhs, "<="
    if c in ("3", "3L"):
        first = [l for l in syms if l in P] if c == "3" else list(syms)
        rhs = sum(monus(vec[l - 1] + rho[l - 1] + sd.mu_sym(l, imask), n) for l in first)
        rhs += sum(monus(vec[l - 1], sd.mu_sym(l, not_i)) for l in syms if l not in P)
        return size_I * (n - u), rhs, ">="
    if c == "4":
        rhs = sum(monus(n - u, sd.mu_own(i, not_k)) for i in range(1, t + 1)) + len(KP) * (n - t) - sum_aK
        return sum_dKP, rhs, ">="
    if c == "5":
        mu_I_notK = sum(sd.mu_sym(l, imask) for l in members(not_k))
        return size_I * (n - u), sum_dKP + sum_aK + mu_I_notK - len(KP) * (n - t), "<="
    if c == "6":
        mu_K_notI = sum(sd.mu_own(i, kmask) for i in members(not_i))
        return sum_dKP, size_I * (n - u) + len(KP) * (n - t) + mu_K_notI - sum_aK, "<="
    raise ValueError(c)


def remark_value(sd: _Side, c: str, vec, imask: int, kmask: int) -> tuple[int, int, str]:
    """The P-free restatement, with F(l) = vec_l + ((rho_l - e_l + t) monus n)."""
    n, t, u, k = sd.n, sd.t, sd.u, sd.k
    F = [vec[l - 1] + monus(sd.d[l - 1] + t, n) for l in range(1, k + 1)]
    syms = range(1, k + 1)
    size_I = imask.bit_count()
    not_i = sd.all_own & ~imask
    not_k = sd.all_k & ~kmask
    FK = sum(F[l - 1] for l in members(kmask))
    if c == "1":
        return size_I * (n - u), sum(min(F[l - 1], sd.mu_sym(l, imask)) for l in syms), "<="
    if c == "2":
        return sum(min(n - u, sd.mu_own(i, kmask)) for i in range(1, t + 1)), FK, ">="
    if c == "3":
        return size_I * (n - u), sum(monus(F[l - 1], sd.mu_sym(l, not_i)) for l in syms), ">="
    if c == "4":
        return sum(monus(n - u, sd.mu_own(i, not_k)) for i in range(1, t + 1)), FK, "<="
    if c == "5":
        return size_I * (n - u), FK + sum(sd.mu_sym(l, imask) for l in members(not_k)), "<="
    if c == "6":
        return size_I * (n - u), FK - sum(sd.mu_own(i, kmask) for i in members(not_i)), ">="
    raise ValueError(c)


def hall_value(rect: Rectangle, stats: MuStats, c: str, jmask: int, kmask: int) -> tuple[int, int, str]:
    n, r, k = rect.n, rect.r, rect.k
    d = rect.deficit
    syms = range(1, k + 1)
    cols = range(1, n + 1)
    all_j, all_k = full_mask(n), full_mask(k)
    size_J = jmask.bit_count()
    dK = sum(d[l - 1] for l in members(kmask))
    if c == "1":
        return size_J * (n - r), sum(min(d[l - 1], stats.sym_cols_m(l, jmask)) for l in syms), "<="
    if c == "2":
        return dK, sum(min(n - r, stats.col_m(j, kmask)) for j in cols), "<="
    if c == "3":
        return size_J * (n - r), sum(monus(d[l - 1], stats.sym_cols_m(l, all_j & ~jmask)) for l in syms), ">="
    if c == "4":
        return dK, sum(monus(n - r, stats.col_m(j, all_k & ~kmask)) for j in cols), ">="
    if c == "5":
        return size_J * (n - r), dK + sum(stats.sym_cols_m(l, jmask) for l in members(all_k & ~kmask)), "<="
    if c == "6":
        return dK, size_J * (n - r) + sum(stats.col_m(j, kmask) for j in members(all_j & ~jmask)), "<="
    raise ValueError(c)


def _holds(lhs: int, rhs: int, rel: str) -> bool:
    return lhs <= rhs if rel == "<=" else lhs >= rhs


# which subsets each condition quantifies over
_USES = {"1": "I", "2": "K", "3": "I", "3L": "I", "4": "K", "5": "IK", "6": "IK"}


# --- enumeration ------------------------------------------------------------------------


def _enumerate(uses: str, n_own: int, k: int, check) -> tuple[int, int] | None:
    """Call ``check(imask, kmask)`` over the quantified subsets; first failing pair or None."""
    own_range = range(1 << n_own) if "I" in uses else (0,)
    k_range = range(1 << k) if "K" in uses else (0,)
    for imask in own_range:
        for kmask in k_range:
            if not check(imask, kmask):
                return imask, kmask
    return None


def _side_checker(sd: _Side, c: str, vec, remark: bool):
    """Fast check(imask, kmask) -> bool equal to the literal evaluator's verdict."""
    n, t, u, k = sd.n, sd.t, sd.u, sd.k
    d, rho, P = sd.d, sd.rho, sd.P
    inP = [1 if l in P else 0 for l in range(1, k + 1)]
    if remark:
        F = [vec[l - 1] + monus(d[l - 1] + t, n) for l in range(1, k + 1)]
    sym_missing = sd.sym_missing
    own_missing = sd.own_missing
    all_own, all_k = sd.all_own, sd.all_k
    # per-K tables
    aK = _subset_sums(list(vec))
    cntP = _subset_sums(inP)
    dKP = _subset_sums([d[l] * inP[l] for l in range(k)])
    FK = _subset_sums(F) if remark else None
    if c in ("2", "4"):
        own_lines = list(range(t))

        if c == "2":
            def check(_i, kmask):
                total = sum(min(n - u, (own_missing[i] & kmask).bit_count()) for i in own_lines)
                if remark:
                    return total >= FK[kmask]
                return dKP[kmask] <= total - aK[kmask] + cntP[kmask] * (n - t)
        else:
            def check(_i, kmask):
                nk = all_k & ~kmask
                total = sum(monus(n - u, (own_missing[i] & nk).bit_count()) for i in own_lines)
                if remark:
                    return total <= FK[kmask]
                return dKP[kmask] >= total + cntP[kmask] * (n - t) - aK[kmask]
        return check
    if c in ("1", "3", "3L"):
        def check(imask, _k):
            size_I = imask.bit_count()
            if c == "1":
                rhs = 0
                for l in range(k):
                    m = (sym_missing[l] & imask).bit_count()
                    cap = F[l] if remark else (vec[l] + d[l] - n + t if inP[l] else vec[l])
                    rhs += cap if cap < m else m
                return size_I * (n - u) <= rhs
            ni = all_own & ~imask
            rhs = 0
            for l in range(k):
                if remark:
                    rhs += monus(F[l], (sym_missing[l] & ni).bit_count())
                    continue
                if inP[l] or c == "3L":
                    rhs += monus(vec[l] + rho[l] + (sym_missing[l] & imask).bit_count(), n)
                if not inP[l]:
                    rhs += monus(vec[l], (sym_missing[l] & ni).bit_count())
            return size_I * (n - u) >= rhs
        return check
    # pairwise conditions: cache per-I tables lazily
    cache: dict[int, list[int]] = {}

    def table(imask: int) -> list[int]:
        tab = cache.get(imask)
        if tab is None:
            if c == "5":
                tab = _subset_sums([(sym_missing[l] & imask).bit_count() for l in range(k)])
            else:
                ni = all_own & ~imask
                tab = _subset_sums([(sym_missing[l] & ni).bit_count() for l in range(k)])
            cache[imask] = tab
        return tab

    if c == "5":
        def check(imask, kmask):
            tab = table(imask)
            mu_I_notK = tab[all_k] - tab[kmask]
            if remark:
                return imask.bit_count() * (n - u) <= FK[kmask] + mu_I_notK
            return imask.bit_count() * (n - u) <= dKP[kmask] + aK[kmask] + mu_I_notK - cntP[kmask] * (n - t)
    else:
        def check(imask, kmask):
            mu_K_notI = table(imask)[kmask]
            if remark:
                return imask.bit_count() * (n - u) >= FK[kmask] - mu_K_notI
            return dKP[kmask] <= imask.bit_count() * (n - u) + cntP[kmask] * (n - t) + mu_K_notI - aK[kmask]
    return check


def _side_guard(sd: _Side, c: str, guards: Guards) -> None:
    uses = _USES[c]
    if uses == "IK":
        guards.check("pair_rs", sd.t, "rectangle side")
        guards.check("pair_k", sd.k, "k")
    elif uses == "I":
        guards.check("single_rs", sd.t, "rectangle side")
    else:
        guards.check("single_k", sd.k, "k")


def _side_report(sd: _Side, c: str, vec, family: str, remark: bool, guards: Guards) -> ConditionReport:
    _side_guard(sd, c, guards)
    name = f"{family}_{c}"
    hit = _enumerate(_USES[c], sd.t, sd.k, _side_checker(sd, c, vec, remark))
    if hit is None:
        return ConditionReport(name, True)
    imask, kmask = hit
    value = remark_value if remark else group_value
    lhs, rhs, rel = value(sd, c, vec, imask, kmask)
    if _holds(lhs, rhs, rel):
        raise AssertionError(f"fast and literal evaluators disagree on {name}")
    subsets = {"vec": tuple(vec)}
    if "I" in _USES[c]:
        subsets[sd.sub] = tuple(members(imask))
    if "K" in _USES[c]:
        subsets["K"] = tuple(members(kmask))
    return ConditionReport(name, False, SubsetCertificate(name, subsets, lhs, rhs, rel))


# --- Hall-type conditions (s = n) --------------------------------------------------------


def hall_conditions(rect: Rectangle, guards: Guards = DEFAULT_GUARDS) -> list[ConditionReport]:
    """The deficit bound followed by the six equivalent subset conditions for r x n rectangles."""
    n, r, k = rect.n, rect.r, rect.k
    if rect.s != n:
        raise PreconditionViolation(f"needs s = n, got s={rect.s}, n={n}")
    guards.check("single_rs", n, "n")
    guards.check("single_k", k, "k")
    guards.check("pair_rs", n, "n")
    guards.check("pair_k", k, "k")
    stats = MuStats(rect)
    d = rect.deficit
    bad = [l for l in range(1, k + 1) if d[l - 1] > n - r]
    reports = [
        _report(
            "hall_bound",
            SubsetCertificate("hall_bound", {"symbol": bad[0]}, d[bad[0] - 1], n - r, "<=") if bad else None,
        )
    ]
    for c in "123456":
        uses = {"1": "J", "2": "K", "3": "J", "4": "K", "5": "JK", "6": "JK"}[c]
        violation = None
        for jmask in range(1 << n) if "J" in uses else (0,):
            for kmask in range(1 << k) if "K" in uses else (0,):
                lhs, rhs, rel = hall_value(rect, stats, c, jmask, kmask)
                if not _holds(lhs, rhs, rel):
                    subsets = {}
                    if "J" in uses:
                        subsets["J"] = tuple(members(jmask))
                    if "K" in uses:
                        subsets["K"] = tuple(members(kmask))
                    violation = SubsetCertificate(f"hall_{c}", subsets, lhs, rhs, rel)
                    break
            if violation:
                break
        reports.append(_report(f"hall_{c}", violation))
    return reports


# --- fitting sequences ------------------------------------------------------------------


@dataclass(frozen=True)
class FittingSequence:
    a: tuple[int, ...]
    b: tuple[int, ...]


def fitting_targets(rect: Rectangle) -> tuple[int, int, list[int]]:
    """(required sum of a, required sum of b, per-symbol cap on a_l + b_l)."""
    n, r, s = rect.n, rect.r, rect.s
    d = rect.deficit
    P_r, P_s = p_set(rect, r), p_set(rect, s)
    P_min, P_max = (P_r, P_s) if r <= s else (P_s, P_r)
    A = r * (n - s) + len(P_r) * (n - r) - sum(d[l - 1] for l in P_r)
    B = s * (n - r) + len(P_s) * (n - s) - sum(d[l - 1] for l in P_s)
    caps = []
    for l in range(1, rect.k + 1):
        if l in P_min:
            caps.append(2 * n - r - s - d[l - 1])
        elif l in P_max:
            caps.append(n - max(r, s))
        else:
            caps.append(d[l - 1])
    return A, B, caps


def is_fitting(rect: Rectangle, fit: FittingSequence) -> bool:
    A, B, caps = fitting_targets(rect)
    return (
        len(fit.a) == len(fit.b) == rect.k
        and all(v >= 0 for v in fit.a + fit.b)
        and sum(fit.a) == A
        and sum(fit.b) == B
        and all(x + y <= c for x, y, c in zip(fit.a, fit.b, caps))
    )


def _count_compositions(total: int, caps: Sequence[int]) -> int:
    ways = [1] + [0] * max(total, 0)
    for c in caps:
        new = [0] * len(ways)
        for t in range(len(ways)):
            if ways[t]:
                for v in range(0, min(c, len(ways) - 1 - t) + 1):
                    new[t + v] += ways[t]
        ways = new
    return ways[total] if total >= 0 else 0


def _compositions(total: int, caps: Sequence[int]) -> Iterator[tuple[int, ...]]:
    """Vectors v with 0 <= v_l <= caps_l summing to ``total``, in lexicographic order."""
    k = len(caps)
    suffix = [0] * (k + 1)
    for l in range(k - 1, -1, -1):
        suffix[l] = suffix[l + 1] + max(caps[l], 0)
    out = [0] * k

    def rec(l: int, left: int):
        if l == k:
            if left == 0:
                yield tuple(out)
            return
        lo = max(0, left - suffix[l + 1])
        for v in range(lo, min(caps[l], left) + 1):
            out[l] = v
            yield from rec(l + 1, left - v)

    if total >= 0 and all(c >= 0 for c in caps):
        yield from rec(0, total)


def enumerate_fitting(rect: Rectangle, limit: int | None = None, guards: Guards = DEFAULT_GUARDS) -> Iterator[FittingSequence]:
    """All fitting sequences in lexicographic (a, b) order, lazily; at most ``limit``."""
    A, B, caps = fitting_targets(rect)
    if A < 0 or B < 0 or any(c < 0 for c in caps):
        return
    guards.check("fitting_vectors", _count_compositions(A, caps), "candidate a-vectors")
    guards.check("fitting_vectors", _count_compositions(B, caps), "candidate b-vectors")
    produced = 0
    for a in _compositions(A, caps):
        for b in _compositions(B, [c - x for c, x in zip(caps, a)]):
            yield FittingSequence(a, b)
            produced += 1
            if limit is not None and produced >= limit:
                return


# --- Theorem-1.4 style groups --------------------------------------------------------------


@dataclass(frozen=True)
class RyserConditions:
    row: list[ConditionReport]
    col: list[ConditionReport]
    col_3_literal: ConditionReport

    @property
    def row_any(self) -> bool:
        return any(self.row)

    @property
    def col_any(self) -> bool:
        return any(self.col)

    @property
    def row_agree(self) -> bool:
        return len({bool(c) for c in self.row}) == 1

    @property
    def col_agree(self) -> bool:
        return len({bool(c) for c in self.col}) == 1


def _group(rect: Rectangle, side: str, vec, remark: bool, guards: Guards, stats: MuStats | None = None):
    sd = _Side(rect, stats or MuStats(rect), side)
    family = ("remark_" if remark else "") + side
    reports = [_side_report(sd, c, vec, family, remark, guards) for c in "123456"]
    literal = None if remark else _side_report(sd, "3L", vec, family, remark, guards)
    return reports, literal


def ryser_conditions(rect: Rectangle, fit: FittingSequence, guards: Guards = DEFAULT_GUARDS) -> RyserConditions:
    """All six row-group and six column-group conditions for one fitting sequence.

    The third column condition is evaluated with its first sum over P_s (the reading
    symmetric to the row group); ``col_3_literal`` sums that term over every symbol.
    """
    stats = MuStats(rect)
    row, _ = _group(rect, "row", fit.a, False, guards, stats)
    col, literal = _group(rect, "col", fit.b, False, guards, stats)
    return RyserConditions(row, col, literal)


def remark42_conditions(rect: Rectangle, fit: FittingSequence, guards: Guards = DEFAULT_GUARDS) -> RyserConditions:
    """The restatement without P_r/P_s: f(l) = a_l + ((rho_l - e_l + r) monus n), and the column analogue."""
    stats = MuStats(rect)
    row, _ = _group(rect, "row", fit.a, True, guards, stats)
    col, _ = _group(rect, "col", fit.b, True, guards, stats)
    return RyserConditions(row, col, col[2])


@dataclass
class RyserVerdict:
    verdict: bool
    witness: FittingSequence | None
    sequences: int
    a_vectors: int
    b_vectors: int
    # (side, vector, verdicts) for every vector whose six verdicts were not all equal
    disagreements: list = field(default_factory=list)
    # vectors b where the literal third column condition differs from the corrected one
    literal_differs: list = field(default_factory=list)
    # theorem verdict if the column group used only the corrected / only the literal third condition
    verdict_col3_corrected: bool = False
    verdict_col3_literal: bool = False
    # verdict using the Remark-4.2 restatement
    verdict_remark42: bool = False
    remark_mismatches: int = 0


def ryser_theorem_check(rect: Rectangle, guards: Guards = DEFAULT_GUARDS, remark: bool = True) -> RyserVerdict:
    """Completable iff some fitting sequence satisfies a row-group and a column-group condition.

    Row conditions depend only on ``a`` and column conditions only on ``b``, so each
    distinct vector is evaluated once; the only coupling is ``a_l + b_l <= cap_l``.
    """
    A, B, caps = fitting_targets(rect)
    stats = MuStats(rect)
    out = RyserVerdict(False, None, 0, 0, 0)
    if A < 0 or B < 0 or any(c < 0 for c in caps):
        return out
    guards.check("fitting_vectors", _count_compositions(A, caps), "candidate a-vectors")
    guards.check("fitting_vectors", _count_compositions(B, caps), "candidate b-vectors")
    a_list = list(_compositions(A, caps))
    b_list = list(_compositions(B, caps))
    out.a_vectors, out.b_vectors = len(a_list), len(b_list)

    row_ok, col_ok, col3c, col3l, rem_row, rem_col = {}, {}, {}, {}, {}, {}
    for a in a_list:
        reps, _ = _group(rect, "row", a, False, guards, stats)
        row_ok[a] = any(reps)
        if len({bool(x) for x in reps}) > 1:
            out.disagreements.append(("row", a, [bool(x) for x in reps]))
        if remark:
            rreps, _ = _group(rect, "row", a, True, guards, stats)
            rem_row[a] = any(rreps)
            if [bool(x) for x in rreps] != [bool(x) for x in reps]:
                out.remark_mismatches += 1
    for b in b_list:
        reps, literal = _group(rect, "col", b, False, guards, stats)
        col_ok[b] = any(reps)
        col3c[b] = bool(reps[2])
        col3l[b] = bool(literal)
        if len({bool(x) for x in reps}) > 1:
            out.disagreements.append(("col", b, [bool(x) for x in reps]))
        if bool(literal) != bool(reps[2]):
            out.literal_differs.append(b)
        if remark:
            rreps, _ = _group(rect, "col", b, True, guards, stats)
            rem_col[b] = any(rreps)
            if [bool(x) for x in rreps] != [bool(x) for x in reps]:
                out.remark_mismatches += 1

    def exists(rowmap, colmap) -> FittingSequence | None:
        for a in a_list:
            if not rowmap[a]:
                continue
            for b in b_list:
                if colmap[b] and all(x + y <= c for x, y, c in zip(a, b, caps)):
                    return FittingSequence(a, b)
        return None

    out.sequences = sum(1 for a in a_list for b in b_list if all(x + y <= c for x, y, c in zip(a, b, caps)))
    out.witness = exists(row_ok, col_ok)
    out.verdict = out.witness is not None
    out.verdict_col3_corrected = exists(row_ok, col3c) is not None
    out.verdict_col3_literal = exists(row_ok, col3l) is not None
    if remark:
        out.verdict_remark42 = exists(rem_row, rem_col) is not None
    return out


# --- corollaries ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CorollaryReport:
    which: str
    hypothesis: bool
    conditions: list[ConditionReport] | None  # None when the hypothesis fails
    verdict: bool | None  # completability predicted by the corollary, None when not applicable

    @property
    def agree(self) -> bool:
        return self.conditions is None or len({bool(c) for c in self.conditions}) <= 1 or self.which == "cor53"


def cor52_value(rect: Rectangle, stats: MuStats, c: str, imask: int, jmask: int, kmask: int):
    n, r, s, k = rect.n, rect.r, rect.s, rect.k
    d = rect.deficit
    if c == "1":
        rhs = sum(min(d[l - 1], stats.sym_rows_m(l, imask) + stats.sym_cols_m(l, jmask)) for l in range(1, k + 1))
        return imask.bit_count() * (n - s) + jmask.bit_count() * (n - r), rhs, "<="
    nk = full_mask(k) & ~kmask
    rhs = sum(monus(n - s, stats.row_m(i, nk)) for i in members(imask))
    rhs += sum(monus(n - r, stats.col_m(j, nk)) for j in members(jmask))
    return sum(d[l - 1] for l in members(kmask)), rhs, ">="


def cor53_value(rect: Rectangle, stats: MuStats, side: str, c: str, imask: int, kmask: int):
    sd = _Side(rect, stats, side)
    n, t, u, k = sd.n, sd.t, sd.u, sd.k
    d = sd.d
    if c == "1":
        lhs = sum(monus(d[l - 1] + t, n) for l in members(kmask))
        return lhs, sum(min(n - u, sd.mu_own(i, kmask)) for i in range(1, t + 1)), "<="
    ni = sd.all_own & ~imask
    rhs = sum(monus(d[l - 1] + t - n, sd.mu_sym(l, ni)) for l in range(1, k + 1))
    return imask.bit_count() * (n - u), rhs, ">="


def cor52_hypothesis(rect: Rectangle) -> bool:
    m = max(rect.r, rect.s)
    return all(e >= p - rect.n + m for e, p in zip(rect.e, rect.rho))


def cor53_hypothesis(rect: Rectangle) -> bool:
    return all(e >= rect.r + rect.s - p for e, p in zip(rect.e, rect.rho))


def cor54_hypothesis(rect: Rectangle) -> bool:
    m = max(rect.r, rect.s)
    return all(rect.r + rect.s - e <= p <= e + rect.n - m for e, p in zip(rect.e, rect.rho))


def _cor52(rect: Rectangle, guards: Guards) -> list[ConditionReport]:
    r, s, k = rect.r, rect.s, rect.k
    guards.check("single_rs", max(r, s), "rectangle side")
    guards.check("single_k", k, "k")
    stats = MuStats(rect)
    reports = []
    hit = None
    for imask in range(1 << r):
        for jmask in range(1 << s):
            lhs, rhs, rel = cor52_value(rect, stats, "1", imask, jmask, 0)
            if not _holds(lhs, rhs, rel):
                hit = SubsetCertificate("cor52_1", {"I": tuple(members(imask)), "J": tuple(members(jmask))}, lhs, rhs, rel)
                break
        if hit:
            break
    reports.append(_report("cor52_1", hit))
    # For fixed K the right side is a sum of nonnegative per-row and per-column terms,
    # so the I and J sweeps are done independently, keeping the first maximizer.
    n, d = rect.n, rect.deficit
    hit = None
    for kmask in range(1 << k):
        nk = full_mask(k) & ~kmask
        row_terms = [monus(n - s, stats.row_m(i, nk)) for i in range(1, r + 1)]
        col_terms = [monus(n - r, stats.col_m(j, nk)) for j in range(1, s + 1)]
        row_sums, col_sums = _subset_sums(row_terms), _subset_sums(col_terms)
        best_i = max(range(len(row_sums)), key=lambda m: (row_sums[m], -m))
        best_j = max(range(len(col_sums)), key=lambda m: (col_sums[m], -m))
        lhs, rhs, rel = cor52_value(rect, stats, "2", best_i, best_j, kmask)
        if not _holds(lhs, rhs, rel):
            hit = SubsetCertificate(
                "cor52_2",
                {"I": tuple(members(best_i)), "J": tuple(members(best_j)), "K": tuple(members(kmask))},
                lhs,
                rhs,
                rel,
            )
            break
    reports.append(_report("cor52_2", hit))
    return reports


def _cor53(rect: Rectangle, guards: Guards) -> list[ConditionReport]:
    stats = MuStats(rect)
    reports = []
    for side in ("row", "col"):
        t = rect.r if side == "row" else rect.s
        guards.check("single_rs", t, "rectangle side")
        guards.check("single_k", rect.k, "k")
        sub = "I" if side == "row" else "J"
        for c in "12":
            hit = None
            masks = ((0, km) for km in range(1 << rect.k)) if c == "1" else ((im, 0) for im in range(1 << t))
            for imask, kmask in masks:
                lhs, rhs, rel = cor53_value(rect, stats, side, c, imask, kmask)
                if not _holds(lhs, rhs, rel):
                    subsets = {"K": tuple(members(kmask))} if c == "1" else {sub: tuple(members(imask))}
                    hit = SubsetCertificate(f"cor53_{side}_{c}", subsets, lhs, rhs, rel)
                    break
            reports.append(_report(f"cor53_{side}_{c}", hit))
    return reports


def corollary_checks(rect: Rectangle, which: str, guards: Guards = DEFAULT_GUARDS) -> CorollaryReport:
    """Hypothesis and simplified conditions of one corollary.

    cor52: e_l >= rho_l - n + max(r, s); conditions over (I, J) and (I, J, K).
    cor53: e_l >= r + s - rho_l; (row 1 or row 2) and (col 1 or col 2).
    cor54: r + s - e_l <= rho_l <= e_l + n - max(r, s); completion is then unconditional.
    """
    if which == "cor52":
        hyp = cor52_hypothesis(rect)
        if not hyp:
            return CorollaryReport(which, False, None, None)
        conds = _cor52(rect, guards)
        return CorollaryReport(which, True, conds, bool(conds[0]))
    if which == "cor53":
        hyp = cor53_hypothesis(rect)
        if not hyp:
            return CorollaryReport(which, False, None, None)
        conds = _cor53(rect, guards)
        verdict = (bool(conds[0]) or bool(conds[1])) and (bool(conds[2]) or bool(conds[3]))
        return CorollaryReport(which, True, conds, verdict)
    if which == "cor54":
        hyp = cor54_hypothesis(rect)
        return CorollaryReport(which, hyp, [], True if hyp else None)
    raise ValueError(f"unknown corollary {which!r}")


def ryser_classical(rect: Rectangle) -> bool | None:
    """For latin profiles (k = n, rho = n): e_l >= r + s - n for all l. None otherwise."""
    n = rect.n
    if rect.k != n or any(p != n for p in rect.rho):
        return None
    return all(e >= rect.r + rect.s - n for e in rect.e)


# --- certificate replay ------------------------------------------------------------------------


def replay_condition_certificate(cert: SubsetCertificate, rect: Rectangle) -> tuple[int, int]:
    """Recompute (lhs, rhs) of any certificate produced in this module from the rectangle."""
    fam, sets = cert.family, cert.subsets
    stats = MuStats(rect)
    k = rect.k
    kmask = mask_of(sets.get("K", ()), k, "symbol")
    if fam == "hall_bound":
        l = sets["symbol"]
        return rect.deficit[l - 1], rect.n - rect.r
    if fam.startswith("hall_"):
        jmask = mask_of(sets.get("J", ()), rect.n, "column")
        return hall_value(rect, stats, fam.split("_")[1], jmask, kmask)[:2]
    if fam.startswith(("row_", "col_", "remark_row_", "remark_col_")):
        parts = fam.split("_")
        remark = parts[0] == "remark"
        side, c = (parts[1], parts[2]) if remark else (parts[0], parts[1])
        sd = _Side(rect, stats, side)
        imask = mask_of(sets.get(sd.sub, ()), sd.t, "line")
        value = remark_value if remark else group_value
        return value(sd, c, sets["vec"], imask, kmask)[:2]
    if fam.startswith("cor52_"):
        imask = mask_of(sets.get("I", ()), rect.r, "row")
        jmask = mask_of(sets.get("J", ()), rect.s, "column")
        return cor52_value(rect, stats, fam[-1], imask, jmask, kmask)[:2]
    if fam.startswith("cor53_"):
        _, side, c = fam.split("_")
        sd_t = rect.r if side == "row" else rect.s
        imask = mask_of(sets.get("I" if side == "row" else "J", ()), sd_t, "line")
        return cor53_value(rect, stats, side, c, imask, kmask)[:2]
    raise ValueError(f"not a condition certificate family: {fam}")


def necessary_holds(rect: Rectangle) -> bool:
    return bool(necessary_bound(rect))
