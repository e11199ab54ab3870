"""Brute-force ground truth and random instances.

Nothing here uses flows, graphs or the theorem evaluators: completions are found by
plain backtracking and factors by enumerating degree vectors.
"""

from __future__ import annotations

import hashlib
import json
import random
from dataclasses import dataclass
from functools import lru_cache

from .core import Rectangle, RhoProfile, Square
from .errors import InvalidParams
from .guards import DEFAULT_GUARDS, Guards

PRNG_ID = "python-random-mt19937"


def _search(rect: Rectangle, prune: bool, count: bool):
    """Fill the empty cells row-major. Returns (first completion or None, number found)."""
    n, k, r, s = rect.n, rect.k, rect.r, rect.s
    grid = [[0] * n for _ in range(n)]
    for i in range(r):
        grid[i][:s] = rect.grid[i]
    left = [p - c for p, c in zip(rect.rho, rect.e)]  # remaining budget per symbol
    row_has = [set(row[:s]) if i < r else set() for i, row in enumerate(grid)]
    col_has = [set(rect.grid[i][j] for i in range(r)) if j < s else set() for j in range(n)]
    cells = [(i, j) for i in range(n) for j in range(n) if not (i < r and j < s)]
    symbols = range(1, k + 1)
    first = None
    found = 0

    def feasible_after(pos: int) -> bool:
        # every symbol with budget left needs that many distinct open rows and columns
        open_rows = set()
        open_cols = set()
        for i, j in cells[pos:]:
            open_rows.add(i)
            open_cols.add(j)
        for l in symbols:
            need = left[l - 1]
            if need:
                if sum(1 for i in open_rows if l not in row_has[i]) < need:
                    return False
                if sum(1 for j in open_cols if l not in col_has[j]) < need:
                    return False
        return True

    def go(pos: int) -> bool:
        nonlocal first, found
        if pos == len(cells):
            found += 1
            if first is None:
                first = [row[:] for row in grid]
            return not count
        if prune and not feasible_after(pos):
            return False
        i, j = cells[pos]
        for l in symbols:
            if left[l - 1] and l not in row_has[i] and l not in col_has[j]:
                grid[i][j] = l
                left[l - 1] -= 1
                row_has[i].add(l)
                col_has[j].add(l)
                done = go(pos + 1)
                row_has[i].discard(l)
                col_has[j].discard(l)
                left[l - 1] += 1
                grid[i][j] = 0
                if done:
                    return True
        return False

    go(0)
    return first, found


def brute_force_complete(rect: Rectangle, prune: bool = True, guards: Guards = DEFAULT_GUARDS) -> Square | None:
    """First completion in row-major, ascending-symbol order, or None if there is none."""
    guards.check("oracle_n", rect.n, "n")
    guards.check("oracle_k", rect.k, "k")
    grid, _ = _search(rect, prune, count=False)
    return None if grid is None else Square(grid, rect.profile)


def count_completions(rect: Rectangle, prune: bool = True, guards: Guards = DEFAULT_GUARDS) -> int:
    guards.check("count_n", rect.n, "n")
    guards.check("oracle_k", rect.k, "k")
    return _search(rect, prune, count=True)[1]


def brute_force_factor(G, g: dict, f: dict) -> dict | None:
    """Degree-bounded subgraph of a bipartite multigraph by exhaustive search.

    Left vertices are processed in order; for each, every vector of edge counts to the
    right side is tried. Memoized on (left index, right degrees so far). Returns
    ``{(u, v): count}`` or None.
    """
    L, R = list(G.left), list(G.right)
    mult = [[G.mult(u, v) for v in R] for u in L]
    lo_r = [g.get(v, 0) for v in R]
    hi_r = [f[v] for v in R]

    def vectors(caps, lo, hi):
        out = []

        def rec(t, acc, total):
            if t == len(caps):
                if lo <= total <= hi:
                    out.append(tuple(acc))
                return
            for c in range(min(caps[t], hi - total) + 1):
                acc.append(c)
                rec(t + 1, acc, total + c)
                acc.pop()

        rec(0, [], 0)
        return out

    @lru_cache(maxsize=None)
    def solve(t: int, degs: tuple):
        if t == len(L):
            ok = all(lo_r[v] <= degs[v] for v in range(len(R)))
            return () if ok else None
        u = L[t]
        caps = [min(mult[t][v], hi_r[v] - degs[v]) for v in range(len(R))]
        for vec in vectors(caps, g.get(u, 0), f[u]):
            rest = solve(t + 1, tuple(d + c for d, c in zip(degs, vec)))
            if rest is not None:
                return (vec,) + rest
        return None

    sol = solve(0, tuple(0 for _ in R))
    if sol is None:
        return None
    return {(L[a], R[b]): c for a, vec in enumerate(sol) for b, c in enumerate(vec) if c}


# --- random instances -------------------------------------------------------------------


@dataclass(frozen=True)
class InstanceParams:
    n: tuple[int, int] = (2, 5)
    k: tuple[int, int] = (2, 8)  # clipped to [n, n^2]
    r: tuple[int, int] = (1, 5)  # both ends clipped to n
    s: tuple[int, int] = (1, 5)
    mode: str = "arbitrary"  # or "completable"
    perturb: int = 3  # budget moves in arbitrary mode

    def __post_init__(self):
        for name in ("n", "k", "r", "s"):
            lo, hi = getattr(self, name)
            if lo < 1 or lo > hi:
                raise InvalidParams(f"bad range for {name}: {lo}..{hi}")
        if self.mode not in ("completable", "arbitrary"):
            raise InvalidParams(f"unknown mode {self.mode!r}")


def random_profile(rng: random.Random, n: int, k: int) -> RhoProfile:
    """Uniformly spread n^2 - k extra units over k symbols, each capped at n."""
    if not n <= k <= n * n:
        raise InvalidParams(f"no profile with n={n}, k={k}")
    rho = [1] * k
    extra = n * n - k
    while extra:
        l = rng.randrange(k)
        if rho[l] < n:
            rho[l] += 1
            extra -= 1
    return RhoProfile(n, k, tuple(rho))


def random_instance(params: InstanceParams, seed: int) -> Rectangle:
    from .completion import generate_square

    rng = random.Random(seed)
    n = rng.randint(*params.n)
    k_lo, k_hi = max(params.k[0], n), min(params.k[1], n * n)
    if k_lo > k_hi:
        raise InvalidParams(f"no k in {params.k} fits n={n}")
    k = rng.randint(k_lo, k_hi)
    # both ends are clipped to [1, n], so (5, 5) means "as close to 5 as n allows"
    r = rng.randint(min(params.r[0], n), min(params.r[1], n))
    s = rng.randint(min(params.s[0], n), min(params.s[1], n))
    profile = random_profile(rng, n, k)
    square = generate_square(profile, seed=rng.randrange(1 << 30))
    # relabel symbols and permute rows/columns so the crop is not always the same pattern
    rows = list(range(n))
    cols = list(range(n))
    rng.shuffle(rows)
    rng.shuffle(cols)
    grid = [[square.grid[i][j] for j in cols] for i in rows]
    rect = Rectangle([row[:s] for row in grid[:r]], profile)
    if params.mode == "completable":
        return rect
    rho = list(profile.rho)
    e = rect.e
    for _ in range(params.perturb):
        donors = [l for l in range(k) if rho[l] > max(1, e[l])]
        takers = [l for l in range(k) if rho[l] < n]
        if not donors or not takers:
            break
        a = rng.choice(donors)
        b = rng.choice([l for l in takers if l != a] or [a])
        if a != b:
            rho[a] -= 1
            rho[b] += 1
    return Rectangle(rect.grid, RhoProfile(n, k, tuple(rho)))


def instance_digest(rect: Rectangle) -> str:
    blob = json.dumps(rect.as_dict(), sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()[:16]
