"""Colored bipartite multigraphs and the auxiliary graphs built from a rectangle.

Vertices are ``(role, index)`` tuples: ``("x", i)`` for row i, ``("y", j)`` for column
j, ``("alpha", 0)`` / ``("beta", 0)`` for the amalgamated extra rows / columns (their
parts after a split are ``("alpha", t)`` / ``("beta", t)`` for t >= 1), and
``("sym", l)`` for symbol l. Edges are stored as multiplicities per
``(left, right, color)`` triple; ``color`` is a symbol id or ``None`` (uncolored).
"""

from __future__ import annotations

from collections import Counter, defaultdict
from typing import Iterable, Iterator

from .core import Rectangle

Vertex = tuple[str, int]
UNCOLORED = None

ALPHA: Vertex = ("alpha", 0)
BETA: Vertex = ("beta", 0)


def x(i: int) -> Vertex:
    return ("x", i)


def y(j: int) -> Vertex:
    return ("y", j)


def sym(l: int) -> Vertex:
    return ("sym", l)


class ColoredBigraph:
    """Immutable bipartite multigraph with optionally colored edges."""

    def __init__(self, left: Iterable[Vertex], right: Iterable[Vertex], counts=None, origin=None):
        self.left: tuple[Vertex, ...] = tuple(left)
        self.right: tuple[Vertex, ...] = tuple(right)
        self._left_set = frozenset(self.left)
        self._right_set = frozenset(self.right)
        if len(self._left_set) != len(self.left) or len(self._right_set) != len(self.right):
            raise ValueError("duplicate vertex ids")
        if self._left_set & self._right_set:
            raise ValueError("a vertex cannot be on both sides")
        self._counts: dict[tuple, int] = {}
        for (u, v, c), m in (counts or {}).items():
            if m < 0:
                raise ValueError(f"negative multiplicity on {u}-{v}")
            if m == 0:
                continue
            if u in self._right_set and v in self._left_set:
                u, v = v, u
            if u not in self._left_set or v not in self._right_set:
                raise ValueError(f"edge {u}-{v} does not join the two sides")
            key = (u, v, c)
            self._counts[key] = self._counts.get(key, 0) + m
        # origin: (u, v, c) in this graph -> Counter of (u', v', c) in the graph it came from
        self.origin = origin
        self._deg: Counter = Counter()
        self._deg_c: Counter = Counter()
        self._pair: Counter = Counter()
        self._nbrs: dict[Vertex, dict[Vertex, int]] = defaultdict(dict)
        for (u, v, c), m in self._counts.items():
            self._deg[u] += m
            self._deg[v] += m
            self._deg_c[u, c] += m
            self._deg_c[v, c] += m
            self._pair[u, v] += m
            self._nbrs[u][v] = self._nbrs[u].get(v, 0) + m
            self._nbrs[v][u] = self._nbrs[v].get(u, 0) + m

    # --- queries -------------------------------------------------------------
    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return self.left + self.right

    def is_left(self, v: Vertex) -> bool:
        return v in self._left_set

    def __contains__(self, v) -> bool:
        return v in self._left_set or v in self._right_set

    def counts(self) -> dict[tuple, int]:
        return dict(self._counts)

    def edges(self) -> Iterator[tuple[Vertex, Vertex, object, int]]:
        """(left, right, color, mult) in vertex-declaration order, colors ascending (None first)."""
        lpos = {v: t for t, v in enumerate(self.left)}
        rpos = {v: t for t, v in enumerate(self.right)}
        for (u, v, c) in sorted(self._counts, key=lambda e: (lpos[e[0]], rpos[e[1]], -1 if e[2] is None else e[2])):
            yield u, v, c, self._counts[(u, v, c)]

    def num_edges(self) -> int:
        return sum(self._counts.values())

    def deg(self, v: Vertex) -> int:
        return self._deg[v]

    def deg_color(self, v: Vertex, color) -> int:
        return self._deg_c[v, color]

    def mult(self, u: Vertex, v: Vertex) -> int:
        if u in self._right_set:
            u, v = v, u
        return self._pair[u, v]

    def mult_color(self, u: Vertex, v: Vertex, color) -> int:
        if u in self._right_set:
            u, v = v, u
        return self._counts.get((u, v, color), 0)

    def mult_to(self, u: Vertex, S: Iterable[Vertex]) -> int:
        nb = self._nbrs.get(u, {})
        return sum(nb.get(v, 0) for v in S)

    def mult_between(self, S: Iterable[Vertex], T: Iterable[Vertex]) -> int:
        T = set(T)
        return sum(self.mult_to(u, T) for u in S)

    def neighbors(self, v: Vertex) -> dict[Vertex, int]:
        return dict(self._nbrs.get(v, {}))

    def colors(self) -> list:
        cs = {c for (_, _, c) in self._counts}
        return sorted(cs, key=lambda c: -1 if c is None else c)

    def color_class_size(self, color) -> int:
        return sum(m for (_, _, c), m in self._counts.items() if c == color)

    def uncolored(self) -> int:
        return self.color_class_size(None)

    def star(self, v: Vertex) -> dict[tuple[Vertex, object], int]:
        """(neighbor, color) -> multiplicity for edges at v."""
        out = {}
        for (a, b, c), m in self._counts.items():
            if a == v:
                out[b, c] = m
            elif b == v:
                out[a, c] = m
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, ColoredBigraph):
            return NotImplemented
        return (
            self._left_set == other._left_set
            and self._right_set == other._right_set
            and self._counts == other._counts
        )

    def __hash__(self):
        return hash((self._left_set, self._right_set, frozenset(self._counts.items())))

    def __repr__(self) -> str:
        return f"ColoredBigraph(|L|={len(self.left)}, |R|={len(self.right)}, edges={self.num_edges()})"

    # --- debug text format ----------------------------------------------------
    def to_text(self) -> str:
        lines = ["# rholatin bigraph v1"]
        lines += [f"L {role} {idx}" for role, idx in self.left]
        lines += [f"R {role} {idx}" for role, idx in self.right]
        for u, v, c, m in self.edges():
            color = "-" if c is None else str(c)
            lines.append(f"E {u[0]}:{u[1]} {v[0]}:{v[1]} {color} {m}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "ColoredBigraph":
        left, right, counts = [], [], {}

        def vert(tok: str) -> Vertex:
            role, idx = tok.split(":")
            return (role, int(idx))

        for raw in text.splitlines():
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tag, *rest = line.split()
            if tag == "L":
                left.append((rest[0], int(rest[1])))
            elif tag == "R":
                right.append((rest[0], int(rest[1])))
            elif tag == "E":
                u, v, c, m = rest
                key = (vert(u), vert(v), None if c == "-" else int(c))
                counts[key] = counts.get(key, 0) + int(m)
            else:
                raise ValueError(f"bad line: {raw!r}")
        return cls(left, right, counts)


# --- constructions -------------------------------------------------------------


def build_F(rect: Rectangle) -> ColoredBigraph:
    """K_{n,n} on rows x_1..x_n and columns y_1..y_n, edge x_i y_j colored by the rectangle cell."""
    n = rect.n
    counts = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            color = rect.grid[i - 1][j - 1] if i <= rect.r and j <= rect.s else UNCOLORED
            counts[x(i), y(j), color] = 1
    return ColoredBigraph([x(i) for i in range(1, n + 1)], [y(j) for j in range(1, n + 1)], counts)


def decode_F(F: ColoredBigraph, r: int, s: int) -> list[list[int]]:
    """The colored x_i y_j edges (i <= r, j <= s) read back as a grid."""
    grid = [[0] * s for _ in range(r)]
    for u, v, c, m in F.edges():
        if c is not None and u[0] == "x" and v[0] == "y" and u[1] <= r and v[1] <= s:
            grid[u[1] - 1][v[1] - 1] = c
    return grid


def amalgamate(F: ColoredBigraph, rect: Rectangle) -> ColoredBigraph:
    """Identify x_{r+1..n} into alpha and y_{s+1..n} into beta.

    A super-vertex is absent when its block is empty (r = n or s = n). The result
    records an origin map so :func:`deamalgamate` can rebuild F.
    """
    n, r, s = rect.n, rect.r, rect.s

    def image(v: Vertex) -> Vertex:
        if v[0] == "x" and v[1] > r:
            return ALPHA
        if v[0] == "y" and v[1] > s:
            return BETA
        return v

    left = [x(i) for i in range(1, r + 1)] + ([ALPHA] if r < n else [])
    right = [y(j) for j in range(1, s + 1)] + ([BETA] if s < n else [])
    counts: dict = {}
    origin: dict = defaultdict(Counter)
    for u, v, c, m in F.edges():
        key = (image(u), image(v), c)
        counts[key] = counts.get(key, 0) + m
        origin[key][u, v, c] += m
    return ColoredBigraph(left, right, counts, origin=dict(origin))


def deamalgamate(G: ColoredBigraph, left, right) -> ColoredBigraph:
    """Rebuild the original graph from G's origin map."""
    if G.origin is None:
        raise ValueError("graph carries no origin map")
    counts: Counter = Counter()
    for key, src in G.origin.items():
        if sum(src.values()) != G.mult_color(key[0], key[1], key[2]):
            raise ValueError(f"origin map inconsistent at {key}")
        counts.update(src)
    return ColoredBigraph(left, right, counts)


def build_gamma(rect: Rectangle, hall: bool = False) -> ColoredBigraph:
    """Simple bigraph joining each row/column vertex to the symbols it is missing.

    With ``hall=True`` (only for s = n) the row vertices are left out, giving the
    column-by-symbol graph used for the r x n case.
    """
    k = rect.k
    present_rows = [] if hall else [(x(i), rect.row_present[i - 1]) for i in range(1, rect.r + 1)]
    present_cols = [(y(j), rect.col_present[j - 1]) for j in range(1, rect.s + 1)]
    counts = {}
    for u, present in present_rows + present_cols:
        for l in range(1, k + 1):
            if not present >> (l - 1) & 1:
                counts[u, sym(l), UNCOLORED] = 1
    left = [u for u, _ in present_rows + present_cols]
    return ColoredBigraph(left, [sym(l) for l in range(1, k + 1)], counts)


def induced_sides(gamma: ColoredBigraph) -> tuple[ColoredBigraph, ColoredBigraph]:
    """Split Γ into the row part (x's and symbols) and the column part (y's and symbols)."""
    parts = []
    for role in ("x", "y"):
        left = [v for v in gamma.left if v[0] == role]
        keep = set(left)
        counts = {(u, v, c): m for (u, v, c), m in gamma.counts().items() if u in keep}
        parts.append(ColoredBigraph(left, gamma.right, counts))
    return parts[0], parts[1]
