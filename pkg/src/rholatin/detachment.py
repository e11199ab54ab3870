"""Splitting an amalgamated vertex into balanced parts.

A vertex v with p parts is split one part at a time. With q parts still to carve, the
next part takes between floor(M/q) and ceil(M/q) of the M remaining edges to each
neighbor and between floor(D/q) and ceil(D/q) of the D remaining edges of each color.
Those bounds form a (g,f)-factor problem on the neighbor-by-color graph of the star at
v; it always has a solution (the fractional choice "everything divided by q" meets all
bounds, and the flow polytope is integral). The leftover averages stay inside the
original floor/ceil window, so every part ends up balanced against the original
counts.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .certificates import Infeasible
from .core import Rectangle, Square, is_completion_of
from .errors import PostconditionFailure, PreconditionViolation, SplitInfeasible
from .factors import DegreeSpec, find_gf_factor
from .graphs import ALPHA, BETA, ColoredBigraph, Vertex, decode_F, x, y


def _floor_ceil(num: int, den: int) -> tuple[int, int]:
    return num // den, -(-num // den)


def _approx(value: int, num: int, den: int) -> bool:
    lo, hi = _floor_ceil(num, den)
    return lo <= value <= hi


def _color_key(c):
    return -1 if c is None else c


@dataclass(frozen=True)
class SplitPlan:
    """Per-part targets for splitting ``vertex`` into ``parts`` pieces."""

    vertex: Vertex
    parts: int
    mult_targets: dict  # neighbor -> (floor, ceil)
    color_targets: dict  # color -> (floor, ceil)

    @classmethod
    def for_vertex(cls, G: ColoredBigraph, vertex: Vertex, parts: int) -> "SplitPlan":
        star = G.star(vertex)
        mult, color = {}, {}
        for (u, c), m in star.items():
            mult[u] = mult.get(u, 0) + m
            color[c] = color.get(c, 0) + m
        return cls(
            vertex,
            parts,
            {u: _floor_ceil(m, parts) for u, m in mult.items()},
            {c: _floor_ceil(m, parts) for c, m in color.items()},
        )


def _extract_part(remaining: dict, q: int, neighbors: list, colors: list) -> dict:
    """Choose one part's share of the remaining star (q parts left)."""
    if q == 1:
        return {key: m for key, m in remaining.items() if m}
    nb_id = {u: ("nb", t) for t, u in enumerate(neighbors)}
    col_id = {c: ("col", t) for t, c in enumerate(colors)}
    counts = {(nb_id[u], col_id[c], None): m for (u, c), m in remaining.items() if m}
    aux = ColoredBigraph(list(nb_id.values()), list(col_id.values()), counts)
    g, f = {}, {}
    for u in neighbors:
        g[nb_id[u]], f[nb_id[u]] = _floor_ceil(sum(m for (w, _), m in remaining.items() if w == u), q)
    for c in colors:
        g[col_id[c]], f[col_id[c]] = _floor_ceil(sum(m for (_, d), m in remaining.items() if d == c), q)
    res = find_gf_factor(aux, DegreeSpec(g, f))
    if isinstance(res, Infeasible):
        raise SplitInfeasible(f"part extraction failed with {q} parts left: {res.certificate.as_dict()}")
    back_nb = {v: u for u, v in nb_id.items()}
    back_col = {v: c for c, v in col_id.items()}
    return {(back_nb[a], back_col[b]): m for (a, b, _), m in res.counts().items()}


def split_vertex(G: ColoredBigraph, vertex: Vertex, p: int, part_names=None, rng: random.Random | None = None) -> ColoredBigraph:
    """Replace ``vertex`` by ``p`` parts sharing its edges evenly per neighbor and per color.

    ``part_names`` defaults to ``(role, 1..p)``; ``rng`` shuffles the neighbor and color
    order fed to the flow solver, which changes which balanced split comes out.
    """
    if p < 1:
        raise PreconditionViolation(f"need at least one part, got {p}")
    if vertex not in G:
        raise PreconditionViolation(f"{vertex} is not a vertex")
    names = list(part_names) if part_names is not None else [(vertex[0], t) for t in range(1, p + 1)]
    if len(names) != p:
        raise PreconditionViolation(f"{len(names)} part names for {p} parts")
    clash = (set(G.vertices) - {vertex}) & set(names)
    if clash:
        raise PreconditionViolation(f"part names clash with existing vertices: {sorted(clash)}")

    star = G.star(vertex)
    side = G.right if G.is_left(vertex) else G.left
    neighbors = [u for u in side if any(w == u for (w, _) in star)]
    colors = sorted({c for (_, c) in star}, key=_color_key)
    if rng is not None:
        rng.shuffle(neighbors)
        rng.shuffle(colors)

    remaining = dict(star)
    shares = []
    for q in range(p, 0, -1):
        part = _extract_part(remaining, q, neighbors, colors)
        for key, m in part.items():
            remaining[key] -= m
        shares.append(part)
    if any(remaining.values()):
        raise SplitInfeasible("edges left over after the last part")

    counts = {}
    for (a, b, c), m in G.counts().items():
        if vertex not in (a, b):
            counts[a, b, c] = m
    vertex_left = G.is_left(vertex)
    for name, part in zip(names, shares):
        for (u, c), m in part.items():
            key = (name, u, c) if vertex_left else (u, name, c)
            counts[key] = counts.get(key, 0) + m

    def replace(seq):
        out = []
        for v in seq:
            out.extend(names if v == vertex else [v])
        return out

    F = ColoredBigraph(replace(G.left), replace(G.right), counts)
    check_split(G, F, vertex, names)
    return F


def check_split(G: ColoredBigraph, F: ColoredBigraph, vertex: Vertex, names) -> None:
    """Assert the balance conditions for one split: per-color degrees and per-neighbor multiplicities."""
    p = len(names)
    star = G.star(vertex)
    colors = {c for (_, c) in star}
    nbrs = {u for (u, _) in star}
    total = 0
    for name in names:
        for c in colors:
            if not _approx(F.deg_color(name, c), G.deg_color(vertex, c), p):
                raise PostconditionFailure(
                    f"part {name}: color {c} degree {F.deg_color(name, c)} vs {G.deg_color(vertex, c)}/{p}"
                )
        for u in nbrs:
            if not _approx(F.mult(name, u), G.mult(vertex, u), p):
                raise PostconditionFailure(f"part {name}: mult to {u} is {F.mult(name, u)} vs {G.mult(vertex, u)}/{p}")
        total += F.deg(name)
    if total != G.deg(vertex):
        raise PostconditionFailure(f"parts carry {total} edges, vertex had {G.deg(vertex)}")


def check_detachment(G: ColoredBigraph, F: ColoredBigraph, alpha_parts, beta_parts) -> None:
    """Assert conditions (i)-(v) of the two-vertex detachment of alpha and beta."""
    p, q = len(alpha_parts), len(beta_parts)
    has_a, has_b = ALPHA in G, BETA in G
    colors = G.colors()
    others = [v for v in G.vertices if v not in (ALPHA, BETA)]
    for present, sv, parts, cnt in ((has_a, ALPHA, alpha_parts, p), (has_b, BETA, beta_parts, q)):
        if not present:
            continue
        for part in parts:
            for c in colors:
                if not _approx(F.deg_color(part, c), G.deg_color(sv, c), cnt):
                    raise PostconditionFailure(f"{part}: color {c} degree not balanced")
            for u in others:
                if not _approx(F.mult(part, u), G.mult(sv, u), cnt):
                    raise PostconditionFailure(f"{part}: multiplicity to {u} not balanced")
    if has_a and has_b:
        for a in alpha_parts:
            for b in beta_parts:
                if not _approx(F.mult(a, b), G.mult(ALPHA, BETA), p * q):
                    raise PostconditionFailure(f"{a}-{b} multiplicity not balanced")


def detach(G: ColoredBigraph, p: int, q: int, alpha_names, beta_names, rng: random.Random | None = None) -> ColoredBigraph:
    """Split alpha into p parts, then beta into q parts, and check (i)-(v) on the result."""
    F = G
    if ALPHA in G:
        F = split_vertex(F, ALPHA, p, alpha_names, rng)
    if BETA in G:
        F = split_vertex(F, BETA, q, beta_names, rng)
    check_detachment(G, F, alpha_names if ALPHA in G else [], beta_names if BETA in G else [])
    return F


def check_latin_graph(F: ColoredBigraph, n: int) -> None:
    """F must be a simple, fully colored K_{n,n} with no color repeated at a vertex."""
    rows = [x(i) for i in range(1, n + 1)]
    cols = [y(j) for j in range(1, n + 1)]
    if set(F.left) != set(rows) or set(F.right) != set(cols):
        raise PostconditionFailure("detached graph does not have the n + n vertex set")
    if F.uncolored():
        raise PostconditionFailure("detached graph still has uncolored edges")
    for u in rows:
        for v in cols:
            if F.mult(u, v) != 1:
                raise PostconditionFailure(f"{u}-{v} multiplicity {F.mult(u, v)}, expected 1")
    for v in rows + cols:
        for c in F.colors():
            if F.deg_color(v, c) > 1:
                raise PostconditionFailure(f"color {c} repeated at {v}")


def check_amalgamated_coloring(G: ColoredBigraph, rect: Rectangle) -> None:
    """Preconditions for detaching G into a completion of ``rect``.

    Every edge colored; each real row/column sees a color at most once; alpha sees a
    color at most n - r times and beta at most n - s times; color l has rho_l edges.
    """
    n, r, s = rect.n, rect.r, rect.s
    if G.uncolored():
        raise PreconditionViolation("amalgamated graph has uncolored edges")
    for l in range(1, rect.k + 1):
        if G.color_class_size(l) != rect.rho[l - 1]:
            raise PreconditionViolation(f"color {l} has {G.color_class_size(l)} edges, need {rect.rho[l - 1]}")
        for v in G.vertices:
            cap = n - r if v == ALPHA else n - s if v == BETA else 1
            if G.deg_color(v, l) > cap:
                raise PreconditionViolation(f"color {l} appears {G.deg_color(v, l)} times at {v}")


def detach_to_square(G: ColoredBigraph, rect: Rectangle, rng: random.Random | None = None) -> Square:
    """Split a fully colored amalgamated graph back into K_{n,n} and read off the square."""
    check_amalgamated_coloring(G, rect)
    n, r, s = rect.n, rect.r, rect.s
    F = detach(G, n - r, n - s, [x(i) for i in range(r + 1, n + 1)], [y(j) for j in range(s + 1, n + 1)], rng)
    check_latin_graph(F, n)
    square = Square(decode_F(F, n, n), rect.profile)
    if not is_completion_of(square, rect):
        raise PostconditionFailure("detached square does not extend the rectangle")
    return square
