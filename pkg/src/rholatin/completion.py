"""Deciding and constructing completions of rho-latin rectangles, and generating squares."""

from __future__ import annotations

import random

from .certificates import Infeasible, SubsetCertificate
from .core import Rectangle, RhoProfile, Square, necessary_bound
from .detachment import check_latin_graph, detach, detach_to_square
from .errors import PostconditionFailure, PreconditionViolation
from .factors import find_f_factor, find_theta, replay_factor_certificate, replay_theta_cut, DegreeSpec
from .graphs import ALPHA, BETA, ColoredBigraph, amalgamate, build_F, build_gamma, decode_F, sym, x, y


def _rng(seed) -> random.Random | None:
    return None if seed is None else random.Random(seed)


def necessary_certificate(rect: Rectangle, l: int) -> SubsetCertificate:
    n, r, s = rect.n, rect.r, rect.s
    return SubsetCertificate(
        "necessary_bound", {"symbol": l}, rect.e[l - 1], r + s + rect.rho[l - 1] - 2 * n, ">="
    )


def color_amalgamation(rect: Rectangle, theta: ColoredBigraph) -> ColoredBigraph:
    """Color the amalgamated graph from a transfer subgraph.

    An edge l-x_i of Θ colors one beta-x_i edge l, an edge l-y_j colors one alpha-y_j
    edge l, and the alpha-beta bundle takes rho_l - e_l - deg_Θ(l) edges of color l.
    """
    n, r, s = rect.n, rect.r, rect.s
    G0 = amalgamate(build_F(rect), rect)
    counts = {}
    for i, row in enumerate(rect.grid, 1):
        for j, c in enumerate(row, 1):
            counts[x(i), y(j), c] = 1
    for (u, v, _), m in theta.counts().items():
        l = v[1]
        key = (u, BETA, l) if u[0] == "x" else (ALPHA, u, l)
        counts[key] = counts.get(key, 0) + m
    for l, d in enumerate(rect.deficit, 1):
        rest = d - theta.deg(sym(l))
        if rest < 0:
            raise PostconditionFailure(f"symbol {l} overused by Θ")
        if rest:
            counts[ALPHA, BETA, l] = rest
    G = ColoredBigraph(G0.left, G0.right, counts)
    if ALPHA in G and BETA in G and G.mult(ALPHA, BETA) != (n - r) * (n - s):
        raise PostconditionFailure(f"alpha-beta bundle has {G.mult(ALPHA, BETA)} edges, need {(n - r) * (n - s)}")
    for u in G.vertices:
        for v in G.neighbors(u):
            if G.mult(u, v) != G0.mult(u, v):
                raise PostconditionFailure(f"coloring changed the {u}-{v} multiplicity")
    return G


def complete(rect: Rectangle, seed=None) -> Square | Infeasible:
    """Complete ``rect`` to a rho-latin square, or certify that no completion exists."""
    bound = necessary_bound(rect)
    if not bound:
        return Infeasible(necessary_certificate(rect, bound.violators[0]), "necessary")
    if rect.is_full:
        return Square(rect.grid, rect.profile)
    theta = find_theta(rect)
    if isinstance(theta, Infeasible):
        return theta
    G = color_amalgamation(rect, theta)
    return detach_to_square(G, rect, _rng(seed))


def hall_f(rect: Rectangle) -> dict:
    f = {y(j): rect.n - rect.r for j in range(1, rect.n + 1)}
    f.update({sym(l): d for l, d in enumerate(rect.deficit, 1)})
    return f


def complete_hall(rect: Rectangle, seed=None) -> Square | Infeasible:
    """Completion of an r x n rectangle through the column-by-symbol f-factor."""
    n, r = rect.n, rect.r
    if rect.s != n:
        raise PreconditionViolation(f"the r x n route needs s = n, got s={rect.s}, n={n}")
    bound = necessary_bound(rect)
    if not bound:
        return Infeasible(necessary_certificate(rect, bound.violators[0]), "necessary")
    if r == n:
        return Square(rect.grid, rect.profile)
    theta = find_f_factor(build_gamma(rect, hall=True), hall_f(rect))
    if isinstance(theta, Infeasible):
        return Infeasible(theta.certificate, "hall f-factor")
    G = color_amalgamation(rect, theta)
    return detach_to_square(G, rect, _rng(seed))


def generate_square(profile: RhoProfile, seed=None) -> Square:
    """A rho-latin square for any valid profile, by detaching a two-vertex bundle of n^2 colored edges."""
    n = profile.n
    G = ColoredBigraph([ALPHA], [BETA], {(ALPHA, BETA, l): p for l, p in enumerate(profile.rho, 1)})
    F = detach(G, n, n, [x(i) for i in range(1, n + 1)], [y(j) for j in range(1, n + 1)], _rng(seed))
    check_latin_graph(F, n)
    return Square(decode_F(F, n, n), profile)


def replay_completion_certificate(cert: SubsetCertificate, rect: Rectangle) -> tuple[int, int]:
    """Recompute (lhs, rhs) of a certificate returned by :func:`complete` or :func:`complete_hall`."""
    if cert.family == "necessary_bound":
        l = cert.subsets["symbol"]
        return rect.e[l - 1], rect.r + rect.s + rect.rho[l - 1] - 2 * rect.n
    if cert.family == "theta_cut":
        return replay_theta_cut(rect, cert.subsets)
    f = hall_f(rect)
    return replay_factor_certificate(cert, build_gamma(rect, hall=True), DegreeSpec.exact(f))
