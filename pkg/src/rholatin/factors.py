"""Degree-constrained subgraphs of bipartite multigraphs.

Constructive side: :func:`find_f_factor`, :func:`find_gf_factor` and :func:`find_theta`
solve flow problems and return either the subgraph or an :class:`Infeasible` verdict
whose certificate is read off the minimum cut. Exhaustive side: :func:`ore_condition`
and :func:`gf_condition` evaluate the classical existence criteria by enumerating
vertex subsets, for cross-checking the flows on small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .certificates import Infeasible, SubsetCertificate
from .core import MuStats, Rectangle, members, monus
from .errors import PostconditionFailure, PreconditionViolation
from .flow import Circulation, FlowNetwork
from .graphs import UNCOLORED, ColoredBigraph, Vertex, build_gamma, sym
from .graphs import x as xv
from .graphs import y as yv
from .guards import DEFAULT_GUARDS, Guards


@dataclass(frozen=True)
class DegreeSpec:
    g: Mapping[Vertex, int]
    f: Mapping[Vertex, int]

    def __post_init__(self):
        for v, hi in self.f.items():
            lo = self.g.get(v, 0)
            if lo < 0 or lo > hi:
                raise PreconditionViolation(f"need 0 <= g <= f at {v}, got g={lo}, f={hi}")
        extra = set(self.g) - set(self.f)
        if extra:
            raise PreconditionViolation(f"g given on vertices without f: {sorted(extra)}")

    @classmethod
    def exact(cls, f: Mapping[Vertex, int]) -> "DegreeSpec":
        return cls(dict(f), dict(f))

    def lo(self, v: Vertex) -> int:
        return self.g.get(v, 0)

    def hi(self, v: Vertex) -> int:
        return self.f[v]


def _require_defined(G: ColoredBigraph, f: Mapping[Vertex, int]) -> None:
    missing = [v for v in G.vertices if v not in f]
    if missing:
        raise PreconditionViolation(f"degree bound missing for {missing}")


def _subgraph_from_pairs(G: ColoredBigraph, chosen: Mapping[tuple[Vertex, Vertex], int]) -> ColoredBigraph:
    """Subgraph taking ``chosen[u, v]`` of the u-v edges, colors in ascending order."""
    counts = {}
    for (u, v), want in chosen.items():
        if not want:
            continue
        for c in sorted({c for (a, b, c) in G.counts() if a == u and b == v}, key=lambda c: -1 if c is None else c):
            take = min(want, G.mult_color(u, v, c))
            if take:
                counts[u, v, c] = take
                want -= take
            if not want:
                break
        if want:
            raise PostconditionFailure(f"chose more {u}-{v} edges than exist")
    return ColoredBigraph(G.left, G.right, counts)


def _pairs(G: ColoredBigraph):
    pairs = {}
    for u, v, _, m in G.edges():
        pairs[u, v] = pairs.get((u, v), 0) + m
    return pairs


def check_degrees(G: ColoredBigraph, H: ColoredBigraph, spec: DegreeSpec) -> None:
    """Raise unless H is a subgraph of G meeting spec at every vertex."""
    for (u, v, c), m in H.counts().items():
        if m > G.mult_color(u, v, c):
            raise PostconditionFailure(f"factor uses {m} copies of {u}-{v} ({c}), graph has {G.mult_color(u, v, c)}")
    for v in G.vertices:
        d = H.deg(v)
        if not spec.lo(v) <= d <= spec.hi(v):
            raise PostconditionFailure(f"factor degree {d} at {v} outside [{spec.lo(v)}, {spec.hi(v)}]")


# --- f-factors --------------------------------------------------------------------


def find_f_factor(G: ColoredBigraph, f: Mapping[Vertex, int]) -> ColoredBigraph | Infeasible:
    """Spanning subgraph with degree exactly ``f(v)`` everywhere, or a violated Ore inequality."""
    _require_defined(G, f)
    fX = sum(f[v] for v in G.left)
    fY = sum(f[v] for v in G.right)
    if fX != fY:
        cert = SubsetCertificate("ore_sum", {}, fX, fY, "==")
        return Infeasible(cert, "f-factor")
    net = FlowNetwork()
    s, t = net.node("source"), net.node("sink")
    for v in G.left:
        net.add_edge(s, net.node(v), f[v])
    handles = []
    pairs = _pairs(G)
    for (u, v), m in pairs.items():
        handles.append(((u, v), net.add_edge(net.node(u), net.node(v), m)))
    for v in G.right:
        net.add_edge(net.node(v), t, f[v])
    value = net.max_flow(s, t)
    if value == fX:
        H = _subgraph_from_pairs(G, {uv: net.flow_on(e) for uv, e in handles})
        check_degrees(G, H, DegreeSpec.exact(f))
        return H
    reach = {net.labels[v] for v in net.reachable(s)}
    A = tuple(v for v in G.left if v in reach)
    B = tuple(v for v in G.right if v in reach)
    cert = ore_pair_certificate(G, f, A, B)
    if not cert.violated:
        raise PostconditionFailure("min cut did not yield a violated Ore inequality")
    return Infeasible(cert, "f-factor")


def ore_pair_certificate(G, f, A, B) -> SubsetCertificate:
    """f(A) <= f(B) + mult(A, Y minus B)."""
    Bset = set(B)
    rest = [v for v in G.right if v not in Bset]
    lhs = sum(f[v] for v in A)
    rhs = sum(f[v] for v in B) + G.mult_between(A, rest)
    return SubsetCertificate("ore_pair", {"A": tuple(A), "B": tuple(B)}, lhs, rhs, "<=")


# --- (g, f)-factors ---------------------------------------------------------------


def _gf_circulation(G: ColoredBigraph, spec: DegreeSpec):
    circ = Circulation()
    src, snk = ("__src__",), ("__snk__",)
    circ.add_node(src)
    circ.add_node(snk)
    for v in G.left:
        circ.add_edge(src, v, spec.lo(v), spec.hi(v))
    handles = []
    for (u, v), m in _pairs(G).items():
        handles.append(((u, v), circ.add_edge(u, v, 0, m)))
    for v in G.right:
        circ.add_edge(v, snk, spec.lo(v), spec.hi(v))
    return circ, src, snk, handles


def find_gf_factor(G: ColoredBigraph, spec: DegreeSpec) -> ColoredBigraph | Infeasible:
    """Subgraph with ``g(v) <= deg(v) <= f(v)``; among those, a maximum one.

    Infeasibility is certified by one of the two pairwise inequalities
    ``g(A) <= f(B) + mult(A, complement of B)`` (A on one side, B on the other).
    """
    _require_defined(G, spec.f)
    circ, src, snk, handles = _gf_circulation(G, spec)
    res = circ.solve(maximize=(src, snk))
    if res.feasible:
        H = _subgraph_from_pairs(G, {uv: res.flows[e] for uv, e in handles})
        check_degrees(G, H, spec)
        return H
    S = res.cut
    if src in S and snk in S:
        A = tuple(v for v in G.right if v not in S)
        B = tuple(v for v in G.left if v not in S)
        cert = gf_pair_certificate(G, spec, A, B, side="right")
    elif src not in S and snk not in S:
        A = tuple(v for v in G.left if v in S)
        B = tuple(v for v in G.right if v in S)
        cert = gf_pair_certificate(G, spec, A, B, side="left")
    else:
        raise PostconditionFailure("circulation cut separates source and sink")
    if not cert.violated:
        raise PostconditionFailure("min cut did not yield a violated (g,f) inequality")
    return Infeasible(cert, "(g,f)-factor")


def gf_pair_certificate(G, spec: DegreeSpec, A, B, side: str) -> SubsetCertificate:
    """g(A) <= f(B) + mult(A, other side minus B); A lies on ``side``."""
    other = G.right if side == "left" else G.left
    Bset = set(B)
    rest = [v for v in other if v not in Bset]
    lhs = sum(spec.lo(v) for v in A)
    rhs = sum(spec.hi(v) for v in B) + G.mult_between(A, rest)
    return SubsetCertificate(f"gf_pair_{side}", {"A": tuple(A), "B": tuple(B)}, lhs, rhs, "<=")


# --- the transfer subgraph Theta ----------------------------------------------------


def _theta_circulation(rect: Rectangle):
    n, r, s = rect.n, rect.r, rect.s
    d = rect.deficit
    stats = MuStats(rect)
    circ = Circulation()
    src, snk = ("src", 0), ("snk", 0)
    circ.add_node(src)
    circ.add_node(snk)
    handles = {}
    for i in range(1, r + 1):
        circ.add_edge(src, xv(i), n - s, n - s)
    for j in range(1, s + 1):
        circ.add_edge(src, yv(j), n - r, n - r)
    for i in range(1, r + 1):
        for l in members(stats.row_missing[i - 1]):
            handles[xv(i), sym(l)] = circ.add_edge(xv(i), ("symx", l), 0, 1)
    for j in range(1, s + 1):
        for l in members(stats.col_missing[j - 1]):
            handles[yv(j), sym(l)] = circ.add_edge(yv(j), ("symy", l), 0, 1)
    for l in range(1, rect.k + 1):
        circ.add_edge(("symx", l), sym(l), monus(d[l - 1] + r, n), None)
        circ.add_edge(("symy", l), sym(l), monus(d[l - 1] + s, n), None)
        circ.add_edge(sym(l), snk, 0, d[l - 1])
    circ.add_edge(snk, src, 0, None)
    return circ, handles


def find_theta(rect: Rectangle) -> ColoredBigraph | Infeasible:
    """Subgraph of Γ fixing which missing symbols go to the new columns (x-edges) and rows (y-edges).

    Constraints: degree n - s at each row vertex, n - r at each column vertex, at most
    rho_l - e_l at symbol l, at least (rho_l - e_l + r) monus n of its edges on the row
    side and (rho_l - e_l + s) monus n on the column side.
    """
    circ, handles = _theta_circulation(rect)
    res = circ.solve()
    gamma = build_gamma(rect)
    if res.feasible:
        counts = {(u, v, UNCOLORED): 1 for (u, v), e in handles.items() if res.flows[e]}
        theta = ColoredBigraph(gamma.left, gamma.right, counts)
        check_theta(rect, theta)
        return theta
    cert = theta_cut_certificate(rect, res.cut)
    if not cert.violated:
        raise PostconditionFailure("theta cut certificate does not replay")
    return Infeasible(cert, "theta")


def check_theta(rect: Rectangle, theta: ColoredBigraph) -> None:
    n, r, s = rect.n, rect.r, rect.s
    gamma = build_gamma(rect)
    for (u, v, c), m in theta.counts().items():
        if gamma.mult_color(u, v, c) < m:
            raise PostconditionFailure(f"theta edge {u}-{v} not in gamma")
    for i in range(1, r + 1):
        if theta.deg(xv(i)) != n - s:
            raise PostconditionFailure(f"theta degree at row {i} is {theta.deg(xv(i))}")
    for j in range(1, s + 1):
        if theta.deg(yv(j)) != n - r:
            raise PostconditionFailure(f"theta degree at column {j} is {theta.deg(yv(j))}")
    rows = [xv(i) for i in range(1, r + 1)]
    cols = [yv(j) for j in range(1, s + 1)]
    for l, d in enumerate(rect.deficit, 1):
        to_rows = theta.mult_to(sym(l), rows)
        to_cols = theta.mult_to(sym(l), cols)
        if to_rows + to_cols > d or to_rows < d - n + r or to_cols < d - n + s:
            raise PostconditionFailure(f"theta violates symbol bounds at {l}")


def theta_cut_certificate(rect: Rectangle, S) -> SubsetCertificate:
    subsets = {
        "source": int(("src", 0) in S),
        "sink": int(("snk", 0) in S),
        "I": tuple(sorted(v[1] for v in S if v[0] == "x")),
        "J": tuple(sorted(v[1] for v in S if v[0] == "y")),
        "KX": tuple(sorted(v[1] for v in S if v[0] == "symx")),
        "KY": tuple(sorted(v[1] for v in S if v[0] == "symy")),
        "K": tuple(sorted(v[1] for v in S if v[0] == "sym")),
    }
    lhs, rhs = replay_theta_cut(rect, subsets)
    return SubsetCertificate("theta_cut", subsets, lhs, rhs, "<=", note="lower bounds entering <= capacity leaving")


def replay_theta_cut(rect: Rectangle, sets) -> tuple[int, int]:
    """Evaluate the cut inequality of the Θ flow network in closed form from the rectangle.

    Returns (sum of lower bounds entering the node set, capacity leaving it); an
    unbounded edge leaving the set contributes ``n*n*k + 1``.
    """
    n, r, s, k = rect.n, rect.r, rect.s, rect.k
    d = rect.deficit
    big = n * n * k + 1
    stats = MuStats(rect)
    src_in, snk_in = bool(sets["source"]), bool(sets["sink"])
    I, J = set(sets["I"]), set(sets["J"])
    KX, KY, K = set(sets["KX"]), set(sets["KY"]), set(sets["K"])
    lower_in = upper_out = 0
    for i in range(1, r + 1):
        if (i in I) and not src_in:
            lower_in += n - s
        if src_in and i not in I:
            upper_out += n - s
        if i in I:
            upper_out += sum(1 for l in members(stats.row_missing[i - 1]) if l not in KX)
    for j in range(1, s + 1):
        if (j in J) and not src_in:
            lower_in += n - r
        if src_in and j not in J:
            upper_out += n - r
        if j in J:
            upper_out += sum(1 for l in members(stats.col_missing[j - 1]) if l not in KY)
    for l in range(1, k + 1):
        for port in (KX, KY):
            low = monus(d[l - 1] + (r if port is KX else s), n)
            if l in K and l not in port:
                lower_in += low
            if l in port and l not in K:
                upper_out += big
        if l in K and not snk_in:
            upper_out += d[l - 1]
    if snk_in and not src_in:
        upper_out += big
    return lower_in, upper_out


# --- exhaustive criteria ------------------------------------------------------------


def _subsets(items):
    """All subsets of ``items`` as tuples, in binary-counting order of their bitmask."""
    m = len(items)
    for mask in range(1 << m):
        yield tuple(items[t] for t in range(m) if mask >> t & 1)


def ore_condition(G: ColoredBigraph, f: Mapping[Vertex, int], variant: str = "a", guards: Guards = DEFAULT_GUARDS):
    """Evaluate one form of Ore's f-factor criterion by enumeration.

    ``"a"``: f(A) <= sum_{u in Y} min(f(u), mult(u, A)) for all A in X;
    ``"b"``: f(A) <= f(B) + mult(A, Y minus B) for all A in X, B in Y;
    ``"c"``: f(X minus A) >= sum_{u in Y} (f(u) monus mult(u, A)) for all A in X.
    Every variant also needs f(X) = f(Y). Returns True, or the first violating certificate.
    """
    _require_defined(G, f)
    X, Y = list(G.left), list(G.right)
    bits = len(X) + (len(Y) if variant == "b" else 0)
    guards.check("factor_bits", bits, "enumerated vertices")
    fX, fY = sum(f[v] for v in X), sum(f[v] for v in Y)
    if fX != fY:
        return SubsetCertificate("ore_sum", {}, fX, fY, "==")
    for A in _subsets(X):
        if variant == "b":
            for B in _subsets(Y):
                cert = ore_pair_certificate(G, f, A, B)
                if cert.violated:
                    return cert
            continue
        m_to_A = {u: G.mult_to(u, A) for u in Y}
        if variant == "a":
            lhs = sum(f[v] for v in A)
            rhs = sum(min(f[u], m_to_A[u]) for u in Y)
            cert = SubsetCertificate("ore_min", {"A": A}, lhs, rhs, "<=")
        elif variant == "c":
            Aset = set(A)
            lhs = sum(f[v] for v in X if v not in Aset)
            rhs = sum(monus(f[u], m_to_A[u]) for u in Y)
            cert = SubsetCertificate("ore_complement", {"A": A}, lhs, rhs, ">=")
        else:
            raise ValueError(f"unknown Ore variant {variant!r}")
        if cert.violated:
            return cert
    return True


def gf_condition(G: ColoredBigraph, spec: DegreeSpec, variant: str = "neighborhood", guards: Guards = DEFAULT_GUARDS):
    """Evaluate one form of the bipartite (g,f)-factor criterion by enumeration.

    ``"neighborhood"``: g(A) <= sum_{u in N(A)} min(f(u), mult(u, A)), A within one side;
    ``"monus"``: f(A) >= sum_{u not in A} (g(u) monus deg_{G-A}(u)), A any vertex set;
    ``"eq51"``: needs g = 0 on one side (called Y); then
    f(B) >= sum_{x in A} (g(x) monus deg_{G-B}(x)) for A in X, B in Y.
    Returns True, or the first violating certificate.
    """
    _require_defined(G, spec.f)
    X, Y = list(G.left), list(G.right)
    if variant == "neighborhood":
        guards.check("factor_bits", max(len(X), len(Y)), "enumerated vertices")
        for side, other in ((X, Y), (Y, X)):
            for A in _subsets(side):
                lhs = sum(spec.lo(v) for v in A)
                rhs = 0
                for u in other:
                    m = G.mult_to(u, A)
                    if m:
                        rhs += min(spec.hi(u), m)
                cert = SubsetCertificate("gf_neighborhood", {"A": A}, lhs, rhs, "<=")
                if cert.violated:
                    return cert
        return True
    if variant == "monus":
        V = X + Y
        guards.check("factor_bits", len(V), "enumerated vertices")
        for A in _subsets(V):
            Aset = set(A)
            lhs = sum(spec.hi(v) for v in A)
            rhs = 0
            for u in V:
                if u in Aset:
                    continue
                deg_rest = sum(m for w, m in G.neighbors(u).items() if w not in Aset)
                rhs += monus(spec.lo(u), deg_rest)
            cert = SubsetCertificate("gf_monus", {"A": A}, lhs, rhs, ">=")
            if cert.violated:
                return cert
        return True
    if variant == "eq51":
        if all(spec.lo(v) == 0 for v in Y):
            Xs, Ys = X, Y
        elif all(spec.lo(v) == 0 for v in X):
            Xs, Ys = Y, X
        else:
            raise PreconditionViolation("eq51 needs g to vanish on one side")
        guards.check("factor_bits", len(Xs) + len(Ys), "enumerated vertices")
        for B in _subsets(Ys):
            Bset = set(B)
            fB = sum(spec.hi(v) for v in B)
            terms = [(v, monus(spec.lo(v), sum(m for w, m in G.neighbors(v).items() if w not in Bset))) for v in Xs]
            for A in _subsets(Xs):
                Aset = set(A)
                rhs = sum(t for v, t in terms if v in Aset)
                cert = SubsetCertificate("gf_eq51", {"A": A, "B": B}, fB, rhs, ">=")
                if cert.violated:
                    return cert
        return True
    raise ValueError(f"unknown (g,f) variant {variant!r}")


def replay_factor_certificate(cert: SubsetCertificate, G: ColoredBigraph, spec: DegreeSpec) -> tuple[int, int]:
    """Recompute (lhs, rhs) of a factor certificate from the graph and degree bounds."""
    fam, sets = cert.family, cert.subsets
    lo, hi = spec.lo, spec.hi
    if fam == "ore_sum":
        return sum(hi(v) for v in G.left), sum(hi(v) for v in G.right)
    if fam == "ore_pair":
        B = set(sets["B"])
        return (
            sum(hi(v) for v in sets["A"]),
            sum(hi(v) for v in B) + G.mult_between(sets["A"], [v for v in G.right if v not in B]),
        )
    if fam in ("gf_pair_left", "gf_pair_right"):
        other = G.right if fam == "gf_pair_left" else G.left
        B = set(sets["B"])
        return (
            sum(lo(v) for v in sets["A"]),
            sum(hi(v) for v in B) + G.mult_between(sets["A"], [v for v in other if v not in B]),
        )
    if fam == "ore_min":
        A = sets["A"]
        return sum(hi(v) for v in A), sum(min(hi(u), G.mult_to(u, A)) for u in G.right)
    if fam == "ore_complement":
        A = set(sets["A"])
        return sum(hi(v) for v in G.left if v not in A), sum(monus(hi(u), G.mult_to(u, A)) for u in G.right)
    if fam == "gf_neighborhood":
        A = sets["A"]
        other = G.right if all(G.is_left(v) for v in A) else G.left
        return sum(lo(v) for v in A), sum(min(hi(u), G.mult_to(u, A)) for u in other)
    if fam == "gf_monus":
        A = set(sets["A"])
        rest = [u for u in G.vertices if u not in A]
        return (
            sum(hi(v) for v in A),
            sum(monus(lo(u), sum(m for w, m in G.neighbors(u).items() if w not in A)) for u in rest),
        )
    if fam == "gf_eq51":
        B = set(sets["B"])
        return (
            sum(hi(v) for v in B),
            sum(monus(lo(v), sum(m for w, m in G.neighbors(v).items() if w not in B)) for v in sets["A"]),
        )
    raise ValueError(f"not a factor certificate family: {fam}")
