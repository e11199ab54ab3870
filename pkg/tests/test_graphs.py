from rholatin.core import Rectangle, RhoProfile
from rholatin.graphs import (
    ALPHA,
    BETA,
    ColoredBigraph,
    amalgamate,
    build_F,
    build_gamma,
    deamalgamate,
    decode_F,
    induced_sides,
    sym,
    x,
    y,
)


def rect(grid, n, k, rho):
    return Rectangle(grid, RhoProfile(n, k, tuple(rho)))


def test_build_F_counts():
    F = build_F(rect([[1]], 2, 2, [2, 2]))
    assert F.num_edges() == 4
    assert F.num_edges() - F.uncolored() == 1
    R = rect([[1, 2], [2, 1]], 3, 3, [3, 3, 3])
    F = build_F(R)
    assert F.num_edges() == 9 and F.uncolored() == 5
    assert sum(F.color_class_size(l) for l in range(1, 4)) == R.r * R.s
    assert decode_F(F, 2, 2) == [[1, 2], [2, 1]]


def test_amalgamate_multiplicities():
    R = rect([[1]], 2, 2, [2, 2])
    G = amalgamate(build_F(R), R)
    assert G.mult(ALPHA, y(1)) == 1 and G.mult(x(1), BETA) == 1 and G.mult(ALPHA, BETA) == 1

    R = rect([[1, 2], [2, 1]], 3, 3, [3, 3, 3])
    G = amalgamate(build_F(R), R)
    assert G.mult(ALPHA, BETA) == 1
    assert all(G.mult(ALPHA, y(j)) == 1 and G.mult(x(j), BETA) == 1 for j in (1, 2))

    R = rect([[1, 2, 3]], 3, 3, [3, 3, 3])
    G = amalgamate(build_F(R), R)
    assert BETA not in G
    assert all(G.mult(ALPHA, y(j)) == 2 for j in (1, 2, 3))


def test_amalgamate_round_trip():
    R = rect([[1, 2], [3, 1]], 4, 5, [4, 3, 3, 3, 3])
    F = build_F(R)
    assert deamalgamate(amalgamate(F, R), F.left, F.right) == F


def test_gamma_examples():
    G = build_gamma(rect([[1]], 2, 2, [2, 2]))
    assert G.counts() == {(x(1), sym(2), None): 1, (y(1), sym(2), None): 1}
    assert G.deg(sym(1)) == 0 and G.deg(sym(2)) == 2
    R = rect([[1, 2], [2, 1]], 3, 3, [3, 3, 3])
    G = build_gamma(R)
    assert G.deg(sym(3)) == 4 and G.deg(sym(1)) == G.deg(sym(2)) == 0
    G1, G2 = induced_sides(build_gamma(rect([[1]], 2, 2, [2, 2])))
    assert G1.counts() == {(x(1), sym(2), None): 1}
    assert G2.counts() == {(y(1), sym(2), None): 1}


def test_gamma_hall_variant():
    R = rect([[1, 2, 3]], 3, 4, [3, 2, 2, 2])
    G = build_gamma(R, hall=True)
    assert all(v[0] == "y" for v in G.left)
    assert all(G.deg(y(j)) == R.k - R.r for j in (1, 2, 3))
    assert all(G.deg(sym(l)) == R.n - R.e[l - 1] for l in range(1, 5))


def test_text_format_round_trip():
    G = ColoredBigraph([x(1), ALPHA], [y(1), BETA], {(x(1), y(1), 2): 1, (ALPHA, BETA, None): 3, (ALPHA, y(1), 1): 2})
    text = G.to_text()
    assert text.splitlines()[0] == "# rholatin bigraph v1"
    assert "E alpha:0 beta:0 - 3" in text
    assert ColoredBigraph.from_text(text) == G
