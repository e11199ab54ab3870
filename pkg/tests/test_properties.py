from hypothesis import assume, given, settings
from hypothesis import strategies as st

from rholatin.conditions import enumerate_fitting
from rholatin.errors import TooLarge
from rholatin.core import MuStats, monus, necessary_bound, p_sets
from rholatin.graphs import ColoredBigraph, amalgamate, build_F, build_gamma, deamalgamate, decode_F, induced_sides, sym, x, y
from rholatin.completion import generate_square
from rholatin.oracle import InstanceParams, random_instance, random_profile

import random

instances = st.builds(
    random_instance,
    st.sampled_from([InstanceParams(n=(2, 5), k=(2, 10), perturb=4), InstanceParams(n=(2, 6), k=(2, 14), mode="completable")]),
    st.integers(0, 10**6),
)


def subset(draw_bits: int, size: int) -> list[int]:
    return [t + 1 for t in range(size) if draw_bits >> t & 1]


@given(instances, st.integers(0, 2**20))
def test_mu_symmetry_and_complements(R, bits):
    st_ = MuStats(R)
    I = subset(bits, R.r)
    J = subset(bits >> 6, R.s)
    K = subset(bits >> 12, R.k)
    assert st_.rows(I, K) == st_.syms_rows(K, I)
    assert st_.cols(J, K) == st_.syms_cols(K, J)
    Ibar = [i for i in range(1, R.r + 1) if i not in I]
    Jbar = [j for j in range(1, R.s + 1) if j not in J]
    for l in range(1, R.k + 1):
        assert st_.sym_rows(l, I) + st_.sym_rows(l, Ibar) == R.r - R.e[l - 1]
        assert st_.sym_cols(l, J) + st_.sym_cols(l, Jbar) == R.s - R.e[l - 1]
    assert sum(st_.sym_rows(l, I) for l in range(1, R.k + 1)) == len(I) * (R.k - R.s)


@given(st.integers(0, 50), st.integers(0, 50), st.integers(0, 50))
def test_monus_algebra(a, b, c):
    assert monus(monus(a, b), c) == monus(a - b, c)
    assert monus(a, b) >= 0 and monus(a, b) >= a - b


@given(instances)
def test_p_set_containment(R):
    ps = p_sets(R)
    small, big = (ps.P_r, ps.P_s) if R.r <= R.s else (ps.P_s, ps.P_r)
    assert small <= big


@given(instances)
def test_gamma_degree_identities(R):
    G = build_gamma(R)
    for i in range(1, R.r + 1):
        assert G.deg(x(i)) == R.k - R.s
    for j in range(1, R.s + 1):
        assert G.deg(y(j)) == R.k - R.r
    G1, G2 = induced_sides(G)
    for l in range(1, R.k + 1):
        e = R.e[l - 1]
        assert G1.deg(sym(l)) == R.r - e
        assert G2.deg(sym(l)) == R.s - e
        assert G.deg(sym(l)) == R.r + R.s - 2 * e
    assert G1.num_edges() + G2.num_edges() == G.num_edges()
    assert G.num_edges() == R.r * (R.k - R.s) + R.s * (R.k - R.r)


@given(instances)
def test_F_encoding_and_amalgamation_round_trip(R):
    F = build_F(R)
    assert decode_F(F, R.r, R.s) == [list(row) for row in R.grid]
    G = amalgamate(F, R)
    assert deamalgamate(G, F.left, F.right) == F
    assert G.num_edges() == R.n * R.n
    assert ColoredBigraph.from_text(G.to_text()) == G


@given(instances)
def test_fitting_sequence_implies_bound(R):
    try:
        first = next(iter(enumerate_fitting(R)), None)
    except TooLarge:
        assume(False)
    if first is not None:
        assert necessary_bound(R)


@settings(max_examples=40)
@given(st.integers(2, 7), st.integers(0, 10**6))
def test_generated_square_crops_validate(n, seed):
    rng = random.Random(seed)
    profile = random_profile(rng, n, rng.randint(n, n * n))
    sq = generate_square(profile, seed=seed)
    r, s = rng.randint(1, n), rng.randint(1, n)
    R = sq.crop(r, s)
    assert R.r == r and R.s == s
