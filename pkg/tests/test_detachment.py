import random

import pytest

from rholatin.core import Rectangle, RhoProfile
from rholatin.detachment import SplitPlan, check_latin_graph, detach, detach_to_square, split_vertex
from rholatin.completion import color_amalgamation
from rholatin.errors import PreconditionViolation
from rholatin.factors import find_theta
from rholatin.graphs import ALPHA, BETA, ColoredBigraph, decode_F, x, y


def test_split_exact_divisibility():
    G = ColoredBigraph([ALPHA], [y(1), y(2)], {(ALPHA, y(1), 1): 1, (ALPHA, y(1), 2): 1, (ALPHA, y(2), 1): 1, (ALPHA, y(2), 2): 1})
    F = split_vertex(G, ALPHA, 2, [x(1), x(2)])
    for part in (x(1), x(2)):
        assert F.deg_color(part, 1) == 1 and F.deg_color(part, 2) == 1
        assert F.mult(part, y(1)) == 1 and F.mult(part, y(2)) == 1


def test_split_plan_targets():
    G = ColoredBigraph([ALPHA], [y(1)], {(ALPHA, y(1), 1): 5, (ALPHA, y(1), 2): 2})
    plan = SplitPlan.for_vertex(G, ALPHA, 3)
    assert plan.mult_targets[y(1)] == (2, 3)
    assert plan.color_targets[1] == (1, 2) and plan.color_targets[2] == (0, 1)


def test_two_by_two_latin_from_bundle():
    G = ColoredBigraph([ALPHA], [BETA], {(ALPHA, BETA, 1): 2, (ALPHA, BETA, 2): 2})
    F = detach(G, 2, 2, [x(1), x(2)], [y(1), y(2)])
    check_latin_graph(F, 2)
    grid = decode_F(F, 2, 2)
    assert sorted(map(sorted, grid)) == [[1, 2], [1, 2]]


def test_per_color_degree_at_most_one():
    R = Rectangle([[1, 2], [2, 3]], RhoProfile(4, 5, (4, 4, 3, 3, 2)))
    G = color_amalgamation(R, find_theta(R))
    assert all(G.deg_color(ALPHA, l) <= R.n - R.r for l in range(1, 6))
    sq = detach_to_square(G, R)
    assert sq.crop(2, 2) == R


def test_detach_hall_case_single_split():
    R = Rectangle([[1, 2, 3]], RhoProfile(3, 3, (3, 3, 3)))
    G = color_amalgamation(R, find_theta(R))
    assert BETA not in G
    sq = detach_to_square(G, R)
    assert sq.grid[0] == (1, 2, 3)


def test_detach_unique_two_by_two():
    R = Rectangle([[1]], RhoProfile(2, 2, (2, 2)))
    G = color_amalgamation(R, find_theta(R))
    assert detach_to_square(G, R).grid == ((1, 2), (2, 1))


def test_trivial_split_renames():
    G = ColoredBigraph([ALPHA], [y(1)], {(ALPHA, y(1), 1): 2})
    F = split_vertex(G, ALPHA, 1, [x(5)])
    assert F.counts() == {(x(5), y(1), 1): 2}


def test_split_rejects_bad_args():
    G = ColoredBigraph([ALPHA], [y(1)], {(ALPHA, y(1), 1): 2})
    with pytest.raises(PreconditionViolation):
        split_vertex(G, ALPHA, 0)
    with pytest.raises(PreconditionViolation):
        split_vertex(G, BETA, 2)
    with pytest.raises(PreconditionViolation):
        split_vertex(G, ALPHA, 2, [y(1), x(2)])


def test_split_random_orders_stay_balanced():
    counts = {(ALPHA, y(j), c): 1 + (j * c) % 3 for j in range(1, 4) for c in range(1, 4)}
    G = ColoredBigraph([ALPHA], [y(1), y(2), y(3)], counts)
    for seed in range(20):
        split_vertex(G, ALPHA, 4, rng=random.Random(seed))  # check_split runs inside
