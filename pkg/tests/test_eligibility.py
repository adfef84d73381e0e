import pytest

from mwpm.blossoms import BlossomForest
from mwpm.eligibility import Criterion, DualContext, InvariantBreach, slack_star
from mwpm.graph import Graph, Matching


def test_slack_star_criterion1_is_slack():
    for s in range(-2, 5):
        assert slack_star(s, Criterion.CRIT1, False) == s
        assert slack_star(s, Criterion.CRIT1, True) == s


def test_slack_star_criterion2():
    # unmatched edges become eligible at slack -2, matched at slack 0
    for s in range(-2, 5):
        assert slack_star(s, Criterion.CRIT2, False) == s + 2
        assert slack_star(s, Criterion.CRIT2, True) == -s


def test_slack_star_criterion3():
    assert slack_star(0, Criterion.CRIT3, False) == 0
    assert slack_star(4, Criterion.CRIT3, False) == 4
    assert slack_star(-1, Criterion.CRIT3, False) == 1
    assert slack_star(-2, Criterion.CRIT3, False) == 0
    with pytest.raises(InvariantBreach):
        slack_star(-3, Criterion.CRIT3, False)


def test_slack_star_zero_iff_eligible():
    # exhaustive over the slack window the criteria are defined on
    g = Graph(2)
    g.add_edge(0, 1, 0)
    forest = BlossomForest(g)
    matching = Matching(g.num_vertex_slots)
    for crit in Criterion:
        for matched in (False, True):
            matching.clear()
            if matched:
                matching.match(g, 0)
            for s in range(-2, 5):
                forest.y[0], forest.y[1] = s, 0
                ctx = DualContext(g, forest, matching, [0])
                assert ctx.slack(0) == s
                assert (ctx.slack_star(0, crit) == 0) == ctx.is_eligible(0, crit)


def test_blossom_internal_edges_always_eligible_under_criterion2():
    g = Graph(4)
    g.add_edge(0, 1, 0)
    g.add_edge(1, 2, 0)
    g.add_edge(2, 0, 0)
    g.add_edge(2, 3, 0)
    forest = BlossomForest(g)
    forest.shrink_blossom([0, 1, 2], [0, 1, 2])
    forest.y[0] = 17  # makes every edge at vertex 0 wildly slack
    ctx = DualContext(g, forest, Matching(g.num_vertex_slots), [0, 0, 0, 0])
    assert ctx.is_eligible(0, Criterion.CRIT2)  # internal despite slack
    assert not ctx.is_eligible(0, Criterion.CRIT1)
    assert not ctx.is_eligible(3, Criterion.CRIT2)  # crossing edge
