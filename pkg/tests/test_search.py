from mwpm.blossoms import BlossomForest
from mwpm.eligibility import Criterion, DualContext
from mwpm.graph import Graph, Matching
from mwpm.search import (
    INNER,
    OUTER,
    DualTimeline,
    has_eligible_augmenting_path,
    pq_search,
    search_one,
)


def make_ctx(g, y=None):
    forest = BlossomForest(g)
    if y is not None:
        for v, val in enumerate(y):
            forest.y[v] = val
    matching = Matching(g.num_vertex_slots)
    return DualContext(g, forest, matching, [e.weight for e in g.edges])


def test_tight_edge_augments_immediately():
    g = Graph(2)
    g.add_edge(0, 1, 0)
    ctx = make_ctx(g)
    r = pq_search(ctx, Criterion.CRIT1, [0])
    assert r.reason == "augmented"
    assert r.adjustments == 0
    assert ctx.matching.is_perfect(g)


def test_adjustments_until_edge_becomes_tight():
    g = Graph(2)
    g.add_edge(0, 1, 0)
    ctx = make_ctx(g, y=[1, 1])  # slack 2: two outer ticks needed
    r = pq_search(ctx, Criterion.CRIT1, [0, 1])
    assert r.reason == "augmented"
    assert r.adjustments == 1  # both endpoints outer: slack falls 2 per tick
    assert ctx.matching.is_perfect(g)
    assert ctx.forest.y[0] == 0 and ctx.forest.y[1] == 0


def test_budget_halts_before_augmenting():
    g = Graph(2)
    g.add_edge(0, 1, 0)
    ctx = make_ctx(g, y=[2, 0])
    r = pq_search(ctx, Criterion.CRIT1, [0], budget=1)
    assert r.reason == "budget_exhausted"
    assert r.adjustments == 1
    assert not ctx.matching.is_matched(0)
    assert ctx.forest.y[0] == 1


def test_search_shrinks_odd_cycle_and_augments():
    g = Graph(4)
    g.add_edge(0, 1, 0)
    g.add_edge(1, 2, 0)
    g.add_edge(2, 0, 0)
    g.add_edge(1, 3, 0)
    ctx = make_ctx(g)
    ctx.matching.match(g, 1)  # matched edge 1-2 inside the triangle
    r = pq_search(ctx, Criterion.CRIT1, [0], audit=True)
    assert r.reason == "augmented"
    assert r.shrinks == 1
    assert ctx.matching.is_perfect(g)


def test_no_augmenting_path_reported():
    g = Graph(4)
    g.add_edge(0, 1, 0)
    g.add_edge(2, 3, 4)  # far from tight and not reachable from 0
    ctx = make_ctx(g)
    ctx.matching.match(g, 0)
    r = pq_search(ctx, Criterion.CRIT1, [2])
    assert r.reason == "no_augmenting_path"
    assert not ctx.matching.is_matched(2)


def test_search_one_performs_one_adjustment():
    g = Graph(4)
    g.add_edge(0, 1, 2)
    g.add_edge(1, 2, 0)
    g.add_edge(2, 3, 2)
    ctx = make_ctx(g)
    free = [v for v in range(4) if not ctx.matching.is_matched(v)]
    r = search_one(ctx, free)
    # slack(0-1) = -2: eligible unmatched under the blossom criterion
    assert r.augments >= 1
    assert r.adjustments == 1
    assert not has_eligible_augmenting_path(
        ctx, Criterion.CRIT2,
        [v for v in range(4) if not ctx.matching.is_matched(v)],
    )


def test_timeline_walkthrough_stints():
    # inner over [4,6), [10,12), [16,19); outer over [19,20): net +6
    tl = DualTimeline()
    tl.track_vertex(5, 40, 0)
    for a, b in ((4, 6), (10, 12), (16, 19)):
        tl.set_vertex_state(5, INNER, a)
        tl.set_vertex_state(5, 0, b)
    tl.set_vertex_state(5, OUTER, 19)
    tl.set_vertex_state(5, 0, 20)
    assert tl.reconstruct_y(5, 20) == 40 + 6


def test_timeline_mid_stint_reconstruction():
    tl = DualTimeline()
    tl.track_vertex(1, 0, 0)
    tl.set_vertex_state(1, OUTER, 2)
    assert tl.reconstruct_y(1, 5) == -3
    tl.set_vertex_state(1, INNER, 6)
    assert tl.reconstruct_y(1, 7) == -3
    tl.track_node(9, 10, 0)
    tl.set_node_state(9, OUTER, 1)
    assert tl.reconstruct_z(9, 4) == 16
    tl.set_node_state(9, INNER, 4)
    assert tl.reconstruct_z(9, 6) == 12
