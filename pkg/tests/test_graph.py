import pytest

from mwpm.graph import (
    Graph,
    Matching,
    ParseError,
    WeightScales,
    format_matching,
    init_scales,
    load_dimacs,
    matching_weight,
    write_dimacs,
)

SINGLE_EDGE = "p edge 2 1\ne 1 2 5\n"
FOUR_CYCLE = "p edge 4 4\ne 1 2 1\ne 2 3 2\ne 3 4 1\ne 4 1 2\n"


def test_parse_single_edge():
    g = load_dimacs(SINGLE_EDGE)
    assert g.n == 2
    assert len(g.edges) == 1
    assert g.edges[0].weight == 5


def test_parse_rejects_bad_header():
    with pytest.raises(ParseError):
        load_dimacs("p edge x 1\ne 1 2 5\n")


def test_parse_rejects_out_of_range_vertex():
    with pytest.raises(ParseError):
        load_dimacs("p edge 2 1\ne 1 3 5\n")


def test_roundtrip_dimacs():
    g = load_dimacs(FOUR_CYCLE)
    assert load_dimacs(write_dimacs(g)).n == 4
    assert write_dimacs(load_dimacs(write_dimacs(g))) == write_dimacs(g)


def test_matching_basics():
    g = load_dimacs(FOUR_CYCLE)
    m = Matching(g.num_vertex_slots)
    m.match(g, 0)
    assert m.is_matched(0) and m.is_matched(1)
    assert m.mate(g, 0) == 1
    assert not m.is_perfect(g)
    m.match(g, 2)
    assert m.is_perfect(g)
    assert matching_weight(g, m, [e.weight for e in g.edges]) == 2
    assert "m 1 2" in format_matching(g, m)


def test_validate_catches_half_matched_edge():
    g = load_dimacs(FOUR_CYCLE)
    m = Matching(g.num_vertex_slots)
    m.match(g, 0)
    m.mate_edge[1] = 1  # vertex 1 claims edge 1-2 while vertex 2 does not
    with pytest.raises(AssertionError):
        m.validate(g)


def test_dummy_registry():
    g = load_dimacs(SINGLE_EDGE).copy_workspace()
    vid, eid = g.add_dummy(0, scale=1)
    assert g.is_dummy(vid)
    assert g.edges[eid].weight == 0
    assert len(g.adj[vid]) == 1  # pendant
    g.remove_dummy(vid)
    assert not g.vertex_alive[vid]
    assert not g.edge_alive[eid]


def test_scale_count_covers_exact_powers_of_two():
    # max extended weight (n//2+1)*max_w of 16 needs 5 bits, not 4
    g = Graph(4)
    g.add_edge(0, 1, 5)  # extended: 3*5 = 15 -> 4 scales
    assert init_scales(g).scale_count == 4
    g2 = Graph(4)
    g2.add_edge(0, 1, 6)  # extended: 3*6 = 18 -> 5 scales
    assert init_scales(g2).scale_count == 5


def test_bit_revelation_reconstructs_extended_weight():
    g = Graph(4)
    g.add_edge(0, 1, 13)
    scales: WeightScales = init_scales(g)
    acc = 0
    for i in range(1, scales.scale_count + 1):
        acc = 2 * (acc + scales.bit(i, 0))
    # after all scales the accumulated value is twice the extended weight
    assert acc == 2 * scales.extended[0]
    assert scales.extended[0] == (g.n // 2 + 1) * 13
