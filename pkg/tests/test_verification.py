import json
import random

from mwpm.blossoms import BlossomForest
from mwpm.graph import Graph, Matching, load_dimacs, matching_weight
from mwpm.verify import (
    CS,
    RCS,
    MatchingCertificate,
    brute_force_mwpm,
    check_invariants,
)


def four_cycle():
    return load_dimacs("p edge 4 4\ne 1 2 1\ne 2 3 2\ne 3 4 1\ne 4 1 2\n")


def test_oracle_single_edge():
    g = load_dimacs("p edge 2 1\ne 1 2 5\n")
    weight, m = brute_force_mwpm(g, [5])
    assert weight == 5
    assert m.is_perfect(g)


def test_oracle_four_cycle():
    g = four_cycle()
    weight, m = brute_force_mwpm(g, [e.weight for e in g.edges])
    assert weight == 4  # the two weight-2 edges
    assert matching_weight(g, m, [e.weight for e in g.edges]) == 4


def test_oracle_infeasible():
    g = load_dimacs("p edge 4 1\ne 1 2 3\n", allow_infeasible=True)
    assert brute_force_mwpm(g, [3]) is None


def test_oracle_permutation_invariance():
    rng = random.Random(7)
    base = Graph(8)
    pairs = [(0, 1), (2, 3), (4, 5), (6, 7), (0, 2), (1, 3), (4, 6), (5, 7),
             (1, 4), (3, 6)]
    weights = [rng.randint(0, 30) for _ in pairs]
    for u, v in pairs:
        base.add_edge(u, v, weights[len(base.edges)])
    opt, _ = brute_force_mwpm(base, weights)
    for trial in range(5):
        perm = list(range(8))
        rng.shuffle(perm)
        g2 = Graph(8)
        for (u, v), w in zip(pairs, weights):
            g2.add_edge(perm[u], perm[v], w)
        opt2, _ = brute_force_mwpm(g2, weights)
        assert opt2 == opt


def simple_certificate():
    g = load_dimacs("p edge 2 1\ne 1 2 5\n")
    forest = BlossomForest(g)
    forest.y[0], forest.y[1] = 2, 3
    m = Matching(g.num_vertex_slots)
    m.match(g, 0)
    return MatchingCertificate.from_state(g, forest, m, [5], "test", CS), g


def test_certificate_clean():
    cert, _ = simple_certificate()
    assert check_invariants(cert) == []


def test_tampered_y_detected():
    cert, _ = simple_certificate()
    cert.y[0] += 1  # breaks tightness of the matched edge
    assert any("tightness" in v for v in check_invariants(cert))


def test_rcs_accepts_small_negative_slack():
    g = load_dimacs("p edge 2 1\ne 1 2 5\n")
    forest = BlossomForest(g)
    forest.y[0], forest.y[1] = 2, 1  # yz = 3 = w - 2
    m = Matching(g.num_vertex_slots)
    m.match(g, 0)
    cert = MatchingCertificate.from_state(g, forest, m, [5], "test", RCS)
    assert check_invariants(cert) == []
    cert_strict = MatchingCertificate.from_state(g, forest, m, [5], "test", CS)
    assert check_invariants(cert_strict) != []


def test_domination_violation_detected():
    g = load_dimacs("p edge 2 1\ne 1 2 5\n")
    forest = BlossomForest(g)  # y = 0: yz = 0 < w - 2
    cert = MatchingCertificate.from_state(
        g, forest, Matching(g.num_vertex_slots), [5], "test", RCS
    )
    assert any("domination" in v for v in check_invariants(cert))


def test_certificate_json_roundtrip_deterministic():
    cert, g = simple_certificate()
    text = cert.to_json()
    again = MatchingCertificate.from_json(text, g)
    assert again.to_json() == text
    payload = json.loads(text)
    assert payload["weight_view"] == "test"
    assert payload["y"][:2] == [2, 3]
