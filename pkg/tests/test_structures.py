import random

import pytest

from mwpm.structures import (
    BucketQueue,
    ForestUnionFind,
    NaiveForestUnionFind,
    NaiveSplitFindmin,
    OrderedQueue,
    SplitFindmin,
    make_event_queue,
)


def run_split_findmin_duel(ops: int, seed: int, universe: int = 60) -> None:
    """Random op sequence against the naive reference; keys kept unique so
    argmin ties cannot make the two implementations legitimately diverge."""
    rng = random.Random(seed)
    order = list(range(universe))
    fast, slow = SplitFindmin(order), NaiveSplitFindmin(order)
    seq = 0
    for _ in range(ops):
        u = rng.randrange(universe)
        op = rng.random()
        if op < 0.25:
            fast.split(u)
            slow.split(u)
        elif op < 0.7:
            seq += 1
            key = rng.randrange(1000) * 100000 + seq  # unique integer
            fast.decreasekey(u, key, witness=("w", seq))
            slow.decreasekey(u, key, witness=("w", seq))
        else:
            got = fast.findmin(fast.list_id(u))
            want = slow.findmin_of(u)
            assert got == want, f"findmin mismatch at {u}: {got} != {want}"
    for u in order:
        assert fast.findmin(fast.list_id(u)) == slow.findmin_of(u)
        assert fast.key_of(u) == slow.keys[u]


def run_union_find_duel(ops: int, seed: int) -> None:
    rng = random.Random(seed)
    fast, slow = ForestUnionFind(0), NaiveForestUnionFind(0)
    members = [0]
    committed = []
    next_id = 1
    for _ in range(ops):
        op = rng.random()
        if op < 0.3 or len(members) < 2:
            u = rng.choice(members)
            fast.addedge(u, next_id)
            slow.addedge(u, next_id)
            members.append(next_id)
            committed.append((u, next_id))
            next_id += 1
        elif op < 0.6:
            u, v = rng.choice(committed)
            fast.unite(u, v)
            slow.unite(u, v)
        else:
            u = rng.choice(members)
            assert fast.find(u) == slow.find(u), f"representative mismatch at {u}"
    for u in members:
        assert fast.find(u) == slow.find(u)


def test_split_findmin_small_duels():
    for seed in range(10):
        run_split_findmin_duel(500, seed)


def test_union_find_small_duels():
    for seed in range(10):
        run_union_find_duel(500, seed)


def test_split_findmin_tie_keeps_first_witness():
    sf = SplitFindmin([0, 1])
    sf.decreasekey(0, 5, witness="first")
    sf.decreasekey(0, 5, witness="second")  # not strictly smaller: ignored
    assert sf.findmin(sf.list_id(0)) == (5, 0, "first")


def test_union_find_rejects_uncommitted_merge():
    uf = ForestUnionFind(0)
    uf.addedge(0, 1)
    uf.addedge(1, 2)
    with pytest.raises(ValueError):
        uf.unite(0, 2)  # not a committed tree edge


def test_union_find_representative_is_most_ancestral():
    uf = ForestUnionFind(0)
    uf.addedge(0, 1)
    uf.addedge(1, 2)
    uf.unite(1, 2)
    assert uf.find(2) == 1
    uf.unite(0, 1)
    assert uf.find(2) == 0


def test_bucket_queue_monotone():
    q = BucketQueue(10)
    assert q.insert(3, "a")
    assert q.insert(3, "b")
    assert not q.insert(11, "too late")  # beyond the horizon: discarded
    t, item = q.pop_min()
    assert t == 3
    with pytest.raises(ValueError):
        q.insert(2, "past")  # before the cursor
    assert q.insert(7, "c")
    assert [q.pop_min()[1] for _ in range(2)] != []
    assert q.pop_min() is None


def test_ordered_queue_orders_and_discards():
    q = OrderedQueue(t_max=5)
    assert q.insert(4, "x")
    assert not q.insert(6, "y")
    q.insert(1, "z")
    assert q.pop_min() == (1, "z")
    assert q.pop_min() == (4, "x")
    assert q.pop_min() is None


def test_event_queue_selection():
    assert isinstance(make_event_queue(None, 10), OrderedQueue)
    assert isinstance(make_event_queue(5, 10), BucketQueue)
    assert isinstance(make_event_queue(10**9, 10), OrderedQueue)
