"""Search-support data structures: split-findmin, forest-constrained union-find,
and the event priority queues, together with naive reference implementations
used for dual-route testing.

The union-find commits tree edges (`addedge`) and merges only across committed
edges (`unite`); `find` returns the most ancestral element of a set, where
ancestry is taken in the committed tree.  Sets are always connected subtrees,
so the representative is the unique set member whose tree parent lies outside
the set (or the tree root).

The split-findmin maintains a collection of element lists with keys and
witness payloads; `split(u)` cuts the list containing `u` right after `u`,
`decreasekey` lowers a key (keeping the old witness on ties), and `findmin`
reports the minimum key of a list with its element and witness.
"""

from __future__ import annotations

import heapq
from typing import Any, Hashable, Iterable, Optional

INF = float("inf")


# ---------------------------------------------------------------------------
# split-findmin


class _SfmList:
    __slots__ = ("items", "min_key", "min_elem")

    def __init__(self, items: list):
        self.items = items
        self.min_key: Any = INF
        self.min_elem: Optional[Hashable] = None

    def recompute(self, keys, witness) -> None:
        self.min_key = INF
        self.min_elem = None
        for u in self.items:
            if keys[u] < self.min_key:
                self.min_key = keys[u]
                self.min_elem = u


class SplitFindmin:
    """Split-findmin over a fixed element universe.

    `init` takes the element order (each blossom of the caller's laminar
    structure must be contiguous in it); all elements start in one list with
    key +infinity and no witness.
    """

    def __init__(self, order: Iterable[Hashable]):
        items = list(order)
        if len(set(items)) != len(items):
            raise ValueError("duplicate elements")
        self.keys: dict[Hashable, Any] = {u: INF for u in items}
        self.witness: dict[Hashable, Any] = {u: None for u in items}
        first = _SfmList(items)
        self.list_of: dict[Hashable, _SfmList] = {u: first for u in items}
        self.pos: dict[Hashable, int] = {u: i for i, u in enumerate(items)}

    def list_id(self, u: Hashable) -> _SfmList:
        """The list currently containing u."""
        return self.list_of[u]

    def split(self, u: Hashable) -> tuple[_SfmList, _SfmList]:
        """Split the list containing u into (..., u) and the rest.

        The suffix may be empty, in which case no second list is created and
        the original list is returned twice.
        """
        lst = self.list_of[u]
        cut = lst.items.index(u) + 1
        if cut == len(lst.items):
            return lst, lst
        suffix = lst.items[cut:]
        del lst.items[cut:]
        new = _SfmList(suffix)
        for x in suffix:
            self.list_of[x] = new
        lst.recompute(self.keys, self.witness)
        new.recompute(self.keys, self.witness)
        return lst, new

    def decreasekey(self, u: Hashable, key: Any, witness: Any = None) -> None:
        """Lower u's key; ties keep the existing key and witness."""
        if key < self.keys[u]:
            self.keys[u] = key
            self.witness[u] = witness
            lst = self.list_of[u]
            if key < lst.min_key:
                lst.min_key = key
                lst.min_elem = u

    def findmin(self, lst: _SfmList) -> tuple[Any, Optional[Hashable], Any]:
        """(key, element, witness) of the minimum in the list."""
        if lst.min_elem is None:
            return INF, None, None
        return lst.min_key, lst.min_elem, self.witness[lst.min_elem]

    def key_of(self, u: Hashable) -> Any:
        return self.keys[u]


class NaiveSplitFindmin:
    """Reference implementation: explicit list-of-lists with full scans."""

    def __init__(self, order: Iterable[Hashable]):
        items = list(order)
        self.lists: list[list[Hashable]] = [items]
        self.keys = {u: INF for u in items}
        self.witness = {u: None for u in items}

    def _locate(self, u):
        for i, lst in enumerate(self.lists):
            if u in lst:
                return i
        raise KeyError(u)

    def list_id(self, u):
        return self._locate(u)

    def split(self, u):
        i = self._locate(u)
        lst = self.lists[i]
        cut = lst.index(u) + 1
        if cut == len(lst):
            return i, i
        self.lists[i] = lst[:cut]
        self.lists.append(lst[cut:])
        return i, len(self.lists) - 1

    def decreasekey(self, u, key, witness=None):
        if key < self.keys[u]:
            self.keys[u] = key
            self.witness[u] = witness

    def findmin_of(self, u):
        """(key, element, witness) minimum over the list containing u."""
        lst = self.lists[self._locate(u)]
        best_key, best_elem = INF, None
        for x in lst:
            if self.keys[x] < best_key:
                best_key = self.keys[x]
                best_elem = x
        if best_elem is None:
            return INF, None, None
        return best_key, best_elem, self.witness[best_elem]


# ---------------------------------------------------------------------------
# forest-constrained union-find


class ForestUnionFind:
    """Union-find whose merges follow committed tree edges.

    `addedge(u, v)` commits the tree edge; exactly one endpoint must already be
    in the tree (the other is added as its child).  `unite(u, v)` merges the
    sets of u and v and is only permitted across a committed edge.  `find(u)`
    returns the most ancestral member of u's set.
    """

    def __init__(self, root: Hashable):
        self.tree_parent: dict[Hashable, Optional[Hashable]] = {root: None}
        self.depth: dict[Hashable, int] = {root: 0}
        self.edges: set[frozenset] = set()
        self.dsu_parent: dict[Hashable, Hashable] = {root: root}
        self.rep: dict[Hashable, Hashable] = {root: root}

    def __contains__(self, u: Hashable) -> bool:
        return u in self.tree_parent

    def addedge(self, u: Hashable, v: Hashable) -> None:
        if (u in self.tree_parent) == (v in self.tree_parent):
            raise ValueError("addedge needs exactly one endpoint already in the tree")
        if v in self.tree_parent:
            u, v = v, u
        self.tree_parent[v] = u
        self.depth[v] = self.depth[u] + 1
        self.edges.add(frozenset((u, v)))
        self.dsu_parent[v] = v
        self.rep[v] = v

    def _root(self, u: Hashable) -> Hashable:
        r = u
        while self.dsu_parent[r] != r:
            r = self.dsu_parent[r]
        while self.dsu_parent[u] != r:
            self.dsu_parent[u], u = r, self.dsu_parent[u]
        return r

    def unite(self, u: Hashable, v: Hashable) -> None:
        if frozenset((u, v)) not in self.edges:
            raise ValueError("unite is only permitted across a committed tree edge")
        ru, rv = self._root(u), self._root(v)
        if ru == rv:
            return
        # the merged representative is the more ancestral of the two
        keep = self.rep[ru] if self.depth[self.rep[ru]] <= self.depth[self.rep[rv]] else self.rep[rv]
        self.dsu_parent[rv] = ru
        self.rep[ru] = keep

    def find(self, u: Hashable) -> Hashable:
        return self.rep[self._root(u)]


class NaiveForestUnionFind:
    """Reference implementation with explicit sets and parent scans."""

    def __init__(self, root: Hashable):
        self.tree_parent: dict[Hashable, Optional[Hashable]] = {root: None}
        self.edges: set[frozenset] = set()
        self.sets: list[set] = [{root}]

    def __contains__(self, u):
        return u in self.tree_parent

    def addedge(self, u, v):
        if (u in self.tree_parent) == (v in self.tree_parent):
            raise ValueError("addedge needs exactly one endpoint already in the tree")
        if v in self.tree_parent:
            u, v = v, u
        self.tree_parent[v] = u
        self.edges.add(frozenset((u, v)))
        self.sets.append({v})

    def _set_of(self, u):
        for s in self.sets:
            if u in s:
                return s
        raise KeyError(u)

    def unite(self, u, v):
        if frozenset((u, v)) not in self.edges:
            raise ValueError("unite is only permitted across a committed tree edge")
        su, sv = self._set_of(u), self._set_of(v)
        if su is sv:
            return
        self.sets.remove(sv)
        su |= sv

    def find(self, u):
        s = self._set_of(u)
        # most ancestral: the unique member whose tree parent is outside the set
        for x in s:
            p = self.tree_parent[x]
            if p is None or p not in s:
                return x
        raise AssertionError("set is not a connected subtree")


# ---------------------------------------------------------------------------
# event queues


class BucketQueue:
    """Monotone integer priority queue over times 0..t_max.

    Items inserted past t_max are discarded (they cannot fire before the
    budget is exhausted).  Pops are monotone nondecreasing in time.
    """

    def __init__(self, t_max: int):
        self.t_max = t_max
        self.buckets: list[list[Any]] = [[] for _ in range(t_max + 1)]
        self.cursor = 0
        self.size = 0

    def insert(self, t: int, item: Any) -> bool:
        if t > self.t_max:
            return False
        if t < self.cursor:
            raise ValueError("insert before current time in a monotone queue")
        self.buckets[t].append(item)
        self.size += 1
        return True

    def pop_min(self) -> Optional[tuple[int, Any]]:
        if self.size == 0:
            return None
        while not self.buckets[self.cursor]:
            self.cursor += 1
        self.size -= 1
        return self.cursor, self.buckets[self.cursor].pop()

    def __len__(self) -> int:
        return self.size


class OrderedQueue:
    """Heap-based fallback queue for unbounded adjustment counts."""

    def __init__(self, t_max: Optional[int] = None):
        self.t_max = t_max
        self.heap: list[tuple[int, int, Any]] = []
        self.counter = 0

    def insert(self, t: int, item: Any) -> bool:
        if self.t_max is not None and t > self.t_max:
            return False
        heapq.heappush(self.heap, (t, self.counter, item))
        self.counter += 1
        return True

    def pop_min(self) -> Optional[tuple[int, Any]]:
        if not self.heap:
            return None
        t, _c, item = heapq.heappop(self.heap)
        return t, item

    def __len__(self) -> int:
        return len(self.heap)


def make_event_queue(budget: Optional[int], edge_count: int):
    """Bucket queue when the budget is known and reasonably sized, else heap."""
    if budget is not None and budget <= 4 * edge_count + 16:
        return BucketQueue(budget)
    return OrderedQueue(budget)
