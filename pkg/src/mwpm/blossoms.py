"""Laminar blossom family, dual variables, and structural blossom operations.

Two kinds of blossoms coexist:

* *current* blossoms, created by searches in the running scale.  They carry a
  live odd-cycle child structure that alternates with the current matching, a
  base vertex, and a z value.  Root current blossoms are the contracted nodes
  of the search graph.
* *inherited* (old) blossoms, carried over from the previous scale.  Because
  the per-scale matching is reset, their odd cycles no longer alternate with
  anything; only their vertex sets, z values and nesting matter.  They are
  never contracted by searches; they are dismantled by the drivers.

The union of both families stays laminar, and no current blossom ever contains
an inherited one.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional

from .graph import Graph, Matching

_node_ids = itertools.count()


class BlossomNode:
    """One nontrivial blossom (current or inherited).

    ``children`` holds vertex ids (ints) and/or nested BlossomNodes in odd-cycle
    order; ``cycle_edges[i]`` joins child i to child (i+1) mod len.  For
    inherited nodes the cycle data is stale and unused.
    """

    __slots__ = (
        "id",
        "children",
        "cycle_edges",
        "base",
        "z",
        "old",
        "parent",
        "vertices",
    )

    def __init__(
        self,
        children: list,
        cycle_edges: list[int],
        base: int,
        z: int = 0,
        old: bool = False,
    ):
        self.id = next(_node_ids)
        self.children = children
        self.cycle_edges = cycle_edges
        self.base = base
        self.z = z
        self.old = old
        self.parent: Optional[BlossomNode] = None
        verts: list[int] = []
        for c in children:
            if isinstance(c, BlossomNode):
                verts.extend(c.vertices)
            else:
                verts.append(c)
        self.vertices = verts

    @property
    def n(self) -> int:
        return len(self.vertices)

    def child_vertices(self, c) -> list[int]:
        return c.vertices if isinstance(c, BlossomNode) else [c]

    def child_base(self, c) -> int:
        return c.base if isinstance(c, BlossomNode) else c

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        kind = "old" if self.old else "cur"
        return f"<B{self.id} {kind} base={self.base} z={self.z} n={self.n}>"


class BlossomForest:
    """The laminar family plus the per-vertex duals y.

    ``root_of[v]`` resolves a vertex to its outermost *current* blossom (or
    None when the vertex is a trivial contracted node).  Old blossoms are kept
    in a separate nesting reachable from ``old_roots`` with per-vertex chains
    in ``old_chain`` (innermost first).
    """

    def __init__(self, g: Graph):
        self.g = g
        slots = g.num_vertex_slots
        self.y: list[int] = [0] * slots
        self.root_of: list[Optional[BlossomNode]] = [None] * slots
        self.leaf_parent: list[Optional[BlossomNode]] = [None] * slots
        self.current_roots: set[BlossomNode] = set()
        self.old_roots: set[BlossomNode] = set()
        self.old_chain: list[list[BlossomNode]] = [[] for _ in range(slots)]

    def grow(self) -> None:
        slots = self.g.num_vertex_slots
        while len(self.y) < slots:
            self.y.append(0)
            self.root_of.append(None)
            self.leaf_parent.append(None)
            self.old_chain.append([])

    # -- resolution -------------------------------------------------------

    def node_of(self, v: int):
        """The contracted node of v: its root current blossom, else v itself."""
        r = self.root_of[v]
        return v if r is None else r

    def node_vertices(self, node) -> list[int]:
        return node.vertices if isinstance(node, BlossomNode) else [node]

    def node_base(self, node) -> int:
        return node.base if isinstance(node, BlossomNode) else node

    def chain_of(self, v: int) -> list[BlossomNode]:
        """All current blossoms containing v, innermost first (slow resolver)."""
        out = []
        node = self.leaf_parent[v]
        while node is not None:
            out.append(node)
            node = node.parent
        return out

    def all_current_nodes(self) -> list[BlossomNode]:
        out = []
        stack = list(self.current_roots)
        while stack:
            b = stack.pop()
            out.append(b)
            for c in b.children:
                if isinstance(c, BlossomNode):
                    stack.append(c)
        return out

    def all_old_nodes(self) -> list[BlossomNode]:
        out = []
        stack = list(self.old_roots)
        while stack:
            b = stack.pop()
            out.append(b)
            for c in b.children:
                if isinstance(c, BlossomNode) and c.old:
                    stack.append(c)
        return out

    # -- dual arithmetic --------------------------------------------------

    def z_common_current(self, u: int, v: int) -> int:
        cu = self.chain_of(u)
        if not cu:
            return 0
        ids = {b.id for b in cu}
        return sum(b.z for b in self.chain_of(v) if b.id in ids)

    def z_common_old(self, u: int, v: int) -> int:
        cu = self.old_chain[u]
        if not cu:
            return 0
        ids = {b.id for b in cu}
        return sum(b.z for b in self.old_chain[v] if b.id in ids)

    def yz_edge(self, eid: int) -> int:
        e = self.g.edges[eid]
        return (
            self.y[e.u]
            + self.y[e.v]
            + self.z_common_current(e.u, e.v)
            + self.z_common_old(e.u, e.v)
        )

    def dual_objective(self, scope: Optional[Iterable[int]] = None) -> int:
        """yz(S): sum of y over S plus the capped z contributions."""
        if scope is None:
            sset = set(self.g.live_vertices())
        else:
            sset = set(scope)
        total = sum(self.y[v] for v in sset)
        half_s = len(sset) // 2
        for b in self.all_current_nodes() + self.all_old_nodes():
            if b.z == 0:
                continue
            inside = sum(1 for v in b.vertices if v in sset)
            if inside == b.n:  # B ⊆ S
                total += b.z * (b.n // 2)
            elif inside == len(sset) and b.n > len(sset):  # B ⊃ S
                total += b.z * half_s
        return total

    # -- structural operations on current blossoms ------------------------

    def shrink_blossom(self, cycle_nodes: list, cycle_edges: list[int]) -> BlossomNode:
        """Contract an odd alternating cycle of current root nodes into a new blossom.

        ``cycle_nodes[0]`` must be the child containing the new base (its two
        incident cycle edges are the unmatched ones).
        """
        ell = len(cycle_nodes)
        if ell < 3 or ell % 2 == 0:
            raise ValueError("blossom cycle must have odd length >= 3")
        if len(cycle_edges) != ell:
            raise ValueError("cycle edge count mismatch")
        base = (
            cycle_nodes[0].base
            if isinstance(cycle_nodes[0], BlossomNode)
            else cycle_nodes[0]
        )
        node = BlossomNode(cycle_nodes, cycle_edges, base, z=0, old=False)
        for c in cycle_nodes:
            if isinstance(c, BlossomNode):
                self.current_roots.discard(c)
                c.parent = node
            else:
                self.leaf_parent[c] = node
        self.current_roots.add(node)
        for v in node.vertices:
            self.root_of[v] = node
        return node

    def dissolve_root(self, node: BlossomNode, allow_nonzero_z: bool = False) -> list:
        """Remove a root current blossom; children become roots in cycle order."""
        if node not in self.current_roots:
            raise ValueError("can only dissolve a root blossom")
        if node.z != 0 and not allow_nonzero_z:
            raise ValueError("dissolving a blossom with nonzero z needs an override")
        self.current_roots.discard(node)
        for c in node.children:
            if isinstance(c, BlossomNode):
                c.parent = None
                self.current_roots.add(c)
                for v in c.vertices:
                    self.root_of[v] = c
            else:
                self.leaf_parent[c] = None
                self.root_of[c] = None
        return list(node.children)

    # -- operations shared by both families --------------------------------

    def translate(self, node: BlossomNode, units: int = 1) -> None:
        """z(node) -= 2*units with y += units on every member vertex."""
        if node.z < 2 * units:
            raise ValueError("translate needs z >= 2*units")
        node.z -= 2 * units
        for v in node.vertices:
            self.y[v] += units

    def translate_unit(self, node: BlossomNode) -> None:
        self.translate(node, 1)

    def liquidate(self, node: BlossomNode) -> None:
        """Distribute z/2 onto each member's y, zero z, and remove the node.

        Valid for root blossoms of either family; also used on non-root old
        nodes during dismantling (old cycles are stale, so splicing children
        into the old parent is sound).
        """
        half = node.z // 2
        if half:
            for v in node.vertices:
                self.y[v] += half
        node.z = 0
        self.remove_node(node)

    def remove_node(self, node: BlossomNode) -> None:
        """Structurally delete a z=0 node from its family."""
        if node.z != 0:
            raise ValueError("only z=0 nodes can be removed")
        if node.old:
            parent = node.parent
            if parent is None:
                self.old_roots.discard(node)
                for c in node.children:
                    if isinstance(c, BlossomNode) and c.old:
                        c.parent = None
                        self.old_roots.add(c)
            else:
                idx = parent.children.index(node)
                parent.children[idx : idx + 1] = node.children
                for c in node.children:
                    if isinstance(c, BlossomNode) and c.old:
                        c.parent = parent
            for v in node.vertices:
                try:
                    self.old_chain[v].remove(node)
                except ValueError:
                    pass
        else:
            if node not in self.current_roots:
                raise ValueError("current blossoms are removed root-first")
            self.dissolve_root(node)

    def demote_current_to_old(self) -> None:
        """Move the whole current family into the old family (new scale start).

        The previous scale's old family must already be fully dissolved.
        """
        if self.old_roots:
            raise AssertionError("previous old family not fully dissolved")
        for b in self.all_current_nodes():
            b.old = True
        for v in range(len(self.old_chain)):
            chain = []
            node = self.leaf_parent[v]
            while node is not None:
                chain.append(node)
                node = node.parent
            self.old_chain[v] = chain
        self.old_roots |= self.current_roots
        self.current_roots = set()
        for v in range(len(self.root_of)):
            self.root_of[v] = None
            self.leaf_parent[v] = None

    # -- alternating-path machinery ---------------------------------------

    def base_path(
        self,
        node,
        v: int,
        matching: Matching,
        assignments: Optional[list] = None,
    ) -> list[int]:
        """Even alternating path (edge ids) from v to base(node) inside the blossom.

        Starts with a matched edge unless v is already the base (empty path).
        When `assignments` is given, (blossom, new-base) pairs are collected for
        every level whose base moves if the path is flipped.
        """
        if not isinstance(node, BlossomNode):
            return []
        if v == node.base:
            return []
        if assignments is not None:
            assignments.append((node, v))
        g = self.g
        children = node.children
        ell = len(children)
        pos_of_vertex = {}
        for i, c in enumerate(children):
            for x in node.child_vertices(c):
                pos_of_vertex[x] = i
        start = pos_of_vertex[v]
        base_idx = pos_of_vertex[node.base]
        if start == base_idx:
            return self.base_path(children[start], v, matching, assignments)

        def cyc_edge(i: int) -> int:
            return node.cycle_edges[i % ell]

        # pick the direction whose first step leaves `start` via its matched
        # cycle edge (unique: every non-base child has exactly one)
        fwd = cyc_edge(start)  # joins child start -> start+1
        bwd = cyc_edge(start - 1)  # joins child start-1 -> start
        if matching.is_edge_matched(g, fwd):
            step = 1
        elif matching.is_edge_matched(g, bwd):
            step = -1
        else:
            raise AssertionError("non-base child with no matched cycle edge")

        path: list[int] = []
        # segment inside the starting child, ending at its base (where the
        # matched cycle edge attaches)
        path.extend(self.base_path(children[start], v, matching, assignments))
        i = start
        entry = None
        while True:
            eid = cyc_edge(i) if step == 1 else cyc_edge(i - 1)
            path.append(eid)
            i = (i + step) % ell
            child = children[i]
            e = g.edges[eid]
            entry = e.u if pos_of_vertex[e.u] == i else e.v
            if i == base_idx:
                path.extend(self.base_path(child, entry, matching, assignments))
                return path
            if matching.is_edge_matched(g, eid):
                # entered at the child's base via its matched cycle edge; leave
                # through the far (unmatched) cycle edge, flipping the child's
                # internal path in reverse
                nxt = cyc_edge(i) if step == 1 else cyc_edge(i - 1)
                ne = g.edges[nxt]
                exit_v = ne.u if pos_of_vertex[ne.u] == i else ne.v
                seg = self.base_path(child, exit_v, matching, assignments)
                path.extend(reversed(seg))
            else:
                # entered anywhere via an unmatched cycle edge; continue to the
                # child's base where its matched cycle edge attaches
                path.extend(self.base_path(child, entry, matching, assignments))

    def rotate_base(self, node: BlossomNode, v: int, matching: Matching) -> None:
        """Make v the base of `node` by flipping its internal alternating path."""
        if v == node.base:
            return
        assignments: list = []
        path = self.base_path(node, v, matching, assignments)
        self._toggle_path(path, matching)
        for nd, nb in assignments:
            nd.base = nb

    def _toggle_path(self, path: list[int], matching: Matching) -> None:
        g = self.g
        to_clear = [e for e in path if matching.is_edge_matched(g, e)]
        to_set = [e for e in path if not matching.is_edge_matched(g, e)]
        for e in to_clear:
            matching.unmatch(g, e)
        for e in to_set:
            matching.match(g, e)

    def augment_through(self, matching: Matching, path_edges: list[int]) -> None:
        """Augment along a contracted augmenting path given by its edge ids.

        Path edges alternate unmatched/matched at the contracted level with
        both end nodes free.  Matched path edges are removed; each unmatched
        path edge has both endpoint blossoms rotated so the edge endpoints
        become their bases, then is added to the matching.
        """
        g = self.g
        matched = [e for e in path_edges if matching.is_edge_matched(g, e)]
        unmatched = [e for e in path_edges if not matching.is_edge_matched(g, e)]
        for e in matched:
            matching.unmatch(g, e)
        for eid in unmatched:
            e = g.edges[eid]
            for end in (e.u, e.v):
                node = self.root_of[end]
                if node is not None:
                    self.rotate_base(node, end, matching)
            matching.match(g, eid)

    # -- structural audits -------------------------------------------------

    def check_cycle_structure(self, node: BlossomNode, matching: Matching) -> None:
        """Assert the odd-cycle alternation invariants of a current blossom."""
        ell = len(node.children)
        assert ell % 2 == 1 and ell >= 3
        for i, eid in enumerate(node.cycle_edges):
            e = self.g.edges[eid]
            a = set(node.child_vertices(node.children[i]))
            b = set(node.child_vertices(node.children[(i + 1) % ell]))
            assert (e.u in a and e.v in b) or (e.v in a and e.u in b), (
                f"cycle edge {i} does not join children {i},{i+1}"
            )
            assert matching.is_edge_matched(self.g, eid) == (i % 2 == 1), (
                f"cycle edge {i} has wrong matched parity"
            )
        assert node.base in self.node_vertices(node.children[0])

    def check_internal_matching(self, node: BlossomNode, matching: Matching) -> bool:
        """|M ∩ E_B| = floor(|B|/2) with only base(B) uncovered inside B."""
        members = set(node.vertices)
        inside = 0
        uncovered = []
        for v in node.vertices:
            eid = matching.mate_edge[v]
            if eid is None:
                uncovered.append(v)
            elif self.g.edges[eid].other(v) not in members:
                uncovered.append(v)
        for v in node.vertices:
            eid = matching.mate_edge[v]
            if eid is not None and self.g.edges[eid].u == v:
                if self.g.edges[eid].v in members:
                    inside += 1
        return inside == node.n // 2 and uncovered == [node.base]
