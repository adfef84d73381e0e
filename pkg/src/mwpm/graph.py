"""Graph, matching, and weight-scale representations.

The solver works on general undirected graphs with nonnegative integer edge
weights.  A :class:`Graph` is immutable after loading except for *dummy*
pendant vertices, which the scaling drivers attach to free vertices at the end
of each scale and later delete; those live in a registry past the original
vertex range so every bound stated in terms of "n" keeps referring to the
original vertex count.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, TextIO


class ParseError(ValueError):
    """Raised for malformed DIMACS-like input; carries the offending line number."""

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class Edge:
    """One undirected edge.  `weight` is the original input weight ŵ(e)."""

    u: int
    v: int
    weight: int

    def other(self, w: int) -> int:
        return self.v if w == self.u else self.u


class Graph:
    """Undirected integer-weighted graph with a dummy-pendant registry.

    Vertices ``0..n-1`` are the original vertices; vertices appended past ``n``
    are dummy pendants with exactly one incident zero-weight edge.  Dead
    vertices/edges (deleted dummies) are flagged, never reindexed.
    """

    def __init__(self, n: int):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n  # original vertex count; bounds use this
        self.edges: list[Edge] = []
        self.adj: list[list[int]] = [[] for _ in range(n)]
        self.vertex_alive: list[bool] = [True] * n
        self.edge_alive: list[bool] = []
        # dummy vertex id -> (pendant edge id, creation scale)
        self.dummy_registry: dict[int, tuple[int, int]] = {}

    # -- construction -----------------------------------------------------

    def add_edge(self, u: int, v: int, weight: int) -> int:
        if u == v:
            raise ValueError("self-loops are not allowed")
        eid = len(self.edges)
        self.edges.append(Edge(u, v, weight))
        self.edge_alive.append(True)
        self.adj[u].append(eid)
        self.adj[v].append(eid)
        return eid

    def add_dummy(self, mate: int, scale: int) -> tuple[int, int]:
        """Append a dummy pendant attached to `mate` with a zero-weight edge."""
        vid = len(self.adj)
        self.adj.append([])
        self.vertex_alive.append(True)
        eid = self.add_edge(mate, vid, 0)
        self.dummy_registry[vid] = (eid, scale)
        return vid, eid

    def remove_dummy(self, vid: int) -> int:
        """Mark a dummy vertex and its pendant edge dead; returns the edge id."""
        eid, _scale = self.dummy_registry.pop(vid)
        self.vertex_alive[vid] = False
        self.edge_alive[eid] = False
        return eid

    def is_dummy(self, vid: int) -> bool:
        return vid in self.dummy_registry

    # -- views ------------------------------------------------------------

    @property
    def num_vertex_slots(self) -> int:
        """Total vertex ids ever allocated (original + dummies, dead included)."""
        return len(self.adj)

    def live_vertices(self) -> Iterator[int]:
        for v in range(len(self.adj)):
            if self.vertex_alive[v]:
                yield v

    def live_edges(self) -> Iterator[int]:
        for e in range(len(self.edges)):
            if self.edge_alive[e]:
                yield e

    def copy_workspace(self) -> "Graph":
        """Fresh mutable copy for one solver run (the loaded graph stays pristine)."""
        g = Graph(self.n)
        for e in self.edges:
            g.add_edge(e.u, e.v, e.weight)
        return g


class Matching:
    """A matching stored as vertex -> matched edge id (or None)."""

    def __init__(self, slots: int):
        self.mate_edge: list[Optional[int]] = [None] * slots

    def grow(self, slots: int) -> None:
        while len(self.mate_edge) < slots:
            self.mate_edge.append(None)

    def clear(self) -> None:
        self.mate_edge = [None] * len(self.mate_edge)

    def is_matched(self, v: int) -> bool:
        return self.mate_edge[v] is not None

    def is_edge_matched(self, g: Graph, eid: int) -> bool:
        e = g.edges[eid]
        return self.mate_edge[e.u] == eid

    def mate(self, g: Graph, v: int) -> Optional[int]:
        eid = self.mate_edge[v]
        if eid is None:
            return None
        return g.edges[eid].other(v)

    def match(self, g: Graph, eid: int) -> None:
        e = g.edges[eid]
        self.mate_edge[e.u] = eid
        self.mate_edge[e.v] = eid

    def unmatch(self, g: Graph, eid: int) -> None:
        e = g.edges[eid]
        if self.mate_edge[e.u] == eid:
            self.mate_edge[e.u] = None
        if self.mate_edge[e.v] == eid:
            self.mate_edge[e.v] = None

    def edge_ids(self, g: Graph) -> list[int]:
        seen = []
        for v, eid in enumerate(self.mate_edge):
            if eid is not None and g.edges[eid].u == v:
                seen.append(eid)
        return seen

    def pairs(self, g: Graph) -> list[tuple[int, int]]:
        return [(g.edges[e].u, g.edges[e].v) for e in self.edge_ids(g)]

    def is_perfect(self, g: Graph) -> bool:
        return all(
            self.mate_edge[v] is not None for v in g.live_vertices()
        )

    def validate(self, g: Graph) -> None:
        for v, eid in enumerate(self.mate_edge):
            if eid is None:
                continue
            e = g.edges[eid]
            if v not in (e.u, e.v):
                raise AssertionError(f"vertex {v} claims edge {eid} not incident to it")
            if self.mate_edge[e.other(v)] != eid:
                raise AssertionError(f"edge {eid} matched on one side only")

    def copy(self) -> "Matching":
        m = Matching(0)
        m.mate_edge = list(self.mate_edge)
        return m


def matching_weight(g: Graph, m: Matching, w: list[int]) -> int:
    """Total weight of `m` under the per-edge weight view `w`."""
    return sum(w[e] for e in m.edge_ids(g))


def ceil_log2(x: int) -> int:
    if x <= 1:
        return 0
    return (x - 1).bit_length()


class WeightScales:
    """The multi-scale weight transform.

    The extended weight of each edge is ``(n//2 + 1) * ŵ(e)``; the drivers
    reveal it one bit per scale, most significant first, so that after the last
    scale the accumulated weight is exactly twice the extended weight.
    """

    def __init__(self, g: Graph):
        self.multiplier = g.n // 2 + 1
        self.extended: list[int] = [self.multiplier * e.weight for e in g.edges]
        max_w = max((e.weight for e in g.edges), default=0)
        # enough scales to reveal every bit of the largest extended weight
        self.scale_count = max(1, (self.multiplier * max_w).bit_length())
        self.current_scale = 0
        # current in-force weight and previous-scale weight, both all-zero at start
        self.w: list[int] = [0] * len(g.edges)
        self.w_prev: list[int] = [0] * len(g.edges)

    def grow(self, edge_count: int) -> None:
        while len(self.extended) < edge_count:
            self.extended.append(0)
            self.w.append(0)
            self.w_prev.append(0)

    def bit(self, scale: int, eid: int) -> int:
        """The scale-th most significant of scale_count bits of the extended weight."""
        if not 1 <= scale <= self.scale_count:
            raise ValueError("scale out of range")
        return (self.extended[eid] >> (self.scale_count - scale)) & 1


def init_scales(g: Graph) -> WeightScales:
    return WeightScales(g)


# -- DIMACS-like text format ---------------------------------------------
#
# comment lines `c ...`; header `p edge <n> <m>`; edge lines `e <u> <v> <w>`
# with 1-indexed vertices and nonnegative integer weights.


def load_dimacs(text: str | Iterable[str], allow_infeasible: bool = False) -> Graph:
    """Parse the DIMACS-like format into a Graph.

    Duplicate parallel edges are collapsed keeping the maximum weight.  An odd
    vertex count is rejected unless `allow_infeasible` is set (the solver can
    still run and will report infeasibility).
    """
    if isinstance(text, str):
        lines: Iterable[str] = text.splitlines()
    else:
        lines = text
    g: Optional[Graph] = None
    declared_edges = 0
    best: dict[tuple[int, int], int] = {}
    order: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if g is not None:
                raise ParseError("duplicate problem header", lineno)
            if len(parts) != 4 or parts[1] != "edge":
                raise ParseError("malformed header, expected 'p edge <n> <m>'", lineno)
            try:
                n, declared_edges = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer header fields", lineno) from None
            if n < 0 or declared_edges < 0:
                raise ParseError("negative counts in header", lineno)
            if n % 2 == 1 and not allow_infeasible:
                raise ParseError(
                    "odd vertex count has no perfect matching "
                    "(pass allow_infeasible to solve anyway)",
                    lineno,
                )
            g = Graph(n)
        elif parts[0] == "e":
            if g is None:
                raise ParseError("edge line before header", lineno)
            if len(parts) != 4:
                raise ParseError("malformed edge line, expected 'e <u> <v> <w>'", lineno)
            try:
                u, v, w = int(parts[1]), int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError("non-integer edge fields", lineno) from None
            if not (1 <= u <= g.n):
                raise ParseError(f"vertex {u} out of range", lineno)
            if not (1 <= v <= g.n):
                raise ParseError(f"vertex {v} out of range", lineno)
            if u == v:
                raise ParseError("self-loop", lineno)
            if w < 0:
                raise ParseError("negative weight", lineno)
            key = (min(u, v) - 1, max(u, v) - 1)
            if key in best:
                best[key] = max(best[key], w)
            else:
                best[key] = w
                order.append(key)
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", lineno)
    if g is None:
        raise ParseError("missing problem header", 0)
    for (u, v) in order:
        g.add_edge(u, v, best[(u, v)])
    return g


def write_dimacs(g: Graph, comment: str | None = None) -> str:
    out = []
    if comment:
        for line in comment.splitlines():
            out.append(f"c {line}")
    out.append(f"p edge {g.n} {len(g.edges)}")
    for e in g.edges:
        out.append(f"e {e.u + 1} {e.v + 1} {e.weight}")
    return "\n".join(out) + "\n"


def format_matching(g: Graph, m: Matching) -> str:
    """Output lines `m <u> <v>` (1-indexed original vertices only)."""
    out = []
    for (u, v) in sorted(m.pairs(g)):
        if u < g.n and v < g.n:
            out.append(f"m {u + 1} {v + 1}")
    return "\n".join(out) + ("\n" if out else "")
