"""Edge slack, criterion-dependent eligibility, and the contracted eligible view.

Three criteria govern which edges a search may traverse:

* ``CRIT1``: only tight edges (slack 0).
* ``CRIT2``: edges inside current blossoms always; otherwise unmatched edges
  with slack exactly -2 and matched edges with slack exactly 0.  Used only by
  the single-adjustment search.
* ``CRIT3``: edges with slack 0 or -2.

``slack_star`` maps an edge's slack to its distance-in-dual-adjustments from
eligibility, per criterion and matched status.
"""

from __future__ import annotations

from enum import Enum
from typing import Iterator, Optional

from .blossoms import BlossomForest
from .graph import Graph, Matching


class Criterion(Enum):
    CRIT1 = 1
    CRIT2 = 2
    CRIT3 = 3


class InvariantBreach(AssertionError):
    """An invariant the algorithm relies on was observed violated."""


def slack_star(slack: int, criterion: Criterion, in_matching: bool) -> int:
    """Distance from eligibility in dual adjustments, per the criterion table."""
    if criterion is Criterion.CRIT1:
        return slack
    if criterion is Criterion.CRIT2:
        return -slack if in_matching else slack + 2
    # CRIT3
    if slack >= 0:
        return slack
    if slack in (-1, -2):
        return slack + 2
    raise InvariantBreach(
        f"slack {slack} < -2 under criterion 3 (near domination violated)"
    )


class DualContext:
    """Bundles the pieces of solver state the eligibility predicates read."""

    def __init__(
        self, g: Graph, forest: BlossomForest, matching: Matching, w: list[int]
    ):
        self.g = g
        self.forest = forest
        self.matching = matching
        self.w = w

    def slack(self, eid: int) -> int:
        return self.forest.yz_edge(eid) - self.w[eid]

    def slack_star(self, eid: int, criterion: Criterion) -> int:
        return slack_star(
            self.slack(eid), criterion, self.matching.is_edge_matched(self.g, eid)
        )

    def is_eligible(self, eid: int, criterion: Criterion) -> bool:
        if criterion is Criterion.CRIT2:
            e = self.g.edges[eid]
            ru = self.forest.root_of[e.u]
            if ru is not None and ru is self.forest.root_of[e.v]:
                return True  # inside a current blossom
        s = self.slack(eid)
        if criterion is Criterion.CRIT1:
            return s == 0
        if criterion is Criterion.CRIT2:
            if self.matching.is_edge_matched(self.g, eid):
                return s == 0
            return s == -2
        return s == 0 or s == -2


class EligibleView:
    """Contracted eligible graph: root blossoms as nodes, eligible edges exposed."""

    def __init__(
        self,
        ctx: DualContext,
        criterion: Criterion,
        allowed: Optional[set[int]] = None,
    ):
        self.ctx = ctx
        self.criterion = criterion
        self.allowed = allowed

    def vertex_allowed(self, v: int) -> bool:
        return self.allowed is None or v in self.allowed

    def contracted_nodes(self) -> list:
        seen = set()
        out = []
        for v in self.ctx.g.live_vertices():
            if not self.vertex_allowed(v):
                continue
            node = self.ctx.forest.node_of(v)
            key = node if isinstance(node, int) else node.id
            if key not in seen:
                seen.add(key)
                out.append(node)
        return out

    def eligible_edges(self) -> Iterator[int]:
        """Eligible edges joining two distinct contracted nodes."""
        g = self.ctx.g
        forest = self.ctx.forest
        for eid in g.live_edges():
            e = g.edges[eid]
            if not (self.vertex_allowed(e.u) and self.vertex_allowed(e.v)):
                continue
            if forest.node_of(e.u) == forest.node_of(e.v):
                continue
            if self.ctx.is_eligible(eid, self.criterion):
                yield eid
