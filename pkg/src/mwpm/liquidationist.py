"""The liquidation-based scaling driver.

After the shared scaling and large-blossom steps, every remaining inherited
blossom (all small, below ``tau`` vertices) is liquidated outright: its dual
mass is pushed onto member vertex potentials.  The resulting positive free
potentials are then worked off by budgeted searches confined to the former
maximal small blossoms, processing the free vertices level by level from the
highest potential down; each search either augments or spends exactly the
potential gap to the next level.  Finally ``tau`` single-adjustment searches
drive every remaining free vertex to potential ``-tau``.
"""

from __future__ import annotations

from typing import Optional

from .blossoms import BlossomNode
from .drivers import BaseDriver, MatchingCertificate, RunReport, tau_sqrt
from .eligibility import Criterion
from .graph import Graph, Matching
from .search import pq_search


class LiquidationistDriver(BaseDriver):
    algorithm = "liquidationist"

    @staticmethod
    def default_tau(n: int) -> int:
        return tau_sqrt(n)

    def small_blossom_phase(self, scale: int) -> None:
        # record the maximal former blossoms first, then liquidate everything
        groups = [list(b.vertices) for b in self.forest.old_roots]
        work = list(self.forest.old_roots)
        while work:
            b = work.pop()
            work.extend(c for c in b.children if isinstance(c, BlossomNode))
            self.forest.liquidate(b)
        for verts in sorted(groups, key=len):
            self._drain_group(verts)

    def _drain_group(self, verts: list[int]) -> None:
        """Reduce every free potential in a former blossom's vertex set to 0.

        Each round searches from the free vertices at the top potential level
        ``Y``, budgeted down to the next level ``Y'`` (or 0), confined to the
        group; a round either augments or lands the whole top level on ``Y'``,
        so rounds strictly shrink the free set or the top potential.
        """
        vset = set(verts)
        while True:
            free = [v for v in verts if not self.matching.is_matched(v)]
            levels = sorted({self.forest.y[v] for v in free}, reverse=True)
            if not levels or levels[0] <= 0:
                return
            top = levels[0]
            nxt = levels[1] if len(levels) > 1 and levels[1] > 0 else 0
            roots = [v for v in free if self.forest.y[v] == top]
            r = pq_search(
                self.ctx(),
                Criterion.CRIT1,
                roots,
                budget=top - nxt,
                allowed=vset,
                halt_on_augment=True,
                audit=self.audit,
            )
            self.stats.search_calls += 1
            self.stats.dual_adjustments += r.adjustments

    def free_vertex_reduction(self) -> None:
        for _ in range(self.tau):
            self.run_search_one_round()
        self.stats.free_after_reduction = len(self.free_vertices())


def run_liquidationist(
    g: Graph,
    tau: Optional[int] = None,
    *,
    check: bool = False,
    audit_timestamps: bool = False,
) -> tuple[Matching, MatchingCertificate, RunReport]:
    return LiquidationistDriver(
        g, tau, check=check, audit_timestamps=audit_timestamps
    ).run()
