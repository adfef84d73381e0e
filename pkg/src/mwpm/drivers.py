"""Shared machinery of the two scaling drivers.

Both drivers run the same per-scale skeleton over the bit-revealed weights:

1. *Initialization*: reset the matching, demote the current blossoms to the
   inherited ("old") family.
2. *Scaling*: reveal the next weight bit (``w <- 2*(w + bit)``), rescale duals
   (``y <- 2y + 3``, ``z <- 2z``).
3. *Large blossom liquidation*: cascade-liquidate inherited blossoms of at
   least ``tau`` vertices, then reweight (``w(u,v) -= y(u)+y(v)``, ``y <- 0``).
4. A driver-specific small-blossom phase (liquidation or dismantling).
5. A driver-specific free-vertex reduction lowering every remaining free
   vertex's potential by ``tau``.
6. *Perfection*: delete free dummy pendants, then attach a fresh zero-weight
   matched dummy pendant (with the potential that makes its edge tight) to
   each remaining free vertex, making the scale's matching perfect.

After the last scale, *Finalization* deletes all dummies and closes the
remaining free vertices with unbounded searches; an exhausted search proves
the input has no perfect matching.

With invariant checking enabled the driver verifies the relaxed dual
certificate at every scale boundary and records structural audits the test
suite consumes.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Optional

from .blossoms import BlossomForest, BlossomNode
from .eligibility import Criterion, DualContext
from .graph import Graph, Matching, WeightScales, init_scales, matching_weight
from .search import has_eligible_augmenting_path, pq_search, search_one
from .verify import RCS, MatchingCertificate, check_invariants


class Infeasible(Exception):
    """The input graph has no perfect matching."""


@dataclass
class ScaleStats:
    scale: int
    liquidated_large_z: int = 0
    search_calls: int = 0
    dual_adjustments: int = 0
    free_after_reduction: int = 0
    dummies_added: int = 0
    large_z_end: int = 0
    # hybrid-only
    gabow_calls: int = 0
    shells_searched: int = 0
    shell_adjustments: int = 0
    stage1_iterations: int = 0

    def to_dict(self, hybrid: bool) -> dict:
        out = {
            "scale": self.scale,
            "liquidated_large_z": self.liquidated_large_z,
            "search_calls": self.search_calls,
            "dual_adjustments": self.dual_adjustments,
            "free_after_reduction": self.free_after_reduction,
            "dummies_added": self.dummies_added,
        }
        if hybrid:
            out.update(
                {
                    "gabow_calls": self.gabow_calls,
                    "shells_searched": self.shells_searched,
                    "shell_adjustments": self.shell_adjustments,
                    "stage1_iterations": self.stage1_iterations,
                }
            )
        return out


@dataclass
class RunReport:
    algorithm: str
    tau: int
    weight: int
    verified: bool
    scales: list[ScaleStats] = field(default_factory=list)
    time_ms: float = 0.0

    def to_dict(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "tau": self.tau,
            "weight": self.weight,
            "verified": self.verified,
            "time_ms": self.time_ms,
            "scales": [s.to_dict(self.algorithm == "hybrid") for s in self.scales],
        }


class BaseDriver:
    """Per-scale skeleton shared by both drivers."""

    algorithm = "base"

    def __init__(
        self,
        g: Graph,
        tau: Optional[int] = None,
        *,
        check: bool = False,
        audit_timestamps: bool = False,
    ):
        self.g = g.copy_workspace()
        self.scales: WeightScales = init_scales(self.g)
        self.forest = BlossomForest(self.g)
        self.matching = Matching(self.g.num_vertex_slots)
        self.tau = tau if tau is not None else self.default_tau(self.g.n)
        if self.tau < 1:
            raise ValueError("tau must be positive")
        self.check = check
        self.audit = audit_timestamps
        self.violations: list[str] = []
        self.report = RunReport(self.algorithm, self.tau, 0, verified=False)
        self.stats: ScaleStats = ScaleStats(0)

    @staticmethod
    def default_tau(n: int) -> int:
        raise NotImplementedError

    def ctx(self) -> DualContext:
        return DualContext(self.g, self.forest, self.matching, self.scales.w)

    # -- shared per-scale steps -------------------------------------------

    def scale_initialize(self, scale: int) -> None:
        self.stats = ScaleStats(scale)
        self.report.scales.append(self.stats)
        self.matching.clear()
        self.forest.demote_current_to_old()
        for eid in self.g.live_edges():
            self.scales.w[eid] = 2 * (self.scales.w[eid] + self.scales.bit(scale, eid))
        for v in self.g.live_vertices():
            self.forest.y[v] = 2 * self.forest.y[v] + 3
        for b in self.forest.all_old_nodes():
            b.z *= 2

    def liquidate_large_and_reweight(self) -> None:
        total = 0
        work = [b for b in self.forest.old_roots]
        while work:
            b = work.pop()
            if b.n < self.tau:
                continue
            total += b.z
            children = [c for c in b.children if isinstance(c, BlossomNode)]
            self.forest.liquidate(b)
            work.extend(children)
        self.stats.liquidated_large_z = total
        for eid in self.g.live_edges():
            e = self.g.edges[eid]
            self.scales.w[eid] -= self.forest.y[e.u] + self.forest.y[e.v]
        for v in self.g.live_vertices():
            self.forest.y[v] = 0

    def free_vertices(self) -> list[int]:
        return [
            v for v in self.g.live_vertices() if not self.matching.is_matched(v)
        ]

    def _post_augment_check(self, roots: list[int]) -> None:
        if has_eligible_augmenting_path(self.ctx(), Criterion.CRIT2, roots):
            raise AssertionError(
                "eligible augmenting path survived the augmentation stage"
            )

    def run_search_one_round(self) -> None:
        roots = self.free_vertices()
        check = (lambda: self._post_augment_check(roots)) if self.check else None
        r = search_one(
            self.ctx(), roots, audit=self.audit, post_augment_check=check
        )
        self.stats.search_calls += 1
        self.stats.dual_adjustments += r.adjustments

    def free_y_at_perfection(self):
        """Exact y-value every free vertex must carry when dummies are
        attached, or None when only edge tightness can be demanded."""
        return -self.tau

    def perfection(self, scale: int) -> None:
        for vid in list(self.g.dummy_registry):
            if not self.matching.is_matched(vid):
                self.g.remove_dummy(vid)
        added = 0
        strict = self.free_y_at_perfection()
        for v in list(self.g.live_vertices()):
            if self.matching.is_matched(v):
                continue
            if self.check and strict is not None and self.forest.y[v] != strict:
                self.violations.append(
                    f"scale {scale}: free vertex {v} has y={self.forest.y[v]}, "
                    f"expected {strict}"
                )
            vid, eid = self.g.add_dummy(v, scale)
            self.forest.grow()
            self.matching.grow(self.g.num_vertex_slots)
            self.scales.grow(len(self.g.edges))
            # the pendant's potential makes its zero-weight edge tight
            self.forest.y[vid] = -self.forest.y[v]
            self.matching.match(self.g, eid)
            if self.check:
                yz = self.forest.yz_edge(eid)
                if yz != self.scales.w[eid]:
                    self.violations.append(
                        f"scale {scale}: dummy edge {eid} not tight (yz={yz})"
                    )
            added += 1
        self.stats.dummies_added = added
        self.stats.large_z_end = sum(
            b.z for b in self.forest.all_current_nodes() if b.n >= self.tau
        )

    def end_of_scale_certificate(self, scale: int) -> MatchingCertificate:
        return MatchingCertificate.from_state(
            self.g,
            self.forest,
            self.matching,
            self.scales.w,
            f"scale:{scale}",
            RCS,
        )

    def check_scale_end(self, scale: int) -> None:
        if not self.matching.is_perfect(self.g):
            self.violations.append(f"scale {scale}: matching not perfect after perfection")
        cert = self.end_of_scale_certificate(scale)
        for v in check_invariants(cert):
            self.violations.append(f"scale {scale}: {v}")

    def finalization(self) -> None:
        for vid in list(self.g.dummy_registry):
            eid = self.g.dummy_registry[vid][0]
            if self.matching.is_edge_matched(self.g, eid):
                self.matching.unmatch(self.g, eid)
            self.g.remove_dummy(vid)
        while True:
            free = self.free_vertices()
            if not free:
                return
            top = max(self.forest.y[v] for v in free)
            roots = [v for v in free if self.forest.y[v] == top]
            r = pq_search(
                self.ctx(),
                Criterion.CRIT3,
                roots,
                halt_on_augment=True,
                audit=self.audit,
            )
            self.stats.search_calls += 1
            self.stats.dual_adjustments += r.adjustments
            if r.reason != "augmented":
                raise Infeasible("no perfect matching exists")

    # -- driver-specific steps --------------------------------------------

    def small_blossom_phase(self, scale: int) -> None:
        raise NotImplementedError

    def free_vertex_reduction(self) -> None:
        raise NotImplementedError

    # -- top level ---------------------------------------------------------

    def run(self) -> tuple[Matching, MatchingCertificate, RunReport]:
        t0 = time.perf_counter()
        for scale in range(1, self.scales.scale_count + 1):
            self.scale_initialize(scale)
            self.liquidate_large_and_reweight()
            self.small_blossom_phase(scale)
            self.free_vertex_reduction()
            self.perfection(scale)
            if self.check:
                self.check_scale_end(scale)
        self.finalization()
        final_cert = MatchingCertificate.from_state(
            self.g, self.forest, self.matching, self.scales.w, "final", RCS
        )
        self.report.weight = matching_weight(
            self.g, self.matching, [e.weight for e in self.g.edges]
        )
        self.report.verified = self.check and not self.violations
        self.report.time_ms = round((time.perf_counter() - t0) * 1000.0, 3)
        return self.matching, final_cert, self.report


def tau_sqrt(n: int) -> int:
    return max(1, math.isqrt(max(n, 1) - 1) + 1)  # ceil(sqrt(n))


def tau_hybrid(n: int) -> int:
    lo = tau_sqrt(n)
    hi = max(lo, math.ceil(max(n, 1) ** (2 / 3)))
    want = math.ceil(math.sqrt(max(n, 1)) * math.log2(max(n, 2)))
    return min(max(want, lo), hi)
