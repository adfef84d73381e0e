"""The dismantling-based scaling driver.

Instead of liquidating the small inherited blossoms outright, this driver
dissolves them gradually.  Each maximal inherited blossom's tree of nontrivial
sub-blossoms is decomposed into *major paths* (following the child holding
more than half of its parent's vertices); the paths are processed in
postorder.  Dismantling a path alternates searches over its *atomic shells* —
the ring of vertices between two consecutive undissolved blossoms of the path
— where every dual adjustment is paired with a unit translation of the shell's
bounding blossoms, bleeding their z-mass into vertex potentials without
disturbing duals outside the shell.  When a single free vertex remains inside
the undissolved chain, the chain is liquidated and one budgeted search repairs
the dual objective.

The free-vertex reduction then runs a square-root number of single-adjustment
searches followed by budgeted bucket searches until ``tau`` total adjustments
have been spent or the matching is perfect.
"""

from __future__ import annotations

import math
from typing import Optional

from .blossoms import BlossomNode
from .drivers import BaseDriver, MatchingCertificate, RunReport, tau_hybrid, tau_sqrt
from .eligibility import Criterion, InvariantBreach
from .graph import Graph, Matching
from .search import SearchHooks, Searcher, bucket_search, pq_search
from .verify import CS, MIXED, check_invariants


class HybridDriver(BaseDriver):
    algorithm = "hybrid"

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        # (adjustments, allowed budget) per shell search, for auditing
        self.shell_audits: list[tuple[int, int]] = []
        self._iteration = 0
        self._call_counter = 0
        # vertex -> (iteration, call id) of the last shell search touching it
        self._tags: dict[int, tuple[int, int]] = {}

    @staticmethod
    def default_tau(n: int) -> int:
        return tau_hybrid(n)

    def free_y_at_perfection(self):
        # dismantling can leave free vertices above -tau (translations raise
        # the potentials of free vertices inside inner shells), so only the
        # tightness of the pendant edges is checked
        return None

    # -- small blossom dissolution -----------------------------------------

    def small_blossom_phase(self, scale: int) -> None:
        for b in self.forest.all_old_nodes():
            if b.z == 0:
                self.forest.remove_node(b)
        for b in list(self.forest.old_roots):
            self._gabow_dissolve(b, scale)
            self.stats.gabow_calls += 1
        if self.check:
            if self.forest.old_roots:
                self.violations.append(
                    f"scale {scale}: inherited blossoms survived dissolution"
                )
            cert = MatchingCertificate.from_state(
                self.g, self.forest, self.matching, self.scales.w,
                f"scale:{scale}:dissolved", CS,
            )
            for v in check_invariants(cert):
                self.violations.append(f"scale {scale} post-dissolution: {v}")

    def _old_subtree(self, b: BlossomNode) -> list[BlossomNode]:
        out, stack = [], [b]
        while stack:
            node = stack.pop()
            out.append(node)
            stack.extend(c for c in node.children if isinstance(c, BlossomNode))
        return out

    def _gabow_dissolve(self, b: BlossomNode, scale: int) -> None:
        audit_entry = None
        if self.check:
            for node in self._old_subtree(b):
                for eid in node.cycle_edges:
                    if self.g.edge_alive[eid]:
                        s = self.ctx().slack(eid)
                        if s > 6:
                            self.violations.append(
                                f"scale {scale}: blossom edge {eid} slack {s} > 6 "
                                "at dissolution entry"
                            )
            audit_entry = (
                {v: self.forest.y[v] for v in b.vertices},
                {v for v in b.vertices if not self.matching.is_matched(v)},
                self.forest.dual_objective(),
            )
        roots = self._major_path_roots(b, scale)
        self._postorder_dismantle(b, roots)
        if self.check:
            y0, free0, yz0 = audit_entry
            for v, val in y0.items():
                if self.forest.y[v] < val:
                    self.violations.append(
                        f"scale {scale}: y({v}) decreased during dissolution"
                    )
                if (
                    v in free0
                    and not self.matching.is_matched(v)
                    and (self.forest.y[v] - val) % 2 != 0
                ):
                    self.violations.append(
                        f"scale {scale}: free vertex {v} changed y parity"
                    )
            if self.forest.dual_objective() > yz0:
                self.violations.append(
                    f"scale {scale}: dual objective increased during dissolution"
                )

    def _major_child(self, node: BlossomNode) -> Optional[BlossomNode]:
        majors = [
            c
            for c in node.children
            if isinstance(c, BlossomNode) and c.n > node.n / 2
        ]
        assert len(majors) <= 1, "two disjoint children cannot both be major"
        return majors[0] if majors else None

    def _major_path_roots(self, b: BlossomNode, scale: int) -> set[int]:
        """Ids of the major-path roots under (and including) b."""
        roots = {b.id}
        by_rank: dict[int, list[BlossomNode]] = {b.n.bit_length() - 1: [b]}
        for node in self._old_subtree(b):
            major = self._major_child(node)
            for c in node.children:
                if isinstance(c, BlossomNode) and c is not major:
                    roots.add(c.id)
                    by_rank.setdefault(c.n.bit_length() - 1, []).append(c)
        if self.check:
            for group in by_rank.values():
                for i in range(len(group)):
                    for j in range(i + 1, len(group)):
                        if set(group[i].vertices) & set(group[j].vertices):
                            self.violations.append(
                                f"scale {scale}: equal-rank path roots overlap"
                            )
        return roots

    def _postorder_dismantle(self, b: BlossomNode, roots: set[int]) -> None:
        stack: list[tuple[BlossomNode, bool]] = [(b, False)]
        while stack:
            node, expanded = stack.pop()
            if not expanded:
                stack.append((node, True))
                for c in node.children:
                    if isinstance(c, BlossomNode):
                        stack.append((c, False))
            elif node.id in roots:
                self._dismantle_path(node)

    # -- DismantlePath ------------------------------------------------------

    def _path_chain(self, r: BlossomNode) -> list[BlossomNode]:
        """The major path from r, innermost blossom first."""
        path = [r]
        while True:
            nxt = self._major_child(path[-1])
            if nxt is None:
                break
            path.append(nxt)
        return path[::-1]

    def _free_in(self, verts) -> list[int]:
        return [v for v in verts if not self.matching.is_matched(v)]

    def _dismantle_path(self, r: BlossomNode) -> None:
        chain = self._path_chain(r)
        # stage 1: shell searches while at least two free vertices remain
        while chain:
            if len(self._free_in(chain[-1].vertices)) < 2:
                break
            self._iteration += 1
            self.stats.stage1_iterations += 1
            shells = []
            for i, c in enumerate(chain):
                d = chain[i - 1] if i > 0 else None
                shell = set(c.vertices) - (set(d.vertices) if d else set())
                shells.append((len(self._free_in(shell)), len(shell), c, d))
            shells.sort(key=lambda s: (-s[0], s[1]))
            for fcount, _, c, d in shells:
                if fcount < 2 or not chain:
                    continue
                self._shell_search(chain, c, d)
        # stage 2: liquidate the remainder and repair the dual objective
        if chain:
            free = self._free_in(chain[-1].vertices)
            if len(free) != 1:
                raise InvariantBreach(
                    f"{len(free)} free vertices left in an undissolved chain"
                )
            omega = free[0]
            total = sum(node.z for node in chain) // 2
            for node in list(chain):
                self.forest.liquidate(node)
            chain.clear()
            # halt right after the budgeted adjustments: the matching is not
            # supposed to change here, only omega's potential is repaired
            r2 = pq_search(
                self.ctx(),
                Criterion.CRIT1,
                [omega],
                budget=total,
                halt_on_augment=True,
                stop_after_budget=True,
                audit=self.audit,
            )
            self.stats.search_calls += 1
            self.stats.dual_adjustments += r2.adjustments
            if r2.reason == "augmented":
                self.violations.append(
                    "post-liquidation repair search found an augmenting path"
                )

    # -- ShellSearch --------------------------------------------------------

    def _shell_search(self, chain: list[BlossomNode], c: BlossomNode,
                      d: Optional[BlossomNode]) -> None:
        cstar = next((node for node in chain if node.n >= c.n), None)
        if cstar is None:
            return
        p = chain.index(cstar)
        dstar = chain[p - 1] if p > 0 else None
        assert cstar.z > 0 and (dstar is None or dstar.z > 0), \
            "undissolved chain blossoms must carry positive z"
        shell = set(cstar.vertices) - (set(dstar.vertices) if dstar else set())

        self._call_counter += 1
        call_id = self._call_counter
        iteration = self._iteration
        tags = self._tags
        self.stats.shells_searched += 1
        if any(tags.get(v, (0, 0))[0] == iteration for v in shell):
            return  # the shell already absorbed this iteration's searched vertices
        for v in shell:
            tags[v] = (iteration, call_id)

        state = {"cstar": cstar, "dstar": dstar, "halt": None, "limit_n": cstar.n}
        searcher = Searcher(
            self.ctx(),
            Criterion.CRIT1,
            self._free_in(shell),
            budget=None,
            halt_on_augment=True,
            allowed=shell,
            audit=self.audit,
        )

        def absorb(added: set[int]) -> None:
            for v in added:
                t = tags.get(v)
                if t is not None and t[0] == iteration and t[1] != call_id:
                    state["halt"] = "absorbed"
                tags[v] = (iteration, call_id)
                shell.add(v)
                if not self.matching.is_matched(v):
                    searcher.root_vertices.append(v)

        def extra_bound() -> Optional[int]:
            cs, ds = state["cstar"], state["dstar"]
            if cs is None:
                return 0
            cap = cs.z // 2
            if ds is not None:
                cap = min(cap, ds.z // 2)
            return cap

        def after_adjust(delta: int) -> None:
            cs, ds = state["cstar"], state["dstar"]
            self.forest.translate(cs, delta)
            if ds is not None:
                self.forest.translate(ds, delta)
            if self.audit:
                tl = searcher.timeline
                for node in (cs, ds) if ds is not None else (cs,):
                    for v in node.vertices:
                        if v in tl.v_drift:
                            tl.v_drift[v] += delta
            # spent bounding blossoms must dissolve even when a halt is
            # already pending, or they would linger in the chain at z=0
            while True:
                cs, ds = state["cstar"], state["dstar"]
                if ds is not None and ds.z == 0:
                    idx = chain.index(ds)
                    new_ds = chain[idx - 1] if idx > 0 else None
                    self.forest.remove_node(ds)
                    chain.remove(ds)
                    added = set(ds.vertices) - (
                        set(new_ds.vertices) if new_ds else set()
                    )
                    state["dstar"] = new_ds
                    absorb(added)
                    continue
                if cs.z == 0:
                    idx = chain.index(cs)
                    new_cs = chain[idx + 1] if idx + 1 < len(chain) else None
                    self.forest.remove_node(cs)
                    chain.remove(cs)
                    if new_cs is None:
                        state["cstar"] = None
                        state["halt"] = "outermost-dissolved"
                        break
                    added = set(new_cs.vertices) - set(cs.vertices)
                    state["cstar"] = new_cs
                    state["limit_n"] = new_cs.n
                    state["dstar"] = chain[chain.index(new_cs) - 1] if chain.index(new_cs) > 0 else None
                    absorb(added)
                    continue
                break

        searcher.hooks = SearchHooks(
            extra_delta_bound=extra_bound,
            after_adjust=after_adjust,
            phase_check=lambda: state["halt"],
        )
        r = searcher.run()
        self.stats.search_calls += 1
        self.stats.dual_adjustments += r.adjustments
        self.stats.shell_adjustments += r.adjustments
        limit = 3 * state["limit_n"]
        self.shell_audits.append((r.adjustments, limit))
        if self.check:
            if r.adjustments > limit:
                self.violations.append(
                    f"shell search spent {r.adjustments} adjustments (limit {limit})"
                )
            cert = MatchingCertificate.from_state(
                self.g, self.forest, self.matching, self.scales.w, "shell", MIXED
            )
            for v in check_invariants(cert):
                self.violations.append(f"post-shell: {v}")

    # -- free vertex reduction ----------------------------------------------

    def free_vertex_reduction(self) -> None:
        spent = 0
        for _ in range(tau_sqrt(self.g.n)):
            before = self.stats.dual_adjustments
            self.run_search_one_round()
            spent += self.stats.dual_adjustments - before
        while spent < self.tau and not self.matching.is_perfect(self.g):
            r = bucket_search(
                self.ctx(),
                Criterion.CRIT3,
                self.free_vertices(),
                self.tau - spent,
                halt_on_augment=True,
                audit=self.audit,
            )
            self.stats.search_calls += 1
            self.stats.dual_adjustments += r.adjustments
            spent += r.adjustments
            if r.reason != "augmented":
                break
        self.stats.free_after_reduction = len(self.free_vertices())


def run_hybrid(
    g: Graph,
    tau: Optional[int] = None,
    *,
    check: bool = False,
    audit_timestamps: bool = False,
) -> tuple[Matching, MatchingCertificate, RunReport]:
    return HybridDriver(g, tau, check=check, audit_timestamps=audit_timestamps).run()
