"""The dual-adjusting augmenting search engine.

A single :class:`Searcher` drives all search flavours.  It proceeds in
*phases*: each phase rebuilds the alternating forest over the contracted
eligible graph (augmenting and shrinking as tight structure is discovered),
then selects the next event time as the minimum over

* **grow** events: an unmatched edge from an outer node to an unlabeled node
  becomes eligible (its slack falls one unit per adjustment tick),
* **blossom/augment** events: an unmatched edge between two outer nodes
  becomes eligible (slack falls two units per tick; odd distances never fire),
* **blocked-inner** events: the matched base edge of an inner node becomes
  eligible (its slack rises one unit per tick),
* **dissolve** events: an inner nontrivial root blossom's z reaches zero,

applies one batched dual adjustment of that many ticks (outer vertices
``y -= delta``, inner ``y += delta``, outer root blossoms ``z += 2*delta``,
inner roots ``z -= 2*delta``), dissolves inner roots whose z reached zero, and
repeats.  Budgeted searches cap every adjustment by the remaining budget and
halt once it is exhausted, after processing any events landing exactly on the
boundary; with no event in range but budget remaining, the leftover ticks are
still applied so the duals of the active forest keep moving.

Event selection runs through a real priority queue — a bucket array when the
remaining budget is small enough (out-of-range events are discarded, which is
exactly the monotone-queue semantics), a binary heap otherwise.

Vertex labels and root-blossom stints are mirrored into a
:class:`DualTimeline`, which can reconstruct any dual value from its value at
search start plus the recorded label history; an optional audit compares the
reconstruction against the eagerly maintained arrays after every adjustment
and dissolution.

Contracted nodes are plain vertex ids (trivial) or :class:`BlossomNode`
objects; they are always compared and keyed by equality, never identity,
because equal vertex ids may be distinct int objects.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, Iterable, Optional

from .blossoms import BlossomNode
from .eligibility import Criterion, DualContext, InvariantBreach
from .structures import BucketQueue, OrderedQueue, make_event_queue

logger = logging.getLogger("mwpm.search")

NONE, OUTER, INNER = 0, 1, 2

# y rates per tick by vertex label; z rates per tick by root-blossom label
_Y_RATE = {NONE: 0, OUTER: -1, INNER: +1}
_Z_RATE = {NONE: 0, OUTER: +2, INNER: -2}


class DualTimeline:
    """Label-stint history sufficient to reconstruct y and z at any time.

    For each tracked vertex we store its y at tracking time, the accumulated
    drift of all closed stints, the current label, and the time the label was
    entered; ``reconstruct_y`` is then start + drift + rate * (t - entered),
    with rate -1 while outer and +1 while inner.  Root blossoms get the same
    treatment for z with rates +2 (outer root) and -2 (inner root).
    """

    def __init__(self) -> None:
        self.v_start: dict[int, int] = {}
        self.v_drift: dict[int, int] = {}
        self.v_state: dict[int, int] = {}
        self.v_entered: dict[int, int] = {}
        self.n_start: dict[int, int] = {}
        self.n_drift: dict[int, int] = {}
        self.n_state: dict[int, int] = {}
        self.n_entered: dict[int, int] = {}

    # -- vertices ---------------------------------------------------------

    def track_vertex(self, v: int, y0: int, t: int) -> None:
        self.v_start[v] = y0
        self.v_drift[v] = 0
        self.v_state[v] = NONE
        self.v_entered[v] = t

    def set_vertex_state(self, v: int, state: int, t: int) -> None:
        old = self.v_state[v]
        if old == state:
            return
        self.v_drift[v] += _Y_RATE[old] * (t - self.v_entered[v])
        self.v_state[v] = state
        self.v_entered[v] = t

    def reconstruct_y(self, v: int, t: int) -> int:
        return (
            self.v_start[v]
            + self.v_drift[v]
            + _Y_RATE[self.v_state[v]] * (t - self.v_entered[v])
        )

    # -- root blossoms ----------------------------------------------------

    def track_node(self, node_id: int, z0: int, t: int) -> None:
        self.n_start[node_id] = z0
        self.n_drift[node_id] = 0
        self.n_state[node_id] = NONE
        self.n_entered[node_id] = t

    def set_node_state(self, node_id: int, state: int, t: int) -> None:
        old = self.n_state[node_id]
        if old == state:
            return
        self.n_drift[node_id] += _Z_RATE[old] * (t - self.n_entered[node_id])
        self.n_state[node_id] = state
        self.n_entered[node_id] = t

    def reconstruct_z(self, node_id: int, t: int) -> int:
        return (
            self.n_start[node_id]
            + self.n_drift[node_id]
            + _Z_RATE[self.n_state[node_id]] * (t - self.n_entered[node_id])
        )

    def drop_node(self, node_id: int) -> None:
        self.n_start.pop(node_id, None)
        self.n_drift.pop(node_id, None)
        self.n_state.pop(node_id, None)
        self.n_entered.pop(node_id, None)


@dataclass
class SearchResult:
    reason: str  # "augmented" | "no_augmenting_path" | "budget_exhausted"
    augments: int = 0
    adjustments: int = 0
    shrinks: int = 0
    dissolutions: int = 0


@dataclass
class SearchHooks:
    """Extension points used by the shell searches of the hybrid driver."""

    # extra upper bound folded into every delta computation
    extra_delta_bound: Optional[Callable[[], Optional[int]]] = None
    # called after each nonzero batched adjustment with the tick count
    after_adjust: Optional[Callable[[int], None]] = None
    # called once per stable phase before event selection; returning a string
    # halts the search with that reason
    phase_check: Optional[Callable[[], Optional[str]]] = None


class Searcher:
    """One augmenting search over the contracted eligible graph."""

    def __init__(
        self,
        ctx: DualContext,
        criterion: Criterion,
        roots: Iterable[int],
        *,
        budget: Optional[int] = None,
        halt_on_augment: bool = False,
        stop_after_budget: bool = False,
        allowed: Optional[set[int]] = None,
        use_bucket_queue: Optional[bool] = None,
        allow_shrink: bool = True,
        hooks: Optional[SearchHooks] = None,
        audit: bool = False,
    ):
        self.ctx = ctx
        self.g = ctx.g
        self.forest = ctx.forest
        self.matching = ctx.matching
        self.criterion = criterion
        self.root_vertices = list(roots)
        self.budget = budget
        self.halt_on_augment = halt_on_augment
        self.stop_after_budget = stop_after_budget
        self.allowed = allowed
        self.use_bucket_queue = use_bucket_queue
        self.allow_shrink = allow_shrink
        self.hooks = hooks or SearchHooks()
        self.audit = audit

        self.t_now = 0
        self.result = SearchResult(reason="no_augmenting_path")

        # forest labels over contracted nodes, keyed by equality
        self.label: dict = {}
        self.parent_edge: dict = {}

        self.timeline = DualTimeline()
        for v in self._scope_vertices():
            self.timeline.track_vertex(v, self.forest.y[v], self.t_now)
        for node in self._scope_nodes():
            self.timeline.track_node(node.id, node.z, self.t_now)

    # -- scope helpers ----------------------------------------------------

    def _scope_vertices(self) -> list[int]:
        if self.allowed is not None:
            return [v for v in self.g.live_vertices() if v in self.allowed]
        return list(self.g.live_vertices())

    def _scope_nodes(self) -> list[BlossomNode]:
        out = []
        for b in self.forest.current_roots:
            if self.allowed is None or all(v in self.allowed for v in b.vertices):
                out.append(b)
        return out

    def _vertex_ok(self, v: int) -> bool:
        return self.allowed is None or v in self.allowed

    # -- labeling / forest construction ------------------------------------

    def _find_root(self, node):
        while self.parent_edge[node] is not None:
            node = self.parent_edge[node][1]
        return node

    def _relabel(self) -> Optional[list[int]]:
        """Rebuild the alternating forest; returns an augmenting path if found.

        Shrinks blossoms as tight same-tree connections appear (when enabled).
        On finding an augmenting path the labeling is left stale; the caller
        augments and calls ``_relabel`` again.
        """
        self.label.clear()
        self.parent_edge.clear()
        queue: list = []
        for v in self.root_vertices:
            if not self.g.vertex_alive[v] or self.matching.is_matched(v):
                continue
            node = self.forest.node_of(v)
            if node not in self.label:
                self.label[node] = OUTER
                self.parent_edge[node] = None
                queue.append(node)
        while queue:
            node = queue.pop()
            if self.label.get(node, NONE) != OUTER:
                continue  # label changed by an intervening shrink
            path = self._scan_outer(node, queue)
            if path is not None:
                return path
        return None

    def _scan_outer(self, node, queue: list) -> Optional[list[int]]:
        for v in self.forest.node_vertices(node):
            for eid in self.g.adj[v]:
                if not self.g.edge_alive[eid]:
                    continue
                e = self.g.edges[eid]
                u = e.other(v)
                if not self._vertex_ok(u):
                    continue
                if self.matching.is_edge_matched(self.g, eid):
                    continue
                other = self.forest.node_of(u)
                if other == node:
                    continue
                if not self.ctx.is_eligible(eid, self.criterion):
                    continue
                lab = self.label.get(other, NONE)
                if lab == INNER:
                    continue  # slack of an outer-inner edge never moves
                if lab == OUTER:
                    if self._find_root(other) == self._find_root(node):
                        if self.allow_shrink:
                            merged = self._shrink(node, other, eid)
                            queue.append(merged)
                            return None  # node is gone; rescan via the queue
                        continue
                    return self._augment_path(node, eid, other)
                # other is unlabeled
                base = self.forest.node_base(other)
                if not self.matching.is_matched(base):
                    # unlabeled free node: augmenting path found
                    return self._chain_to_root(node)[::-1] + [eid]
                self.label[other] = INNER
                self.parent_edge[other] = (eid, node)
                meid = self.matching.mate_edge[base]
                mate_node = self.forest.node_of(self.g.edges[meid].other(base))
                if self.ctx.is_eligible(meid, self.criterion):
                    if mate_node not in self.label:
                        self.label[mate_node] = OUTER
                        self.parent_edge[mate_node] = (meid, other)
                        queue.append(mate_node)
                # otherwise the inner node is blocked; its matched base edge
                # becomes an event
        return None

    def _chain_to_root(self, node) -> list[int]:
        """Edge ids from ``node`` up to its tree root (nearest edge first)."""
        out = []
        while self.parent_edge[node] is not None:
            eid, parent = self.parent_edge[node]
            out.append(eid)
            node = parent
        return out

    def _augment_path(self, a, eid: int, b) -> list[int]:
        return self._chain_to_root(a)[::-1] + [eid] + self._chain_to_root(b)

    def _shrink(self, a, b, eid: int) -> BlossomNode:
        """Contract the tight odd cycle closed by ``eid`` between outer nodes
        ``a`` and ``b`` of the same tree."""
        ancestors = {a}
        x = a
        while self.parent_edge[x] is not None:
            x = self.parent_edge[x][1]
            ancestors.add(x)
        lca = b
        while lca not in ancestors:
            lca = self.parent_edge[lca][1]
        path_a, path_b = [], []
        x = a
        while x != lca:
            path_a.append(x)
            x = self.parent_edge[x][1]
        x = b
        while x != lca:
            path_b.append(x)
            x = self.parent_edge[x][1]
        cycle_nodes = [lca] + path_a[::-1] + path_b
        cycle_edges = (
            [self.parent_edge[x][0] for x in path_a[::-1]]
            + [eid]
            + [self.parent_edge[x][0] for x in path_b]
        )
        lca_parent = self.parent_edge[lca]
        cycle_set = set(cycle_nodes)
        for x in cycle_nodes:
            del self.label[x]
            del self.parent_edge[x]
        merged = self.forest.shrink_blossom(cycle_nodes, cycle_edges)
        self.label[merged] = OUTER
        self.parent_edge[merged] = lca_parent
        # reroute children of absorbed nodes to the contraction
        for x, p in list(self.parent_edge.items()):
            if p is not None and p[1] in cycle_set:
                self.parent_edge[x] = (p[0], merged)
        self.timeline.track_node(merged.id, 0, self.t_now)
        self.result.shrinks += 1
        logger.debug("t=%d BLOSSOM size=%d base=%d", self.t_now, merged.n, merged.base)
        return merged

    # -- events ------------------------------------------------------------

    def _blocked_inner_dt(self, eid: int, rate: int) -> Optional[int]:
        """Ticks until a blocked matched edge (slack rising at ``rate`` per
        tick) becomes eligible, or None if it never will."""
        s = self.ctx.slack(eid)
        if s >= 0:
            return None  # nonnegative slack only rises further from eligibility
        if self.criterion is Criterion.CRIT3:
            if s < -2:
                raise InvariantBreach(f"matched edge slack {s} < -2")
            need = s + 2
        else:
            need = -s
        return need // rate if need % rate == 0 else None

    def _collect_events(self) -> Optional[int]:
        """Minimum ticks until the next event, or None if none can fire."""
        remaining = (
            None if self.budget is None else self.budget - self.result.adjustments
        )
        if self.use_bucket_queue is True:
            assert remaining is not None, "bucket queue needs a budget"
            q = BucketQueue(remaining)
        elif self.use_bucket_queue is False:
            q = OrderedQueue(remaining)
        else:
            q = make_event_queue(remaining, len(self.g.edges))
        for eid in self.g.live_edges():
            e = self.g.edges[eid]
            if not (self._vertex_ok(e.u) and self._vertex_ok(e.v)):
                continue
            nu = self.forest.node_of(e.u)
            nv = self.forest.node_of(e.v)
            if nu == nv:
                continue
            lu, lv = self.label.get(nu, NONE), self.label.get(nv, NONE)
            if self.matching.is_edge_matched(self.g, eid):
                # blocked inner: one or both endpoints inner, none outer
                rate = (lu == INNER) + (lv == INNER)
                if rate and OUTER not in (lu, lv):
                    dt = self._blocked_inner_dt(eid, rate)
                    if dt is not None:
                        q.insert(dt, eid)
                continue
            if lu == OUTER and lv == OUTER:
                if not self.allow_shrink and self._find_root(nu) == self._find_root(nv):
                    continue
                st = self.ctx.slack_star(eid, self.criterion)
                if st >= 0 and st % 2 == 0:
                    q.insert(st // 2, eid)
            elif OUTER in (lu, lv) and INNER not in (lu, lv):
                st = self.ctx.slack_star(eid, self.criterion)
                if st >= 0:
                    q.insert(st, eid)
        for node in self.forest.current_roots:
            if self.label.get(node, NONE) == INNER:
                q.insert(node.z // 2, node)
        popped = q.pop_min()
        dt = None if popped is None else popped[0]
        if self.hooks.extra_delta_bound is not None:
            cap = self.hooks.extra_delta_bound()
            if cap is not None and (dt is None or cap < dt):
                return cap
        return dt

    # -- adjustment / dissolution ------------------------------------------

    def _apply_adjustment(self, delta: int) -> None:
        if delta:
            logger.debug("t=%d GROW delta=%d", self.t_now, delta)
            for node, lab in self.label.items():
                if lab == NONE:
                    continue
                sign = -1 if lab == OUTER else +1
                for v in self.forest.node_vertices(node):
                    self.forest.y[v] += sign * delta
                if isinstance(node, BlossomNode):
                    node.z += -sign * 2 * delta
        self.t_now += delta
        self.result.adjustments += delta
        if delta:
            if self.hooks.after_adjust is not None:
                self.hooks.after_adjust(delta)
            if self.audit:
                self.audit_reconstruction()

    def _sync_timeline(self) -> None:
        for v in self.timeline.v_state:
            if self.g.vertex_alive[v]:
                lab = self.label.get(self.forest.node_of(v), NONE)
            else:
                lab = NONE
            self.timeline.set_vertex_state(v, lab, self.t_now)
        for node in self.forest.current_roots:
            if node.id in self.timeline.n_state:
                self.timeline.set_node_state(
                    node.id, self.label.get(node, NONE), self.t_now
                )

    def _close_timeline(self) -> None:
        for v in self.timeline.v_state:
            self.timeline.set_vertex_state(v, NONE, self.t_now)
        for nid in list(self.timeline.n_state):
            self.timeline.set_node_state(nid, NONE, self.t_now)

    def audit_reconstruction(self) -> None:
        """Check the stint records reproduce the eager dual arrays."""
        for v in self.timeline.v_state:
            got = self.timeline.reconstruct_y(v, self.t_now)
            if got != self.forest.y[v]:
                raise AssertionError(
                    f"y reconstruction mismatch at vertex {v}: "
                    f"{got} != {self.forest.y[v]} (t={self.t_now})"
                )
        for node in self.forest.current_roots:
            if node.id in self.timeline.n_state:
                got = self.timeline.reconstruct_z(node.id, self.t_now)
                if got != node.z:
                    raise AssertionError(
                        f"z reconstruction mismatch at blossom {node.id}: "
                        f"{got} != {node.z} (t={self.t_now})"
                    )

    def _dissolve_spent_inner_roots(self) -> None:
        for node in list(self.forest.current_roots):
            if node.z == 0 and self.label.get(node, NONE) == INNER:
                self._dissolve(node)

    def _dissolve(self, node: BlossomNode) -> None:
        logger.debug("t=%d DISSOLVE size=%d base=%d", self.t_now, node.n, node.base)
        self.label.pop(node, None)
        self.parent_edge.pop(node, None)
        self.timeline.set_node_state(node.id, NONE, self.t_now)
        self.timeline.drop_node(node.id)
        self.forest.dissolve_root(node)
        # children promoted to roots join the timeline so later stints (or a
        # cascading dissolution) find them tracked
        for child in node.children:
            if isinstance(child, BlossomNode) and child.id not in self.timeline.n_state:
                self.timeline.track_node(child.id, child.z, self.t_now)
        self.result.dissolutions += 1
        if self.audit:
            self.audit_reconstruction()

    def _cleanup_spurious(self) -> None:
        """Dissolve zero-z current root blossoms left behind at halt."""
        changed = True
        while changed:
            changed = False
            for node in list(self.forest.current_roots):
                if node.z == 0 and (
                    self.allowed is None
                    or all(v in self.allowed for v in node.vertices)
                ):
                    self._dissolve(node)
                    changed = True

    # -- driver ------------------------------------------------------------

    def _halt(self, reason: str) -> SearchResult:
        self.result.reason = reason
        self._close_timeline()
        self._cleanup_spurious()
        return self.result

    def run(self) -> SearchResult:
        while True:
            path = self._relabel()
            while path is not None:
                logger.debug("t=%d AUGMENT len=%d", self.t_now, len(path))
                self.forest.augment_through(self.matching, path)
                self.result.augments += 1
                if self.halt_on_augment:
                    return self._halt("augmented")
                path = self._relabel()
            self._sync_timeline()
            if self.hooks.phase_check is not None:
                reason = self.hooks.phase_check()
                if reason is not None:
                    return self._halt(reason)
            dt = self._collect_events()
            if self.budget is None:
                if dt is None:
                    return self._halt("no_augmenting_path")
                delta = dt
            else:
                remaining = self.budget - self.result.adjustments
                if dt is None or dt > remaining:
                    self._apply_adjustment(remaining)
                    return self._halt("budget_exhausted")
                delta = dt
            self._apply_adjustment(delta)
            self._dissolve_spent_inner_roots()
            if (
                self.stop_after_budget
                and self.budget is not None
                and self.result.adjustments >= self.budget
            ):
                return self._halt("budget_exhausted")


# -- search flavours --------------------------------------------------------


def pq_search(
    ctx: DualContext,
    criterion: Criterion,
    roots: Iterable[int],
    *,
    budget: Optional[int] = None,
    allowed: Optional[set[int]] = None,
    halt_on_augment: bool = True,
    stop_after_budget: bool = False,
    hooks: Optional[SearchHooks] = None,
    audit: bool = False,
) -> SearchResult:
    """Ordered-queue search: halts on the first augmentation (by default),
    on budget exhaustion, or with ``no_augmenting_path`` when nothing can
    fire.  A bucket array is substituted automatically when the budget is
    small relative to the edge count."""
    return Searcher(
        ctx,
        criterion,
        roots,
        budget=budget,
        halt_on_augment=halt_on_augment,
        stop_after_budget=stop_after_budget,
        allowed=allowed,
        hooks=hooks,
        audit=audit,
    ).run()


def bucket_search(
    ctx: DualContext,
    criterion: Criterion,
    roots: Iterable[int],
    budget: int,
    *,
    allowed: Optional[set[int]] = None,
    halt_on_augment: bool = True,
    hooks: Optional[SearchHooks] = None,
    audit: bool = False,
) -> SearchResult:
    """Bucket-queue search with a hard adjustment budget."""
    return Searcher(
        ctx,
        criterion,
        roots,
        budget=budget,
        halt_on_augment=halt_on_augment,
        allowed=allowed,
        use_bucket_queue=True,
        hooks=hooks,
        audit=audit,
    ).run()


def find_maximal_augmenting_set(
    ctx: DualContext,
    criterion: Criterion,
    roots: Iterable[int],
    *,
    allowed: Optional[set[int]] = None,
    audit: bool = False,
) -> int:
    """Repeatedly augment along eligible paths, without shrinking or dual
    adjustment, until none remain.  Returns the number of augmentations."""
    total = 0
    while True:
        r = Searcher(
            ctx,
            criterion,
            roots,
            budget=0,
            halt_on_augment=True,
            allowed=allowed,
            allow_shrink=False,
            audit=audit,
        ).run()
        if r.reason != "augmented":
            return total
        total += r.augments


def search_one(
    ctx: DualContext,
    roots: Iterable[int],
    *,
    allowed: Optional[set[int]] = None,
    audit: bool = False,
    post_augment_check: Optional[Callable[[], None]] = None,
) -> SearchResult:
    """Single-adjustment search with the blossom-internal criterion.

    Exhausts augmenting paths without shrinking, then shrinks a maximal
    blossom set, makes exactly one unit dual adjustment, and dissolves spent
    inner blossoms.  ``post_augment_check`` runs between the augmentation and
    shrinking stages.
    """
    result = SearchResult(reason="budget_exhausted")
    result.augments = find_maximal_augmenting_set(
        ctx, Criterion.CRIT2, roots, allowed=allowed, audit=audit
    )
    if post_augment_check is not None:
        post_augment_check()
    r = Searcher(
        ctx,
        Criterion.CRIT2,
        roots,
        budget=1,
        halt_on_augment=False,
        stop_after_budget=True,
        allowed=allowed,
        audit=audit,
    ).run()
    result.augments += r.augments
    result.adjustments = r.adjustments
    result.shrinks = r.shrinks
    result.dissolutions = r.dissolutions
    return result


def has_eligible_augmenting_path(
    ctx: DualContext,
    criterion: Criterion,
    roots: Iterable[int],
    allowed: Optional[set[int]] = None,
) -> bool:
    """Independent check for an augmenting path of eligible edges in the
    contracted graph, without shrinking.

    A plain alternating breadth-first scan, deliberately separate from
    :class:`Searcher` so the two can cross-validate.
    """
    forest, g, matching = ctx.forest, ctx.g, ctx.matching

    def ok(v: int) -> bool:
        return allowed is None or v in allowed

    outer: set = set()
    inner: set = set()
    frontier = []
    for v in roots:
        if not g.vertex_alive[v] or matching.is_matched(v) or not ok(v):
            continue
        node = forest.node_of(v)
        if node not in outer:
            outer.add(node)
            frontier.append(node)
    while frontier:
        node = frontier.pop()
        for v in forest.node_vertices(node):
            for eid in g.adj[v]:
                if not g.edge_alive[eid]:
                    continue
                e = g.edges[eid]
                u = e.other(v)
                if not ok(u) or matching.is_edge_matched(g, eid):
                    continue
                other = forest.node_of(u)
                if other == node or other in outer or other in inner:
                    continue
                if not ctx.is_eligible(eid, criterion):
                    continue
                base = forest.node_base(other)
                if not matching.is_matched(base):
                    return True
                inner.add(other)
                meid = matching.mate_edge[base]
                if ctx.is_eligible(meid, criterion):
                    mate_node = forest.node_of(g.edges[meid].other(base))
                    if mate_node not in outer:
                        outer.add(mate_node)
                        frontier.append(mate_node)
    return False
