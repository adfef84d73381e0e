"""Ground-truth oracle and dual-certificate verifiers.

Three verification modes mirror the three invariant regimes of the solver:

* ``CS`` (complementary slackness): exact domination ``yz(e) >= w(e)`` on all
  edges, exact tightness ``yz(e) = w(e)`` on matched and blossom-cycle edges,
  full internal matchings in blossoms, positive z on root blossoms.
* ``RCS`` (relaxed complementary slackness): near domination
  ``yz(e) >= w(e) - 2`` and near tightness ``yz(e) <= w(e)`` instead.
* ``MIXED``: the CS clauses for the current blossom set, plus the structural
  clauses tying it to the set of undissolved blossoms inherited from the
  previous scale: joint laminarity, no inherited blossom inside a current one,
  and no matched edge crossing an inherited blossom boundary.

Certificates are self-contained snapshots (duals, blossom structure, matching,
weights), so a serialized-and-reparsed certificate yields the identical
report.  Violations are collected exhaustively, never raised.
"""

from __future__ import annotations

import json
from typing import Optional

from .blossoms import BlossomForest
from .graph import Graph, Matching, matching_weight

CS, RCS, MIXED = "CS", "RCS", "MIXED"

ORACLE_MAX_VERTICES = 16


def brute_force_mwpm(g: Graph, w: list[int]) -> Optional[tuple[int, Matching]]:
    """Exhaustive maximum-weight perfect matching; None when infeasible.

    Recursion matches the lowest-indexed unmatched vertex against each
    neighbor.  Refuses graphs with more than 16 live vertices.
    """
    verts = list(g.live_vertices())
    if len(verts) > ORACLE_MAX_VERTICES:
        raise ValueError(f"oracle refuses n > {ORACLE_MAX_VERTICES}")
    if len(verts) % 2 == 1:
        return None
    index = {v: i for i, v in enumerate(verts)}
    # adjacency as (neighbor position, weight, edge id) per position
    nbrs: list[list[tuple[int, int, int]]] = [[] for _ in verts]
    for eid in g.live_edges():
        e = g.edges[eid]
        iu, iv = index[e.u], index[e.v]
        nbrs[iu].append((iv, w[eid], eid))
        nbrs[iv].append((iu, w[eid], eid))
    full = (1 << len(verts)) - 1
    memo: dict[int, Optional[tuple[int, tuple[int, ...]]]] = {full: (0, ())}

    def rec(used: int) -> Optional[tuple[int, tuple[int, ...]]]:
        if used in memo:
            return memo[used]
        lo = (~used & -~used).bit_length() - 1  # lowest unmatched position
        best: Optional[tuple[int, tuple[int, ...]]] = None
        for j, wt, eid in nbrs[lo]:
            if used >> j & 1:
                continue
            sub = rec(used | 1 << lo | 1 << j)
            if sub is not None:
                cand = (sub[0] + wt, sub[1] + (eid,))
                if best is None or cand[0] > best[0]:
                    best = cand
        memo[used] = best
        return best

    res = rec(0)
    if res is None:
        return None
    m = Matching(g.num_vertex_slots)
    for eid in res[1]:
        m.match(g, eid)
    return res[0], m


class MatchingCertificate:
    """Self-contained (M, blossoms, y, z, w) snapshot for the verifiers.

    ``blossoms`` is a list of dicts with keys ``id``, ``vertices``, ``base``,
    ``z``, ``parent`` (id or None), ``old`` (bool), ``cycle_edges`` (edge ids,
    possibly empty for inherited blossoms whose cycles are stale).
    """

    def __init__(
        self,
        g: Graph,
        y: list[int],
        blossoms: list[dict],
        matched_edges: list[int],
        w: list[int],
        weight_tag: str,
        mode: str,
    ):
        self.g = g
        self.y = y
        self.blossoms = blossoms
        self.matched_edges = matched_edges
        self.w = w
        self.weight_tag = weight_tag
        self.mode = mode

    @classmethod
    def from_state(
        cls,
        g: Graph,
        forest: BlossomForest,
        matching: Matching,
        w: list[int],
        weight_tag: str,
        mode: str,
    ) -> "MatchingCertificate":
        blossoms = []
        for b in forest.all_current_nodes():
            blossoms.append(
                {
                    "id": b.id,
                    "vertices": sorted(b.vertices),
                    "base": b.base,
                    "z": b.z,
                    "parent": None if b.parent is None else b.parent.id,
                    "old": False,
                    "cycle_edges": list(b.cycle_edges),
                }
            )
        for b in forest.all_old_nodes():
            blossoms.append(
                {
                    "id": b.id,
                    "vertices": sorted(b.vertices),
                    "base": b.base,
                    "z": b.z,
                    "parent": None if b.parent is None else b.parent.id,
                    "old": True,
                    "cycle_edges": [],
                }
            )
        return cls(
            g,
            list(forest.y),
            blossoms,
            sorted(matching.edge_ids(g)),
            list(w),
            weight_tag,
            mode,
        )

    # -- serialization -----------------------------------------------------

    def to_json(self) -> str:
        return json.dumps(
            {
                "y": self.y,
                "blossoms": self.blossoms,
                "matching": self.matched_edges,
                "weights": self.w,
                "weight_view": self.weight_tag,
                "mode": self.mode,
            },
            indent=2,
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str, g: Graph) -> "MatchingCertificate":
        data = json.loads(text)
        return cls(
            g,
            list(data["y"]),
            list(data["blossoms"]),
            list(data["matching"]),
            list(data["weights"]),
            data["weight_view"],
            data["mode"],
        )

    # -- derived views -----------------------------------------------------

    def matching(self) -> Matching:
        m = Matching(self.g.num_vertex_slots)
        for eid in self.matched_edges:
            m.match(self.g, eid)
        return m

    def yz(self, eid: int) -> int:
        e = self.g.edges[eid]
        total = self.y[e.u] + self.y[e.v]
        for b in self.blossoms:
            if b["z"] and e.u in b["_vset"] and e.v in b["_vset"]:
                total += b["z"]
        return total

    def _prepare(self) -> None:
        for b in self.blossoms:
            b["_vset"] = set(b["vertices"])

    def _cleanup(self) -> None:
        for b in self.blossoms:
            b.pop("_vset", None)


def _is_root(cert: MatchingCertificate, b: dict) -> bool:
    return b["parent"] is None


def check_invariants(cert: MatchingCertificate) -> list[str]:
    """All violated clauses of the certificate's invariant mode."""
    g = cert.g
    mode = cert.mode
    violations: list[str] = []
    cert._prepare()
    try:
        matched = set(cert.matched_edges)
        mate_of: dict[int, int] = {}
        for eid in matched:
            e = g.edges[eid]
            for v in (e.u, e.v):
                if v in mate_of:
                    violations.append(f"vertex {v} covered by two matched edges")
                mate_of[v] = eid

        current = [b for b in cert.blossoms if not b["old"]]
        old = [b for b in cert.blossoms if b["old"]]

        # granularity
        for b in cert.blossoms:
            if b["z"] < 0 or b["z"] % 2 != 0:
                violations.append(f"blossom {b['id']}: z={b['z']} not a nonnegative even integer")
            if len(b["vertices"]) % 2 == 0 or len(b["vertices"]) < 3:
                violations.append(f"blossom {b['id']}: size {len(b['vertices'])} not odd >= 3")

        # active blossoms
        for b in current:
            if _is_root(cert, b) and b["z"] == 0:
                violations.append(f"blossom {b['id']}: root blossom with z=0")
            needs_full = mode in (CS, RCS) or b["z"] > 0
            if needs_full:
                inside = sum(
                    1 for eid in matched
                    if g.edges[eid].u in b["_vset"] and g.edges[eid].v in b["_vset"]
                )
                if inside != len(b["vertices"]) // 2:
                    violations.append(
                        f"blossom {b['id']}: {inside} internal matched edges, "
                        f"expected {len(b['vertices']) // 2}"
                    )

        if mode == MIXED:
            sets = [(b["id"], b["_vset"]) for b in cert.blossoms]
            for i in range(len(sets)):
                for j in range(i + 1, len(sets)):
                    a, bb = sets[i][1], sets[j][1]
                    inter = a & bb
                    if inter and inter != a and inter != bb:
                        violations.append(
                            f"blossoms {sets[i][0]} and {sets[j][0]} are not laminar"
                        )
            for bo in old:
                for bc in current:
                    if bo["_vset"] <= bc["_vset"]:
                        violations.append(
                            f"inherited blossom {bo['id']} inside current blossom {bc['id']}"
                        )
                for eid in matched:
                    e = g.edges[eid]
                    if (e.u in bo["_vset"]) != (e.v in bo["_vset"]):
                        violations.append(
                            f"matched edge {eid} crosses inherited blossom {bo['id']}"
                        )

        # domination / near domination
        near = mode == RCS
        floor = -2 if near else 0
        for eid in g.live_edges():
            slack = cert.yz(eid) - cert.w[eid]
            if slack < floor:
                violations.append(
                    f"edge {eid}: slack {slack} violates "
                    + ("near domination" if near else "domination")
                )

        # tightness / near tightness on matched and current blossom-cycle edges
        tight_edges = set(matched)
        for b in current:
            tight_edges.update(b["cycle_edges"])
        for eid in sorted(tight_edges):
            if not g.edge_alive[eid]:
                continue
            slack = cert.yz(eid) - cert.w[eid]
            bad = slack > 0 if near else slack != 0
            if bad:
                violations.append(
                    f"edge {eid}: slack {slack} violates "
                    + ("near tightness" if near else "tightness")
                )
    finally:
        cert._cleanup()
    return violations


def dual_objective_from_cert(cert: MatchingCertificate) -> int:
    live = set(cert.g.live_vertices())
    total = sum(cert.y[v] for v in live)
    for b in cert.blossoms:
        inside = sum(1 for v in b["vertices"] if v in live)
        if inside == len(b["vertices"]):
            total += b["z"] * (len(b["vertices"]) // 2)
    return total


def check_optimality_gap(
    cert: MatchingCertificate,
    *,
    final_scale: bool = False,
    target_weights: Optional[list[int]] = None,
    multiplier: Optional[int] = None,
) -> list[str]:
    """Optimality assertions for a perfect matching certificate.

    CS mode: the matching weight equals the dual objective (exactness).
    RCS mode: the matching is within ``n`` of the optimum (by oracle on small
    instances, by the dual upper bound otherwise); with ``final_scale`` the
    weight-multiple argument upgrades the bound to exactness under
    ``target_weights``, checked against the oracle when available.
    """
    g = cert.g
    violations: list[str] = []
    m = cert.matching()
    if not m.is_perfect(g):
        return ["matching is not perfect"]
    n = len(list(g.live_vertices()))
    wm = matching_weight(g, m, cert.w)
    if cert.mode == CS:
        obj = dual_objective_from_cert(cert)
        if wm != obj:
            violations.append(f"w(M)={wm} != dual objective {obj}")
        return violations
    # RCS: w(M) >= w(M*) - n
    if n <= ORACLE_MAX_VERTICES:
        opt = brute_force_mwpm(g, cert.w)
        if opt is None:
            return ["oracle reports infeasible but matching is perfect"]
        if wm < opt[0] - n:
            violations.append(f"w(M)={wm} below oracle optimum {opt[0]} - n={n}")
        if final_scale and target_weights is not None:
            topt = brute_force_mwpm(g, target_weights)
            assert topt is not None
            twm = matching_weight(g, m, target_weights)
            if twm != topt[0]:
                violations.append(
                    f"final matching weight {twm} != optimum {topt[0]} under target weights"
                )
    else:
        obj = dual_objective_from_cert(cert)
        if wm > obj + 2 * (n // 2):
            violations.append(
                f"w(M)={wm} exceeds dual bound {obj} + 2|M| (near domination broken)"
            )
    return violations
