"""Deterministic instance generators for testing and benchmarking.

All generators take a seed and produce the same graph for the same arguments
on every run.  Weights are nonnegative integers.
"""

from __future__ import annotations

import random

from .graph import Graph


def random_gnm(
    n: int,
    m: int,
    max_weight: int,
    seed: int,
    *,
    guarantee_perfect: bool = False,
) -> Graph:
    """A uniform random simple graph with n vertices and about m edges.

    With ``guarantee_perfect`` a hidden random perfect matching is added
    (n must be even), so the instance always admits a perfect matching.
    """
    if guarantee_perfect and n % 2 != 0:
        raise ValueError("a perfect matching needs an even number of vertices")
    rng = random.Random(seed)
    g = Graph(n)
    chosen: set[tuple[int, int]] = set()
    if guarantee_perfect:
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(0, n, 2):
            u, v = sorted((perm[i], perm[i + 1]))
            chosen.add((u, v))
    max_m = n * (n - 1) // 2
    m = min(m, max_m)
    while len(chosen) < m:
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v:
            continue
        chosen.add((min(u, v), max(u, v)))
    for u, v in sorted(chosen):
        g.add_edge(u, v, rng.randint(0, max_weight))
    return g


def random_regular_ish(n: int, degree: int, max_weight: int, seed: int) -> Graph:
    """A random graph where every vertex has degree close to ``degree``.

    Built from ``degree`` random perfect matchings on an even number of
    vertices (duplicates dropped), the union is near-regular and always
    admits a perfect matching.
    """
    if n % 2 != 0:
        raise ValueError("n must be even")
    rng = random.Random(seed)
    g = Graph(n)
    chosen: set[tuple[int, int]] = set()
    for _ in range(max(1, degree)):
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(0, n, 2):
            u, v = sorted((perm[i], perm[i + 1]))
            chosen.add((u, v))
    for u, v in sorted(chosen):
        g.add_edge(u, v, rng.randint(0, max_weight))
    return g


def nested_blossom_adversarial(levels: int, max_weight: int, seed: int) -> Graph:
    """Chains of nested odd cycles designed to force deep blossom nesting.

    Each gadget is a sequence of odd cycles C3 within C5 within C7 and so on,
    with heavy weights on the innermost cycle so searches shrink blossoms from
    the inside out.  A pendant vertex makes each gadget's vertex count even,
    and gadgets are joined in a cycle so the graph is connected.
    """
    if levels < 1:
        raise ValueError("levels must be at least 1")
    rng = random.Random(seed)
    gadgets = max(2, levels)
    # one gadget: vertices 0..(2*levels) form nested odd cycles
    size = 2 * levels + 1
    g = Graph(gadgets * (size + 1))
    heavy = max(2, max_weight)
    pendants = []
    for k in range(gadgets):
        base = k * (size + 1)
        for lvl in range(1, levels + 1):
            ring = list(range(base, base + 2 * lvl + 1))
            # inner cycles get heavier weights so they shrink first
            lo = heavy * (levels - lvl + 1)
            a, b = base + 2 * lvl - 1, base + 2 * lvl
            if lvl == 1:
                for i in range(3):
                    u, v = ring[i], ring[(i + 1) % 3]
                    g.add_edge(u, v, lo + rng.randint(0, heavy - 1))
            else:
                g.add_edge(a, b, lo + rng.randint(0, heavy - 1))
                g.add_edge(base, a, lo + rng.randint(0, heavy - 1))
                g.add_edge(base + 2 * lvl - 2, b, lo + rng.randint(0, heavy - 1))
        pendant = base + size
        pendants.append(pendant)
        g.add_edge(base + size - 1, pendant, rng.randint(0, heavy - 1))
    for k in range(gadgets):
        g.add_edge(pendants[k], pendants[(k + 1) % gadgets],
                   rng.randint(0, heavy - 1))
    return g
