"""Shared fixtures: a seeded random suite solved by both drivers with every
runtime check enabled, consumed by the acceptance tests."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import pytest

from mwpm.generators import random_gnm
from mwpm.graph import Graph, matching_weight
from mwpm.hybrid import HybridDriver
from mwpm.liquidationist import LiquidationistDriver
from mwpm.verify import brute_force_mwpm

SUITE_SIZE = 1000


@dataclass
class SolvedInstance:
    seed: int
    g: Graph
    opt: int
    weights: dict = field(default_factory=dict)  # algorithm -> achieved weight
    violations: dict = field(default_factory=dict)
    reports: dict = field(default_factory=dict)
    shell_audits: list = field(default_factory=list)


def suite_instance(seed: int) -> Graph:
    rng = random.Random(seed)
    n = rng.choice([4, 6, 8, 10, 12])
    m = rng.randint(n, n * (n - 1) // 2)
    return random_gnm(n, m, rng.randint(0, 64), seed=seed, guarantee_perfect=True)


@pytest.fixture(scope="session")
def solved_suite() -> list[SolvedInstance]:
    out = []
    for seed in range(SUITE_SIZE):
        g = suite_instance(seed)
        w = [e.weight for e in g.edges]
        opt, _ = brute_force_mwpm(g, w)
        item = SolvedInstance(seed, g, opt)
        for cls in (LiquidationistDriver, HybridDriver):
            driver = cls(g, check=True, audit_timestamps=True)
            matching, cert, report = driver.run()
            item.weights[cls.algorithm] = matching_weight(g, matching, w)
            item.violations[cls.algorithm] = list(driver.violations)
            item.reports[cls.algorithm] = report
            if cls is HybridDriver:
                item.shell_audits.extend(driver.shell_audits)
        out.append(item)
    return out
