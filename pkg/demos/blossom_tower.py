"""Watch the dismantling machinery work on nested odd cycles.

The adversarial generator builds towers of nested blossoms (C3 inside C5
inside C7 ...), the structure that forces the hybrid driver's major-path
dismantling and shell searches to fire.

Run: python3 demos/blossom_tower.py
"""

from mwpm.generators import nested_blossom_adversarial
from mwpm.hybrid import HybridDriver
from mwpm.liquidationist import run_liquidationist

for levels in (2, 3, 4):
    g = nested_blossom_adversarial(levels, max_weight=64, seed=levels)
    driver = HybridDriver(g, check=True)
    matching, cert, report = driver.run()
    _, _, reference = run_liquidationist(g, check=True)
    assert report.weight == reference.weight
    dismantles = sum(s.gabow_calls for s in report.scales)
    shells = sum(s.shells_searched for s in report.scales)
    print(f"levels={levels}: n={g.n} weight={report.weight} "
          f"dismantle_calls={dismantles} shell_searches={shells} "
          f"verified={report.verified}")
    for adjustments, limit in driver.shell_audits:
        assert adjustments <= limit
print("every shell search stayed inside its 3*n budget")
