"""Generate a random instance, solve it both ways, and check the duals.

Run: python3 demos/solve_and_verify.py
"""

from mwpm import (
    check_invariants,
    random_gnm,
    run_hybrid,
    run_liquidationist,
)

g = random_gnm(32, 120, max_weight=1024, seed=7, guarantee_perfect=True)
print(f"instance: n={g.n} m={len(g.edges)}")

for runner in (run_liquidationist, run_hybrid):
    matching, cert, report = runner(g, check=True)
    print(f"{report.algorithm:>15}: weight={report.weight} "
          f"tau={report.tau} scales={len(report.scales)} "
          f"time={report.time_ms}ms verified={report.verified}")
    violations = check_invariants(cert)
    assert violations == [], violations
print("both algorithms agree and both certificates check out")
