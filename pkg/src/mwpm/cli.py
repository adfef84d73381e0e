"""Command-line frontend: solve, gen, oracle, verify, bench."""

from __future__ import annotations

import argparse
import csv
import json
import logging
import math
import os
import statistics
import sys
import time
from dataclasses import dataclass

from .drivers import Infeasible
from .generators import nested_blossom_adversarial, random_gnm, random_regular_ish
from .graph import (
    Graph,
    ParseError,
    format_matching,
    load_dimacs,
    matching_weight,
    write_dimacs,
)
from .hybrid import run_hybrid
from .liquidationist import run_liquidationist
from .verify import MatchingCertificate, brute_force_mwpm, check_invariants

BENCH_FIELDS = [
    "instance", "algo", "tau", "n", "m", "N", "weight",
    "time_ms", "adjustments", "scales",
]

_RUNNERS = {"liquidationist": run_liquidationist, "hybrid": run_hybrid}


@dataclass
class InstanceSpec:
    """Parsed generator parameters, e.g. ``random-gnm:n=64,m=256,N=1024,seed=3``."""

    generator: str
    n: int = 0
    m: int = 0
    max_weight: int = 1
    seed: int = 0
    guarantee_perfect: bool = False
    levels: int = 0
    degree: int = 0

    @classmethod
    def parse(cls, text: str) -> "InstanceSpec":
        name, _, rest = text.partition(":")
        spec = cls(generator=name)
        for part in filter(None, rest.split(",")):
            key, _, val = part.partition("=")
            key = key.strip()
            if key == "N":
                spec.max_weight = int(val)
            elif key == "perfect":
                spec.guarantee_perfect = val.strip() in ("1", "true", "yes")
            elif key in ("n", "m", "seed", "levels", "degree"):
                setattr(spec, key, int(val))
            else:
                raise ValueError(f"unknown instance parameter {key!r}")
        return spec

    def build(self) -> Graph:
        if self.generator == "random-gnm":
            return random_gnm(self.n, self.m, self.max_weight, self.seed,
                              guarantee_perfect=self.guarantee_perfect)
        if self.generator == "random-regular-ish":
            return random_regular_ish(self.n, self.degree or 3,
                                      self.max_weight, self.seed)
        if self.generator == "nested-blossom-adversarial":
            return nested_blossom_adversarial(self.levels or 3,
                                              self.max_weight, self.seed)
        raise ValueError(f"unknown generator {self.generator!r}")

    def label(self) -> str:
        return (f"{self.generator}:n={self.n},m={self.m},"
                f"N={self.max_weight},seed={self.seed}")


def _load_graph(path: str) -> Graph:
    with open(path) as f:
        return load_dimacs(f.read())


def _setup_logging(trace: bool) -> None:
    level_name = os.environ.get("MATCH_LOG", "")
    if trace and not level_name:
        level_name = "debug"
    if level_name:
        logging.basicConfig(
            stream=sys.stderr,
            format="%(name)s %(message)s",
            level=getattr(logging, level_name.upper(), logging.DEBUG),
        )


def cmd_solve(args: argparse.Namespace) -> int:
    _setup_logging(args.trace)
    try:
        g = _load_graph(args.input)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    runner = _RUNNERS[args.algo]
    try:
        matching, cert, report = runner(g, args.tau, check=args.check_invariants)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 3
    sys.stdout.write(format_matching(g, matching))
    weight = matching_weight(g, matching, [e.weight for e in g.edges])
    print(f"c algorithm {report.algorithm} tau {report.tau} "
          f"weight {weight} time_ms {report.time_ms}")
    if args.json:
        with open(args.json, "w") as f:
            json.dump(report.to_dict(), f, indent=2, sort_keys=True)
            f.write("\n")
    if args.cert:
        with open(args.cert, "w") as f:
            f.write(cert.to_json())
    if args.check_invariants and not report.verified:
        print("invariant violations detected", file=sys.stderr)
        return 2
    return 0


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        spec = InstanceSpec.parse(args.spec)
        g = spec.build()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    text = write_dimacs(g)
    if args.out:
        with open(args.out, "w") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_oracle(args: argparse.Namespace) -> int:
    try:
        g = _load_graph(args.input)
    except (ParseError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    result = brute_force_mwpm(g, [e.weight for e in g.edges])
    if result is None:
        print("infeasible", file=sys.stderr)
        return 3
    weight, matching = result
    sys.stdout.write(format_matching(g, matching))
    print(weight)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        g = _load_graph(args.graph)
        with open(args.cert) as f:
            cert = MatchingCertificate.from_json(f.read(), g)
    except (ParseError, OSError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    violations = check_invariants(cert)
    if violations:
        for v in violations:
            print(v)
        return 2
    print("certificate ok")
    return 0


def cmd_bench(args: argparse.Namespace) -> int:
    try:
        specs = [InstanceSpec.parse(s) for s in args.suite]
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    rows = []
    for spec in specs:
        g = spec.build()
        for algo, runner in _RUNNERS.items():
            times, last = [], None
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                matching, cert, report = runner(g, args.tau)
                times.append((time.perf_counter() - t0) * 1000.0)
                last = report
            rows.append({
                "instance": spec.label(),
                "algo": algo,
                "tau": last.tau,
                "n": g.n,
                "m": len(g.edges),
                "N": spec.max_weight,
                "weight": last.weight,
                "time_ms": round(statistics.median(times), 3),
                "adjustments": sum(s.dual_adjustments for s in last.scales),
                "scales": len(last.scales),
            })
    new_file = not (args.out and os.path.exists(args.out))
    out = open(args.out, "a", newline="") if args.out else sys.stdout
    try:
        writer = csv.DictWriter(out, fieldnames=BENCH_FIELDS)
        if new_file:
            writer.writeheader()
        writer.writerows(rows)
    finally:
        if args.out:
            out.close()
    _scaling_summary(rows)
    return 0


def _scaling_summary(rows: list[dict]) -> None:
    """Informational: observed growth vs the m*sqrt(n)*log(nN) reference."""
    by_algo: dict[str, list[dict]] = {}
    for row in rows:
        by_algo.setdefault(row["algo"], []).append(row)
    for algo, group in sorted(by_algo.items()):
        group = sorted(group, key=lambda r: r["n"])
        for prev, cur in zip(group, group[1:]):
            if prev["n"] <= 0 or prev["time_ms"] <= 0:
                continue
            ratio = cur["time_ms"] / prev["time_ms"]
            ref = (
                (cur["m"] * math.sqrt(cur["n"])
                 * math.log2(max(2, cur["n"] * max(1, cur["N"]))))
                / (prev["m"] * math.sqrt(prev["n"])
                   * math.log2(max(2, prev["n"] * max(1, prev["N"]))))
            )
            print(f"c scaling {algo} n {prev['n']}->{cur['n']} "
                  f"observed x{ratio:.2f} reference x{ref:.2f}", file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mwpm",
        description="Exact maximum-weight perfect matching via dual scaling.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve a DIMACS instance")
    p.add_argument("--algo", choices=sorted(_RUNNERS), default="liquidationist")
    p.add_argument("--input", required=True)
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--check-invariants", action="store_true")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--json", default=None, help="write the run report here")
    p.add_argument("--cert", default=None, help="write the final certificate here")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate a DIMACS instance")
    p.add_argument("spec", help="e.g. random-gnm:n=64,m=256,N=1024,seed=3")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("oracle", help="brute-force solve a small instance")
    p.add_argument("--input", required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="check a certificate against a graph")
    p.add_argument("--cert", required=True)
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="run a benchmark suite")
    p.add_argument("--suite", nargs="+", required=True)
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--out", default=None, help="append CSV rows here")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
