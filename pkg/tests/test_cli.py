import csv
import json

import pytest

from mwpm.cli import InstanceSpec, main

SINGLE_EDGE = "p edge 2 1\ne 1 2 5\n"
FOUR_CYCLE = "p edge 4 4\ne 1 2 1\ne 2 3 2\ne 3 4 1\ne 4 1 2\n"
INFEASIBLE = "p edge 4 1\ne 1 2 3\n"


@pytest.fixture
def single_edge(tmp_path):
    p = tmp_path / "single.dimacs"
    p.write_text(SINGLE_EDGE)
    return p


def test_solve_single_edge(single_edge, capsys):
    assert main(["solve", "--input", str(single_edge)]) == 0
    out = capsys.readouterr().out
    assert "m 1 2" in out
    assert "weight 5" in out


def test_solve_four_cycle_both_algos(tmp_path, capsys):
    p = tmp_path / "cycle.dimacs"
    p.write_text(FOUR_CYCLE)
    for algo in ("liquidationist", "hybrid"):
        code = main(["solve", "--algo", algo, "--input", str(p),
                     "--check-invariants"])
        assert code == 0
        assert "weight 4" in capsys.readouterr().out


def test_solve_missing_file_exit_1(tmp_path, capsys):
    assert main(["solve", "--input", str(tmp_path / "absent")]) == 1
    assert "error" in capsys.readouterr().err


def test_solve_infeasible_exit_3(tmp_path, capsys):
    p = tmp_path / "odd.dimacs"
    p.write_text(INFEASIBLE)
    assert main(["solve", "--input", str(p)]) == 3
    assert "infeasible" in capsys.readouterr().err


def test_solve_json_report(single_edge, tmp_path, capsys):
    report_path = tmp_path / "report.json"
    main(["solve", "--input", str(single_edge), "--json", str(report_path)])
    capsys.readouterr()
    report = json.loads(report_path.read_text())
    assert report["algorithm"] == "liquidationist"
    assert report["weight"] == 5
    assert isinstance(report["scales"], list)


def test_oracle(tmp_path, capsys):
    p = tmp_path / "cycle.dimacs"
    p.write_text(FOUR_CYCLE)
    assert main(["oracle", "--input", str(p)]) == 0
    assert capsys.readouterr().out.strip().endswith("4")


def test_verify_good_and_tampered_cert(single_edge, tmp_path, capsys):
    cert_path = tmp_path / "cert.json"
    main(["solve", "--input", str(single_edge), "--cert", str(cert_path)])
    capsys.readouterr()
    assert main(["verify", "--cert", str(cert_path),
                 "--graph", str(single_edge)]) == 0
    assert "certificate ok" in capsys.readouterr().out

    data = json.loads(cert_path.read_text())
    data["y"][0] += 1
    cert_path.write_text(json.dumps(data))
    assert main(["verify", "--cert", str(cert_path),
                 "--graph", str(single_edge)]) == 2
    assert capsys.readouterr().out.strip() != ""


def test_gen_deterministic(tmp_path, capsys):
    spec = "random-gnm:n=16,m=40,N=64,seed=3,perfect=1"
    a, b = tmp_path / "a.dimacs", tmp_path / "b.dimacs"
    assert main(["gen", spec, "--out", str(a)]) == 0
    assert main(["gen", spec, "--out", str(b)]) == 0
    capsys.readouterr()
    assert a.read_bytes() == b.read_bytes()
    assert a.read_text().startswith("p edge 16 40")


def test_gen_then_solve_roundtrip(tmp_path, capsys):
    p = tmp_path / "g.dimacs"
    main(["gen", "random-gnm:n=12,m=24,N=32,seed=5,perfect=1", "--out", str(p)])
    code = main(["solve", "--algo", "hybrid", "--input", str(p),
                 "--check-invariants"])
    capsys.readouterr()
    assert code == 0


def test_gen_unknown_generator_exit_1(capsys):
    assert main(["gen", "no-such-generator:n=4"]) == 1
    assert "error" in capsys.readouterr().err


def test_instance_spec_parse():
    spec = InstanceSpec.parse("random-gnm:n=64,m=256,N=1024,seed=3")
    assert (spec.generator, spec.n, spec.m) == ("random-gnm", 64, 256)
    assert spec.max_weight == 1024 and spec.seed == 3
    with pytest.raises(ValueError):
        InstanceSpec.parse("random-gnm:bogus=1")


def test_bench_csv(tmp_path, capsys):
    out = tmp_path / "bench.csv"
    suite = ["random-gnm:n=16,m=40,N=64,seed=1,perfect=1",
             "random-gnm:n=32,m=120,N=64,seed=1,perfect=1"]
    assert main(["bench", "--suite", *suite, "--repeat", "1",
                 "--out", str(out)]) == 0
    assert "c scaling" in capsys.readouterr().err
    with open(out) as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 4  # 2 instances x 2 algorithms
    assert {r["algo"] for r in rows} == {"liquidationist", "hybrid"}
    # appending keeps a single header
    assert main(["bench", "--suite", suite[0], "--repeat", "1",
                 "--out", str(out)]) == 0
    capsys.readouterr()
    with open(out) as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 6
