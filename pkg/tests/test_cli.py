import json

import pytest

from qaudio.cli import EXIT_OK, EXIT_RESOURCE, EXIT_USAGE, EXIT_VERIFY, main, parse_fixed_bits, parse_step
from qaudio.errors import UsageError


@pytest.fixture
def csv_file(tmp_path):
    p = tmp_path / "x.csv"
    p.write_text("q=3\n3\n-4\n0\n1\n")
    return p


def test_exit_code_values():
    assert (EXIT_OK, EXIT_USAGE, EXIT_VERIFY, EXIT_RESOURCE) == (0, 2, 3, 4)


def test_parse_step():
    assert parse_step("delay:2").dt == 2
    assert parse_step("reverse:t0=1,t2=0").fixed_bits == {0: 1, 2: 0}
    assert str(parse_step("reverse:t0=1")) == "reverse:t0=1"
    assert parse_step("invert").name == "invert"
    for bad in ("delay:x", "add", "frobnicate", "reverse:t0=2"):
        with pytest.raises(UsageError):
            parse_step(bad)
    assert parse_fixed_bits("") == {}


def test_encode(tmp_path, csv_file, capsys):
    out = tmp_path / "out"
    assert main(["encode", str(csv_file), "--out-dir", str(out)]) == 0
    text = capsys.readouterr().out
    assert "5 qubits (q=3, l=2)" in text
    state = json.loads((out / "state.json").read_text())
    assert state["q"] == 3 and len(state["amplitudes"]) == 4
    assert json.loads((out / "cost_report.json").read_text())["operation"] == "preparation"


def test_apply_pipeline_verify(tmp_path, csv_file):
    out = tmp_path / "o"
    rc = main(["apply", str(csv_file), "--op", "invert", "--op", "reverse",
               "--op", "delay:1", "--verify", "--out-dir", str(out)])
    assert rc == 0
    # invert: -3 4->-4 (fixed point) 0 -1 ; reverse: -1 0 -4 -3 ; delay 1: 0 -1 0 -4
    assert (out / "output.csv").read_text().split()[-4:] == ["0", "-1", "0", "-4"]
    costs = json.loads((out / "costs.json").read_text())
    assert [c["pipeline_op"] for c in costs] == ["invert", "reverse", "delay:1"]


def test_apply_add(tmp_path, csv_file):
    other = tmp_path / "y.csv"
    other.write_text("q=3\n1\n1\n1\n1\n")
    out = tmp_path / "o"
    assert main(["apply", str(csv_file), "--op", f"add:{other}", "--verify",
                 "--out-dir", str(out)]) == 0
    lines = (out / "output.csv").read_text().split()
    assert lines[-4:] == ["4", "-3", "1", "2"]


def test_apply_is_deterministic(tmp_path, csv_file):
    outs = []
    for i in range(2):
        d = tmp_path / f"r{i}"
        assert main(["apply", str(csv_file), "--op", "reverse:t0=1", "--shots", "300",
                     "--seed", "5", "--out-dir", str(d)]) == 0
        outs.append(((d / "output.csv").read_bytes(), (d / "state.json").read_bytes()))
    assert outs[0] == outs[1]


def test_retrieve(tmp_path, csv_file, capsys):
    out = tmp_path / "o"
    main(["encode", str(csv_file), "--out-dir", str(out)])
    capsys.readouterr()
    assert main(["retrieve", str(out / "state.json")]) == 0
    assert capsys.readouterr().out.split()[-4:] == ["3", "-4", "0", "1"]


def test_usage_errors(tmp_path, csv_file):
    assert main([]) == EXIT_USAGE
    assert main(["apply", str(csv_file), "--out-dir", str(tmp_path)]) == EXIT_USAGE
    assert main(["apply", str(tmp_path / "missing.csv"), "--op", "invert"]) == EXIT_USAGE
    assert main(["apply", str(csv_file), "--op", "delay:9", "--out-dir", str(tmp_path)]) == EXIT_USAGE
    bad = tmp_path / "bad.csv"
    bad.write_text("q=2\n5\n")
    assert main(["encode", str(bad), "--out-dir", str(tmp_path)]) == EXIT_USAGE


def test_unobserved_time_index_is_verification_failure(tmp_path, csv_file):
    assert main(["apply", str(csv_file), "--op", "invert", "--shots", "1",
                 "--out-dir", str(tmp_path)]) == EXIT_VERIFY


def test_resource_cap(tmp_path):
    big = tmp_path / "big.csv"
    big.write_text("q=8\n" + "1\n" * 64)
    other = tmp_path / "o.csv"
    other.write_text("q=8\n" + "1\n" * 64)
    assert main(["apply", str(big), "--op", f"add:{other}", "--out-dir", str(tmp_path)]) == EXIT_RESOURCE


def test_cost_command(capsys):
    assert main(["cost", "inversion", "--q", "4"]) == 0
    assert "measured 22" in capsys.readouterr().out
    assert main(["cost", "addition", "--q", "2", "--l", "2", "--json"]) == 0
    d = json.loads(capsys.readouterr().out)
    assert d["expected"] == 604 and len(d["components"]) == 3


def test_emit_circuit(tmp_path, capsys):
    assert main(["emit-circuit", "restricted-reversal", "--l", "3", "--fixed", "t0=1",
                 "--format", "qasm"]) == 0
    assert capsys.readouterr().out.startswith("OPENQASM 3.0;")
    out = tmp_path / "c.json"
    assert main(["emit-circuit", "adder", "--q", "2", "--out", str(out)]) == 0
    assert len(json.loads(out.read_text())["gates"]) == 14
