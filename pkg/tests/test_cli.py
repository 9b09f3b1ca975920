import subprocess
import sys
from pathlib import Path

import pytest

from modinv.cli import main

GOLDEN = Path(__file__).parent / "golden"


def run(capsys, *argv):
    status = main(list(argv))
    out, err = capsys.readouterr()
    return status, out, err


@pytest.mark.parametrize(
    "argv,golden",
    [
        (["charpoly", "--cat", "W:1:2", "--symbolic"], "charpoly_w12.txt"),
        (["charpoly", "--cat", "W:2:2"], "charpoly_w22.txt"),
        (["invariants", "--cat", "W:1:2", "--max-degree", "2"], "invariants_w12_d2.tsv"),
        (["invariants", "--cat", "W:2:2", "--max-degree", "4", "--generators", "psi"], "invariants_w22_psi.tsv"),
        (["stabilizer", "--cat", "W:1:2", "--point", "0,1"], "stabilizer_w12_xd.tsv"),
        (["regular", "--cat", "W:2:2", "--samples", "200", "--seed", "1", "--ext", "4"], "regular_w22_seed1.tsv"),
        (["verify", "--suite", "all", "--seed", "0"], "verify_all_seed0.tsv"),
    ],
)
def test_golden_outputs(capsys, argv, golden):
    status, out, _ = run(capsys, *argv)
    assert status == 0
    assert out == (GOLDEN / golden).read_text()


def test_charpoly_symbolic(capsys):
    assert run(capsys, "charpoly", "--cat", "W:1:2", "--symbolic")[1] == "psi_0 = 1*xi_1\n"


def test_charpoly_point(capsys):
    status, out, _ = run(capsys, "charpoly", "--cat", "W:1:2", "--point", "0,0")
    assert status == 0 and out == "psi_0 = 0\n"
    assert run(capsys, "charpoly", "--n", "1", "--p", "2", "--point", "0,1")[1] == "psi_0 = 1\n"


def test_charpoly_budget(capsys):
    status, out, err = run(capsys, "charpoly", "--cat", "W:3:3")
    assert status == 3 and out == "" and "budget" in err


def test_invariants_table(capsys):
    status, out, _ = run(capsys, "invariants", "--cat", "W:1:2", "--max-degree", "2")
    rows = [line.split("\t") for line in out.splitlines()]
    assert rows[0] == ["degree", "dim_invariant", "dim_generated", "verdict"]
    assert [(int(r[0]), int(r[1])) for r in rows[1:]] == [(0, 1), (1, 1), (2, 2)]
    out0 = run(capsys, "invariants", "--cat", "W:1:2", "--max-degree", "0")[1]
    assert out0.splitlines()[1:] == ["0\t1\t-\t-"]


def test_invariants_generation_verdict(capsys):
    status, out, _ = run(capsys, "invariants", "--cat", "W:2:2", "--max-degree", "4", "--generators", "psi")
    assert status == 0
    assert {line.split("\t")[3] for line in out.splitlines()[1:]} == {"generated"}


def test_invariants_non_invariant_generator(capsys):
    status, _, err = run(capsys, "invariants", "--cat", "W:1:2", "--max-degree", "2", "--generators", "xi_0")
    assert status == 2 and "not invariant" in err


def test_invariants_not_generated_exit_1(capsys):
    # xi_1 alone generates; an empty family does not
    status, out, _ = run(capsys, "invariants", "--cat", "W:1:2", "--max-degree", "1", "--generators", "xi_1^2")
    assert status == 1 and "not generated" in out


def test_group_action_catalog(capsys):
    out = run(capsys, "invariants", "--cat", "counterexample:2.remark", "--max-degree", "2")[1]
    assert out.splitlines()[1:] == ["0\t1\t-\t-", "1\t0\t-\t-", "2\t1\t-\t-"]


def test_stabilizer_points(capsys):
    out = run(capsys, "stabilizer", "--cat", "W:1:2", "--point", "0,1")[1]
    fields = dict(line.split("\t") for line in out.splitlines())
    assert fields["codim"] == "1" and fields["regular"] == "yes"
    out = run(capsys, "stabilizer", "--cat", "W:1:2", "--point", "0,0", "--c", "1")[1]
    fields = dict(line.split("\t") for line in out.splitlines())
    assert fields["codim"] == "0" and fields["regular"] == "no"


def test_stabilizer_malformed_point(capsys):
    assert run(capsys, "stabilizer", "--cat", "W:1:2", "--point", "0,x")[0] == 2
    assert run(capsys, "stabilizer", "--cat", "W:1:2", "--point", "0,1,1")[0] == 2
    assert run(capsys, "stabilizer", "--cat", "W:1:2", "--point", "0,5")[0] == 2


def test_regular_estimate(capsys):
    status, out, err = run(capsys, "regular", "--cat", "W:2:2", "--samples", "200", "--seed", "1", "--ext", "4")
    assert status == 0 and err.strip() == "c = 6"
    assert out.splitlines()[0] == "sample_index\tpoint\tcodim"
    assert len(out.splitlines()) == 201
    text = run(capsys, "regular", "--cat", "W:2:2", "--samples", "200", "--seed", "1", "--ext", "4", "--format", "text")[1]
    assert text.splitlines()[-1] == "c = 6"


def test_verify_counterexample(capsys):
    status, out, _ = run(capsys, "verify", "--suite", "counterexample")
    lines = out.splitlines()
    assert status == 0 and len(lines) == 2
    check, anchor, result, detail = lines[1].split("\t")
    assert result == "pass" and "not free" in detail


def test_verify_wn_invariants(capsys):
    status, out, _ = run(capsys, "verify", "--suite", "wn-invariants")
    assert status == 0
    for n, p in [(1, 2), (1, 3), (2, 2)]:
        assert f"W_{n} p={p}" in out


def test_verify_deterministic(capsys):
    first = run(capsys, "verify", "--suite", "all", "--seed", "0")[1]
    second = run(capsys, "verify", "--suite", "all", "--seed", "0")[1]
    assert first == second


def test_usage_errors(capsys):
    assert run(capsys, "verify", "--suite", "nope")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "invariants", "--cat", "W:1:2", "--max-degree", "-1")[0] == 2
    assert run(capsys, "invariants", "--cat", "Q:1:2")[0] == 2
    assert run(capsys, "regular", "--cat", "W:1:2", "--samples", "0")[0] == 2


def test_output_file_and_file_input(tmp_path, capsys):
    action = tmp_path / "line.txt"
    action.write_text("p=3\ntarget poly 1\ngroup\nsigma_0 : x1 -> 2*x1\n")
    dest = tmp_path / "out.tsv"
    status, out, _ = run(capsys, "invariants", "--file", str(action), "--max-degree", "4", "--output", str(dest))
    assert status == 0 and out == ""
    assert dest.read_text().splitlines()[1:] == ["0\t1\t-\t-", "1\t0\t-\t-", "2\t1\t-\t-", "3\t0\t-\t-", "4\t1\t-\t-"]
    lie = tmp_path / "w12.txt"
    lie.write_text("p=2 dim=2\nbracket 0 1 -> 1,0\npmap 1 -> 0,1\n")
    fields = dict(line.split("\t") for line in run(capsys, "stabilizer", "--file", str(lie), "--point", "0,1")[1].splitlines())
    assert fields["codim"] == "1"


def test_console_script_exit_status():
    proc = subprocess.run(
        [sys.executable, "-m", "modinv.cli", "charpoly", "--cat", "W:3:3"], capture_output=True, text=True
    )
    assert proc.returncode == 3
